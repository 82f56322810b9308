#include "finsite/io.hpp"

#include <fstream>

namespace finsite {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + "." + key, "missing field");
    return *it;
}

std::string str_at(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get<std::string>();
}

} // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path, std::string("invalid JSON: ") + e.what());
    }
    return j;
}

DocKind detect_kind(const Json& j) {
    if (!j.is_object()) throw ParseError("$", "expected a JSON object");
    if (j.contains("objects")) {
        if (j.contains("stable_class") || j.contains("stable_families")) return DocKind::SiteDoc;
        return DocKind::Category;
    }
    if (j.contains("elements")) {
        if (j.contains("bottom")) return DocKind::Semilattice;
        return DocKind::Poset;
    }
    if (j.contains("on_objects")) return DocKind::FunctorDoc;
    throw ParseError("$", "unrecognized document (expected category, site, poset, semilattice or functor)");
}

FiniteCategory parse_category(const Json& j) {
    const Json& jobj = field(j, "objects", "$");
    if (!jobj.is_array()) throw ParseError("$.objects", "expected an array");
    std::vector<std::string> objects;
    for (size_t i = 0; i < jobj.size(); ++i)
        objects.push_back(str_at(jobj[i], "$.objects[" + std::to_string(i) + "]"));
    auto obj_index = [&](const std::string& n, const std::string& path) {
        for (size_t i = 0; i < objects.size(); ++i)
            if (objects[i] == n) return static_cast<int>(i);
        throw ParseError(path, "unknown object '" + n + "'");
    };

    const Json& jmor = field(j, "morphisms", "$");
    if (!jmor.is_array()) throw ParseError("$.morphisms", "expected an array");
    std::vector<MorData> mors;
    for (size_t i = 0; i < jmor.size(); ++i) {
        std::string path = "$.morphisms[" + std::to_string(i) + "]";
        MorData m;
        m.name = str_at(field(jmor[i], "name", path), path + ".name");
        m.dom = obj_index(str_at(field(jmor[i], "dom", path), path + ".dom"), path + ".dom");
        m.cod = obj_index(str_at(field(jmor[i], "cod", path), path + ".cod"), path + ".cod");
        mors.push_back(std::move(m));
    }
    auto mor_index = [&](const std::string& n, const std::string& path) {
        for (size_t i = 0; i < mors.size(); ++i)
            if (mors[i].name == n) return static_cast<int>(i);
        throw ParseError(path, "unknown morphism '" + n + "'");
    };

    const Json& jid = field(j, "identities", "$");
    if (!jid.is_object()) throw ParseError("$.identities", "expected an object");
    std::vector<int> ids(objects.size(), -1);
    for (auto it = jid.begin(); it != jid.end(); ++it) {
        int o = obj_index(it.key(), "$.identities");
        ids[o] = mor_index(str_at(it.value(), "$.identities." + it.key()), "$.identities." + it.key());
    }
    for (size_t o = 0; o < objects.size(); ++o)
        if (ids[o] < 0) throw ParseError("$.identities", "missing identity for object '" + objects[o] + "'");

    std::vector<std::array<int, 3>> comps;
    if (j.contains("composition")) {
        const Json& jc = j["composition"];
        if (!jc.is_array()) throw ParseError("$.composition", "expected an array");
        for (size_t i = 0; i < jc.size(); ++i) {
            std::string path = "$.composition[" + std::to_string(i) + "]";
            if (!jc[i].is_array() || jc[i].size() != 3) throw ParseError(path, "expected a [g, f, gf] triple");
            comps.push_back({mor_index(str_at(jc[i][0], path + "[0]"), path + "[0]"),
                             mor_index(str_at(jc[i][1], path + "[1]"), path + "[1]"),
                             mor_index(str_at(jc[i][2], path + "[2]"), path + "[2]")});
        }
    }
    FiniteCategory cat;
    try {
        cat = FiniteCategory::make(std::move(objects), std::move(mors), std::move(ids), comps);
    } catch (const std::invalid_argument& e) {
        throw ParseError("$", e.what());
    }
    auto rep = validate(cat);
    if (!rep.valid()) throw LawError(rep.to_string());
    return cat;
}

Site parse_site(const Json& j) {
    FiniteCategory cat = parse_category(j);
    std::set<int> empty_covered;
    if (j.contains("empty_covered")) {
        const Json& je = j["empty_covered"];
        if (!je.is_array()) throw ParseError("$.empty_covered", "expected an array");
        for (size_t i = 0; i < je.size(); ++i) {
            std::string path = "$.empty_covered[" + std::to_string(i) + "]";
            int o = cat.object_index(str_at(je[i], path));
            if (o < 0) throw ParseError(path, "unknown object");
            empty_covered.insert(o);
        }
    }
    try {
        if (j.contains("stable_class")) {
            const Json& jt = j["stable_class"];
            if (!jt.is_array()) throw ParseError("$.stable_class", "expected an array");
            std::set<int> carrier;
            for (size_t i = 0; i < jt.size(); ++i) {
                std::string path = "$.stable_class[" + std::to_string(i) + "]";
                int m = cat.morphism_index(str_at(jt[i], path));
                if (m < 0) throw ParseError(path, "unknown morphism");
                carrier.insert(m);
            }
            return Site::principal(std::move(cat), std::move(carrier), std::move(empty_covered));
        }
        const Json& jf = field(j, "stable_families", "$");
        if (!jf.is_array()) throw ParseError("$.stable_families", "expected an array");
        std::vector<Family> families;
        for (size_t i = 0; i < jf.size(); ++i) {
            std::string path = "$.stable_families[" + std::to_string(i) + "]";
            Family fam;
            const Json* members = nullptr;
            if (jf[i].is_array()) {
                members = &jf[i];
                if (jf[i].empty()) throw ParseError(path, "empty family needs an explicit codomain; use {cod, members}");
            } else if (jf[i].is_object()) {
                int c = cat.object_index(str_at(field(jf[i], "cod", path), path + ".cod"));
                if (c < 0) throw ParseError(path + ".cod", "unknown object");
                fam.codomain = c;
                members = &field(jf[i], "members", path);
                if (!members->is_array()) throw ParseError(path + ".members", "expected an array");
            } else {
                throw ParseError(path, "expected an array of morphisms or {cod, members}");
            }
            for (size_t k = 0; k < members->size(); ++k) {
                std::string mp = path + "[" + std::to_string(k) + "]";
                int m = cat.morphism_index(str_at((*members)[k], mp));
                if (m < 0) throw ParseError(mp, "unknown morphism");
                fam.members.push_back(m);
            }
            if (fam.codomain < 0) {
                fam.codomain = cat.cod(fam.members[0]);
            }
            families.push_back(std::move(fam));
        }
        return Site::finitely_generated(std::move(cat), std::move(families), std::move(empty_covered));
    } catch (const std::invalid_argument& e) {
        throw LawError(e.what());
    }
}

FinPoset parse_poset(const Json& j) {
    const Json& je = field(j, "elements", "$");
    if (!je.is_array()) throw ParseError("$.elements", "expected an array");
    FinPoset p;
    for (size_t i = 0; i < je.size(); ++i)
        p.elements.push_back(str_at(je[i], "$.elements[" + std::to_string(i) + "]"));
    const int n = p.size();
    p.leq.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) p.leq[i][i] = 1;
    auto idx = [&](const std::string& s, const std::string& path) {
        int i = p.index_of(s);
        if (i < 0) throw ParseError(path, "unknown element '" + s + "'");
        return i;
    };
    if (j.contains("leq")) {
        const Json& jl = j["leq"];
        if (!jl.is_array()) throw ParseError("$.leq", "expected an array");
        for (size_t i = 0; i < jl.size(); ++i) {
            std::string path = "$.leq[" + std::to_string(i) + "]";
            if (!jl[i].is_array() || jl[i].size() != 2) throw ParseError(path, "expected an [a, b] pair");
            p.leq[idx(str_at(jl[i][0], path + "[0]"), path + "[0]")]
                 [idx(str_at(jl[i][1], path + "[1]"), path + "[1]")] = 1;
        }
    }
    // listed pairs generate: close transitively, then check the laws
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (p.le(a, k) && p.le(k, b)) p.leq[a][b] = 1;
    auto rep = validate_poset(p);
    if (!rep.valid()) throw LawError(rep.to_string());
    return p;
}

JoinSemilattice parse_semilattice(const Json& j) {
    FinPoset p = parse_poset(j);
    auto s = semilattice_of_poset(p);
    if (!s) throw LawError("order has no bottom or lacks binary joins");
    int bottom = p.index_of(str_at(field(j, "bottom", "$"), "$.bottom"));
    if (bottom < 0) throw ParseError("$.bottom", "unknown element");
    if (bottom != s->bottom) throw LawError("declared bottom is not the least element");
    if (j.contains("join")) {
        const Json& jj = j["join"];
        if (!jj.is_array()) throw ParseError("$.join", "expected an array");
        for (size_t i = 0; i < jj.size(); ++i) {
            std::string path = "$.join[" + std::to_string(i) + "]";
            if (!jj[i].is_array() || jj[i].size() != 3) throw ParseError(path, "expected an [a, b, join] triple");
            int a = p.index_of(str_at(jj[i][0], path + "[0]"));
            int b = p.index_of(str_at(jj[i][1], path + "[1]"));
            int ab = p.index_of(str_at(jj[i][2], path + "[2]"));
            if (a < 0 || b < 0 || ab < 0) throw ParseError(path, "unknown element");
            if (s->join[a][b] != ab)
                throw LawError("declared join of " + p.elements[a] + ", " + p.elements[b] +
                               " disagrees with the least upper bound");
        }
    }
    auto rep = validate_semilattice(*s);
    if (!rep.valid()) throw LawError(rep.to_string());
    return *s;
}

Document parse_document(const Json& j) {
    Document d;
    d.kind = detect_kind(j);
    switch (d.kind) {
        case DocKind::Category: d.category = parse_category(j); break;
        case DocKind::SiteDoc:
            d.site = parse_site(j);
            d.category = d.site->cat();
            break;
        case DocKind::Poset: d.poset = parse_poset(j); break;
        case DocKind::Semilattice:
            d.jsl = parse_semilattice(j);
            d.poset = d.jsl->poset;
            break;
        case DocKind::FunctorDoc: {
            const Json& jo = field(j, "on_objects", "$");
            const Json& jm = field(j, "on_morphisms", "$");
            if (!jo.is_object() || !jm.is_object()) throw ParseError("$", "functor maps must be objects");
            for (auto it = jo.begin(); it != jo.end(); ++it)
                d.functor_objects[it.key()] = str_at(it.value(), "$.on_objects." + it.key());
            for (auto it = jm.begin(); it != jm.end(); ++it)
                d.functor_morphisms[it.key()] = str_at(it.value(), "$.on_morphisms." + it.key());
            break;
        }
    }
    return d;
}

Functor resolve_functor(const Document& doc, const FiniteCategory& dom, const FiniteCategory& cod) {
    Functor f;
    f.on_objects.assign(dom.object_count(), -1);
    f.on_morphisms.assign(dom.morphism_count(), -1);
    for (int o = 0; o < dom.object_count(); ++o) {
        auto it = doc.functor_objects.find(dom.object_name(o));
        if (it == doc.functor_objects.end())
            throw ParseError("$.on_objects", "no image for object '" + dom.object_name(o) + "'");
        int img = cod.object_index(it->second);
        if (img < 0) throw ParseError("$.on_objects", "unknown target object '" + it->second + "'");
        f.on_objects[o] = img;
    }
    for (int m = 0; m < dom.morphism_count(); ++m) {
        auto it = doc.functor_morphisms.find(dom.mor(m).name);
        if (it == doc.functor_morphisms.end())
            throw ParseError("$.on_morphisms", "no image for morphism '" + dom.mor(m).name + "'");
        int img = cod.morphism_index(it->second);
        if (img < 0) throw ParseError("$.on_morphisms", "unknown target morphism '" + it->second + "'");
        f.on_morphisms[m] = img;
    }
    std::string why;
    if (!functor_valid(dom, cod, f, &why)) throw LawError("not a functor: " + why);
    return f;
}

Json emit_category(const FiniteCategory& cat) {
    Json j;
    j["objects"] = Json::array();
    for (int o = 0; o < cat.object_count(); ++o) j["objects"].push_back(cat.object_name(o));
    j["morphisms"] = Json::array();
    for (int m = 0; m < cat.morphism_count(); ++m) {
        Json jm;
        jm["name"] = cat.mor(m).name;
        jm["dom"] = cat.object_name(cat.dom(m));
        jm["cod"] = cat.object_name(cat.cod(m));
        j["morphisms"].push_back(std::move(jm));
    }
    j["identities"] = Json::object();
    for (int o = 0; o < cat.object_count(); ++o)
        j["identities"][cat.object_name(o)] = cat.mor(cat.identity(o)).name;
    j["composition"] = Json::array();
    for (int g = 0; g < cat.morphism_count(); ++g)
        for (int f = 0; f < cat.morphism_count(); ++f) {
            if (!cat.composable(g, f)) continue;
            if (cat.is_identity(g) || cat.is_identity(f)) continue; // implied
            j["composition"].push_back(
                Json::array({cat.mor(g).name, cat.mor(f).name, cat.mor(cat.compose(g, f)).name}));
        }
    return j;
}

Json emit_site(const Site& site) {
    Json j = emit_category(site.cat());
    if (site.principal_kind()) {
        j["stable_class"] = Json::array();
        for (int t : site.tclass()) j["stable_class"].push_back(site.cat().mor(t).name);
    } else {
        j["stable_families"] = Json::array();
        for (const auto& f : site.families()) {
            Json jf;
            jf["cod"] = site.cat().object_name(f.codomain);
            jf["members"] = Json::array();
            for (int m : f.members) jf["members"].push_back(site.cat().mor(m).name);
            j["stable_families"].push_back(std::move(jf));
        }
    }
    if (!site.empty_covered().empty()) {
        j["empty_covered"] = Json::array();
        for (int o : site.empty_covered()) j["empty_covered"].push_back(site.cat().object_name(o));
    }
    return j;
}

Json emit_poset(const FinPoset& p) {
    Json j;
    j["elements"] = Json::array();
    for (const auto& e : p.elements) j["elements"].push_back(e);
    j["leq"] = Json::array();
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (a != b && p.le(a, b)) j["leq"].push_back(Json::array({p.elements[a], p.elements[b]}));
    return j;
}

Json emit_semilattice(const JoinSemilattice& s) {
    Json j = emit_poset(s.poset);
    j["bottom"] = s.poset.elements[s.bottom];
    j["join"] = Json::array();
    for (int a = 0; a < s.size(); ++a)
        for (int b = a + 1; b < s.size(); ++b)
            j["join"].push_back(Json::array(
                {s.poset.elements[a], s.poset.elements[b], s.poset.elements[s.join[a][b]]}));
    return j;
}

} // namespace finsite
