#include "finsite/fincat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "finsite/union_find.hpp"

namespace finsite {

FiniteCategory FiniteCategory::make(std::vector<std::string> objects, std::vector<MorData> morphisms,
                                    std::vector<int> identities,
                                    const std::vector<std::array<int, 3>>& composites) {
    FiniteCategory c;
    c.objects_ = std::move(objects);
    c.morphisms_ = std::move(morphisms);
    c.identity_ = std::move(identities);

    const int no = c.object_count();
    const int nm = c.morphism_count();
    for (const auto& m : c.morphisms_) {
        if (m.dom < 0 || m.dom >= no || m.cod < 0 || m.cod >= no)
            throw std::invalid_argument("morphism '" + m.name + "' has a dangling endpoint");
    }
    if (static_cast<int>(c.identity_.size()) != no)
        throw std::invalid_argument("identity table must list one morphism per object");
    for (int o = 0; o < no; ++o) {
        int id = c.identity_[o];
        if (id < 0 || id >= nm)
            throw std::invalid_argument("identity of '" + c.objects_[o] + "' is a dangling morphism id");
        if (c.morphisms_[id].dom != o || c.morphisms_[id].cod != o)
            throw std::invalid_argument("identity of '" + c.objects_[o] + "' is not an endomorphism of it");
    }
    c.compose_.assign(nm, std::vector<int>(nm, -1));
    for (const auto& [g, f, gf] : composites) {
        if (g < 0 || g >= nm || f < 0 || f >= nm || gf < 0 || gf >= nm)
            throw std::invalid_argument("composition entry with dangling morphism id");
        if (c.morphisms_[f].cod != c.morphisms_[g].dom)
            throw std::invalid_argument("composite declared for non-composable pair (" + c.morphisms_[g].name +
                                        ", " + c.morphisms_[f].name + ")");
        if (c.compose_[g][f] != -1 && c.compose_[g][f] != gf)
            throw std::invalid_argument("conflicting composites for (" + c.morphisms_[g].name + ", " +
                                        c.morphisms_[f].name + ")");
        c.compose_[g][f] = gf;
    }
    // Identity composites may be left implicit in input files.
    for (int m = 0; m < nm; ++m) {
        int il = c.identity_[c.morphisms_[m].cod];
        int ir = c.identity_[c.morphisms_[m].dom];
        if (c.compose_[il][m] == -1) c.compose_[il][m] = m;
        if (c.compose_[m][ir] == -1) c.compose_[m][ir] = m;
    }
    c.build_hom_tables();
    return c;
}

void FiniteCategory::build_hom_tables() {
    hom_.assign(object_count(), std::vector<std::vector<int>>(object_count()));
    for (int m = 0; m < morphism_count(); ++m) hom_[morphisms_[m].dom][morphisms_[m].cod].push_back(m);
}

int FiniteCategory::object_index(const std::string& name) const {
    for (int i = 0; i < object_count(); ++i)
        if (objects_[i] == name) return i;
    return -1;
}

int FiniteCategory::morphism_index(const std::string& name) const {
    for (int i = 0; i < morphism_count(); ++i)
        if (morphisms_[i].name == name) return i;
    return -1;
}

int FiniteCategory::compose(int g, int f) const {
    if (!composable(g, f))
        throw std::invalid_argument("compose(" + morphisms_.at(g).name + ", " + morphisms_.at(f).name +
                                    "): pair is not composable");
    return compose_[g][f];
}

std::vector<int> FiniteCategory::morphisms_into(int c) const {
    std::vector<int> out;
    for (int m = 0; m < morphism_count(); ++m)
        if (morphisms_[m].cod == c) out.push_back(m);
    return out;
}

std::vector<int> FiniteCategory::morphisms_from(int d) const {
    std::vector<int> out;
    for (int m = 0; m < morphism_count(); ++m)
        if (morphisms_[m].dom == d) out.push_back(m);
    return out;
}

FiniteCategory FiniteCategory::opposite() const {
    FiniteCategory op;
    op.objects_ = objects_;
    op.identity_ = identity_;
    op.morphisms_.reserve(morphisms_.size());
    for (const auto& m : morphisms_) op.morphisms_.push_back({m.name, m.cod, m.dom});
    const int nm = morphism_count();
    op.compose_.assign(nm, std::vector<int>(nm, -1));
    for (int g = 0; g < nm; ++g)
        for (int f = 0; f < nm; ++f)
            if (op.morphisms_[f].cod == op.morphisms_[g].dom) op.compose_[g][f] = compose_[f][g];
    op.build_hom_tables();
    return op;
}

int CategoryBuilder::add_object(const std::string& name) {
    objects_.push_back(name);
    identity_.push_back(-1);
    return static_cast<int>(objects_.size()) - 1;
}

int CategoryBuilder::add_morphism(const std::string& name, int dom, int cod) {
    morphisms_.push_back({name, dom, cod});
    return static_cast<int>(morphisms_.size()) - 1;
}

void CategoryBuilder::set_identity(int obj, int mor) { identity_.at(obj) = mor; }

void CategoryBuilder::set_composite(int g, int f, int gf) { composites_.push_back({g, f, gf}); }

FiniteCategory CategoryBuilder::build() const {
    return FiniteCategory::make(objects_, morphisms_, identity_, composites_);
}

std::string ValidationReport::to_string() const {
    if (issues.empty()) return "valid";
    std::ostringstream os;
    for (const auto& i : issues) os << "[" << i.kind << "] " << i.detail << "\n";
    return os.str();
}

ValidationReport validate(const FiniteCategory& cat) {
    ValidationReport rep;
    auto law = [&rep](const std::string& d) { rep.issues.push_back({"law", d}); };
    auto structure = [&rep](const std::string& d) { rep.issues.push_back({"structure", d}); };

    const int nm = cat.morphism_count();
    for (int g = 0; g < nm; ++g)
        for (int f = 0; f < nm; ++f) {
            if (!cat.composable(g, f)) continue;
            int gf = cat.compose(g, f);
            if (gf == -1) {
                structure("missing composite at (" + cat.mor(g).name + ", " + cat.mor(f).name + ")");
                continue;
            }
            if (cat.dom(gf) != cat.dom(f) || cat.cod(gf) != cat.cod(g))
                structure("composite of (" + cat.mor(g).name + ", " + cat.mor(f).name +
                          ") has mismatched endpoints");
        }
    if (!rep.issues.empty()) return rep; // laws are meaningless over a holed table

    for (int m = 0; m < nm; ++m) {
        int il = cat.identity(cat.cod(m));
        int ir = cat.identity(cat.dom(m));
        if (cat.compose(il, m) != m)
            law("left identity fails at " + cat.mor(m).name);
        if (cat.compose(m, ir) != m)
            law("right identity fails at " + cat.mor(m).name);
    }
    for (int h = 0; h < nm; ++h)
        for (int g = 0; g < nm; ++g) {
            if (!cat.composable(h, g)) continue;
            for (int f = 0; f < nm; ++f) {
                if (!cat.composable(g, f)) continue;
                if (cat.compose(cat.compose(h, g), f) != cat.compose(h, cat.compose(g, f)))
                    law("associativity fails on triple (" + cat.mor(h).name + ", " + cat.mor(g).name + ", " +
                        cat.mor(f).name + ")");
            }
        }
    return rep;
}

MorphismFlags classify_morphism(const FiniteCategory& cat, int m) {
    if (m < 0 || m >= cat.morphism_count()) throw std::out_of_range("unknown morphism id");
    MorphismFlags fl;
    const int nm = cat.morphism_count();

    fl.mono = true;
    for (int p = 0; p < nm && fl.mono; ++p)
        for (int q = 0; q < nm; ++q) {
            if (cat.dom(p) != cat.dom(q) || cat.cod(p) != cat.dom(m) || cat.cod(q) != cat.dom(m)) continue;
            if (cat.compose(m, p) == cat.compose(m, q) && p != q) {
                fl.mono = false;
                break;
            }
        }
    fl.epi = true;
    for (int p = 0; p < nm && fl.epi; ++p)
        for (int q = 0; q < nm; ++q) {
            if (cat.dom(p) != cat.cod(m) || cat.dom(q) != cat.cod(m) || cat.cod(p) != cat.cod(q)) continue;
            if (cat.compose(p, m) == cat.compose(q, m) && p != q) {
                fl.epi = false;
                break;
            }
        }
    for (int s : cat.hom(cat.cod(m), cat.dom(m))) {
        if (cat.compose(m, s) == cat.identity(cat.cod(m))) {
            fl.split_epi = true;
            if (cat.compose(s, m) == cat.identity(cat.dom(m))) fl.iso = true;
        }
    }
    return fl;
}

namespace {

// Parallel pairs (p, q), p <= q, coequalized by h.
std::vector<std::pair<int, int>> pairs_coequalized_by(const FiniteCategory& cat, int h) {
    std::vector<std::pair<int, int>> out;
    const int d = cat.dom(h);
    for (int x = 0; x < cat.object_count(); ++x) {
        const auto& hx = cat.hom(x, d);
        for (size_t i = 0; i < hx.size(); ++i)
            for (size_t j = i; j < hx.size(); ++j)
                if (cat.compose(h, hx[i]) == cat.compose(h, hx[j])) out.push_back({hx[i], hx[j]});
    }
    return out;
}

} // namespace

bool is_strict_epi(const FiniteCategory& cat, int h) {
    if (h < 0 || h >= cat.morphism_count()) throw std::out_of_range("unknown morphism id");
    auto pairs = pairs_coequalized_by(cat, h);
    for (int k : cat.morphisms_from(cat.dom(h))) {
        bool compatible = true;
        for (auto [p, q] : pairs)
            if (cat.compose(k, p) != cat.compose(k, q)) {
                compatible = false;
                break;
            }
        if (!compatible) continue;
        int factorizations = 0;
        for (int u : cat.hom(cat.cod(h), cat.cod(k)))
            if (cat.compose(u, h) == k) ++factorizations;
        if (factorizations != 1) return false;
    }
    return true;
}

bool is_strictly_epic_family(const FiniteCategory& cat, const std::vector<int>& family, int codomain) {
    for (int f : family)
        if (cat.cod(f) != codomain) throw std::invalid_argument("family member does not target the codomain");

    // Relation pairs the family jointly coequalizes: (i, h) ~ (j, k) with
    // f_i∘h = f_j∘k. A co-compatible family {k_i} must coequalize the same
    // pairs; the family is strictly epic iff each such {k_i} factors through
    // it by a unique morphism out of the codomain.
    const int n = static_cast<int>(family.size());
    struct Rel {
        int i, h, j, k;
    };
    std::vector<Rel> rels;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int h = 0; h < cat.morphism_count(); ++h) {
                if (cat.cod(h) != cat.dom(family[i])) continue;
                for (int k = 0; k < cat.morphism_count(); ++k) {
                    if (cat.cod(k) != cat.dom(family[j])) continue;
                    if (cat.dom(h) != cat.dom(k)) continue;
                    if (cat.compose(family[i], h) == cat.compose(family[j], k)) rels.push_back({i, h, j, k});
                }
            }

    // Enumerate candidate co-compatible families (common target V).
    for (int v = 0; v < cat.object_count(); ++v) {
        std::vector<int> choice(n, -1);
        std::vector<const std::vector<int>*> cands(n);
        for (int i = 0; i < n; ++i) cands[i] = &cat.hom(cat.dom(family[i]), v);
        bool any_empty = false;
        for (int i = 0; i < n; ++i)
            if (cands[i]->empty()) any_empty = true;
        if (any_empty && n > 0) continue;

        std::vector<size_t> idx(n, 0);
        bool done = false;
        while (!done) {
            for (int i = 0; i < n; ++i) choice[i] = n ? (*cands[i])[idx[i]] : -1;
            bool compatible = true;
            for (const auto& r : rels)
                if (cat.compose(choice[r.i], r.h) != cat.compose(choice[r.j], r.k)) {
                    compatible = false;
                    break;
                }
            if (compatible) {
                int factorizations = 0;
                for (int u : cat.hom(codomain, v)) {
                    bool all = true;
                    for (int i = 0; i < n; ++i)
                        if (cat.compose(u, family[i]) != choice[i]) {
                            all = false;
                            break;
                        }
                    if (all) ++factorizations;
                }
                if (factorizations != 1) return false;
            }
            if (n == 0) break;
            int pos = n - 1;
            while (pos >= 0 && ++idx[pos] == cands[pos]->size()) {
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) done = true;
        }
    }
    return true;
}

bool diagram_valid(const Diagram& d, const FiniteCategory& target, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (static_cast<int>(d.on_objects.size()) != d.shape.object_count()) return fail("object table size mismatch");
    if (static_cast<int>(d.on_morphisms.size()) != d.shape.morphism_count())
        return fail("morphism table size mismatch");
    for (int o : d.on_objects)
        if (o < 0 || o >= target.object_count()) return fail("dangling object image");
    for (int m = 0; m < d.shape.morphism_count(); ++m) {
        int im = d.on_morphisms[m];
        if (im < 0 || im >= target.morphism_count()) return fail("dangling morphism image");
        if (target.dom(im) != d.on_objects[d.shape.dom(m)] || target.cod(im) != d.on_objects[d.shape.cod(m)])
            return fail("image of " + d.shape.mor(m).name + " has wrong endpoints");
    }
    for (int o = 0; o < d.shape.object_count(); ++o)
        if (d.on_morphisms[d.shape.identity(o)] != target.identity(d.on_objects[o]))
            return fail("identity not preserved at shape object " + d.shape.object_name(o));
    for (int g = 0; g < d.shape.morphism_count(); ++g)
        for (int f = 0; f < d.shape.morphism_count(); ++f) {
            if (!d.shape.composable(g, f)) continue;
            if (d.on_morphisms[d.shape.compose(g, f)] != target.compose(d.on_morphisms[g], d.on_morphisms[f]))
                return fail("composition not preserved on (" + d.shape.mor(g).name + ", " + d.shape.mor(f).name +
                            ")");
        }
    return true;
}

bool is_cocone(const FiniteCategory& cat, const Diagram& d, const Cocone& c) {
    if (static_cast<int>(c.legs.size()) != d.shape.object_count()) return false;
    for (int i = 0; i < d.shape.object_count(); ++i) {
        int leg = c.legs[i];
        if (leg < 0 || leg >= cat.morphism_count()) return false;
        if (cat.dom(leg) != d.on_objects[i] || cat.cod(leg) != c.vertex) return false;
    }
    for (int m = 0; m < d.shape.morphism_count(); ++m) {
        int i = d.shape.dom(m), j = d.shape.cod(m);
        if (cat.compose(c.legs[j], d.on_morphisms[m]) != c.legs[i]) return false;
    }
    return true;
}

std::vector<Cocone> enumerate_cocones(const FiniteCategory& cat, const Diagram& d) {
    std::vector<Cocone> out;
    const int k = d.shape.object_count();
    for (int v = 0; v < cat.object_count(); ++v) {
        Cocone c;
        c.vertex = v;
        c.legs.assign(k, -1);
        // depth-first assignment with incremental commutativity checks
        std::vector<int> pos(k, 0);
        int depth = 0;
        if (k == 0) {
            out.push_back(c);
            continue;
        }
        while (depth >= 0) {
            const auto& cands = cat.hom(d.on_objects[depth], v);
            if (pos[depth] >= static_cast<int>(cands.size())) {
                pos[depth] = 0;
                c.legs[depth] = -1;
                --depth;
                if (depth >= 0) ++pos[depth];
                continue;
            }
            c.legs[depth] = cands[pos[depth]];
            bool ok = true;
            for (int m = 0; m < d.shape.morphism_count() && ok; ++m) {
                int i = d.shape.dom(m), j = d.shape.cod(m);
                if (i > depth || j > depth) continue;
                if (cat.compose(c.legs[j], d.on_morphisms[m]) != c.legs[i]) ok = false;
            }
            if (!ok) {
                ++pos[depth];
                continue;
            }
            if (depth == k - 1) {
                out.push_back(c);
                ++pos[depth];
            } else {
                ++depth;
            }
        }
    }
    return out;
}

bool is_colimit_cocone(const FiniteCategory& cat, const Diagram& d, const Cocone& c0) {
    if (!is_cocone(cat, d, c0)) return false;
    auto all = enumerate_cocones(cat, d);
    for (const auto& c : all) {
        int count = 0;
        for (int u : cat.hom(c0.vertex, c.vertex)) {
            bool factors = true;
            for (int i = 0; i < d.shape.object_count(); ++i)
                if (cat.compose(u, c0.legs[i]) != c.legs[i]) {
                    factors = false;
                    break;
                }
            if (factors) ++count;
        }
        if (count != 1) return false;
    }
    return true;
}

std::optional<Cocone> colimit(const FiniteCategory& cat, const Diagram& d) {
    auto all = enumerate_cocones(cat, d);
    // enumerate_cocones scans vertices and legs in increasing order, so the
    // first universal cocone is the canonical representative.
    for (const auto& c0 : all)
        if (is_colimit_cocone(cat, d, c0)) return c0;
    return std::nullopt;
}

std::optional<Cone> limit(const FiniteCategory& cat, const Diagram& d) {
    Diagram opd;
    opd.shape = d.shape.opposite();
    opd.on_objects = d.on_objects;
    opd.on_morphisms = d.on_morphisms;
    return colimit(cat.opposite(), opd);
}

Diagram funnel_diagram(const FiniteCategory& cat, int d0, const std::vector<std::pair<int, int>>& pairs) {
    CategoryBuilder b;
    int hub = b.add_object("d0");
    int hub_id = b.add_morphism("id_d0", hub, hub);
    b.set_identity(hub, hub_id);
    std::vector<int> node(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (cat.cod(pairs[i].first) != d0 || cat.cod(pairs[i].second) != d0)
            throw std::invalid_argument("funnel pair does not target d0");
        if (cat.dom(pairs[i].first) != cat.dom(pairs[i].second))
            throw std::invalid_argument("funnel pair is not parallel");
        node[i] = b.add_object("p" + std::to_string(i));
        int nid = b.add_morphism("id_p" + std::to_string(i), node[i], node[i]);
        b.set_identity(node[i], nid);
        b.add_morphism("u" + std::to_string(i), node[i], hub);
        b.add_morphism("v" + std::to_string(i), node[i], hub);
    }
    Diagram d;
    d.shape = b.build();
    d.on_objects.assign(d.shape.object_count(), -1);
    d.on_morphisms.assign(d.shape.morphism_count(), -1);
    d.on_objects[0] = d0;
    d.on_morphisms[d.shape.identity(0)] = cat.identity(d0);
    for (size_t i = 0; i < pairs.size(); ++i) {
        int nobj = d.shape.object_index("p" + std::to_string(i));
        d.on_objects[nobj] = cat.dom(pairs[i].first);
        d.on_morphisms[d.shape.identity(nobj)] = cat.identity(cat.dom(pairs[i].first));
        d.on_morphisms[d.shape.morphism_index("u" + std::to_string(i))] = pairs[i].first;
        d.on_morphisms[d.shape.morphism_index("v" + std::to_string(i))] = pairs[i].second;
    }
    return d;
}

std::optional<std::pair<int, int>> joint_coequalizer(const FiniteCategory& cat, int d0,
                                                     const std::vector<std::pair<int, int>>& pairs) {
    Diagram d = funnel_diagram(cat, d0, pairs);
    auto c = colimit(cat, d);
    if (!c) return std::nullopt;
    return std::make_pair(c->legs[0], c->vertex);
}

std::vector<std::vector<std::pair<int, int>>> under_comma_components(const FiniteCategory& cat, int x,
                                                                     const Diagram& d) {
    std::vector<std::pair<int, int>> elems; // (shape object, morphism x -> F(i))
    for (int i = 0; i < d.shape.object_count(); ++i)
        for (int m : cat.hom(x, d.on_objects[i])) elems.push_back({i, m});
    std::map<std::pair<int, int>, int> index;
    for (size_t e = 0; e < elems.size(); ++e) index[elems[e]] = static_cast<int>(e);

    UnionFind uf(static_cast<int>(elems.size()));
    for (int a = 0; a < d.shape.morphism_count(); ++a) {
        int i = d.shape.dom(a), j = d.shape.cod(a);
        for (int m : cat.hom(x, d.on_objects[i])) {
            int im = cat.compose(d.on_morphisms[a], m);
            uf.unite(index[{i, m}], index[{j, im}]);
        }
    }
    std::vector<std::vector<std::pair<int, int>>> comps;
    for (const auto& blk : uf.blocks()) {
        std::vector<std::pair<int, int>> c;
        for (int e : blk) c.push_back(elems[e]);
        comps.push_back(std::move(c));
    }
    return comps;
}

bool functor_valid(const FiniteCategory& dom, const FiniteCategory& cod, const Functor& f, std::string* why) {
    Diagram d;
    d.shape = dom;
    d.on_objects = f.on_objects;
    d.on_morphisms = f.on_morphisms;
    return diagram_valid(d, cod, why);
}

Functor identity_functor(const FiniteCategory& cat) {
    Functor f;
    f.on_objects.resize(cat.object_count());
    f.on_morphisms.resize(cat.morphism_count());
    for (int i = 0; i < cat.object_count(); ++i) f.on_objects[i] = i;
    for (int i = 0; i < cat.morphism_count(); ++i) f.on_morphisms[i] = i;
    return f;
}

Functor compose_functors(const FiniteCategory&, const FiniteCategory&, const FiniteCategory&, const Functor& g,
                         const Functor& f) {
    Functor h;
    h.on_objects.reserve(f.on_objects.size());
    h.on_morphisms.reserve(f.on_morphisms.size());
    for (int o : f.on_objects) h.on_objects.push_back(g.on_objects.at(o));
    for (int m : f.on_morphisms) h.on_morphisms.push_back(g.on_morphisms.at(m));
    return h;
}

bool is_full(const FiniteCategory& dom, const FiniteCategory& cod, const Functor& f) {
    for (int a = 0; a < dom.object_count(); ++a)
        for (int b = 0; b < dom.object_count(); ++b) {
            for (int m : cod.hom(f.on_objects[a], f.on_objects[b])) {
                bool hit = false;
                for (int u : dom.hom(a, b))
                    if (f.on_morphisms[u] == m) {
                        hit = true;
                        break;
                    }
                if (!hit) return false;
            }
        }
    return true;
}

bool is_faithful(const FiniteCategory& dom, const FiniteCategory&, const Functor& f) {
    for (int a = 0; a < dom.object_count(); ++a)
        for (int b = 0; b < dom.object_count(); ++b) {
            const auto& h = dom.hom(a, b);
            for (size_t i = 0; i < h.size(); ++i)
                for (size_t j = i + 1; j < h.size(); ++j)
                    if (f.on_morphisms[h[i]] == f.on_morphisms[h[j]]) return false;
        }
    return true;
}

bool objects_isomorphic(const FiniteCategory& cat, int a, int b) {
    for (int f : cat.hom(a, b))
        for (int g : cat.hom(b, a))
            if (cat.compose(g, f) == cat.identity(a) && cat.compose(f, g) == cat.identity(b)) return true;
    return false;
}

bool is_essentially_surjective(const FiniteCategory& dom, const FiniteCategory& cod, const Functor& f) {
    for (int b = 0; b < cod.object_count(); ++b) {
        bool hit = false;
        for (int a = 0; a < dom.object_count() && !hit; ++a)
            if (objects_isomorphic(cod, f.on_objects[a], b)) hit = true;
        if (!hit) return false;
    }
    return true;
}

FiniteCategory full_subcategory(const FiniteCategory& cat, const std::vector<int>& objs, Functor* inclusion) {
    CategoryBuilder b;
    std::vector<int> obj_map(cat.object_count(), -1);
    for (int o : objs) obj_map[o] = b.add_object(cat.object_name(o));
    std::vector<int> mor_map(cat.morphism_count(), -1);
    for (int m = 0; m < cat.morphism_count(); ++m)
        if (obj_map[cat.dom(m)] >= 0 && obj_map[cat.cod(m)] >= 0)
            mor_map[m] = b.add_morphism(cat.mor(m).name, obj_map[cat.dom(m)], obj_map[cat.cod(m)]);
    for (int o : objs) b.set_identity(obj_map[o], mor_map[cat.identity(o)]);
    for (int g = 0; g < cat.morphism_count(); ++g)
        for (int f = 0; f < cat.morphism_count(); ++f) {
            if (mor_map[g] < 0 || mor_map[f] < 0 || !cat.composable(g, f)) continue;
            int gf = cat.compose(g, f);
            b.set_composite(mor_map[g], mor_map[f], mor_map[gf]);
        }
    if (inclusion) {
        inclusion->on_objects.clear();
        inclusion->on_morphisms.clear();
        for (int o : objs) inclusion->on_objects.push_back(o);
        for (int m = 0; m < cat.morphism_count(); ++m)
            if (mor_map[m] >= 0) inclusion->on_morphisms.push_back(m);
    }
    return b.build();
}

namespace {

// Invariant used to prune the object assignment in the isomorphism search.
std::vector<int> object_profile(const FiniteCategory& c, int o) {
    std::vector<int> prof;
    prof.push_back(static_cast<int>(c.hom(o, o).size()));
    std::vector<int> outs, ins;
    for (int b = 0; b < c.object_count(); ++b) {
        if (b == o) continue;
        outs.push_back(static_cast<int>(c.hom(o, b).size()));
        ins.push_back(static_cast<int>(c.hom(b, o).size()));
    }
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    prof.insert(prof.end(), outs.begin(), outs.end());
    prof.insert(prof.end(), ins.begin(), ins.end());
    return prof;
}

bool extend_morphism_bijection(const FiniteCategory& a, const FiniteCategory& b, const std::vector<int>& obj_map,
                               std::vector<int>& mor_map, std::vector<char>& used, int next) {
    const int nm = a.morphism_count();
    if (next == nm) {
        for (int g = 0; g < nm; ++g)
            for (int f = 0; f < nm; ++f) {
                if (!a.composable(g, f)) continue;
                if (b.compose(mor_map[g], mor_map[f]) != mor_map[a.compose(g, f)]) return false;
            }
        return true;
    }
    if (mor_map[next] != -1) return extend_morphism_bijection(a, b, obj_map, mor_map, used, next + 1);
    for (int cand : b.hom(obj_map[a.dom(next)], obj_map[a.cod(next)])) {
        if (used[cand]) continue;
        mor_map[next] = cand;
        used[cand] = 1;
        bool ok = true;
        // partial composition consistency
        for (int g = 0; g <= next && ok; ++g) {
            if (mor_map[g] < 0) continue;
            for (int f = 0; f <= next && ok; ++f) {
                if (mor_map[f] < 0) continue;
                if (a.composable(g, f)) {
                    int gf = a.compose(g, f);
                    if (mor_map[gf] >= 0 && b.compose(mor_map[g], mor_map[f]) != mor_map[gf]) ok = false;
                }
            }
        }
        if (ok && extend_morphism_bijection(a, b, obj_map, mor_map, used, next + 1)) return true;
        mor_map[next] = -1;
        used[cand] = 0;
    }
    return false;
}

bool extend_object_bijection(const FiniteCategory& a, const FiniteCategory& b, std::vector<int>& obj_map,
                             std::vector<char>& used, int next, Functor& out) {
    const int no = a.object_count();
    if (next == no) {
        // hom sizes agree; now search a structure-preserving morphism bijection
        std::vector<int> mor_map(a.morphism_count(), -1);
        std::vector<char> mused(b.morphism_count(), 0);
        for (int o = 0; o < no; ++o) {
            int ia = a.identity(o), ib = b.identity(obj_map[o]);
            if (mor_map[ia] == -1) {
                mor_map[ia] = ib;
                mused[ib] = 1;
            }
        }
        if (extend_morphism_bijection(a, b, obj_map, mor_map, mused, 0)) {
            out.on_objects = obj_map;
            out.on_morphisms = mor_map;
            return true;
        }
        return false;
    }
    auto prof = object_profile(a, next);
    for (int cand = 0; cand < b.object_count(); ++cand) {
        if (used[cand]) continue;
        if (object_profile(b, cand) != prof) continue;
        bool ok = true;
        for (int prev = 0; prev < next && ok; ++prev) {
            if (a.hom(prev, next).size() != b.hom(obj_map[prev], cand).size()) ok = false;
            if (a.hom(next, prev).size() != b.hom(cand, obj_map[prev]).size()) ok = false;
        }
        if (!ok) continue;
        obj_map[next] = cand;
        used[cand] = 1;
        if (extend_object_bijection(a, b, obj_map, used, next + 1, out)) return true;
        obj_map[next] = -1;
        used[cand] = 0;
    }
    return false;
}

struct Skeleton {
    FiniteCategory cat;
    Functor projection; // ambient -> skeleton
    Functor inclusion;  // skeleton -> ambient
};

Skeleton skeleton_of(const FiniteCategory& cat) {
    const int no = cat.object_count();
    std::vector<int> repr(no, -1);
    std::vector<int> to_repr(no, -1), from_repr(no, -1); // chosen isos o -> repr(o) and back
    std::vector<int> reps;
    for (int o = 0; o < no; ++o) {
        for (int r : reps) {
            for (int f : cat.hom(o, r))
                for (int g : cat.hom(r, o))
                    if (cat.compose(g, f) == cat.identity(o) && cat.compose(f, g) == cat.identity(r)) {
                        repr[o] = r;
                        to_repr[o] = f;
                        from_repr[o] = g;
                        goto matched;
                    }
        }
    matched:
        if (repr[o] == -1) {
            repr[o] = o;
            to_repr[o] = cat.identity(o);
            from_repr[o] = cat.identity(o);
            reps.push_back(o);
        }
    }
    Skeleton s;
    Functor incl;
    s.cat = full_subcategory(cat, reps, &incl);
    s.inclusion = incl;
    std::vector<int> obj_to_skel(no, -1);
    for (size_t i = 0; i < incl.on_objects.size(); ++i) obj_to_skel[incl.on_objects[i]] = static_cast<int>(i);
    std::vector<int> mor_to_skel(cat.morphism_count(), -1);
    for (size_t i = 0; i < incl.on_morphisms.size(); ++i) mor_to_skel[incl.on_morphisms[i]] = static_cast<int>(i);

    s.projection.on_objects.resize(no);
    s.projection.on_morphisms.resize(cat.morphism_count());
    for (int o = 0; o < no; ++o) s.projection.on_objects[o] = obj_to_skel[repr[o]];
    for (int m = 0; m < cat.morphism_count(); ++m) {
        int transported = cat.compose(to_repr[cat.cod(m)], cat.compose(m, from_repr[cat.dom(m)]));
        s.projection.on_morphisms[m] = mor_to_skel[transported];
    }
    return s;
}

} // namespace

std::optional<Functor> find_isomorphism(const FiniteCategory& a, const FiniteCategory& b) {
    if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count()) return std::nullopt;
    std::vector<int> obj_map(a.object_count(), -1);
    std::vector<char> used(b.object_count(), 0);
    Functor out;
    if (extend_object_bijection(a, b, obj_map, used, 0, out)) return out;
    return std::nullopt;
}

std::optional<Functor> find_equivalence(const FiniteCategory& a, const FiniteCategory& b) {
    Skeleton sa = skeleton_of(a);
    Skeleton sb = skeleton_of(b);
    auto iso = find_isomorphism(sa.cat, sb.cat);
    if (!iso) return std::nullopt;
    Functor skel_to_b = compose_functors(sa.cat, sb.cat, b, sb.inclusion, *iso);
    return compose_functors(a, sa.cat, b, skel_to_b, sa.projection);
}

} // namespace finsite
