#include "finsite/classify.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "finsite/sheaf.hpp"

namespace finsite {

std::string to_string(VerdictValue v) {
    switch (v) {
        case VerdictValue::True: return "true";
        case VerdictValue::False: return "false";
        default: return "inconclusive";
    }
}

std::string ClassificationReport::to_text() const {
    std::ostringstream os;
    auto line = [&os](const char* name, const Verdict& v) {
        os << name << ": " << to_string(v.value);
        if (!v.note.empty()) os << "  (" << v.note << ")";
        os << "\n";
    };
    line("reductive", reductive);
    line("coalescent", coalescent);
    line("effectual", effectual);
    line("positive", positive);
    line("hasPullbacks", has_pullbacks);
    line("hasEqualizers", has_equalizers);
    line("locallyRegular", locally_regular);
    line("regular", regular);
    line("effective", effective);
    line("augmented", augmented);
    return os.str();
}

std::set<int> strict_epimorphisms(const FiniteCategory& cat) {
    std::set<int> out;
    for (int m = 0; m < cat.morphism_count(); ++m)
        if (is_strict_epi(cat, m)) out.insert(m);
    return out;
}

std::vector<Family> strictly_epic_families(const FiniteCategory& cat) {
    std::vector<Family> out;
    for (int c = 0; c < cat.object_count(); ++c) {
        std::vector<int> into = cat.morphisms_into(c);
        const int n = static_cast<int>(into.size());
        for (long long mask = 0; mask < (1LL << n); ++mask) {
            Family f;
            f.codomain = c;
            for (int i = 0; i < n; ++i)
                if (mask & (1LL << i)) f.members.push_back(into[i]);
            if (is_strictly_epic_family(cat, f.members, c)) out.push_back(std::move(f));
        }
    }
    return out;
}

namespace {

// Distinct parallel pairs with the given codomain, p < q.
std::vector<std::pair<int, int>> parallel_pairs_into(const FiniteCategory& cat, int d0) {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < cat.object_count(); ++x) {
        const auto& h = cat.hom(x, d0);
        for (size_t i = 0; i < h.size(); ++i)
            for (size_t j = i + 1; j < h.size(); ++j) out.push_back({h[i], h[j]});
    }
    return out;
}

Diagram discrete_pair_diagram(const FiniteCategory& cat, int x, int y) {
    CategoryBuilder b;
    int ox = b.add_object("l");
    int oy = b.add_object("r");
    b.set_identity(ox, b.add_morphism("id_l", ox, ox));
    b.set_identity(oy, b.add_morphism("id_r", oy, oy));
    Diagram d;
    d.shape = b.build();
    d.on_objects = {x, y};
    d.on_morphisms = {cat.identity(x), cat.identity(y)};
    return d;
}

Diagram cospan_diagram(const FiniteCategory& cat, int f, int g) {
    // f : X -> Z <- Y : g
    CategoryBuilder b;
    int ox = b.add_object("x");
    int oy = b.add_object("y");
    int oz = b.add_object("z");
    b.set_identity(ox, b.add_morphism("id_x", ox, ox));
    b.set_identity(oy, b.add_morphism("id_y", oy, oy));
    b.set_identity(oz, b.add_morphism("id_z", oz, oz));
    b.add_morphism("f", ox, oz);
    b.add_morphism("g", oy, oz);
    Diagram d;
    d.shape = b.build();
    d.on_objects = {cat.dom(f), cat.dom(g), cat.cod(f)};
    d.on_morphisms.assign(5, -1);
    d.on_morphisms[d.shape.identity(0)] = cat.identity(cat.dom(f));
    d.on_morphisms[d.shape.identity(1)] = cat.identity(cat.dom(g));
    d.on_morphisms[d.shape.identity(2)] = cat.identity(cat.cod(f));
    d.on_morphisms[d.shape.morphism_index("f")] = f;
    d.on_morphisms[d.shape.morphism_index("g")] = g;
    return d;
}

Diagram parallel_pair_diagram(const FiniteCategory& cat, int f, int g) {
    CategoryBuilder b;
    int oa = b.add_object("a");
    int ob = b.add_object("b");
    b.set_identity(oa, b.add_morphism("id_a", oa, oa));
    b.set_identity(ob, b.add_morphism("id_b", ob, ob));
    b.add_morphism("f", oa, ob);
    b.add_morphism("g", oa, ob);
    Diagram d;
    d.shape = b.build();
    d.on_objects = {cat.dom(f), cat.cod(f)};
    d.on_morphisms.assign(4, -1);
    d.on_morphisms[d.shape.identity(0)] = cat.identity(cat.dom(f));
    d.on_morphisms[d.shape.identity(1)] = cat.identity(cat.cod(f));
    d.on_morphisms[d.shape.morphism_index("f")] = f;
    d.on_morphisms[d.shape.morphism_index("g")] = g;
    return d;
}

std::optional<std::tuple<int, int, int>> binary_coproduct(const FiniteCategory& cat, int x, int y) {
    auto c = colimit(cat, discrete_pair_diagram(cat, x, y));
    if (!c) return std::nullopt;
    return std::make_tuple(c->vertex, c->legs[0], c->legs[1]);
}

std::optional<std::tuple<int, int, int>> pullback(const FiniteCategory& cat, int f, int g) {
    auto c = limit(cat, cospan_diagram(cat, f, g));
    if (!c) return std::nullopt;
    return std::make_tuple(c->vertex, c->legs[0], c->legs[1]); // apex, apex->dom f, apex->dom g
}

} // namespace

std::optional<int> initial_object(const FiniteCategory& cat) {
    for (int i = 0; i < cat.object_count(); ++i) {
        bool ok = true;
        for (int v = 0; v < cat.object_count() && ok; ++v)
            if (cat.hom(i, v).size() != 1) ok = false;
        if (ok) return i;
    }
    return std::nullopt;
}

std::optional<int> terminal_object(const FiniteCategory& cat) {
    for (int t = 0; t < cat.object_count(); ++t) {
        bool ok = true;
        for (int v = 0; v < cat.object_count() && ok; ++v)
            if (cat.hom(v, t).size() != 1) ok = false;
        if (ok) return t;
    }
    return std::nullopt;
}

bool is_strict_initial(const FiniteCategory& cat, int obj) {
    for (int v = 0; v < cat.object_count(); ++v)
        if (cat.hom(obj, v).size() != 1) return false;
    for (int m : cat.morphisms_into(obj))
        if (!classify_morphism(cat, m).iso) return false;
    return true;
}

Verdict has_funneling_colimits(const FiniteCategory& cat, const ClassifyOptions& opt) {
    for (int d0 = 0; d0 < cat.object_count(); ++d0) {
        auto pairs = parallel_pairs_into(cat, d0);
        const int n = static_cast<int>(pairs.size());
        if ((1LL << n) > opt.funnel_cap)
            return Verdict::unknown("funnel cap " + std::to_string(opt.funnel_cap) + " exceeded at " +
                                    cat.object_name(d0));
        for (long long mask = 0; mask < (1LL << n); ++mask) {
            std::vector<std::pair<int, int>> sub;
            for (int i = 0; i < n; ++i)
                if (mask & (1LL << i)) sub.push_back(pairs[i]);
            if (!joint_coequalizer(cat, d0, sub)) {
                std::string w = "funnel at " + cat.object_name(d0) + " with pairs {";
                for (auto [p, q] : sub) w += "(" + cat.mor(p).name + "," + cat.mor(q).name + ")";
                return Verdict::no(w + "} has no colimit");
            }
        }
    }
    return Verdict::yes();
}

Verdict has_finite_coproducts(const FiniteCategory& cat) {
    if (!initial_object(cat)) return Verdict::no("no initial object");
    for (int x = 0; x < cat.object_count(); ++x)
        for (int y = x; y < cat.object_count(); ++y)
            if (!binary_coproduct(cat, x, y))
                return Verdict::no("no coproduct of " + cat.object_name(x) + " and " + cat.object_name(y));
    return Verdict::yes();
}

Verdict has_pullbacks(const FiniteCategory& cat) {
    for (int f = 0; f < cat.morphism_count(); ++f)
        for (int g = 0; g < cat.morphism_count(); ++g) {
            if (cat.cod(f) != cat.cod(g)) continue;
            if (!pullback(cat, f, g))
                return Verdict::no("no pullback of (" + cat.mor(f).name + ", " + cat.mor(g).name + ")");
        }
    return Verdict::yes();
}

Verdict has_equalizers(const FiniteCategory& cat) {
    for (int f = 0; f < cat.morphism_count(); ++f)
        for (int g = 0; g < cat.morphism_count(); ++g) {
            if (cat.dom(f) != cat.dom(g) || cat.cod(f) != cat.cod(g)) continue;
            if (!limit(cat, parallel_pair_diagram(cat, f, g)))
                return Verdict::no("no equalizer of (" + cat.mor(f).name + ", " + cat.mor(g).name + ")");
        }
    return Verdict::yes();
}

Verdict is_reductive(const FiniteCategory& cat, const ClassifyOptions& opt) {
    Verdict fc = has_funneling_colimits(cat, opt);
    if (!fc.is_true()) return fc;
    auto rep = check_stable_class(cat, strict_epimorphisms(cat));
    if (!rep.stable()) return Verdict::no("strict epimorphisms are not stable: " + rep.witness);
    return Verdict::yes();
}

Verdict is_coalescent(const FiniteCategory& cat, const ClassifyOptions& opt) {
    Verdict cp = has_finite_coproducts(cat);
    if (cp.is_false()) return cp;
    Verdict fc = has_funneling_colimits(cat, opt);
    if (!fc.is_true()) return fc;
    auto rep = check_stable_family_class(cat, strictly_epic_families(cat));
    if (!rep.stable()) return Verdict::no("strictly epic families are not stable: " + rep.witness);
    return Verdict::yes();
}

Verdict is_effectual(const FiniteCategory& cat, const ClassifyOptions& opt) {
    {
        Verdict red = is_reductive(cat, opt);
        if (!red.is_true()) {
            Verdict coal = is_coalescent(cat, opt);
            if (!coal.is_true())
                return Verdict::unknown("effectuality is defined for reductive or coalescent categories");
        }
    }
    auto strict = strict_epimorphisms(cat);
    for (int d0 = 0; d0 < cat.object_count(); ++d0) {
        auto pairs = parallel_pairs_into(cat, d0);
        const int n = static_cast<int>(pairs.size());
        if ((1LL << n) > opt.funnel_cap)
            return Verdict::unknown("funnel cap exceeded at " + cat.object_name(d0));
        for (long long mask = 0; mask < (1LL << n); ++mask) {
            std::vector<std::pair<int, int>> sub;
            for (int i = 0; i < n; ++i)
                if (mask & (1LL << i)) sub.push_back(pairs[i]);
            auto colim = joint_coequalizer(cat, d0, sub);
            if (!colim) continue;
            int lambda = colim->first;
            Diagram funnel = funnel_diagram(cat, d0, sub);
            for (int c = 0; c < cat.object_count(); ++c)
                for (int g1 : cat.hom(c, d0))
                    for (int g2 : cat.hom(c, d0)) {
                        if (cat.compose(lambda, g1) != cat.compose(lambda, g2)) continue;
                        bool witnessed = false;
                        for (int t : strict) {
                            if (cat.cod(t) != c) continue;
                            auto comps = under_comma_components(cat, cat.dom(t), funnel);
                            int c1 = -1, c2 = -1;
                            for (size_t k = 0; k < comps.size(); ++k)
                                for (const auto& [node, m] : comps[k]) {
                                    if (node == 0 && m == cat.compose(g1, t)) c1 = static_cast<int>(k);
                                    if (node == 0 && m == cat.compose(g2, t)) c2 = static_cast<int>(k);
                                }
                            if (c1 >= 0 && c1 == c2) {
                                witnessed = true;
                                break;
                            }
                        }
                        if (!witnessed) {
                            std::string w = "funnel at " + cat.object_name(d0) + " with pairs {";
                            for (auto [p, q] : sub) w += "(" + cat.mor(p).name + "," + cat.mor(q).name + ")";
                            w += "}, colimit " + cat.mor(lambda).name + ", pair (" + cat.mor(g1).name + ", " +
                                 cat.mor(g2).name + ") from " + cat.object_name(c);
                            return Verdict::no(w);
                        }
                    }
        }
    }
    return Verdict::yes();
}

Verdict is_positive(const FiniteCategory& cat, const ClassifyOptions& opt) {
    Verdict coal = is_coalescent(cat, opt);
    if (!coal.is_true()) return Verdict::unknown("positivity is defined for coalescent categories");
    for (int x = 0; x < cat.object_count(); ++x)
        for (int y = x; y < cat.object_count(); ++y) {
            auto co = binary_coproduct(cat, x, y);
            if (!co) return Verdict::no("missing coproduct");
            auto [v, i1, i2] = *co;
            if (!classify_morphism(cat, i1).mono || !classify_morphism(cat, i2).mono)
                return Verdict::no("coproduct injection of " + cat.object_name(x) + "+" + cat.object_name(y) +
                                   " is not monic");
            auto pb = pullback(cat, i1, i2);
            if (!pb)
                return Verdict::no("injections of " + cat.object_name(x) + "+" + cat.object_name(y) +
                                   " have no pullback");
            if (!is_strict_initial(cat, std::get<0>(*pb)))
                return Verdict::no("coproduct " + cat.object_name(x) + "+" + cat.object_name(y) +
                                   " is not disjoint");
        }
    return Verdict::yes();
}

namespace {

bool is_extremal_epi(const FiniteCategory& cat, int e) {
    if (!classify_morphism(cat, e).epi) return false;
    for (int m = 0; m < cat.morphism_count(); ++m) {
        if (cat.cod(m) != cat.cod(e)) continue;
        if (!classify_morphism(cat, m).mono) continue;
        for (int g : cat.hom(cat.dom(e), cat.dom(m)))
            if (cat.compose(m, g) == e && !classify_morphism(cat, m).iso) return false;
    }
    return true;
}

bool jointly_monic(const FiniteCategory& cat, int r1, int r2) {
    int r = cat.dom(r1);
    for (int x = 0; x < cat.object_count(); ++x) {
        const auto& h = cat.hom(x, r);
        for (size_t i = 0; i < h.size(); ++i)
            for (size_t j = i + 1; j < h.size(); ++j)
                if (cat.compose(r1, h[i]) == cat.compose(r1, h[j]) &&
                    cat.compose(r2, h[i]) == cat.compose(r2, h[j]))
                    return false;
    }
    return true;
}

} // namespace

Verdict is_locally_regular(const FiniteCategory& cat) {
    Verdict pb = has_pullbacks(cat);
    if (!pb.is_true()) return pb;
    Verdict eq = has_equalizers(cat);
    if (!eq.is_true()) return eq;

    std::vector<char> extremal(cat.morphism_count(), 0);
    for (int m = 0; m < cat.morphism_count(); ++m) extremal[m] = is_extremal_epi(cat, m) ? 1 : 0;

    for (int f = 0; f < cat.morphism_count(); ++f) {
        bool found = false;
        for (int e = 0; e < cat.morphism_count() && !found; ++e) {
            if (!extremal[e] || cat.dom(e) != cat.dom(f)) continue;
            for (int m : cat.hom(cat.cod(e), cat.cod(f)))
                if (classify_morphism(cat, m).mono && cat.compose(m, e) == f) {
                    found = true;
                    break;
                }
        }
        if (!found) return Verdict::no("no (extremal epi, mono) factorization of " + cat.mor(f).name);
    }

    for (int f = 0; f < cat.morphism_count(); ++f)
        for (int g = 0; g < cat.morphism_count(); ++g) {
            if (cat.dom(f) != cat.dom(g)) continue;
            bool found = false;
            for (int e = 0; e < cat.morphism_count() && !found; ++e) {
                if (!extremal[e] || cat.dom(e) != cat.dom(f)) continue;
                for (int r1 : cat.hom(cat.cod(e), cat.cod(f))) {
                    if (cat.compose(r1, e) != f) continue;
                    for (int r2 : cat.hom(cat.cod(e), cat.cod(g)))
                        if (cat.compose(r2, e) == g && jointly_monic(cat, r1, r2)) {
                            found = true;
                            break;
                        }
                    if (found) break;
                }
            }
            if (!found)
                return Verdict::no("span (" + cat.mor(f).name + ", " + cat.mor(g).name +
                                   ") has no jointly monic factorization");
        }
    return Verdict::yes();
}

Verdict is_regular(const FiniteCategory& cat) {
    Verdict lr = is_locally_regular(cat);
    if (!lr.is_true()) return lr;
    if (!terminal_object(cat)) return Verdict::no("no terminal object");
    return Verdict::yes();
}

Verdict is_effective(const FiniteCategory& cat) {
    for (int r = 0; r < cat.object_count(); ++r)
        for (int a = 0; a < cat.object_count(); ++a)
            for (int m1 : cat.hom(r, a))
                for (int m2 : cat.hom(r, a)) {
                    if (!jointly_monic(cat, m1, m2)) continue;
                    // reflexivity
                    bool refl = false;
                    for (int rf : cat.hom(a, r))
                        if (cat.compose(m1, rf) == cat.identity(a) && cat.compose(m2, rf) == cat.identity(a))
                            refl = true;
                    if (!refl) continue;
                    // symmetry
                    bool sym = false;
                    for (int s : cat.hom(r, r))
                        if (cat.compose(m1, s) == m2 && cat.compose(m2, s) == m1) sym = true;
                    if (!sym) continue;
                    // transitivity via the pullback of (m2, m1)
                    auto pb = pullback(cat, m2, m1);
                    if (!pb) continue;
                    auto [p, p1, p2] = *pb;
                    bool trans = false;
                    for (int t : cat.hom(p, r))
                        if (cat.compose(m1, t) == cat.compose(m1, p1) &&
                            cat.compose(m2, t) == cat.compose(m2, p2))
                            trans = true;
                    if (!trans) continue;

                    // (m1, m2) is an equivalence relation; is it a kernel pair?
                    bool kernel = false;
                    for (int f = 0; f < cat.morphism_count() && !kernel; ++f) {
                        if (cat.dom(f) != a) continue;
                        if (cat.compose(f, m1) != cat.compose(f, m2)) continue;
                        bool universal = true;
                        for (int q = 0; q < cat.object_count() && universal; ++q)
                            for (int u : cat.hom(q, a)) {
                                for (int v : cat.hom(q, a)) {
                                    if (cat.compose(f, u) != cat.compose(f, v)) continue;
                                    int count = 0;
                                    for (int w : cat.hom(q, r))
                                        if (cat.compose(m1, w) == u && cat.compose(m2, w) == v) ++count;
                                    if (count != 1) {
                                        universal = false;
                                        break;
                                    }
                                }
                                if (!universal) break;
                            }
                        if (universal) kernel = true;
                    }
                    if (!kernel)
                        return Verdict::no("equivalence relation (" + cat.mor(m1).name + ", " +
                                           cat.mor(m2).name + ") on " + cat.object_name(a) +
                                           " is not a kernel pair");
                }
    return Verdict::yes();
}

ClassificationReport classify(const FiniteCategory& cat, const ClassifyOptions& opt) {
    ClassificationReport r;
    r.reductive = is_reductive(cat, opt);
    r.coalescent = is_coalescent(cat, opt);
    r.effectual = is_effectual(cat, opt);
    r.positive = is_positive(cat, opt);
    r.has_pullbacks = has_pullbacks(cat);
    r.has_equalizers = has_equalizers(cat);
    r.locally_regular = is_locally_regular(cat);
    r.regular = is_regular(cat);
    r.effective = is_effective(cat);
    if (r.reductive.is_true())
        r.augmented = initial_object(cat) ? Verdict::yes() : Verdict::no("no initial object");
    else
        r.augmented = Verdict::unknown("augmentation is defined for reductive categories");
    return r;
}

Site reductive_site(const FiniteCategory& cat) { return Site::principal(cat, strict_epimorphisms(cat)); }

Site coalescent_site(const FiniteCategory& cat) {
    return Site::finitely_generated(cat, strictly_epic_families(cat));
}

std::optional<Functor> correspondence_round_trip(const FiniteCategory& cat, const ClassifyOptions& opt) {
    if (!is_reductive(cat, opt).is_true() || !is_effectual(cat, opt).is_true())
        throw std::invalid_argument("round trip needs an effectual reductive category");
    SheafSubcategory sub = supercompact_category(reductive_site(cat));
    return find_equivalence(sub.cat, cat);
}

} // namespace finsite
