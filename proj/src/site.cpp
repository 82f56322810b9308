#include "finsite/site.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace finsite {

Sieve maximal_sieve(const FiniteCategory& cat, int c) {
    Sieve s;
    s.codomain = c;
    for (int m : cat.morphisms_into(c)) s.members.insert(m);
    return s;
}

Sieve generated_sieve(const FiniteCategory& cat, const std::vector<int>& presieve, int codomain) {
    Sieve s;
    s.codomain = codomain;
    for (int m : presieve) {
        if (cat.cod(m) != codomain) throw std::invalid_argument("presieve member has wrong codomain");
        s.members.insert(m);
        for (int h = 0; h < cat.morphism_count(); ++h)
            if (cat.composable(m, h)) s.members.insert(cat.compose(m, h));
    }
    return s;
}

Sieve pullback_sieve(const FiniteCategory& cat, const Sieve& s, int f) {
    if (cat.cod(f) != s.codomain) throw std::invalid_argument("pullback along a morphism with wrong codomain");
    Sieve r;
    r.codomain = cat.dom(f);
    for (int g = 0; g < cat.morphism_count(); ++g)
        if (cat.cod(g) == r.codomain && s.contains(cat.compose(f, g))) r.members.insert(g);
    return r;
}

std::vector<Sieve> all_sieves(const FiniteCategory& cat, int c) {
    std::vector<int> into = cat.morphisms_into(c);
    const int n = static_cast<int>(into.size());
    std::vector<Sieve> out;
    for (long long mask = 0; mask < (1LL << n); ++mask) {
        Sieve s;
        s.codomain = c;
        for (int i = 0; i < n; ++i)
            if (mask & (1LL << i)) s.members.insert(into[i]);
        bool closed = true;
        for (int m : s.members) {
            for (int h = 0; h < cat.morphism_count() && closed; ++h)
                if (cat.composable(m, h) && !s.contains(cat.compose(m, h))) closed = false;
            if (!closed) break;
        }
        if (closed) out.push_back(std::move(s));
    }
    return out;
}

namespace {

std::optional<std::pair<int, int>> stability_square(const FiniteCategory& cat, const std::set<int>& carrier,
                                                    int f, int g) {
    // f : C -> D in the class, g : B -> D arbitrary; wanted f' : A -> B in the
    // class and g' : A -> C with f∘g' = g∘f'. Scan order fixes the choice.
    for (int fp : cat.morphisms_into(cat.dom(g)))
        if (carrier.count(fp))
            for (int gp : cat.hom(cat.dom(fp), cat.dom(f)))
                if (cat.compose(f, gp) == cat.compose(g, fp)) return std::make_pair(fp, gp);
    return std::nullopt;
}

} // namespace

StableClassReport check_stable_class(const FiniteCategory& cat, const std::set<int>& carrier) {
    for (int m : carrier)
        if (m < 0 || m >= cat.morphism_count()) throw std::invalid_argument("stable class has a dangling id");
    StableClassReport rep;
    rep.ax1 = true;
    for (int o = 0; o < cat.object_count(); ++o)
        if (!carrier.count(cat.identity(o))) {
            rep.ax1 = false;
            rep.witness = "ax1: missing identity of " + cat.object_name(o);
            break;
        }
    rep.ax2 = true;
    for (int g : carrier)
        for (int f : carrier) {
            if (!cat.composable(g, f)) continue;
            if (!carrier.count(cat.compose(g, f))) {
                rep.ax2 = false;
                if (rep.witness.empty())
                    rep.witness = "ax2: " + cat.mor(g).name + " after " + cat.mor(f).name + " escapes the class";
                break;
            }
        }
    rep.ax3 = true;
    for (int f : carrier) {
        for (int g : cat.morphisms_into(cat.cod(f))) {
            if (!stability_square(cat, carrier, f, g)) {
                rep.ax3 = false;
                if (rep.witness.empty())
                    rep.witness = "ax3: no square for (" + cat.mor(f).name + ", " + cat.mor(g).name + ")";
                break;
            }
        }
        if (!rep.ax3) break;
    }
    rep.ax4 = true;
    for (int f = 0; f < cat.morphism_count(); ++f) {
        if (carrier.count(f)) continue;
        for (int g = 0; g < cat.morphism_count(); ++g)
            if (cat.composable(f, g) && carrier.count(cat.compose(f, g))) {
                rep.ax4 = false;
                if (rep.witness.empty())
                    rep.witness = "ax4: " + cat.mor(f).name + " absorbs a class member but is not in the class";
                break;
            }
        if (!rep.ax4) break;
    }
    return rep;
}

namespace {

Family normalize_family(const FiniteCategory& cat, Family f) {
    std::sort(f.members.begin(), f.members.end());
    f.members.erase(std::unique(f.members.begin(), f.members.end()), f.members.end());
    for (int m : f.members) {
        if (m < 0 || m >= cat.morphism_count()) throw std::invalid_argument("family has a dangling id");
        if (cat.cod(m) != f.codomain) throw std::invalid_argument("family member has wrong codomain");
    }
    if (f.codomain < 0 || f.codomain >= cat.object_count())
        throw std::invalid_argument("family has a dangling codomain");
    return f;
}

bool family_in(const std::vector<Family>& carrier, const Family& f) {
    for (const auto& g : carrier)
        if (g.codomain == f.codomain && g.members == f.members) return true;
    return false;
}

bool factors_through_member(const FiniteCategory& cat, int m, const Family& fam) {
    for (int f : fam.members)
        for (int h : cat.hom(cat.dom(m), cat.dom(f)))
            if (cat.compose(f, h) == m) return true;
    return false;
}

} // namespace

StableFamilyReport check_stable_family_class(const FiniteCategory& cat, const std::vector<Family>& raw) {
    std::vector<Family> carrier;
    carrier.reserve(raw.size());
    for (const auto& f : raw) carrier.push_back(normalize_family(cat, f));

    StableFamilyReport rep;
    auto fam_str = [&](const Family& f) {
        std::string s = "{";
        for (size_t i = 0; i < f.members.size(); ++i) s += (i ? "," : "") + cat.mor(f.members[i]).name;
        return s + "}->" + cat.object_name(f.codomain);
    };

    rep.ax1 = true;
    for (int o = 0; o < cat.object_count(); ++o) {
        Family idf{o, {cat.identity(o)}};
        if (!family_in(carrier, idf)) {
            rep.ax1 = false;
            rep.witness = "ax1': missing identity family on " + cat.object_name(o);
            break;
        }
    }

    rep.ax2 = true;
    for (const auto& fam : carrier) {
        // choose a carrier family over the domain of each member
        std::vector<std::vector<const Family*>> options(fam.members.size());
        for (size_t i = 0; i < fam.members.size(); ++i)
            for (const auto& g : carrier)
                if (g.codomain == cat.dom(fam.members[i])) options[i].push_back(&g);
        std::vector<size_t> idx(fam.members.size(), 0);
        bool done = fam.members.empty() ? true : false;
        while (!done) {
            Family comp;
            comp.codomain = fam.codomain;
            for (size_t i = 0; i < fam.members.size(); ++i)
                for (int m : options[i][idx[i]]->members) comp.members.push_back(cat.compose(fam.members[i], m));
            comp = normalize_family(cat, comp);
            if (!family_in(carrier, comp)) {
                rep.ax2 = false;
                if (rep.witness.empty()) rep.witness = "ax2': multicomposite " + fam_str(comp) + " escapes";
                break;
            }
            int pos = static_cast<int>(fam.members.size()) - 1;
            while (pos >= 0 && ++idx[pos] == options[pos].size()) {
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) done = true;
        }
        if (!rep.ax2) break;
    }

    rep.ax3 = true;
    for (const auto& fam : carrier) {
        for (int g : cat.morphisms_into(fam.codomain)) {
            bool found = false;
            for (const auto& cover : carrier) {
                if (cover.codomain != cat.dom(g)) continue;
                bool all = true;
                for (int h : cover.members)
                    if (!factors_through_member(cat, cat.compose(g, h), fam)) {
                        all = false;
                        break;
                    }
                if (all) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                rep.ax3 = false;
                if (rep.witness.empty())
                    rep.witness = "ax3': no refinement family for (" + fam_str(fam) + ", " + cat.mor(g).name + ")";
                break;
            }
        }
        if (!rep.ax3) break;
    }

    // Advisory closure axioms, decided exactly (subsets of morphisms into an
    // object stay small at this scale).
    rep.ax4 = true;
    rep.ax5 = true;
    for (int c = 0; c < cat.object_count(); ++c) {
        std::vector<int> into = cat.morphisms_into(c);
        const int n = static_cast<int>(into.size());
        for (long long mask = 0; mask < (1LL << n); ++mask) {
            Family f;
            f.codomain = c;
            for (int i = 0; i < n; ++i)
                if (mask & (1LL << i)) f.members.push_back(into[i]);
            f = normalize_family(cat, f);
            if (family_in(carrier, f)) continue;
            for (const auto& cover : carrier) {
                if (cover.codomain != c) continue;
                bool refines = true;
                for (int m : cover.members)
                    if (!factors_through_member(cat, m, f)) {
                        refines = false;
                        break;
                    }
                if (refines) {
                    rep.ax4 = false;
                    if (rep.witness.empty()) rep.witness = "ax4': " + fam_str(f) + " refined by a member but absent";
                }
                bool superset = std::includes(f.members.begin(), f.members.end(), cover.members.begin(),
                                              cover.members.end());
                if (superset) {
                    rep.ax5 = false;
                    if (rep.witness.empty()) rep.witness = "ax5': superset " + fam_str(f) + " absent";
                }
                if (!rep.ax4 && !rep.ax5) break;
            }
        }
    }
    return rep;
}

std::set<int> saturate(const FiniteCategory& cat, const std::set<int>& carrier) {
    std::set<int> out;
    for (int f = 0; f < cat.morphism_count(); ++f) {
        for (int g = 0; g < cat.morphism_count(); ++g) {
            if (!cat.composable(f, g)) continue;
            if (carrier.count(cat.compose(f, g))) {
                out.insert(f);
                break;
            }
        }
    }
    return out;
}

Site Site::principal(FiniteCategory cat, std::set<int> tclass, std::set<int> empty_covered) {
    auto vr = validate(cat);
    if (!vr.valid()) throw std::invalid_argument("site on an invalid category: " + vr.to_string());
    auto rep = check_stable_class(cat, tclass);
    if (!rep.stable()) throw std::invalid_argument("class is not stable: " + rep.witness);
    for (int o : empty_covered)
        if (o < 0 || o >= cat.object_count()) throw std::invalid_argument("empty_covered has a dangling object");

    Site s;
    s.cat_ = std::move(cat);
    s.principal_ = true;
    s.tclass_ = std::move(tclass);
    s.saturated_ = saturate(s.cat_, s.tclass_);
    s.empty_covered_ = std::move(empty_covered);

    // Flag closure keeps the covering predicate a Grothendieck topology:
    // empty covers pull back, and transitivity must not escape through a
    // flagged domain.
    for (int m = 0; m < s.cat_.morphism_count(); ++m)
        if (s.empty_covered_.count(s.cat_.cod(m)) && !s.empty_covered_.count(s.cat_.dom(m)))
            throw std::invalid_argument("object " + s.cat_.object_name(s.cat_.cod(m)) +
                                        " is empty-covered but receives " + s.cat_.mor(m).name +
                                        " from an unflagged object");
    for (int t : s.saturated_)
        if (s.empty_covered_.count(s.cat_.dom(t)) && !s.empty_covered_.count(s.cat_.cod(t)))
            throw std::invalid_argument("class member " + s.cat_.mor(t).name +
                                        " leaves an empty-covered object; topology would not be transitive");
    return s;
}

Site Site::finitely_generated(FiniteCategory cat, std::vector<Family> families, std::set<int> empty_covered) {
    auto vr = validate(cat);
    if (!vr.valid()) throw std::invalid_argument("site on an invalid category: " + vr.to_string());
    std::vector<Family> norm;
    norm.reserve(families.size());
    for (auto& f : families) norm.push_back(normalize_family(cat, f));
    auto rep = check_stable_family_class(cat, norm);
    if (!rep.stable()) throw std::invalid_argument("family class is not stable: " + rep.witness);
    for (int o : empty_covered)
        if (o < 0 || o >= cat.object_count()) throw std::invalid_argument("empty_covered has a dangling object");

    Site s;
    s.cat_ = std::move(cat);
    s.principal_ = false;
    s.families_ = std::move(norm);
    s.empty_covered_ = std::move(empty_covered);
    for (int m = 0; m < s.cat_.morphism_count(); ++m)
        if (s.empty_covers(s.cat_.cod(m)) && !s.empty_covers(s.cat_.dom(m)))
            throw std::invalid_argument("empty-covered object receives " + s.cat_.mor(m).name +
                                        " from an unflagged object");
    return s;
}

Site Site::trivial(FiniteCategory cat) {
    std::set<int> ids;
    for (int o = 0; o < cat.object_count(); ++o) ids.insert(cat.identity(o));
    return principal(std::move(cat), std::move(ids));
}

bool Site::empty_covers(int obj) const {
    if (empty_covered_.count(obj)) return true;
    if (!principal_) {
        for (const auto& f : families_)
            if (f.codomain == obj && f.members.empty()) return true;
    }
    return false;
}

std::vector<Family> Site::covering_families_on(int obj) const {
    std::vector<Family> out;
    for (const auto& f : families_)
        if (f.codomain == obj) out.push_back(f);
    if (empty_covered_.count(obj)) {
        Family e;
        e.codomain = obj;
        bool present = false;
        for (const auto& f : out)
            if (f.members.empty()) present = true;
        if (!present) out.push_back(e);
    }
    return out;
}

bool Site::is_covering(const Sieve& s) const {
    if (empty_covered_.count(s.codomain)) return true;
    if (principal_) {
        for (int m : s.members)
            if (saturated_.count(m)) return true;
        return false;
    }
    for (const auto& f : families_) {
        if (f.codomain != s.codomain) continue;
        bool inside = true;
        for (int m : f.members)
            if (!s.contains(m)) {
                inside = false;
                break;
            }
        if (inside) return true;
    }
    return false;
}

std::vector<Sieve> Site::generating_covers_on(int obj) const {
    std::vector<Sieve> out;
    auto push_unique = [&out](Sieve s) {
        for (const auto& t : out)
            if (t.members == s.members) return;
        out.push_back(std::move(s));
    };
    if (principal_) {
        for (int t : saturated_)
            if (cat_.cod(t) == obj) push_unique(generated_sieve(cat_, {t}, obj));
    } else {
        for (const auto& f : families_)
            if (f.codomain == obj) push_unique(generated_sieve(cat_, f.members, obj));
    }
    if (empty_covered_.count(obj)) {
        Sieve e;
        e.codomain = obj;
        push_unique(e);
    }
    return out;
}

Sieve Site::minimal_covering_sieve(int obj) const {
    Sieve acc = maximal_sieve(cat_, obj);
    for (const auto& g : generating_covers_on(obj)) {
        std::set<int> inter;
        std::set_intersection(acc.members.begin(), acc.members.end(), g.members.begin(), g.members.end(),
                              std::inserter(inter, inter.begin()));
        acc.members = std::move(inter);
    }
    if (!is_covering(acc))
        throw std::logic_error("minimal sieve on " + cat_.object_name(obj) +
                               " is not covering; topology axioms are broken");
    return acc;
}

std::optional<std::string> Site::topology_defect(long long cap) const {
    for (int c = 0; c < cat_.object_count(); ++c) {
        if ((1LL << cat_.morphisms_into(c).size()) > cap) return "sieve enumeration cap exceeded";
        auto sieves = all_sieves(cat_, c);
        for (const auto& s : sieves) {
            if (!is_covering(s)) continue;
            // stability
            for (int f = 0; f < cat_.morphism_count(); ++f) {
                if (cat_.cod(f) != c) continue;
                if (!is_covering(pullback_sieve(cat_, s, f)))
                    return "pullback of a covering sieve on " + cat_.object_name(c) + " along " +
                           cat_.mor(f).name + " does not cover";
            }
            // transitivity
            for (const auto& r : sieves) {
                bool locally = true;
                for (int f : s.members)
                    if (!is_covering(pullback_sieve(cat_, r, f))) {
                        locally = false;
                        break;
                    }
                if (locally && !is_covering(r))
                    return "transitivity fails on " + cat_.object_name(c);
            }
        }
        if (!is_covering(maximal_sieve(cat_, c))) return "maximal sieve on " + cat_.object_name(c) + " does not cover";
    }
    return std::nullopt;
}

Diagram sieve_diagram(const FiniteCategory& cat, const Sieve& s) {
    CategoryBuilder b;
    std::vector<int> members(s.members.begin(), s.members.end());
    std::map<int, int> node;
    for (int m : members) node[m] = b.add_object("(" + cat.mor(m).name + ")");

    // shape morphism (f) -> (g) for every h with g∘h = f
    std::map<std::tuple<int, int, int>, int> arrow;
    for (int f : members)
        for (int g : members)
            for (int h : cat.hom(cat.dom(f), cat.dom(g)))
                if (cat.compose(g, h) == f) {
                    int a = b.add_morphism("(" + cat.mor(f).name + ")->(" + cat.mor(g).name + ")#" +
                                               cat.mor(h).name,
                                           node[f], node[g]);
                    arrow[{f, g, h}] = a;
                }
    for (int m : members) b.set_identity(node[m], arrow.at({m, m, cat.identity(cat.dom(m))}));
    for (const auto& [k1, a1] : arrow)
        for (const auto& [k2, a2] : arrow) {
            auto [f1, g1, h1] = k1;
            auto [f2, g2, h2] = k2;
            if (g1 != f2) continue; // a2 after a1 : (f1)->(g1)=(f2)->(g2)
            b.set_composite(a2, a1, arrow.at({f1, g2, cat.compose(h2, h1)}));
        }
    Diagram d;
    d.shape = b.build();
    d.on_objects.resize(members.size());
    d.on_morphisms.assign(d.shape.morphism_count(), -1);
    for (int m : members) d.on_objects[node[m]] = cat.dom(m);
    for (const auto& [k, a] : arrow) d.on_morphisms[a] = std::get<2>(k);
    return d;
}

bool is_effective_epimorphic_sieve(const FiniteCategory& cat, const Sieve& s) {
    Diagram d = sieve_diagram(cat, s);
    Cocone canonical;
    canonical.vertex = s.codomain;
    canonical.legs.resize(d.shape.object_count());
    std::vector<int> members(s.members.begin(), s.members.end());
    for (size_t i = 0; i < members.size(); ++i) canonical.legs[i] = members[i];
    return is_colimit_cocone(cat, d, canonical);
}

bool is_universally_eff_epi(const FiniteCategory& cat, const Sieve& s) {
    if (!is_effective_epimorphic_sieve(cat, s)) return false;
    for (int f = 0; f < cat.morphism_count(); ++f)
        if (cat.cod(f) == s.codomain && !is_effective_epimorphic_sieve(cat, pullback_sieve(cat, s, f)))
            return false;
    return true;
}

bool locally_equal(const Site& site, int h, int k) {
    const FiniteCategory& cat = site.cat();
    if (cat.dom(h) != cat.dom(k) || cat.cod(h) != cat.cod(k))
        throw std::invalid_argument("locally_equal expects a parallel pair");
    if (h == k) return true;
    int a = cat.dom(h);
    if (site.principal_kind()) {
        if (site.empty_covers(a)) return true;
        for (int t : site.saturated())
            if (cat.cod(t) == a && cat.compose(h, t) == cat.compose(k, t)) return true;
        return false;
    }
    for (const auto& fam : site.covering_families_on(a)) {
        bool all = true;
        for (int m : fam.members)
            if (cat.compose(h, m) != cat.compose(k, m)) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

Congruence canonical_congruence(const Site& site) {
    const FiniteCategory& cat = site.cat();
    const int nm = cat.morphism_count();

    std::vector<int> cls(nm, -1);
    // locally_equal is an equivalence here thanks to the stability axioms;
    // verified below rather than assumed.
    std::vector<std::vector<char>> rel(nm, std::vector<char>(nm, 0));
    for (int f = 0; f < nm; ++f)
        for (int g = 0; g < nm; ++g)
            if (cat.dom(f) == cat.dom(g) && cat.cod(f) == cat.cod(g)) rel[f][g] = locally_equal(site, f, g) ? 1 : 0;
    for (int f = 0; f < nm; ++f) {
        if (!rel[f][f]) throw std::logic_error("congruence is not reflexive");
        for (int g = 0; g < nm; ++g) {
            if (rel[f][g] != rel[g][f]) throw std::logic_error("congruence is not symmetric");
            if (!rel[f][g]) continue;
            for (int h = 0; h < nm; ++h)
                if (rel[g][h] && !rel[f][h]) throw std::logic_error("congruence is not transitive");
            // compatibility with composition on both sides
            for (int u = 0; u < nm; ++u) {
                if (cat.composable(u, f) && !rel[cat.compose(u, f)][cat.compose(u, g)])
                    throw std::logic_error("congruence not compatible with postcomposition");
                if (cat.composable(f, u) && !rel[cat.compose(f, u)][cat.compose(g, u)])
                    throw std::logic_error("congruence not compatible with precomposition");
            }
        }
    }

    int nclasses = 0;
    for (int f = 0; f < nm; ++f) {
        if (cls[f] >= 0) continue;
        for (int g = f; g < nm; ++g)
            if (rel[f][g]) cls[g] = nclasses;
        ++nclasses;
    }

    CategoryBuilder b;
    for (int o = 0; o < cat.object_count(); ++o) b.add_object(cat.object_name(o));
    std::vector<int> repr(nclasses, -1);
    for (int f = 0; f < nm; ++f)
        if (repr[cls[f]] < 0) repr[cls[f]] = f;
    for (int c = 0; c < nclasses; ++c)
        b.add_morphism("[" + cat.mor(repr[c]).name + "]", cat.dom(repr[c]), cat.cod(repr[c]));
    for (int o = 0; o < cat.object_count(); ++o) b.set_identity(o, cls[cat.identity(o)]);
    for (int g = 0; g < nclasses; ++g)
        for (int f = 0; f < nclasses; ++f)
            if (cat.composable(repr[g], repr[f]))
                b.set_composite(g, f, cls[cat.compose(repr[g], repr[f])]);
    FiniteCategory qcat = b.build();

    Congruence out;
    out.class_of = cls;
    out.projection.on_objects.resize(cat.object_count());
    for (int o = 0; o < cat.object_count(); ++o) out.projection.on_objects[o] = o;
    out.projection.on_morphisms = cls;

    if (site.principal_kind()) {
        std::set<int> qt;
        for (int t : site.tclass()) qt.insert(cls[t]);
        out.quotient = Site::principal(std::move(qcat), std::move(qt), site.empty_covered());
    } else {
        std::vector<Family> qfams;
        for (const auto& f : site.families()) {
            Family q;
            q.codomain = f.codomain;
            for (int m : f.members) q.members.push_back(cls[m]);
            qfams.push_back(std::move(q));
        }
        out.quotient = Site::finitely_generated(std::move(qcat), std::move(qfams), site.empty_covered());
    }
    return out;
}

bool is_subcanonical(const Site& site) {
    const FiniteCategory& cat = site.cat();
    if (site.principal_kind()) {
        for (int t : site.tclass())
            if (!is_strict_epi(cat, t)) return false;
    } else {
        for (const auto& f : site.families())
            if (!is_effective_epimorphic_sieve(cat, generated_sieve(cat, f.members, f.codomain))) return false;
    }
    for (int o : site.empty_covered()) {
        Sieve e;
        e.codomain = o;
        if (!is_effective_epimorphic_sieve(cat, e)) return false;
    }
    return true;
}

namespace {

// Common scheme of conditions 2-4: the most permissive candidate cover is
// the set of all morphisms satisfying the pointwise condition; the condition
// holds iff that set generates a covering sieve.
bool generates_cover(const Site& b, int obj, const std::vector<int>& candidates) {
    return b.is_covering(generated_sieve(b.cat(), candidates, obj));
}

} // namespace

SiteMorphismReport is_morphism_of_sites(const Functor& f, const Site& a, const Site& b) {
    std::string why;
    if (!functor_valid(a.cat(), b.cat(), f, &why)) throw std::invalid_argument("not a functor: " + why);
    const FiniteCategory& ca = a.cat();
    const FiniteCategory& cb = b.cat();
    SiteMorphismReport rep;

    rep.covers_preserved = true;
    if (a.principal_kind()) {
        for (int t : a.tclass()) {
            Sieve s = generated_sieve(cb, {f.on_morphisms[t]}, f.on_objects[ca.cod(t)]);
            if (!b.is_covering(s)) {
                rep.covers_preserved = false;
                rep.witness = "cover " + ca.mor(t).name + " is not sent to a cover";
                break;
            }
        }
    } else {
        for (const auto& fam : a.families()) {
            std::vector<int> image;
            for (int m : fam.members) image.push_back(f.on_morphisms[m]);
            Sieve s = generated_sieve(cb, image, f.on_objects[fam.codomain]);
            if (!b.is_covering(s)) {
                rep.covers_preserved = false;
                rep.witness = "a covering family is not sent to a cover";
                break;
            }
        }
    }
    if (rep.covers_preserved)
        for (int o : a.empty_covered()) {
            Sieve e;
            e.codomain = f.on_objects[o];
            if (!b.is_covering(e)) {
                rep.covers_preserved = false;
                rep.witness = "empty cover on " + ca.object_name(o) + " is not sent to a cover";
                break;
            }
        }

    rep.objects_covered = true;
    for (int d = 0; d < cb.object_count(); ++d) {
        std::vector<int> cands;
        for (int g : cb.morphisms_into(d)) {
            bool touches_image = false;
            for (int cp = 0; cp < ca.object_count() && !touches_image; ++cp)
                if (!cb.hom(cb.dom(g), f.on_objects[cp]).empty()) touches_image = true;
            if (touches_image) cands.push_back(g);
        }
        if (!generates_cover(b, d, cands)) {
            rep.objects_covered = false;
            if (rep.witness.empty()) rep.witness = "object " + cb.object_name(d) + " is not covered from the image";
            break;
        }
    }

    rep.spans_covered = true;
    for (int c1 = 0; c1 < ca.object_count() && rep.spans_covered; ++c1)
        for (int c2 = 0; c2 < ca.object_count() && rep.spans_covered; ++c2)
            for (int d = 0; d < cb.object_count() && rep.spans_covered; ++d)
                for (int l1 : cb.hom(d, f.on_objects[c1]))
                    for (int l2 : cb.hom(d, f.on_objects[c2])) {
                        std::vector<int> cands;
                        for (int g : cb.morphisms_into(d)) {
                            bool ok = false;
                            for (int cp = 0; cp < ca.object_count() && !ok; ++cp)
                                for (int s1 : ca.hom(cp, c1)) {
                                    for (int s2 : ca.hom(cp, c2)) {
                                        for (int h : cb.hom(cb.dom(g), f.on_objects[cp]))
                                            if (cb.compose(f.on_morphisms[s1], h) == cb.compose(l1, g) &&
                                                cb.compose(f.on_morphisms[s2], h) == cb.compose(l2, g)) {
                                                ok = true;
                                                break;
                                            }
                                        if (ok) break;
                                    }
                                    if (ok) break;
                                }
                            if (ok) cands.push_back(g);
                        }
                        if (!generates_cover(b, d, cands)) {
                            rep.spans_covered = false;
                            if (rep.witness.empty())
                                rep.witness = "span over (" + ca.object_name(c1) + ", " + ca.object_name(c2) +
                                              ") at " + cb.object_name(d) + " not locally filled";
                            break;
                        }
                    }

    rep.equalized_covered = true;
    for (int f1 = 0; f1 < ca.morphism_count() && rep.equalized_covered; ++f1)
        for (int f2 = 0; f2 < ca.morphism_count() && rep.equalized_covered; ++f2) {
            if (ca.dom(f1) != ca.dom(f2) || ca.cod(f1) != ca.cod(f2)) continue;
            for (int d = 0; d < cb.object_count() && rep.equalized_covered; ++d)
                for (int lp : cb.hom(d, f.on_objects[ca.dom(f1)])) {
                    if (cb.compose(f.on_morphisms[f1], lp) != cb.compose(f.on_morphisms[f2], lp)) continue;
                    std::vector<int> cands;
                    for (int g : cb.morphisms_into(d)) {
                        bool ok = false;
                        for (int cp = 0; cp < ca.object_count() && !ok; ++cp)
                            for (int lam : ca.hom(cp, ca.dom(f1))) {
                                if (ca.compose(f1, lam) != ca.compose(f2, lam)) continue;
                                for (int h : cb.hom(cb.dom(g), f.on_objects[cp]))
                                    if (cb.compose(f.on_morphisms[lam], h) == cb.compose(lp, g)) {
                                        ok = true;
                                        break;
                                    }
                                if (ok) break;
                            }
                        if (ok) cands.push_back(g);
                    }
                    if (!generates_cover(b, d, cands)) {
                        rep.equalized_covered = false;
                        if (rep.witness.empty())
                            rep.witness = "pair (" + ca.mor(f1).name + ", " + ca.mor(f2).name +
                                          ") not locally equalized at " + cb.object_name(d);
                        break;
                    }
                }
        }
    return rep;
}

bool is_comorphism_of_sites(const Functor& f, const Site& a, const Site& b) {
    std::string why;
    if (!functor_valid(a.cat(), b.cat(), f, &why)) throw std::invalid_argument("not a functor: " + why);
    for (int c = 0; c < a.cat().object_count(); ++c) {
        for (const auto& s : b.generating_covers_on(f.on_objects[c])) {
            Sieve preimage;
            preimage.codomain = c;
            for (int r : a.cat().morphisms_into(c))
                if (s.contains(f.on_morphisms[r])) preimage.members.insert(r);
            if (!a.is_covering(preimage)) return false;
        }
    }
    return true;
}

} // namespace finsite
