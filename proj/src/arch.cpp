#include "finsite/arch.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "finsite/union_find.hpp"

namespace finsite {

bool operator==(const Arch::Span& x, const Arch::Span& y) {
    return x.apex == y.apex && x.left == y.left && x.right == y.right;
}
bool operator<(const Arch::Span& x, const Arch::Span& y) {
    if (x.apex != y.apex) return x.apex < y.apex;
    if (x.left != y.left) return x.left < y.left;
    return x.right < y.right;
}
bool operator==(const Arch& x, const Arch& y) {
    return x.foot_a == y.foot_a && x.foot_b == y.foot_b && x.spans == y.spans;
}
bool operator<(const Arch& x, const Arch& y) {
    if (x.foot_a != y.foot_a) return x.foot_a < y.foot_a;
    if (x.foot_b != y.foot_b) return x.foot_b < y.foot_b;
    return x.spans < y.spans;
}

namespace {

Arch make_arch(int a, int b, std::vector<Arch::Span> spans) {
    Arch out;
    out.foot_a = a;
    out.foot_b = b;
    std::sort(spans.begin(), spans.end());
    spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
    out.spans = std::move(spans);
    return out;
}

bool spans_compatible(const Site& site, const Arch& a) {
    const FiniteCategory& cat = site.cat();
    for (const auto& s : a.spans)
        for (const auto& t : a.spans)
            for (int h = 0; h < cat.morphism_count(); ++h) {
                if (cat.cod(h) != s.apex) continue;
                for (int k : cat.hom(cat.dom(h), t.apex)) {
                    if (cat.compose(s.left, h) != cat.compose(t.left, k)) continue;
                    if (!locally_equal(site, cat.compose(s.right, h), cat.compose(t.right, k))) return false;
                }
            }
    return true;
}

} // namespace

bool is_arch(const Site& site, const Arch& a) {
    const FiniteCategory& cat = site.cat();
    for (const auto& s : a.spans) {
        if (cat.cod(s.left) != a.foot_a || cat.cod(s.right) != a.foot_b) return false;
        if (cat.dom(s.left) != s.apex || cat.dom(s.right) != s.apex) return false;
    }
    if (a.spans.empty()) {
        if (!site.empty_covers(a.foot_a)) return false;
        return true;
    }
    if (site.principal_kind()) {
        if (a.spans.size() != 1) return false;
        if (!site.saturated().count(a.spans[0].left)) return false;
    } else {
        std::vector<int> legs;
        for (const auto& s : a.spans) legs.push_back(s.left);
        if (!site.is_covering(generated_sieve(cat, legs, a.foot_a))) return false;
    }
    return spans_compatible(site, a);
}

std::vector<Arch> enumerate_arches(const Site& site, int a, int b) {
    const FiniteCategory& cat = site.cat();
    std::vector<Arch> out;
    if (site.principal_kind()) {
        if (site.empty_covers(a)) out.push_back(make_arch(a, b, {}));
        for (int apex = 0; apex < cat.object_count(); ++apex)
            for (int t : cat.hom(apex, a)) {
                if (!site.saturated().count(t)) continue;
                for (int g : cat.hom(apex, b)) {
                    Arch cand = make_arch(a, b, {{apex, t, g}});
                    if (spans_compatible(site, cand)) out.push_back(std::move(cand));
                }
            }
    } else {
        std::set<Arch> seen;
        for (const auto& fam : site.covering_families_on(a)) {
            const int n = static_cast<int>(fam.members.size());
            std::vector<const std::vector<int>*> cands(n);
            bool possible = true;
            for (int i = 0; i < n; ++i) {
                cands[i] = &cat.hom(cat.dom(fam.members[i]), b);
                if (cands[i]->empty()) possible = false;
            }
            if (!possible) continue;
            std::vector<size_t> idx(n, 0);
            bool done = false;
            while (!done) {
                std::vector<Arch::Span> spans;
                for (int i = 0; i < n; ++i)
                    spans.push_back({cat.dom(fam.members[i]), fam.members[i], (*cands[i])[idx[i]]});
                Arch cand = make_arch(a, b, std::move(spans));
                if (!seen.count(cand) && spans_compatible(site, cand)) {
                    seen.insert(cand);
                    out.push_back(cand);
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
        std::sort(out.begin(), out.end());
    }
    return out;
}

namespace {

// A span-wise factorization of x through y.
bool arch_morphism_exists(const Site& site, const Arch& x, const Arch& y) {
    const FiniteCategory& cat = site.cat();
    for (const auto& s : x.spans) {
        bool matched = false;
        for (const auto& t : y.spans) {
            for (int m : cat.hom(s.apex, t.apex))
                if (cat.compose(t.left, m) == s.left && cat.compose(t.right, m) == s.right) {
                    matched = true;
                    break;
                }
            if (matched) break;
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace

std::vector<std::vector<Arch>> arch_components(const Site& site, int a, int b) {
    auto arches = enumerate_arches(site, a, b);
    UnionFind uf(static_cast<int>(arches.size()));
    for (size_t i = 0; i < arches.size(); ++i)
        for (size_t j = i + 1; j < arches.size(); ++j)
            if (arch_morphism_exists(site, arches[i], arches[j]) ||
                arch_morphism_exists(site, arches[j], arches[i]))
                uf.unite(static_cast<int>(i), static_cast<int>(j));
    std::vector<std::vector<Arch>> out;
    for (const auto& blk : uf.blocks()) {
        std::vector<Arch> comp;
        for (int i : blk) comp.push_back(arches[i]);
        out.push_back(std::move(comp));
    }
    return out;
}

Arch identity_arch(const Site& site, int a) {
    int id = site.cat().identity(a);
    return make_arch(a, a, {{a, id, id}});
}

namespace {

struct SquareChoice {
    int refine; // w -> apex(first), in the class (principal case)
    int cross;  // w -> apex(second)
};

std::vector<SquareChoice> stability_squares(const Site& site, int u, int g) {
    // all squares completing the cospan (g : P -> B, u : Q -> B) with the
    // refining leg in the saturated class
    const FiniteCategory& cat = site.cat();
    std::vector<SquareChoice> out;
    for (int fp = 0; fp < cat.morphism_count(); ++fp) {
        if (cat.cod(fp) != cat.dom(g)) continue;
        if (!site.saturated().count(fp)) continue;
        for (int gp : cat.hom(cat.dom(fp), cat.dom(u)))
            if (cat.compose(g, fp) == cat.compose(u, gp)) out.push_back({fp, gp});
    }
    return out;
}

} // namespace

Arch compose_arches(const Site& site, const Arch& second, const Arch& first) {
    const FiniteCategory& cat = site.cat();
    if (first.foot_b != second.foot_a) throw std::invalid_argument("arch feet do not match");
    const int A = first.foot_a, C = second.foot_b;

    if (first.spans.empty()) return make_arch(A, C, {});
    if (second.spans.empty()) {
        if (!site.empty_covers(A))
            throw std::logic_error("empty arch composed onto a foot without an empty cover");
        return make_arch(A, C, {});
    }

    if (site.principal_kind()) {
        const auto& f = first.spans[0];
        const auto& s = second.spans[0];
        auto squares = stability_squares(site, s.left, f.right);
        if (squares.empty()) throw std::logic_error("no stability square; class is not stable");
        const auto& q = squares.front();
        return make_arch(A, C,
                         {{cat.dom(q.refine), cat.compose(f.left, q.refine), cat.compose(s.right, q.cross)}});
    }

    std::vector<Arch::Span> spans;
    for (const auto& f : first.spans) {
        // covering family over the apex whose members factor g through the
        // second arch's left legs
        bool found = false;
        for (const auto& fam : site.covering_families_on(f.apex)) {
            std::vector<Arch::Span> local;
            bool all = true;
            for (int w : fam.members) {
                int gw = cat.compose(f.right, w);
                bool hit = false;
                for (const auto& s : second.spans) {
                    for (int m : cat.hom(cat.dom(w), s.apex))
                        if (cat.compose(s.left, m) == gw) {
                            local.push_back(
                                {cat.dom(w), cat.compose(f.left, w), cat.compose(s.right, m)});
                            hit = true;
                            break;
                        }
                    if (hit) break;
                }
                if (!hit) {
                    all = false;
                    break;
                }
            }
            if (all) {
                spans.insert(spans.end(), local.begin(), local.end());
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("no refinement family; family class is not stable");
    }
    return make_arch(A, C, std::move(spans));
}

std::vector<Arch> compose_arches_all_squares(const Site& site, const Arch& second, const Arch& first) {
    const FiniteCategory& cat = site.cat();
    std::vector<Arch> out;
    if (first.spans.empty() || second.spans.empty()) {
        out.push_back(compose_arches(site, second, first));
        return out;
    }
    if (site.principal_kind()) {
        const auto& f = first.spans[0];
        const auto& s = second.spans[0];
        for (const auto& q : stability_squares(site, s.left, f.right))
            out.push_back(make_arch(first.foot_a, second.foot_b,
                                    {{cat.dom(q.refine), cat.compose(f.left, q.refine),
                                      cat.compose(s.right, q.cross)}}));
        return out;
    }
    // family case: vary the refinement family per span, with the least
    // factorization for each member
    for (size_t vary = 0; vary < first.spans.size(); ++vary) {
        for (const auto& fam : site.covering_families_on(first.spans[vary].apex)) {
            std::vector<Arch::Span> spans;
            bool all = true;
            for (size_t i = 0; i < first.spans.size() && all; ++i) {
                const auto& f = first.spans[i];
                bool found = false;
                auto try_family = [&](const Family& candidate) {
                    std::vector<Arch::Span> local;
                    for (int w : candidate.members) {
                        int gw = cat.compose(f.right, w);
                        bool hit = false;
                        for (const auto& s : second.spans) {
                            for (int m : cat.hom(cat.dom(w), s.apex))
                                if (cat.compose(s.left, m) == gw) {
                                    local.push_back(
                                        {cat.dom(w), cat.compose(f.left, w), cat.compose(s.right, m)});
                                    hit = true;
                                    break;
                                }
                            if (hit) break;
                        }
                        if (!hit) return false;
                    }
                    spans.insert(spans.end(), local.begin(), local.end());
                    return true;
                };
                if (i == vary) {
                    found = try_family(fam);
                } else {
                    for (const auto& other : site.covering_families_on(f.apex))
                        if (try_family(other)) {
                            found = true;
                            break;
                        }
                }
                if (!found) all = false;
            }
            if (all) out.push_back(make_arch(first.foot_a, second.foot_b, spans));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

int component_of(const Site& site, const std::vector<std::vector<Arch>>& comps, const Arch& a) {
    for (size_t c = 0; c < comps.size(); ++c)
        for (const auto& member : comps[c])
            if (member == a) return static_cast<int>(c);
    // Composites of enumerated arches stay enumerable (multicomposition is a
    // load-checked closure); failing to find one means the site is broken.
    for (size_t c = 0; c < comps.size(); ++c)
        for (const auto& member : comps[c])
            if (arch_morphism_exists(site, a, member) || arch_morphism_exists(site, member, a))
                return static_cast<int>(c);
    throw std::logic_error("composite arch not reachable from the enumeration");
}

} // namespace

FiniteCategory representable_category(const Site& site) {
    const FiniteCategory& cat = site.cat();
    const int no = cat.object_count();

    std::vector<std::vector<std::vector<std::vector<Arch>>>> comps(no);
    for (int a = 0; a < no; ++a) {
        comps[a].resize(no);
        for (int b = 0; b < no; ++b) comps[a][b] = arch_components(site, a, b);
    }

    CategoryBuilder bld;
    for (int o = 0; o < no; ++o) bld.add_object(cat.object_name(o));
    std::vector<std::vector<std::vector<int>>> mor_id(no, std::vector<std::vector<int>>(no));
    for (int a = 0; a < no; ++a)
        for (int b = 0; b < no; ++b)
            for (size_t k = 0; k < comps[a][b].size(); ++k)
                mor_id[a][b].push_back(bld.add_morphism(cat.object_name(a) + "->" + cat.object_name(b) + "#" +
                                                            std::to_string(k),
                                                        a, b));
    for (int o = 0; o < no; ++o)
        bld.set_identity(o, mor_id[o][o][component_of(site, comps[o][o], identity_arch(site, o))]);
    for (int a = 0; a < no; ++a)
        for (int b = 0; b < no; ++b)
            for (int c = 0; c < no; ++c)
                for (size_t i = 0; i < comps[a][b].size(); ++i)
                    for (size_t j = 0; j < comps[b][c].size(); ++j) {
                        Arch composite = compose_arches(site, comps[b][c][j].front(), comps[a][b][i].front());
                        int k = component_of(site, comps[a][c], composite);
                        bld.set_composite(mor_id[b][c][j], mor_id[a][b][i], mor_id[a][c][k]);
                    }
    return bld.build();
}

} // namespace finsite
