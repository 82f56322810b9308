#include "finsite/duality.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace finsite {

int FinPoset::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (elements[i] == name) return i;
    return -1;
}

ValidationReport validate_poset(const FinPoset& p) {
    ValidationReport rep;
    const int n = p.size();
    if (static_cast<int>(p.leq.size()) != n) {
        rep.issues.push_back({"structure", "leq table size mismatch"});
        return rep;
    }
    for (const auto& row : p.leq)
        if (static_cast<int>(row.size()) != n) {
            rep.issues.push_back({"structure", "leq row size mismatch"});
            return rep;
        }
    for (int a = 0; a < n; ++a)
        if (!p.le(a, a)) rep.issues.push_back({"law", "not reflexive at " + p.elements[a]});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a != b && p.le(a, b) && p.le(b, a))
                rep.issues.push_back({"law", "antisymmetry fails on (" + p.elements[a] + ", " + p.elements[b] + ")"});
            for (int c = 0; c < n; ++c)
                if (p.le(a, b) && p.le(b, c) && !p.le(a, c))
                    rep.issues.push_back(
                        {"law", "transitivity fails on (" + p.elements[a] + ", " + p.elements[b] + ", " +
                                    p.elements[c] + ")"});
        }
    return rep;
}

ValidationReport validate_semilattice(const JoinSemilattice& s) {
    ValidationReport rep = validate_poset(s.poset);
    if (!rep.valid()) return rep;
    const int n = s.size();
    if (s.bottom < 0 || s.bottom >= n) {
        rep.issues.push_back({"structure", "dangling bottom"});
        return rep;
    }
    for (int a = 0; a < n; ++a)
        if (!s.le(s.bottom, a)) rep.issues.push_back({"law", "bottom is not least"});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int j = s.join[a][b];
            if (j < 0 || j >= n) {
                rep.issues.push_back({"structure", "dangling join entry"});
                continue;
            }
            if (!s.le(a, j) || !s.le(b, j)) {
                rep.issues.push_back({"law", "join of " + s.poset.elements[a] + ", " + s.poset.elements[b] +
                                                 " is not an upper bound"});
                continue;
            }
            for (int u = 0; u < n; ++u)
                if (s.le(a, u) && s.le(b, u) && !s.le(j, u))
                    rep.issues.push_back({"law", "join of " + s.poset.elements[a] + ", " + s.poset.elements[b] +
                                                     " is not least"});
        }
    return rep;
}

std::optional<JoinSemilattice> semilattice_of_poset(const FinPoset& p) {
    const int n = p.size();
    JoinSemilattice s;
    s.poset = p;
    s.bottom = -1;
    for (int b = 0; b < n; ++b) {
        bool least = true;
        for (int x = 0; x < n; ++x)
            if (!p.le(b, x)) least = false;
        if (least) s.bottom = b;
    }
    if (s.bottom < 0 && n > 0) return std::nullopt;
    if (n == 0) return std::nullopt;
    s.join.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int lub = -1;
            for (int u = 0; u < n; ++u) {
                if (!p.le(a, u) || !p.le(b, u)) continue;
                bool minimal = true;
                for (int v = 0; v < n; ++v)
                    if (p.le(a, v) && p.le(b, v) && !p.le(u, v)) minimal = false;
                if (minimal) {
                    if (lub >= 0 && lub != u) return std::nullopt;
                    lub = u;
                }
            }
            if (lub < 0) return std::nullopt;
            s.join[a][b] = lub;
        }
    return s;
}

ValidationReport validate_frame(const FinFrame& f) {
    ValidationReport rep = validate_poset(f.poset);
    if (!rep.valid()) return rep;
    const int n = f.size();
    auto check_bound = [&](const std::vector<std::vector<int>>& table, bool joins) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int j = table[a][b];
                bool upper = joins ? (f.le(a, j) && f.le(b, j)) : (f.le(j, a) && f.le(j, b));
                if (!upper) {
                    rep.issues.push_back({"law", joins ? "join is not an upper bound" : "meet is not a lower bound"});
                    continue;
                }
                for (int u = 0; u < n; ++u) {
                    bool bound = joins ? (f.le(a, u) && f.le(b, u)) : (f.le(u, a) && f.le(u, b));
                    bool tight = joins ? f.le(j, u) : f.le(u, j);
                    if (bound && !tight)
                        rep.issues.push_back({"law", joins ? "join is not least" : "meet is not greatest"});
                }
            }
    };
    check_bound(f.join, true);
    check_bound(f.meet, false);
    for (int x = 0; x < n; ++x) {
        if (!f.le(f.bottom, x)) rep.issues.push_back({"law", "bottom is not least"});
        if (!f.le(x, f.top)) rep.issues.push_back({"law", "top is not greatest"});
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (f.meet[a][f.join[b][c]] != f.join[f.meet[a][b]][f.meet[a][c]]) {
                    rep.issues.push_back({"law", "distributivity fails"});
                    return rep;
                }
    return rep;
}

Verdict is_distributive(const JoinSemilattice& s) {
    const int n = s.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (!s.le(a, s.join[b][c])) continue;
                bool split = false;
                for (int bp = 0; bp < n && !split; ++bp) {
                    if (!s.le(bp, b)) continue;
                    for (int cp = 0; cp < n; ++cp)
                        if (s.le(cp, c) && s.join[bp][cp] == a) {
                            split = true;
                            break;
                        }
                }
                if (!split)
                    return Verdict::no("(" + s.poset.elements[a] + "," + s.poset.elements[b] + "," +
                                       s.poset.elements[c] + ")");
            }
    return Verdict::yes();
}

std::optional<int> meet_of(const JoinSemilattice& s, int a, int b) {
    int glb = -1;
    for (int u = 0; u < s.size(); ++u) {
        if (!s.le(u, a) || !s.le(u, b)) continue;
        bool greatest = true;
        for (int v = 0; v < s.size(); ++v)
            if (s.le(v, a) && s.le(v, b) && !s.le(v, u)) greatest = false;
        if (greatest) {
            if (glb >= 0 && glb != u) return std::nullopt;
            glb = u;
        }
    }
    if (glb < 0) return std::nullopt;
    return glb;
}

namespace {

std::string subset_label(const JoinSemilattice& s, unsigned long long mask) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < s.size(); ++i)
        if (mask & (1ULL << i)) {
            if (!first) out += ",";
            out += s.poset.elements[i];
            first = false;
        }
    return out + "}";
}

} // namespace

FinFrame ideal_frame(const JoinSemilattice& s) {
    Verdict d = is_distributive(s);
    if (!d.is_true()) throw std::invalid_argument("semilattice is not distributive, witness " + d.note);

    const int n = s.size();
    std::vector<unsigned long long> ideals;
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
        if (!(mask & (1ULL << s.bottom))) continue;
        bool down = true, joined = true;
        for (int a = 0; a < n && down; ++a) {
            if (!(mask & (1ULL << a))) continue;
            for (int b = 0; b < n; ++b)
                if (s.le(b, a) && !(mask & (1ULL << b))) {
                    down = false;
                    break;
                }
        }
        for (int a = 0; a < n && joined; ++a)
            for (int b = 0; b < n; ++b) {
                if (!(mask & (1ULL << a)) || !(mask & (1ULL << b))) continue;
                if (!(mask & (1ULL << s.join[a][b]))) {
                    joined = false;
                    break;
                }
            }
        if (down && joined) ideals.push_back(mask);
    }
    std::sort(ideals.begin(), ideals.end());

    FinFrame f;
    const int m = static_cast<int>(ideals.size());
    f.poset.elements.resize(m);
    for (int i = 0; i < m; ++i) f.poset.elements[i] = subset_label(s, ideals[i]);
    f.poset.leq.assign(m, std::vector<char>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) f.poset.leq[i][j] = ((ideals[i] & ~ideals[j]) == 0) ? 1 : 0;
    auto find_ideal = [&](unsigned long long mask) {
        for (int i = 0; i < m; ++i)
            if (ideals[i] == mask) return i;
        throw std::logic_error("ideal closure escaped the enumeration");
    };
    f.join.assign(m, std::vector<int>(m, -1));
    f.meet.assign(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            f.meet[i][j] = find_ideal(ideals[i] & ideals[j]);
            unsigned long long u = ideals[i] | ideals[j];
            bool grew = true;
            while (grew) {
                grew = false;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        if (!(u & (1ULL << a)) || !(u & (1ULL << b))) continue;
                        int ab = s.join[a][b];
                        for (int c = 0; c < n; ++c)
                            if (s.le(c, ab) && !(u & (1ULL << c))) {
                                u |= (1ULL << c);
                                grew = true;
                            }
                    }
            }
            f.join[i][j] = find_ideal(u);
        }
    f.bottom = find_ideal(1ULL << s.bottom);
    unsigned long long full = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    f.top = find_ideal(full);
    return f;
}

bool is_completely_prime_filter(const FinFrame& f, const std::set<int>& filter) {
    if (filter.empty()) return false;
    for (int x : filter) {
        if (x < 0 || x >= f.size()) return false;
        for (int y = 0; y < f.size(); ++y)
            if (f.le(x, y) && !filter.count(y)) return false; // upward closed
    }
    for (int x : filter)
        for (int y : filter)
            if (!filter.count(f.meet[x][y])) return false;
    // complement closed under all joins that land in the filter
    std::vector<int> outside;
    for (int x = 0; x < f.size(); ++x)
        if (!filter.count(x)) outside.push_back(x);
    int big = f.bottom;
    for (int x : outside) big = f.join[big][x];
    if (filter.count(big)) return false;
    return true;
}

std::vector<FramePoint> frame_points(const FinFrame& f) {
    std::vector<FramePoint> out;
    for (int m = 0; m < f.size(); ++m) {
        if (m == f.top) continue;
        bool prime = true;
        for (int a = 0; a < f.size() && prime; ++a)
            for (int b = 0; b < f.size(); ++b)
                if (f.le(f.meet[a][b], m) && !f.le(a, m) && !f.le(b, m)) {
                    prime = false;
                    break;
                }
        if (!prime) continue;
        FramePoint p;
        p.prime_element = m;
        for (int x = 0; x < f.size(); ++x)
            if (!f.le(x, m)) p.filter.insert(x);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<std::set<int>> prime_filters(const JoinSemilattice& s) {
    FinFrame f = ideal_frame(s);
    // locate the principal ideals inside the frame
    std::vector<int> principal(s.size(), -1);
    for (int a = 0; a < s.size(); ++a) {
        std::string label;
        {
            unsigned long long mask = 0;
            for (int b = 0; b < s.size(); ++b)
                if (s.le(b, a)) mask |= (1ULL << b);
            label = subset_label(s, mask);
        }
        principal[a] = f.poset.index_of(label);
        if (principal[a] < 0) throw std::logic_error("principal ideal missing from the frame");
    }
    std::vector<std::set<int>> out;
    for (const auto& p : frame_points(f)) {
        std::set<int> restricted;
        for (int a = 0; a < s.size(); ++a)
            if (p.filter.count(principal[a])) restricted.insert(a);
        out.push_back(std::move(restricted));
    }
    return out;
}

RoundTripWitness stone_round_trip(const JoinSemilattice& s) {
    FinFrame f = ideal_frame(s);

    // compact elements of the ideal frame: at finite scale, every ideal has a
    // greatest element, so compacts are exactly the principal ideals; the
    // enumeration discharges that claim rather than assuming it
    std::vector<int> principal(s.size(), -1);
    for (int a = 0; a < s.size(); ++a) {
        unsigned long long mask = 0;
        for (int b = 0; b < s.size(); ++b)
            if (s.le(b, a)) mask |= (1ULL << b);
        principal[a] = f.poset.index_of(subset_label(s, mask));
        if (principal[a] < 0) throw std::logic_error("principal ideal missing from the frame");
    }
    std::vector<char> is_principal(f.size(), 0);
    for (int a = 0; a < s.size(); ++a) is_principal[principal[a]] = 1;
    for (int i = 0; i < f.size(); ++i)
        if (!is_principal[i])
            throw std::logic_error("non-principal ideal " + f.poset.elements[i] +
                                   " in a finite semilattice frame");

    // verify the embedding is a semilattice isomorphism onto the compacts
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b) {
            if (s.le(a, b) != f.le(principal[a], principal[b]))
                throw std::logic_error("principal-ideal map is not an order embedding");
            if (principal[s.join[a][b]] != f.join[principal[a]][principal[b]])
                throw std::logic_error("principal-ideal map does not preserve joins");
        }
    if (principal[s.bottom] != f.bottom) throw std::logic_error("principal-ideal map misses the bottom");

    RoundTripWitness w;
    w.map = principal;
    return w;
}

FinFrame alexandroff(const FinPoset& p) {
    const int n = p.size();
    std::vector<unsigned long long> downs;
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
        bool down = true;
        for (int a = 0; a < n && down; ++a) {
            if (!(mask & (1ULL << a))) continue;
            for (int b = 0; b < n; ++b)
                if (p.le(b, a) && !(mask & (1ULL << b))) {
                    down = false;
                    break;
                }
        }
        if (down) downs.push_back(mask);
    }
    std::sort(downs.begin(), downs.end());
    const int m = static_cast<int>(downs.size());
    FinFrame f;
    f.poset.elements.resize(m);
    for (int i = 0; i < m; ++i) {
        std::string label = "{";
        bool first = true;
        for (int a = 0; a < n; ++a)
            if (downs[i] & (1ULL << a)) {
                if (!first) label += ",";
                label += p.elements[a];
                first = false;
            }
        f.poset.elements[i] = label + "}";
    }
    f.poset.leq.assign(m, std::vector<char>(m, 0));
    auto find_down = [&](unsigned long long mask) {
        for (int i = 0; i < m; ++i)
            if (downs[i] == mask) return i;
        throw std::logic_error("downset escaped the enumeration");
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) f.poset.leq[i][j] = ((downs[i] & ~downs[j]) == 0) ? 1 : 0;
    f.join.assign(m, std::vector<int>(m, -1));
    f.meet.assign(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            f.join[i][j] = find_down(downs[i] | downs[j]);
            f.meet[i][j] = find_down(downs[i] & downs[j]);
        }
    f.bottom = find_down(0);
    unsigned long long full = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    f.top = find_down(full);
    return f;
}

RoundTripWitness alexandroff_round_trip(const FinPoset& p) {
    FinFrame f = alexandroff(p);
    std::vector<char> irreducible(f.size(), 0);
    for (int x = 0; x < f.size(); ++x) {
        if (x == f.bottom) continue;
        bool irr = true;
        for (int a = 0; a < f.size() && irr; ++a)
            for (int b = 0; b < f.size(); ++b)
                if (f.join[a][b] == x && a != x && b != x) {
                    irr = false;
                    break;
                }
        irreducible[x] = irr ? 1 : 0;
    }
    std::vector<int> principal(p.size(), -1);
    for (int a = 0; a < p.size(); ++a) {
        std::string label = "{";
        bool first = true;
        for (int b = 0; b < p.size(); ++b)
            if (p.le(b, a)) {
                if (!first) label += ",";
                label += p.elements[b];
                first = false;
            }
        principal[a] = f.poset.index_of(label + "}");
        if (principal[a] < 0) throw std::logic_error("principal downset missing");
    }
    for (int a = 0; a < p.size(); ++a)
        if (!irreducible[principal[a]])
            throw std::logic_error("principal downset fails join-irreducibility");
    int count = 0;
    for (int x = 0; x < f.size(); ++x)
        if (irreducible[x]) ++count;
    if (count != p.size()) throw std::logic_error("supercompact opens do not match the poset");
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (p.le(a, b) != f.le(principal[a], principal[b]))
                throw std::logic_error("principal downset map is not an order embedding");
    RoundTripWitness w;
    w.map = principal;
    return w;
}

bool is_order_preserving(const FinPoset& p, const FinPoset& q, const std::vector<int>& f) {
    if (static_cast<int>(f.size()) != p.size()) return false;
    for (int v : f)
        if (v < 0 || v >= q.size()) return false;
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (p.le(a, b) && !q.le(f[a], f[b])) return false;
    return true;
}

bool is_flat_map(const FinPoset& p, const FinPoset& q, const std::vector<int>& f) {
    if (!is_order_preserving(p, q, f)) throw std::invalid_argument("map is not order-preserving");
    for (int d = 0; d < q.size(); ++d) {
        bool covered = false;
        for (int c = 0; c < p.size(); ++c)
            if (q.le(d, f[c])) covered = true;
        if (!covered) return false;
    }
    for (int d = 0; d < q.size(); ++d)
        for (int c = 0; c < p.size(); ++c)
            for (int cp = 0; cp < p.size(); ++cp) {
                if (!q.le(d, f[c]) || !q.le(d, f[cp])) continue;
                bool witnessed = false;
                for (int cpp = 0; cpp < p.size(); ++cpp)
                    if (p.le(cpp, c) && p.le(cpp, cp) && q.le(d, f[cpp])) witnessed = true;
                if (!witnessed) return false;
            }
    return true;
}

bool is_completely_continuous(const FinFrame& f, const FinFrame& g, const std::vector<int>& h) {
    if (static_cast<int>(h.size()) != f.size()) throw std::invalid_argument("map size mismatch");
    for (int v : h)
        if (v < 0 || v >= g.size()) throw std::invalid_argument("map escapes the target frame");
    for (int a = 0; a < f.size(); ++a)
        for (int b = 0; b < f.size(); ++b)
            if (f.le(a, b) && !g.le(h[a], h[b])) throw std::invalid_argument("map is not order-preserving");
    if (h[f.bottom] != g.bottom || h[f.top] != g.top) return false;
    for (int a = 0; a < f.size(); ++a)
        for (int b = 0; b < f.size(); ++b) {
            if (h[f.join[a][b]] != g.join[h[a]][h[b]]) return false;
            if (h[f.meet[a][b]] != g.meet[h[a]][h[b]]) return false;
        }
    return true;
}

bool is_dist_join_hom(const JoinSemilattice& s, const JoinSemilattice& t, const std::vector<int>& f) {
    if (!is_order_preserving(s.poset, t.poset, f)) throw std::invalid_argument("map is not order-preserving");
    if (f[s.bottom] != t.bottom) return false;
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b)
            if (f[s.join[a][b]] != t.join[f[a]][f[b]]) return false;
    for (int d = 0; d < t.size(); ++d) {
        bool covered = false;
        for (int c = 0; c < s.size(); ++c)
            if (t.le(d, f[c])) covered = true;
        if (!covered) return false;
    }
    for (int d = 0; d < t.size(); ++d)
        for (int c = 0; c < s.size(); ++c)
            for (int cp = 0; cp < s.size(); ++cp) {
                if (!t.le(d, f[c]) || !t.le(d, f[cp])) continue;
                // join of everything below d reachable under both c and c'
                int acc = t.bottom;
                for (int cpp = 0; cpp < s.size(); ++cpp) {
                    if (!s.le(cpp, c) || !s.le(cpp, cp)) continue;
                    for (int dp = 0; dp < t.size(); ++dp)
                        if (t.le(dp, d) && t.le(dp, f[cpp])) acc = t.join[acc][dp];
                }
                if (acc != d) return false;
            }
    return true;
}

FiniteCategory category_of_poset(const FinPoset& p) {
    CategoryBuilder b;
    for (int a = 0; a < p.size(); ++a) b.add_object(p.elements[a]);
    std::vector<std::vector<int>> mor(p.size(), std::vector<int>(p.size(), -1));
    for (int a = 0; a < p.size(); ++a)
        for (int c = 0; c < p.size(); ++c)
            if (p.le(a, c)) mor[a][c] = b.add_morphism(p.elements[a] + "<=" + p.elements[c], a, c);
    for (int a = 0; a < p.size(); ++a) b.set_identity(a, mor[a][a]);
    for (int a = 0; a < p.size(); ++a)
        for (int c = 0; c < p.size(); ++c)
            for (int e = 0; e < p.size(); ++e)
                if (p.le(a, c) && p.le(c, e)) b.set_composite(mor[c][e], mor[a][c], mor[a][e]);
    return b.build();
}

std::vector<Family> join_cover_families(const JoinSemilattice& s, const FiniteCategory& cat) {
    std::vector<Family> families;
    for (int c = 0; c < s.size(); ++c) {
        std::vector<int> below;
        for (int a = 0; a < s.size(); ++a)
            if (s.le(a, c)) below.push_back(a);
        const int n = static_cast<int>(below.size());
        for (long long mask = 0; mask < (1LL << n); ++mask) {
            int acc = s.bottom;
            std::vector<int> members;
            for (int i = 0; i < n; ++i)
                if (mask & (1LL << i)) {
                    acc = s.join[acc][below[i]];
                    members.push_back(
                        cat.morphism_index(s.poset.elements[below[i]] + "<=" + s.poset.elements[c]));
                }
            if (acc != c) continue;
            Family f;
            f.codomain = c;
            f.members = std::move(members);
            families.push_back(std::move(f));
        }
    }
    return families;
}

Site site_of_semilattice(const JoinSemilattice& s) {
    FiniteCategory cat = category_of_poset(s.poset);
    std::vector<Family> families = join_cover_families(s, cat);
    return Site::finitely_generated(std::move(cat), std::move(families));
}

Functor functor_of_monotone(const FinPoset& p, const FinPoset& q, const std::vector<int>& f) {
    if (!is_order_preserving(p, q, f)) throw std::invalid_argument("map is not order-preserving");
    FiniteCategory cp = category_of_poset(p);
    FiniteCategory cq = category_of_poset(q);
    Functor out;
    out.on_objects = f;
    out.on_morphisms.resize(cp.morphism_count());
    for (int m = 0; m < cp.morphism_count(); ++m) {
        int a = cp.dom(m), b = cp.cod(m);
        out.on_morphisms[m] = cq.morphism_index(q.elements[f[a]] + "<=" + q.elements[f[b]]);
    }
    return out;
}

namespace {

std::vector<std::vector<char>> canonical_matrix(const FinPoset& p) {
    const int n = p.size();
    std::vector<int> cand(n);
    std::iota(cand.begin(), cand.end(), 0);
    std::vector<std::vector<char>> best;
    do {
        std::vector<std::vector<char>> mat(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) mat[i][j] = p.le(cand[i], cand[j]) ? 1 : 0;
        if (best.empty() || mat < best) best = std::move(mat);
    } while (std::next_permutation(cand.begin(), cand.end()));
    return best;
}

} // namespace

std::vector<FinPoset> all_posets_up_to_iso(int max_size) {
    std::vector<FinPoset> out;
    FinPoset empty;
    out.push_back(empty);
    std::vector<FinPoset> layer = {empty};
    for (int n = 1; n <= max_size; ++n) {
        std::vector<FinPoset> next;
        std::set<std::vector<std::vector<char>>> seen;
        for (const auto& p : layer) {
            const int k = p.size();
            // the new element's strict down-set and up-set
            for (long long dmask = 0; dmask < (1LL << k); ++dmask) {
                // down-set must be downward closed
                bool dok = true;
                for (int a = 0; a < k && dok; ++a)
                    if (dmask & (1LL << a))
                        for (int b = 0; b < k; ++b)
                            if (p.le(b, a) && !(dmask & (1LL << b))) {
                                dok = false;
                                break;
                            }
                if (!dok) continue;
                for (long long umask = 0; umask < (1LL << k); ++umask) {
                    if (dmask & umask) continue;
                    bool uok = true;
                    for (int a = 0; a < k && uok; ++a)
                        if (umask & (1LL << a))
                            for (int b = 0; b < k; ++b)
                                if (p.le(a, b) && !(umask & (1LL << b))) {
                                    uok = false;
                                    break;
                                }
                    if (!uok) continue;
                    // transitivity across the new element
                    bool closed = true;
                    for (int a = 0; a < k && closed; ++a)
                        if (dmask & (1LL << a))
                            for (int b = 0; b < k; ++b)
                                if (umask & (1LL << b) && !p.le(a, b)) {
                                    closed = false;
                                    break;
                                }
                    if (!closed) continue;
                    FinPoset q;
                    q.elements.resize(k + 1);
                    for (int i = 0; i <= k; ++i) q.elements[i] = "e" + std::to_string(i);
                    q.leq.assign(k + 1, std::vector<char>(k + 1, 0));
                    for (int a = 0; a < k; ++a)
                        for (int b = 0; b < k; ++b) q.leq[a][b] = p.leq[a][b];
                    q.leq[k][k] = 1;
                    for (int a = 0; a < k; ++a) {
                        if (dmask & (1LL << a)) q.leq[a][k] = 1;
                        if (umask & (1LL << a)) q.leq[k][a] = 1;
                    }
                    if (seen.insert(canonical_matrix(q)).second) next.push_back(std::move(q));
                }
            }
        }
        for (const auto& q : next) out.push_back(q);
        layer = std::move(next);
    }
    return out;
}

std::vector<JoinSemilattice> all_distributive_semilattices_up_to_iso(int max_size) {
    std::vector<JoinSemilattice> out;
    for (const auto& p : all_posets_up_to_iso(max_size)) {
        if (p.size() == 0) continue;
        auto s = semilattice_of_poset(p);
        if (!s) continue;
        if (!is_distributive(*s).is_true()) continue;
        out.push_back(std::move(*s));
    }
    return out;
}

} // namespace finsite
