#pragma once
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "finsite/classify.hpp"
#include "finsite/fincat.hpp"
#include "finsite/site.hpp"

namespace finsite {

struct FinPoset {
    std::vector<std::string> elements;
    std::vector<std::vector<char>> leq; // leq[a][b] means a <= b

    int size() const { return static_cast<int>(elements.size()); }
    bool le(int a, int b) const { return leq[a][b] != 0; }
    int index_of(const std::string& name) const;
};

ValidationReport validate_poset(const FinPoset& p);

struct JoinSemilattice {
    FinPoset poset;
    std::vector<std::vector<int>> join;
    int bottom = -1;

    int size() const { return poset.size(); }
    bool le(int a, int b) const { return poset.le(a, b); }
};

ValidationReport validate_semilattice(const JoinSemilattice& s);

/// Builds the join structure when every pair has a least upper bound and a
/// bottom exists.
std::optional<JoinSemilattice> semilattice_of_poset(const FinPoset& p);

/// Finite frame: a lattice of opens. Elements keep set-style labels from the
/// construction that produced them.
struct FinFrame {
    FinPoset poset;
    std::vector<std::vector<int>> join;
    std::vector<std::vector<int>> meet;
    int bottom = -1;
    int top = -1;

    int size() const { return poset.size(); }
    bool le(int a, int b) const { return poset.le(a, b); }
};

ValidationReport validate_frame(const FinFrame& f);

Verdict is_distributive(const JoinSemilattice& s); // witness: the failing triple (a,b,c)

std::optional<int> meet_of(const JoinSemilattice& s, int a, int b); // greatest lower bound, if any

/// Frame of ideals: downward-closed subsets containing the bottom and closed
/// under binary joins, ordered by inclusion. Rejects non-distributive input.
FinFrame ideal_frame(const JoinSemilattice& s);

/// Points of a finite frame as completely prime filters; each is returned
/// with the prime element whose complement-downset it is.
struct FramePoint {
    int prime_element;
    std::set<int> filter;
};
std::vector<FramePoint> frame_points(const FinFrame& f);
bool is_completely_prime_filter(const FinFrame& f, const std::set<int>& filter);

std::vector<std::set<int>> prime_filters(const JoinSemilattice& s);

/// Order embedding witnessing a duality round trip: element -> frame element.
struct RoundTripWitness {
    std::vector<int> map;
};

/// S is recovered inside ideal_frame(S) as the compact elements, which at
/// finite scale are exactly the principal ideals; the witness is the
/// verified isomorphism of join semilattices.
RoundTripWitness stone_round_trip(const JoinSemilattice& s);

FinFrame alexandroff(const FinPoset& p); // downward-closed subsets

/// Supercompact (join-irreducible, non-bottom) opens of the Alexandroff frame
/// ordered by inclusion give back the poset.
RoundTripWitness alexandroff_round_trip(const FinPoset& p);

bool is_order_preserving(const FinPoset& p, const FinPoset& q, const std::vector<int>& f);
bool is_flat_map(const FinPoset& p, const FinPoset& q, const std::vector<int>& f);

/// Finite frames make every meet a finite meet, so complete continuity is
/// decided from the binary/empty cases.
bool is_completely_continuous(const FinFrame& f, const FinFrame& g, const std::vector<int>& h);

bool is_dist_join_hom(const JoinSemilattice& s, const JoinSemilattice& t, const std::vector<int>& f);

/// Poset as a thin category; morphism "a<=b" exists when a <= b.
FiniteCategory category_of_poset(const FinPoset& p);

/// Finite join covers of the semilattice as families over the thin category;
/// a stable class exactly when the semilattice is distributive.
std::vector<Family> join_cover_families(const JoinSemilattice& s, const FiniteCategory& cat);

/// The coalescent site of a distributive join semilattice: finite join covers
/// (including the empty cover of the bottom).
Site site_of_semilattice(const JoinSemilattice& s);

/// Order-preserving map as a functor between the thin categories.
Functor functor_of_monotone(const FinPoset& p, const FinPoset& q, const std::vector<int>& f);

// exhaustive generators, up to isomorphism
std::vector<FinPoset> all_posets_up_to_iso(int max_size);
std::vector<JoinSemilattice> all_distributive_semilattices_up_to_iso(int max_size);

} // namespace finsite
