#pragma once
#include <optional>
#include <string>
#include <vector>

#include "finsite/arch.hpp"
#include "finsite/fincat.hpp"
#include "finsite/site.hpp"

namespace finsite {

/// Finite presheaf on a finite category: a carrier size per object and, for
/// each morphism f : D -> C, the restriction map carrier(C) -> carrier(D).
/// Elements are 0-based indices.
struct FinPresheaf {
    std::vector<int> card;
    std::vector<std::vector<int>> action; // action[f][x], contravariant

    int at(int f, int x) const { return action[f][x]; }
};

bool presheaf_valid(const FiniteCategory& cat, const FinPresheaf& f, std::string* why = nullptr);

/// Componentwise map between presheaves; naturality is a checkable property,
/// not an invariant of the struct.
struct NatTransf {
    std::vector<std::vector<int>> component; // per object: carrier(X) -> carrier(Y)
};

bool operator==(const NatTransf& a, const NatTransf& b);
bool is_natural(const FiniteCategory& cat, const FinPresheaf& x, const FinPresheaf& y, const NatTransf& t);
NatTransf identity_nat(const FinPresheaf& x);
NatTransf compose_nat(const NatTransf& g, const NatTransf& f);
bool nat_pointwise_bijective(const FinPresheaf& x, const FinPresheaf& y, const NatTransf& t);

FinPresheaf yoneda(const FiniteCategory& cat, int a);
NatTransf yoneda_map(const FiniteCategory& cat, int f); // y(f) : y(dom f) -> y(cod f)

/// Matching families on a sieve, enumerated in a fixed order so they can
/// serve as canonical carrier elements of the plus construction.
struct MatchingFamily {
    std::vector<int> value; // indexed like the sorted member list of the sieve
};
std::vector<MatchingFamily> matching_families(const FiniteCategory& cat, const Sieve& s, const FinPresheaf& f);

bool is_sheaf(const Site& site, const FinPresheaf& f);

/// One application of the plus construction, computed on the minimal covering
/// sieve of each object (covering sieves of a finite topology are closed
/// under intersection, which collapses the usual filtered colimit to its
/// final stage).
struct PlusData {
    FinPresheaf result;
    NatTransf unit; // F -> F^+
};
PlusData plus(const Site& site, const FinPresheaf& f);
NatTransf plus_map(const Site& site, const FinPresheaf& x, const FinPresheaf& y, const NatTransf& t);

struct SheafifyData {
    FinPresheaf result;
    NatTransf unit; // F -> F^++
};
SheafifyData sheafify(const Site& site, const FinPresheaf& f);

/// Universal factorization of a map into a sheaf through the sheafification
/// unit.
NatTransf factor_through_sheafification(const Site& site, const FinPresheaf& p, const FinPresheaf& sheaf,
                                        const NatTransf& map);

FinPresheaf ell(const Site& site, int a);
NatTransf ell_map(const Site& site, int f); // ell(f) : ell(dom f) -> ell(cod f)

/// The sheaf morphism an arch presents: the unique u with u∘ell(t) = ell(g).
NatTransf ell_of_arch(const Site& site, const Arch& arch);

std::vector<NatTransf> hom_sheaves(const Site& site, const FinPresheaf& x, const FinPresheaf& y);

FinPresheaf initial_sheaf(const Site& site);
bool is_initial_sheaf(const Site& site, const FinPresheaf& x);

/// Subsheaf of a fixed sheaf, stored as per-object membership masks.
struct Subsheaf {
    std::vector<std::vector<char>> member;
};
bool operator==(const Subsheaf& a, const Subsheaf& b);
bool subsheaf_leq(const Subsheaf& a, const Subsheaf& b);

Subsheaf closure(const Site& site, const FinPresheaf& x, Subsheaf a);
std::vector<Subsheaf> subobject_lattice(const Site& site, const FinPresheaf& x);
Subsheaf join_of_subsheaves(const Site& site, const FinPresheaf& x, const std::vector<Subsheaf>& parts);

bool is_supercompact_object(const Site& site, const FinPresheaf& x);

struct QuotientObject {
    NatTransf map; // x -> sheaf
    FinPresheaf sheaf;
};
std::vector<QuotientObject> quotient_objects(const Site& site, const FinPresheaf& x);

bool presheaves_isomorphic(const FiniteCategory& cat, const FinPresheaf& x, const FinPresheaf& y);

struct SheafSubcategory {
    FiniteCategory cat;
    std::vector<FinPresheaf> objects;                       // in category object order
    std::vector<std::vector<std::vector<NatTransf>>> homs;  // [a][b][k]
};

/// Full subcategory of sheaves on the deduplicated quotients of the
/// representables.
SheafSubcategory supercompact_category(const Site& site);

/// Quotients of coproducts of at most k representables, up to isomorphism.
SheafSubcategory compact_category_bounded(const Site& site, int k);
bool compact_category_stabilized(const Site& site, int k);

/// Does ell send this cocone to a colimit cone? Decided by computing the
/// sheaf colimit of ell∘F and testing the induced comparison map.
bool preserves_funnel_colimit(const Site& site, const Diagram& d, const Cocone& c);

/// The intrinsic criteria route: leg at the weakly terminal part covers, and
/// locally equalized pairs into it are connected in the comma category after
/// refinement by a cover.
bool check_colim_criteria(const Site& site, const Diagram& d, const Cocone& c);

/// Runs both colimit-preservation routes over every normalized funnel (and,
/// on finitely generated sites, every binary multifunnel) with every cocone,
/// and counts disagreements.
struct ColimSweepResult {
    int cocones = 0;
    int disagreements = 0;
    std::string first_disagreement;
};
ColimSweepResult colim_agreement_sweep(const Site& site, long long funnel_cap = 4096);

} // namespace finsite
