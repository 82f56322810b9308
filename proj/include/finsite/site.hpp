#pragma once
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "finsite/fincat.hpp"

namespace finsite {

/// Set of morphisms into a fixed object, closed under precomposition.
struct Sieve {
    int codomain = -1;
    std::set<int> members;

    bool contains(int m) const { return members.count(m) > 0; }
};

Sieve maximal_sieve(const FiniteCategory& cat, int c);
Sieve generated_sieve(const FiniteCategory& cat, const std::vector<int>& presieve, int codomain);
Sieve pullback_sieve(const FiniteCategory& cat, const Sieve& s, int f);
std::vector<Sieve> all_sieves(const FiniteCategory& cat, int c);

struct StableClassReport {
    bool ax1 = false; // contains all identities
    bool ax2 = false; // closed under composition
    bool ax3 = false; // quasi-pullback squares exist
    bool ax4 = false; // closed under post-factors (advisory)
    std::string witness; // first failure, human readable
    bool stable() const { return ax1 && ax2 && ax3; }
};

struct StableFamilyReport {
    bool ax1 = false; // identity singletons
    bool ax2 = false; // multicomposition
    bool ax3 = false; // quasi-pullback families
    bool ax4 = false; // refinement-maximal (advisory)
    bool ax5 = false; // superset closed (advisory)
    std::string witness;
    bool stable() const { return ax1 && ax2 && ax3; }
};

/// Finite family of morphisms with a specified common codomain. The codomain
/// is explicit so the empty family over an object is representable.
struct Family {
    int codomain = -1;
    std::vector<int> members; // sorted, distinct
};

StableClassReport check_stable_class(const FiniteCategory& cat, const std::set<int>& carrier);
StableFamilyReport check_stable_family_class(const FiniteCategory& cat, const std::vector<Family>& carrier);

/// T̂ = all morphisms with a principal sieve meeting T. Idempotent and
/// topology-preserving.
std::set<int> saturate(const FiniteCategory& cat, const std::set<int>& carrier);

/// A principal or finitely generated site: a finite category plus the stable
/// class generating its topology, with an optional set of objects whose empty
/// sieve also covers (the quasi-principal fragment).
///
/// Axioms 1-3 (resp. 1'-3') are hard load-time checks; axiom 4 closure is
/// taken on demand via saturate().
class Site {
public:
    static Site principal(FiniteCategory cat, std::set<int> tclass, std::set<int> empty_covered = {});
    static Site finitely_generated(FiniteCategory cat, std::vector<Family> families,
                                   std::set<int> empty_covered = {});

    /// Trivial topology: T = identities.
    static Site trivial(FiniteCategory cat);

    bool principal_kind() const { return principal_; }
    const FiniteCategory& cat() const { return cat_; }
    const std::set<int>& tclass() const { return tclass_; }
    const std::set<int>& saturated() const { return saturated_; }
    const std::vector<Family>& families() const { return families_; }
    const std::set<int>& empty_covered() const { return empty_covered_; }

    /// True when the empty sieve covers: the object is flagged, or (finitely
    /// generated case) the carrier holds an empty family over it.
    bool empty_covers(int obj) const;

    /// Families usable as covers, including the empty family over flagged
    /// objects. FG sites only.
    std::vector<Family> covering_families_on(int obj) const;

    bool is_covering(const Sieve& s) const;

    /// Generator sieves on an object: principal sieves of carrier morphisms /
    /// sieves of carrier families, plus the empty sieve when flagged. Every
    /// covering sieve contains one of these.
    std::vector<Sieve> generating_covers_on(int obj) const;

    Sieve minimal_covering_sieve(int obj) const;

    /// Verifies the Grothendieck axioms of the induced covering predicate by
    /// exhaustion over sieves (guarded by `cap` on the sieve count per
    /// object). Returns an explanation on failure.
    std::optional<std::string> topology_defect(long long cap = 1 << 16) const;

private:
    FiniteCategory cat_;
    bool principal_ = true;
    std::set<int> tclass_;
    std::set<int> saturated_;
    std::vector<Family> families_;
    std::set<int> empty_covered_;
};

bool is_effective_epimorphic_sieve(const FiniteCategory& cat, const Sieve& s);
bool is_universally_eff_epi(const FiniteCategory& cat, const Sieve& s);

/// The sieve viewed as a diagram: one shape object per member, arrows all
/// factorizations, mapped back into the category.
Diagram sieve_diagram(const FiniteCategory& cat, const Sieve& s);

struct Congruence {
    // class_of[m] = index of the congruence class of morphism m
    std::vector<int> class_of;
    Site quotient;
    Functor projection; // site.cat() -> quotient.cat()
};

/// Identifies parallel morphisms equalized by a T-morphism (all members of
/// one T'-family in the finitely generated case) and rebuilds the site on the
/// quotient category. The projection is full and bijective on objects, and
/// every image of a T-morphism is epic in the quotient.
Congruence canonical_congruence(const Site& site);

bool is_subcanonical(const Site& site);
bool locally_equal(const Site& site, int h, int k);

struct SiteMorphismReport {
    bool covers_preserved = false;  // condition 1
    bool objects_covered = false;   // condition 2
    bool spans_covered = false;     // condition 3
    bool equalized_covered = false; // condition 4
    std::string witness;
    bool morphism_of_sites() const {
        return covers_preserved && objects_covered && spans_covered && equalized_covered;
    }
};

SiteMorphismReport is_morphism_of_sites(const Functor& f, const Site& a, const Site& b);
bool is_comorphism_of_sites(const Functor& f, const Site& a, const Site& b);

} // namespace finsite
