#pragma once
#include "finsite/duality.hpp"
#include "finsite/fincat.hpp"
#include "finsite/site.hpp"

namespace finsite::examples {

/// One object, identity only.
FiniteCategory one_object();

/// f, g : A -> B with no further structure.
FiniteCategory parallel_pair();

/// The coequalizer diagram A => B ->> Q, the category of supercompact
/// objects of presheaves on the parallel pair.
FiniteCategory coequalizer_diagram();

/// Poset 0 < a, b < 1 with a, b incomparable, as a thin category.
FiniteCategory diamond_category();
FinPoset diamond_poset();
JoinSemilattice diamond_semilattice();

/// Two parallel pairs over a common object, jointly coequalized by the
/// terminal object: R1 => A <= R2, A ->> B. The canonical functor to sheaves
/// for the reductive topology does not preserve either single-pair
/// coequalizer.
FiniteCategory tworel_category();

/// The category of supercompact objects of sheaves on tworel: both one-pair
/// coequalizers C, D appear between A and B.
FiniteCategory tworel_prime_category();

/// X --t--> Y with a parallel pair f, g : Y -> Z equalized by t; the
/// canonical congruence of the site with class {t} merges f and g.
FiniteCategory equalized_pair_category();

/// One object with an idempotent e; satisfies the right Ore condition, so
/// all morphisms form a stable class (the atomic topology).
FiniteCategory idempotent_monoid();

/// Two objects, identities only.
FiniteCategory discrete_two();

FinPoset chain_poset(int n);
JoinSemilattice chain_semilattice(int n);
FinPoset antichain_two();

/// Five-element join semilattice 0 < a, b, c < 1 with all binary joins of
/// distinct middle elements equal to 1; not distributive, witness (c, a, b).
JoinSemilattice njsl5();

// sites
Site parallel_pair_site();          // trivial topology
Site diamond_reductive_site();      // strict epis (the identities)
Site diamond_augmented_site();      // reductive plus the empty cover on 0
Site diamond_coalescent_site();     // finite join covers
Site tworel_site();                 // reductive topology on tworel
Site tworel_prime_site();           // reductive topology on tworel prime
Site equalized_pair_site();         // principal class {t} plus identities
Site atomic_monoid_site();          // all morphisms of the idempotent monoid

} // namespace finsite::examples
