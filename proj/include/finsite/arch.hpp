#pragma once
#include <vector>

#include "finsite/fincat.hpp"
#include "finsite/site.hpp"

namespace finsite {

/// Span apex -> (A, B) whose left leg lies in the saturated class, subject to
/// the local-equality condition: whenever the left leg coequalizes a pair,
/// the right leg coequalizes it locally. On a finitely generated site an arch
/// is a finite family of such spans whose left legs form a covering family;
/// the principal case is the one-span special case.
struct Arch {
    struct Span {
        int apex = -1;
        int left = -1;  // apex -> A
        int right = -1; // apex -> B
    };
    std::vector<Span> spans; // sorted by (apex, left, right); may be empty
    int foot_a = -1;
    int foot_b = -1;
};

bool operator==(const Arch::Span& x, const Arch::Span& y);
bool operator<(const Arch::Span& x, const Arch::Span& y);
bool operator==(const Arch& x, const Arch& y);
bool operator<(const Arch& x, const Arch& y);

bool is_arch(const Site& site, const Arch& a);

/// All arches from A to B, in deterministic order. Principal sites range the
/// left legs over the saturated class; finitely generated sites range the
/// span families over the carrier families (plus the empty family over
/// empty-covered objects).
std::vector<Arch> enumerate_arches(const Site& site, int a, int b);

/// Arch morphisms x with t = t'∘x, g = g'∘x (spanwise with a choice of
/// target span in the family case) connect arches; classes are listed by
/// least member in enumeration order.
std::vector<std::vector<Arch>> arch_components(const Site& site, int a, int b);

/// Composite along a stability square (first square found in scan order).
/// The component of the result does not depend on that choice. Throws
/// std::logic_error when no square exists, which a stable class rules out.
Arch compose_arches(const Site& site, const Arch& second, const Arch& first);

Arch identity_arch(const Site& site, int a);

/// All composites obtainable from any choice of stability data; used to
/// property-check that composition is well defined on components.
std::vector<Arch> compose_arches_all_squares(const Site& site, const Arch& second, const Arch& first);

/// The category with the site's objects and arch components as hom-sets;
/// equivalent to the full subcategory of sheaves on the representables.
FiniteCategory representable_category(const Site& site);

} // namespace finsite
