#pragma once
#include <optional>
#include <string>

#include "finsite/fincat.hpp"
#include "finsite/site.hpp"

namespace finsite {

enum class VerdictValue { True, False, Inconclusive };

struct Verdict {
    VerdictValue value = VerdictValue::Inconclusive;
    std::string note; // witness for False, reason for Inconclusive

    bool is_true() const { return value == VerdictValue::True; }
    bool is_false() const { return value == VerdictValue::False; }
    static Verdict yes() { return {VerdictValue::True, ""}; }
    static Verdict no(std::string witness) { return {VerdictValue::False, std::move(witness)}; }
    static Verdict unknown(std::string reason) { return {VerdictValue::Inconclusive, std::move(reason)}; }
};

std::string to_string(VerdictValue v);

struct ClassifyOptions {
    // Universal quantifiers over funnels range over 2^|pairs(d0)| subsets; an
    // explicit cap turns blowups into an honest "inconclusive".
    long long funnel_cap = 4096;
};

/// Verdicts for the category-level properties. A false verdict always carries
/// a finite witness; inconclusive carries the exhausted bound.
struct ClassificationReport {
    Verdict reductive;
    Verdict coalescent;
    Verdict effectual;
    Verdict positive;
    Verdict has_pullbacks;
    Verdict has_equalizers;
    Verdict locally_regular;
    Verdict regular;
    Verdict effective;
    Verdict augmented;
    std::string to_text() const;
};

std::set<int> strict_epimorphisms(const FiniteCategory& cat);
std::vector<Family> strictly_epic_families(const FiniteCategory& cat);

Verdict has_funneling_colimits(const FiniteCategory& cat, const ClassifyOptions& opt = {});
Verdict has_finite_coproducts(const FiniteCategory& cat);
Verdict has_pullbacks(const FiniteCategory& cat);
Verdict has_equalizers(const FiniteCategory& cat);
std::optional<int> initial_object(const FiniteCategory& cat);
std::optional<int> terminal_object(const FiniteCategory& cat);
bool is_strict_initial(const FiniteCategory& cat, int obj);

Verdict is_reductive(const FiniteCategory& cat, const ClassifyOptions& opt = {});
Verdict is_coalescent(const FiniteCategory& cat, const ClassifyOptions& opt = {});
Verdict is_effectual(const FiniteCategory& cat, const ClassifyOptions& opt = {});
Verdict is_positive(const FiniteCategory& cat, const ClassifyOptions& opt = {});
Verdict is_locally_regular(const FiniteCategory& cat);
Verdict is_regular(const FiniteCategory& cat);
Verdict is_effective(const FiniteCategory& cat);

ClassificationReport classify(const FiniteCategory& cat, const ClassifyOptions& opt = {});

/// The reductive site of a reductive category.
Site reductive_site(const FiniteCategory& cat);
/// The coalescent site of a coalescent category.
Site coalescent_site(const FiniteCategory& cat);

/// Round trip of the correspondence: sheaves on the reductive site, the full
/// subcategory of supercompact objects, and an equivalence back to the input.
std::optional<Functor> correspondence_round_trip(const FiniteCategory& cat, const ClassifyOptions& opt = {});

} // namespace finsite
