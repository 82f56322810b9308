#pragma once
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace finsite {

struct MorData {
    std::string name;
    int dom = -1;
    int cod = -1;
};

/// A finite category given by explicit object and morphism lists, an identity
/// table and a total composition table on composable pairs. Objects and
/// morphisms are addressed by index; names are kept for I/O and reports.
///
/// Instances are immutable once built and safe to share across threads.
class FiniteCategory {
public:
    FiniteCategory() = default;

    // Structural construction. Throws std::invalid_argument on dangling
    // indices or a composite defined on a non-composable pair; category *laws*
    // are checked separately by validate().
    static FiniteCategory make(std::vector<std::string> objects,
                               std::vector<MorData> morphisms,
                               std::vector<int> identities,
                               const std::vector<std::array<int, 3>>& composites);

    int object_count() const { return static_cast<int>(objects_.size()); }
    int morphism_count() const { return static_cast<int>(morphisms_.size()); }

    const std::string& object_name(int o) const { return objects_.at(o); }
    const MorData& mor(int m) const { return morphisms_.at(m); }
    int dom(int m) const { return morphisms_.at(m).dom; }
    int cod(int m) const { return morphisms_.at(m).cod; }
    int identity(int o) const { return identity_.at(o); }
    bool is_identity(int m) const { return identity_[morphisms_[m].dom] == m && morphisms_[m].dom == morphisms_[m].cod; }

    int object_index(const std::string& name) const; // -1 if absent
    int morphism_index(const std::string& name) const;

    bool composable(int g, int f) const { return cod(f) == dom(g); }

    // g after f; -1 when the pair is composable but the table has a hole
    // (validate() reports those), throws when not composable.
    int compose(int g, int f) const;

    const std::vector<int>& hom(int a, int b) const { return hom_[a][b]; }
    std::vector<int> morphisms_into(int c) const;
    std::vector<int> morphisms_from(int d) const;

    FiniteCategory opposite() const;

    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<MorData>& morphisms() const { return morphisms_; }

private:
    std::vector<std::string> objects_;
    std::vector<MorData> morphisms_;
    std::vector<int> identity_;
    std::vector<std::vector<int>> compose_; // [g][f] -> g∘f, -1 = undefined
    std::vector<std::vector<std::vector<int>>> hom_;

    void build_hom_tables();
    friend class CategoryBuilder;
};

/// Incremental builder used by constructions that discover morphisms as they
/// go (quotients, representable categories, sheaf subcategories).
class CategoryBuilder {
public:
    int add_object(const std::string& name);
    int add_morphism(const std::string& name, int dom, int cod);
    void set_identity(int obj, int mor);
    void set_composite(int g, int f, int gf);
    FiniteCategory build() const; // runs FiniteCategory::make checks

private:
    std::vector<std::string> objects_;
    std::vector<MorData> morphisms_;
    std::vector<int> identity_;
    std::vector<std::array<int, 3>> composites_;
};

struct ValidationIssue {
    std::string kind;   // "structure" or "law"
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }
    std::string to_string() const;
};

/// Checks every category law by finite quantification and reports each
/// violation with the offending cell or triple. Malformed tables (dangling
/// ids, misplaced composites) come back as "structure" issues, law violations
/// as "law" issues.
ValidationReport validate(const FiniteCategory& cat);

struct MorphismFlags {
    bool mono = false;
    bool epi = false;
    bool split_epi = false;
    bool iso = false;
};

MorphismFlags classify_morphism(const FiniteCategory& cat, int m);

/// h is a strict epimorphism when every k out of dom(h) that coequalizes all
/// parallel pairs coequalized by h factors through h exactly once.
bool is_strict_epi(const FiniteCategory& cat, int h);

/// Family version: {f_i} into a common codomain presents a multifunneling
/// colimit. Decided by the analogous finite quantification over co-compatible
/// families.
bool is_strictly_epic_family(const FiniteCategory& cat, const std::vector<int>& family, int codomain);

struct Diagram {
    FiniteCategory shape;
    std::vector<int> on_objects;
    std::vector<int> on_morphisms;
};

bool diagram_valid(const Diagram& d, const FiniteCategory& target, std::string* why = nullptr);

struct Cocone {
    int vertex = -1;
    std::vector<int> legs; // one per shape object; F(i) -> vertex
};

// In a Cone the legs run vertex -> F(i).
using Cone = Cocone;

std::vector<Cocone> enumerate_cocones(const FiniteCategory& cat, const Diagram& d);
bool is_cocone(const FiniteCategory& cat, const Diagram& d, const Cocone& c);
bool is_colimit_cocone(const FiniteCategory& cat, const Diagram& d, const Cocone& c);

/// Initial cocone, found by exhaustive cocone enumeration. The representative
/// is deterministic: least vertex id, then least legs lexicographically.
std::optional<Cocone> colimit(const FiniteCategory& cat, const Diagram& d);
std::optional<Cone> limit(const FiniteCategory& cat, const Diagram& d);

/// Normalized funnel: weakly terminal object d0 plus a set of parallel pairs
/// with codomain d0, one shape node per pair.
Diagram funnel_diagram(const FiniteCategory& cat, int d0, const std::vector<std::pair<int, int>>& pairs);

/// Colimit of the normalized funnel on (d0, pairs): the universal morphism
/// out of d0 coequalizing all the pairs, with its codomain.
std::optional<std::pair<int, int>> joint_coequalizer(const FiniteCategory& cat, int d0,
                                                     const std::vector<std::pair<int, int>>& pairs);

/// Connected components of the comma category (x ↓ F): elements are pairs
/// (shape object i, m : x -> F(i)), joined whenever a diagram arrow commutes
/// over x.
std::vector<std::vector<std::pair<int, int>>> under_comma_components(const FiniteCategory& cat, int x,
                                                                     const Diagram& d);

struct Functor {
    std::vector<int> on_objects;
    std::vector<int> on_morphisms;
};

bool functor_valid(const FiniteCategory& dom, const FiniteCategory& cod, const Functor& f,
                   std::string* why = nullptr);
Functor identity_functor(const FiniteCategory& cat);
Functor compose_functors(const FiniteCategory& a, const FiniteCategory& b, const FiniteCategory& c,
                         const Functor& g, const Functor& f); // g after f

bool is_full(const FiniteCategory& dom, const FiniteCategory& cod, const Functor& f);
bool is_faithful(const FiniteCategory& dom, const FiniteCategory& cod, const Functor& f);
bool is_essentially_surjective(const FiniteCategory& dom, const FiniteCategory& cod, const Functor& f);

bool objects_isomorphic(const FiniteCategory& cat, int a, int b);

/// Full, faithful, essentially surjective functor A -> B, or absence. The
/// search reduces both categories to skeletons and runs a backtracking
/// isomorphism search with hom-degree pruning, so absence is definitive.
std::optional<Functor> find_equivalence(const FiniteCategory& a, const FiniteCategory& b);

/// Iso-strict variant used by the equivalence search and dedup passes.
std::optional<Functor> find_isomorphism(const FiniteCategory& a, const FiniteCategory& b);

FiniteCategory full_subcategory(const FiniteCategory& cat, const std::vector<int>& objs,
                                Functor* inclusion = nullptr);

} // namespace finsite
