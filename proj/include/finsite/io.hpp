#pragma once
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "finsite/duality.hpp"
#include "finsite/fincat.hpp"
#include "finsite/site.hpp"

namespace finsite {

using Json = nlohmann::ordered_json;

/// Schema violation: the document shape is wrong. Carries the JSON path.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, const std::string& msg)
        : std::runtime_error(path + ": " + msg), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// The document parsed but violates a mathematical law (category laws,
/// stable-class axioms, order axioms). Carries the witness.
class LawError : public std::runtime_error {
public:
    explicit LawError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class DocKind { Category, SiteDoc, Poset, Semilattice, FunctorDoc };

struct Document {
    DocKind kind;
    FiniteCategory category;            // Category, SiteDoc
    std::optional<Site> site;           // SiteDoc
    FinPoset poset;                     // Poset, Semilattice
    std::optional<JoinSemilattice> jsl; // Semilattice
    // FunctorDoc: name-level maps, resolved against sites chosen later
    std::map<std::string, std::string> functor_objects;
    std::map<std::string, std::string> functor_morphisms;
};

DocKind detect_kind(const Json& j);
Document parse_document(const Json& j);

FiniteCategory parse_category(const Json& j);
Site parse_site(const Json& j);
FinPoset parse_poset(const Json& j);
JoinSemilattice parse_semilattice(const Json& j);
Functor resolve_functor(const Document& doc, const FiniteCategory& dom, const FiniteCategory& cod);

Json emit_category(const FiniteCategory& cat);
Json emit_site(const Site& site);
Json emit_poset(const FinPoset& p);
Json emit_semilattice(const JoinSemilattice& s);

Json read_json_file(const std::string& path);

} // namespace finsite
