#include <iostream>

#include "CLI11.hpp"

#include "finsite/arch.hpp"
#include "finsite/classify.hpp"
#include "finsite/corpus.hpp"
#include "finsite/duality.hpp"
#include "finsite/io.hpp"
#include "finsite/sheaf.hpp"

using namespace finsite;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInconclusive = 3;

Json verdict_json(const Verdict& v) {
    Json j;
    j["value"] = to_string(v.value);
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

Site site_of_document(const Document& doc) {
    switch (doc.kind) {
        case DocKind::SiteDoc: return *doc.site;
        case DocKind::Category: return Site::trivial(doc.category); // presheaf topos
        case DocKind::Semilattice: return site_of_semilattice(*doc.jsl);
        case DocKind::Poset: return Site::trivial(category_of_poset(doc.poset));
        default: throw ParseError("$", "expected a site, category, poset or semilattice document");
    }
}

FiniteCategory category_of_document(const Document& doc) {
    switch (doc.kind) {
        case DocKind::SiteDoc:
        case DocKind::Category: return doc.category;
        case DocKind::Semilattice:
        case DocKind::Poset: return category_of_poset(doc.poset);
        default: throw ParseError("$", "expected a category-like document");
    }
}

int run_validate(const std::string& file, bool as_json) {
    Json j = read_json_file(file);
    DocKind kind = detect_kind(j);
    parse_document(j); // throws on schema or law violation
    const char* name = nullptr;
    switch (kind) {
        case DocKind::Category: name = "category"; break;
        case DocKind::SiteDoc: name = "site"; break;
        case DocKind::Poset: name = "poset"; break;
        case DocKind::Semilattice: name = "semilattice"; break;
        case DocKind::FunctorDoc: name = "functor"; break;
    }
    if (as_json) {
        Json out;
        out["kind"] = name;
        out["valid"] = true;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << name << ": valid\n";
    }
    return kExitOk;
}

int run_classify(const std::string& file, long long funnel_cap, bool as_json) {
    Document doc = parse_document(read_json_file(file));
    ClassifyOptions opt;
    opt.funnel_cap = funnel_cap;
    ClassificationReport rep = classify(category_of_document(doc), opt);
    if (as_json) {
        Json out;
        out["reductive"] = verdict_json(rep.reductive);
        out["coalescent"] = verdict_json(rep.coalescent);
        out["effectual"] = verdict_json(rep.effectual);
        out["positive"] = verdict_json(rep.positive);
        out["hasPullbacks"] = verdict_json(rep.has_pullbacks);
        out["hasEqualizers"] = verdict_json(rep.has_equalizers);
        out["locallyRegular"] = verdict_json(rep.locally_regular);
        out["regular"] = verdict_json(rep.regular);
        out["effective"] = verdict_json(rep.effective);
        out["augmented"] = verdict_json(rep.augmented);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << rep.to_text();
    }
    for (const Verdict* v : {&rep.reductive, &rep.coalescent, &rep.effectual, &rep.positive,
                             &rep.locally_regular, &rep.regular, &rep.effective})
        if (v->value == VerdictValue::Inconclusive) return kExitInconclusive;
    return kExitOk;
}

int run_arch_homs(const std::string& a, const std::string& b, const std::string& file, bool as_json) {
    Document doc = parse_document(read_json_file(file));
    Site site = site_of_document(doc);
    int ia = site.cat().object_index(a), ib = site.cat().object_index(b);
    if (ia < 0 || ib < 0) throw ParseError("$", "unknown object name");
    auto comps = arch_components(site, ia, ib);
    if (as_json) {
        Json out;
        out["a"] = a;
        out["b"] = b;
        out["count"] = comps.size();
        out["components"] = Json::array();
        for (const auto& comp : comps) {
            Json jc = Json::array();
            for (const auto& arch : comp) {
                Json ja = Json::array();
                for (const auto& s : arch.spans)
                    ja.push_back(Json::array(
                        {site.cat().mor(s.left).name, site.cat().mor(s.right).name}));
                jc.push_back(std::move(ja));
            }
            out["components"].push_back(std::move(jc));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << comps.size() << "\n";
    }
    return kExitOk;
}

int run_sheaf_homs(const std::string& a, const std::string& b, const std::string& file, bool as_json) {
    Document doc = parse_document(read_json_file(file));
    Site site = site_of_document(doc);
    int ia = site.cat().object_index(a), ib = site.cat().object_index(b);
    if (ia < 0 || ib < 0) throw ParseError("$", "unknown object name");
    auto homs = hom_sheaves(site, ell(site, ia), ell(site, ib));
    if (as_json) {
        Json out;
        out["a"] = a;
        out["b"] = b;
        out["count"] = homs.size();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << homs.size() << "\n";
    }
    return kExitOk;
}

int run_supercompact(const std::string& file, bool as_json) {
    Document doc = parse_document(read_json_file(file));
    Site site = site_of_document(doc);
    auto sub = supercompact_category(site);
    if (as_json) {
        std::cout << emit_category(sub.cat).dump(2) << "\n";
    } else {
        std::cout << sub.cat.object_count() << " supercompact objects, " << sub.cat.morphism_count()
                  << " morphisms\n";
        for (int i = 0; i < sub.cat.object_count(); ++i) {
            std::cout << "  " << sub.cat.object_name(i) << " carriers:";
            for (int c : sub.objects[i].card) std::cout << " " << c;
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int run_compact(const std::string& file, int bound, bool as_json) {
    Document doc = parse_document(read_json_file(file));
    Site site = site_of_document(doc);
    auto sub = compact_category_bounded(site, bound);
    bool stable = compact_category_stabilized(site, bound);
    if (as_json) {
        Json out;
        out["bound"] = bound;
        out["stabilized"] = stable;
        out["category"] = emit_category(sub.cat);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << sub.cat.object_count() << " compact objects at bound " << bound
                  << (stable ? " (stabilized)" : " (not stabilized)") << "\n";
    }
    return kExitOk;
}

int run_quotient_site(const std::string& file, bool as_json) {
    Document doc = parse_document(read_json_file(file));
    if (doc.kind != DocKind::SiteDoc) throw ParseError("$", "expected a site document");
    Congruence cong = canonical_congruence(*doc.site);
    if (as_json) {
        Json out;
        out["site"] = emit_site(cong.quotient);
        Json classes = Json::object();
        for (int m = 0; m < doc.site->cat().morphism_count(); ++m)
            classes[doc.site->cat().mor(m).name] = cong.quotient.cat().mor(cong.class_of[m]).name;
        out["projection"] = std::move(classes);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "quotient has " << cong.quotient.cat().morphism_count() << " morphisms ("
                  << doc.site->cat().morphism_count() << " before)\n";
    }
    return kExitOk;
}

int run_morphism_check(const std::string& ffile, const std::string& afile, const std::string& bfile,
                       bool as_json) {
    Document fdoc = parse_document(read_json_file(ffile));
    if (fdoc.kind != DocKind::FunctorDoc) throw ParseError("$", "expected a functor document");
    Site a = site_of_document(parse_document(read_json_file(afile)));
    Site b = site_of_document(parse_document(read_json_file(bfile)));
    Functor f = resolve_functor(fdoc, a.cat(), b.cat());
    auto rep = is_morphism_of_sites(f, a, b);
    bool comorphism = is_comorphism_of_sites(f, a, b);
    if (as_json) {
        Json out;
        out["covers_preserved"] = rep.covers_preserved;
        out["objects_covered"] = rep.objects_covered;
        out["spans_covered"] = rep.spans_covered;
        out["equalized_covered"] = rep.equalized_covered;
        out["morphism_of_sites"] = rep.morphism_of_sites();
        out["comorphism_of_sites"] = comorphism;
        if (!rep.witness.empty()) out["witness"] = rep.witness;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "morphism of sites: " << (rep.morphism_of_sites() ? "yes" : "no") << "\n";
        std::cout << "  covers preserved: " << (rep.covers_preserved ? "yes" : "no") << "\n";
        std::cout << "  objects covered:  " << (rep.objects_covered ? "yes" : "no") << "\n";
        std::cout << "  spans covered:    " << (rep.spans_covered ? "yes" : "no") << "\n";
        std::cout << "  pairs covered:    " << (rep.equalized_covered ? "yes" : "no") << "\n";
        if (!rep.witness.empty()) std::cout << "  witness: " << rep.witness << "\n";
        std::cout << "comorphism of sites: " << (comorphism ? "yes" : "no") << "\n";
    }
    return rep.morphism_of_sites() ? kExitOk : kExitFailure;
}

int run_spectrum(const std::string& file, bool as_json) {
    Document doc = parse_document(read_json_file(file));
    if (!doc.jsl) throw ParseError("$", "expected a semilattice document");
    auto filters = prime_filters(*doc.jsl);
    if (as_json) {
        Json out = Json::array();
        for (const auto& f : filters) {
            Json jf = Json::array();
            for (int x : f) jf.push_back(doc.jsl->poset.elements[x]);
            out.push_back(std::move(jf));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << filters.size() << " prime filters\n";
        for (const auto& f : filters) {
            std::cout << "  {";
            bool first = true;
            for (int x : f) {
                std::cout << (first ? "" : ", ") << doc.jsl->poset.elements[x];
                first = false;
            }
            std::cout << "}\n";
        }
    }
    return kExitOk;
}

int run_stone(const std::string& file, bool as_json) {
    Document doc = parse_document(read_json_file(file));
    if (!doc.jsl) throw ParseError("$", "expected a semilattice document");
    auto w = stone_round_trip(*doc.jsl); // throws on any failure
    if (as_json) {
        Json out;
        out["isomorphism"] = Json::object();
        FinFrame frame = ideal_frame(*doc.jsl);
        for (int i = 0; i < doc.jsl->size(); ++i)
            out["isomorphism"][doc.jsl->poset.elements[i]] = frame.poset.elements[w.map[i]];
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "round trip: isomorphism found\n";
    }
    return kExitOk;
}

int run_alexandroff(const std::string& file, bool as_json) {
    Document doc = parse_document(read_json_file(file));
    if (doc.kind != DocKind::Poset && doc.kind != DocKind::Semilattice)
        throw ParseError("$", "expected a poset document");
    auto w = alexandroff_round_trip(doc.poset);
    if (as_json) {
        Json out;
        out["isomorphism"] = Json::object();
        FinFrame frame = alexandroff(doc.poset);
        for (int i = 0; i < doc.poset.size(); ++i)
            out["isomorphism"][doc.poset.elements[i]] = frame.poset.elements[w.map[i]];
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "round trip: isomorphism found\n";
    }
    return kExitOk;
}

int run_enumerate(const std::string& kind, int max_size) {
    if (kind == "poset") {
        for (const auto& p : all_posets_up_to_iso(max_size)) std::cout << emit_poset(p).dump() << "\n";
        return kExitOk;
    }
    if (kind == "jsl") {
        for (const auto& s : all_distributive_semilattices_up_to_iso(max_size))
            std::cout << emit_semilattice(s).dump() << "\n";
        return kExitOk;
    }
    throw ParseError("$", "unknown kind '" + kind + "' (expected poset or jsl)");
}

int run_corpus_cmd(const std::string& dir, int parallel, bool as_json) {
    auto entries = load_corpus_dir(dir);
    auto report = run_corpus(entries, parallel);
    if (as_json)
        std::cout << report.machine.dump(2) << "\n";
    else
        std::cout << report.text;
    if (report.failed > 0) return kExitFailure;
    if (report.inconclusive > 0) return kExitInconclusive;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite sites, sheaf hom-sets and order dualities"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable output");

    std::string file, obj_a, obj_b, ffile, afile, bfile, kind = "jsl";
    long long funnel_cap = 4096;
    int parallel = 1, bound = 1, max_size = 6;
#ifdef FINSITE_CORPUS_DEFAULT_DIR
    std::string corpus_dir = FINSITE_CORPUS_DEFAULT_DIR;
#else
    std::string corpus_dir = "data/corpus";
#endif

    auto* validate_cmd = app.add_subcommand("validate", "parse a document and run its load checks");
    validate_cmd->add_option("file", file)->required();

    auto* classify_cmd = app.add_subcommand("classify", "decide the category-level properties");
    classify_cmd->add_option("file", file)->required();
    classify_cmd->add_option("--funnel-cap", funnel_cap, "bound on funnel subsets per object");

    auto* arch_cmd = app.add_subcommand("arch-homs", "count arch components between two objects");
    arch_cmd->add_option("a", obj_a)->required();
    arch_cmd->add_option("b", obj_b)->required();
    arch_cmd->add_option("file", file)->required();

    auto* sheaf_cmd = app.add_subcommand("sheaf-homs", "count sheaf morphisms between representables");
    sheaf_cmd->add_option("a", obj_a)->required();
    sheaf_cmd->add_option("b", obj_b)->required();
    sheaf_cmd->add_option("file", file)->required();

    auto* super_cmd = app.add_subcommand("supercompact-category", "compute the category of supercompact objects");
    super_cmd->add_option("file", file)->required();

    auto* compact_cmd = app.add_subcommand("compact-category", "bounded category of compact objects");
    compact_cmd->add_option("file", file)->required();
    compact_cmd->add_option("--coproduct-bound", bound, "coproduct arity bound");

    auto* quot_cmd = app.add_subcommand("quotient-site", "canonical congruence quotient of a site");
    quot_cmd->add_option("file", file)->required();

    auto* mor_cmd = app.add_subcommand("morphism-check", "test a functor as a (co)morphism of sites");
    mor_cmd->add_option("functor", ffile)->required();
    mor_cmd->add_option("domain", afile)->required();
    mor_cmd->add_option("codomain", bfile)->required();

    auto* spec_cmd = app.add_subcommand("spectrum", "prime filters of a distributive join semilattice");
    spec_cmd->add_option("file", file)->required();

    auto* stone_cmd = app.add_subcommand("stone-roundtrip", "Stone duality round trip");
    stone_cmd->add_option("file", file)->required();

    auto* alex_cmd = app.add_subcommand("alexandroff-roundtrip", "Alexandroff duality round trip");
    alex_cmd->add_option("file", file)->required();

    auto* enum_cmd = app.add_subcommand("enumerate", "stream small structures up to isomorphism");
    enum_cmd->add_option("--kind", kind, "poset or jsl");
    enum_cmd->add_option("--max-size", max_size);

    auto* corpus_cmd = app.add_subcommand("corpus", "evaluate the bundled corpus of examples");
    corpus_cmd->add_option("--dir", corpus_dir, "corpus directory");
    corpus_cmd->add_option("--parallel", parallel, "worker threads");

    // accept --json after the subcommand as well
    for (auto* sub : {validate_cmd, classify_cmd, arch_cmd, sheaf_cmd, super_cmd, compact_cmd, quot_cmd,
                      mor_cmd, spec_cmd, stone_cmd, alex_cmd, enum_cmd, corpus_cmd})
        sub->add_flag("--json", as_json, "emit machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return run_validate(file, as_json);
        if (classify_cmd->parsed()) return run_classify(file, funnel_cap, as_json);
        if (arch_cmd->parsed()) return run_arch_homs(obj_a, obj_b, file, as_json);
        if (sheaf_cmd->parsed()) return run_sheaf_homs(obj_a, obj_b, file, as_json);
        if (super_cmd->parsed()) return run_supercompact(file, as_json);
        if (compact_cmd->parsed()) return run_compact(file, bound, as_json);
        if (quot_cmd->parsed()) return run_quotient_site(file, as_json);
        if (mor_cmd->parsed()) return run_morphism_check(ffile, afile, bfile, as_json);
        if (spec_cmd->parsed()) return run_spectrum(file, as_json);
        if (stone_cmd->parsed()) return run_stone(file, as_json);
        if (alex_cmd->parsed()) return run_alexandroff(file, as_json);
        if (enum_cmd->parsed()) return run_enumerate(kind, max_size);
        if (corpus_cmd->parsed()) return run_corpus_cmd(corpus_dir, parallel, as_json);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const LawError& e) {
        std::cerr << "law violation: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}
