// Regenerates the bundled corpus under data/corpus. Each entry pairs an
// input document with its expected results; expectations carry a provenance
// tag ("literature" entries also name the fact they rely on) so the corpus
// stays self-verifying and auditable.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "finsite/examples.hpp"
#include "finsite/io.hpp"

using namespace finsite;
namespace ex = finsite::examples;

namespace {

Json expect(const std::string& check, const std::string& provenance, const std::string& cite = "") {
    Json e;
    e["check"] = check;
    e["provenance"] = provenance;
    if (!cite.empty()) e["cite"] = cite;
    return e;
}

void write_entry(const std::string& dir, const std::string& name, Json input, Json expectations) {
    Json entry;
    entry["name"] = name;
    entry["input"] = std::move(input);
    entry["expect"] = std::move(expectations);
    std::ofstream out(dir + "/" + name + ".json");
    out << entry.dump(2) << "\n";
}

Json site_checks_common() {
    Json list = Json::array();
    list.push_back(expect("valid", "trivial"));
    {
        Json e = expect("cross_oracle", "literature",
                        "arch components of a principal or finitely generated site enumerate the "
                        "sheaf morphisms between representables, compatibly with composition");
        e["expect"] = true;
        list.push_back(e);
    }
    {
        Json e = expect("colim_agreement", "literature",
                        "a cocone is sent to a colimit exactly when its top leg covers and "
                        "equalized pairs are locally connected in the comma category");
        e["expect"] = true;
        list.push_back(e);
    }
    {
        Json e = expect("quotient_roundtrip", "literature",
                        "the canonical congruence quotient presents an equivalent sheaf topos");
        e["expect"] = true;
        list.push_back(e);
    }
    return list;
}

} // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data/corpus";
    std::filesystem::create_directories(dir);

    // --- sites ---
    {
        Json checks = site_checks_common();
        Json e = expect("supercompact_count", "trivial");
        e["expect"] = 1;
        checks.push_back(e);
        write_entry(dir, "one_object", emit_site(Site::trivial(ex::one_object())), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("arch_hom_count", "derived", "");
        e1["a"] = "A";
        e1["b"] = "B";
        e1["expect"] = 2;
        checks.push_back(e1);
        Json e2 = expect("sheaf_hom_count", "derived");
        e2["a"] = "A";
        e2["b"] = "B";
        e2["expect"] = 2;
        checks.push_back(e2);
        Json e3 = expect("supercompact_count", "literature",
                         "supercompact objects of presheaves on the parallel pair form the "
                         "coequalizer diagram");
        e3["expect"] = 3;
        checks.push_back(e3);
        Json e4 = expect("supercompact_equiv_to", "literature",
                         "supercompact objects of presheaves on the parallel pair form the "
                         "coequalizer diagram");
        e4["target"] = emit_category(ex::coequalizer_diagram());
        e4["expect"] = true;
        checks.push_back(e4);
        Json e5 = expect("classify", "derived");
        e5["property"] = "reductive";
        e5["expect"] = "false";
        checks.push_back(e5);
        Json e6 = expect("classify", "literature",
                         "the parallel pair has neither an equalizer nor a pullback");
        e6["property"] = "locallyRegular";
        e6["expect"] = "false";
        checks.push_back(e6);
        write_entry(dir, "parallel_pair", emit_site(ex::parallel_pair_site()), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("strict_epi", "derived");
        e1["morphism"] = "a<=1";
        e1["expect"] = false;
        checks.push_back(e1);
        Json e2 = expect("effective_epi_sieve", "literature",
                         "the two middle elements of the diamond form a strictly epic family "
                         "containing no strict epimorphism");
        e2["generators"] = Json::array({"a<=1", "b<=1"});
        e2["expect"] = true;
        checks.push_back(e2);
        Json e3 = expect("subcanonical", "derived");
        e3["expect"] = true;
        checks.push_back(e3);
        Json e4 = expect("supercompact_equiv_to", "literature",
                         "presheaves on a poset have the poset as supercompact objects");
        e4["target"] = emit_category(ex::diamond_category());
        e4["expect"] = true;
        checks.push_back(e4);
        Json e5 = expect("classify", "literature", "any poset is a reductive category");
        e5["property"] = "reductive";
        e5["expect"] = "true";
        checks.push_back(e5);
        Json e6 = expect("classify", "trivial");
        e6["property"] = "effectual";
        e6["expect"] = "true";
        checks.push_back(e6);
        Json e7 = expect("classify", "derived");
        e7["property"] = "locallyRegular";
        e7["expect"] = "true";
        checks.push_back(e7);
        Json e8 = expect("classify", "derived");
        e8["property"] = "regular";
        e8["expect"] = "true";
        checks.push_back(e8);
        write_entry(dir, "diamond_r", emit_site(ex::diamond_reductive_site()), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("supercompact_count", "derived");
        e1["expect"] = 3; // the flagged bottom becomes initial and drops out
        checks.push_back(e1);
        Json e2 = expect("subcanonical", "derived");
        e2["expect"] = true;
        checks.push_back(e2);
        write_entry(dir, "diamond_aug", emit_site(ex::diamond_augmented_site()), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("supercompact_object", "literature",
                         "the top of the diamond is covered by the two slices, so its sheaf is "
                         "compact but not supercompact");
        e1["object"] = "1";
        e1["expect"] = false;
        checks.push_back(e1);
        Json e2 = expect("supercompact_object", "derived");
        e2["object"] = "a";
        e2["expect"] = true;
        checks.push_back(e2);
        Json e3 = expect("subcanonical", "derived");
        e3["expect"] = true;
        checks.push_back(e3);
        Json e4 = expect("sheaf_hom_count", "derived");
        e4["a"] = "1";
        e4["b"] = "a";
        e4["expect"] = 0;
        checks.push_back(e4);
        Json e5 = expect("arch_hom_count", "derived");
        e5["a"] = "0";
        e5["b"] = "1";
        e5["expect"] = 1;
        checks.push_back(e5);
        write_entry(dir, "diamond_jc", emit_site(ex::diamond_coalescent_site()), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("classify", "literature",
                         "sheafification does not preserve the one-pair coequalizers of tworel");
        e1["property"] = "effectual";
        e1["expect"] = "false";
        checks.push_back(e1);
        Json e2 = expect("classify", "derived");
        e2["property"] = "reductive";
        e2["expect"] = "true";
        checks.push_back(e2);
        Json e3 = expect("strict_epi", "derived");
        e3["morphism"] = "f";
        e3["expect"] = true;
        checks.push_back(e3);
        Json e4 = expect("supercompact_count", "literature",
                         "the supercompact objects of sheaves on tworel form the six-object "
                         "category with both one-pair coequalizers");
        e4["expect"] = 6;
        checks.push_back(e4);
        Json e5 = expect("supercompact_equiv_to", "literature",
                         "the supercompact objects of sheaves on tworel form the six-object "
                         "category with both one-pair coequalizers");
        e5["target"] = emit_category(ex::tworel_prime_category());
        e5["expect"] = true;
        checks.push_back(e5);
        Json e6 = expect("subcanonical", "derived");
        e6["expect"] = true;
        checks.push_back(e6);
        write_entry(dir, "tworel_C", emit_site(ex::tworel_site()), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("classify", "literature",
                         "the six-object tworel category is the supercompact category of its "
                         "own sheaf topos");
        e1["property"] = "effectual";
        e1["expect"] = "true";
        checks.push_back(e1);
        Json e2 = expect("classify", "derived");
        e2["property"] = "reductive";
        e2["expect"] = "true";
        checks.push_back(e2);
        Json e3 = expect("supercompact_equiv_to", "derived");
        e3["target"] = emit_category(ex::tworel_prime_category());
        e3["expect"] = true;
        checks.push_back(e3);
        write_entry(dir, "tworel_Cprime", emit_site(ex::tworel_prime_site()), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("subcanonical", "derived");
        e1["expect"] = false;
        checks.push_back(e1);
        Json e2 = expect("arch_hom_count", "derived");
        e2["a"] = "Y";
        e2["b"] = "Z";
        e2["expect"] = 1;
        checks.push_back(e2);
        Json e3 = expect("sheaf_hom_count", "derived");
        e3["a"] = "Y";
        e3["b"] = "Z";
        e3["expect"] = 1;
        checks.push_back(e3);
        write_entry(dir, "equalized_pair", emit_site(ex::equalized_pair_site()), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("classify", "derived");
        e1["property"] = "reductive";
        e1["expect"] = "false"; // the pair (1, e) has no coequalizer
        checks.push_back(e1);
        Json e2 = expect("subcanonical", "derived");
        e2["expect"] = false;
        checks.push_back(e2);
        write_entry(dir, "ore_monoid", emit_site(ex::atomic_monoid_site()), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("supercompact_equiv_to", "literature",
                         "presheaves on a poset have the poset as supercompact objects");
        e1["target"] = emit_category(category_of_poset(ex::chain_poset(3)));
        e1["expect"] = true;
        checks.push_back(e1);
        write_entry(dir, "chain3", emit_site(Site::trivial(category_of_poset(ex::chain_poset(3)))), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("classify", "literature", "any discrete category is reductive");
        e1["property"] = "reductive";
        e1["expect"] = "true";
        checks.push_back(e1);
        Json e2 = expect("classify", "trivial");
        e2["property"] = "coalescent";
        e2["expect"] = "false";
        checks.push_back(e2);
        Json e3 = expect("classify", "literature",
                         "a discrete category is locally regular but not regular");
        e3["property"] = "locallyRegular";
        e3["expect"] = "true";
        checks.push_back(e3);
        Json e4 = expect("classify", "literature",
                         "a discrete category is locally regular but not regular");
        e4["property"] = "regular";
        e4["expect"] = "false";
        checks.push_back(e4);
        write_entry(dir, "antichain2", emit_site(Site::trivial(ex::discrete_two())), checks);
    }
    {
        Json checks = site_checks_common();
        write_entry(dir, "chain2_jc", emit_site(site_of_semilattice(ex::chain_semilattice(2))), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("supercompact_equiv_to", "literature",
                         "presheaves on a poset have the poset as supercompact objects");
        e1["target"] = emit_category(category_of_poset(ex::chain_poset(4)));
        e1["expect"] = true;
        checks.push_back(e1);
        write_entry(dir, "chain4", emit_site(Site::trivial(category_of_poset(ex::chain_poset(4)))), checks);
    }
    {
        Json checks = site_checks_common();
        Json e1 = expect("supercompact_count", "derived");
        e1["expect"] = 4; // the three representables plus the merged quotient of y(B)
        checks.push_back(e1);
        Json e2 = expect("classify", "derived");
        e2["property"] = "reductive";
        e2["expect"] = "true";
        checks.push_back(e2);
        Json e3 = expect("classify", "literature",
                         "the supercompact category of a topos is effectual and reductive");
        e3["property"] = "effectual";
        e3["expect"] = "true";
        checks.push_back(e3);
        write_entry(dir, "coeq_diagram", emit_site(Site::trivial(ex::coequalizer_diagram())), checks);
    }

    // --- order duality entries ---
    {
        Json checks = Json::array();
        checks.push_back(expect("valid", "trivial"));
        Json e1 = expect("distributive", "derived");
        e1["expect"] = true;
        checks.push_back(e1);
        Json e2 = expect("ideal_count", "derived");
        e2["expect"] = 4;
        checks.push_back(e2);
        Json e3 = expect("prime_filter_count", "derived");
        e3["expect"] = 2;
        checks.push_back(e3);
        Json e4 = expect("stone_roundtrip", "literature",
                         "Stone duality for distributive join semilattices");
        e4["expect"] = true;
        checks.push_back(e4);
        Json e5 = expect("family_ax3", "literature",
                         "distributivity makes finite join covers a stable class of families");
        e5["expect"] = true;
        checks.push_back(e5);
        write_entry(dir, "zz_diamond_jsl", emit_semilattice(ex::diamond_semilattice()), checks);
    }
    {
        Json checks = Json::array();
        checks.push_back(expect("valid", "trivial"));
        Json e1 = expect("distributive", "derived");
        e1["expect"] = false;
        e1["witness"] = "(c,a,b)";
        checks.push_back(e1);
        Json e2 = expect("family_ax3", "derived");
        e2["expect"] = false;
        checks.push_back(e2);
        write_entry(dir, "zz_njsl5", emit_semilattice(ex::njsl5()), checks);
    }
    {
        Json checks = Json::array();
        checks.push_back(expect("valid", "trivial"));
        Json e1 = expect("alexandroff_roundtrip", "literature",
                         "a finite poset is recovered from the join-irreducible downsets");
        e1["expect"] = true;
        checks.push_back(e1);
        write_entry(dir, "zz_diamond_poset", emit_poset(ex::diamond_poset()), checks);
    }
    {
        Json checks = Json::array();
        checks.push_back(expect("valid", "trivial"));
        Json e1 = expect("alexandroff_roundtrip", "derived");
        e1["expect"] = true;
        checks.push_back(e1);
        write_entry(dir, "zz_antichain2_poset", emit_poset(ex::antichain_two()), checks);
    }

    // bare documents for direct CLI use
    std::string exdir = dir + "/../examples";
    std::filesystem::create_directories(exdir);
    auto write_doc = [&](const std::string& name, const Json& j) {
        std::ofstream out(exdir + "/" + name + ".json");
        out << j.dump(2) << "\n";
    };
    write_doc("parallel_pair_site", emit_site(ex::parallel_pair_site()));
    write_doc("diamond_site", emit_site(ex::diamond_reductive_site()));
    write_doc("diamond_augmented_site", emit_site(ex::diamond_augmented_site()));
    write_doc("diamond_coalescent_site", emit_site(ex::diamond_coalescent_site()));
    write_doc("tworel_site", emit_site(ex::tworel_site()));
    write_doc("equalized_pair_site", emit_site(ex::equalized_pair_site()));
    write_doc("diamond_jsl", emit_semilattice(ex::diamond_semilattice()));
    write_doc("njsl5", emit_semilattice(ex::njsl5()));
    write_doc("diamond_poset", emit_poset(ex::diamond_poset()));
    {
        // identity endofunctor of the equalized-pair site
        Json f;
        f["on_objects"] = Json::object();
        f["on_morphisms"] = Json::object();
        auto site = ex::equalized_pair_site();
        for (int o = 0; o < site.cat().object_count(); ++o)
            f["on_objects"][site.cat().object_name(o)] = site.cat().object_name(o);
        for (int m = 0; m < site.cat().morphism_count(); ++m)
            f["on_morphisms"][site.cat().mor(m).name] = site.cat().mor(m).name;
        write_doc("identity_functor_equalized_pair", f);
    }
    {
        // a chain category with a missing composite: rejected at load
        Json j;
        j["objects"] = Json::array({"x", "y", "z"});
        j["morphisms"] = Json::array();
        for (auto [n, d, c] : {std::tuple{"id_x", "x", "x"}, {"id_y", "y", "y"}, {"id_z", "z", "z"},
                               {"u", "x", "y"}, {"v", "y", "z"}, {"vu", "x", "z"}}) {
            Json m;
            m["name"] = n;
            m["dom"] = d;
            m["cod"] = c;
            j["morphisms"].push_back(std::move(m));
        }
        j["identities"] = Json::object({{"x", "id_x"}, {"y", "id_y"}, {"z", "id_z"}});
        write_doc("broken_missing_composite", j);
    }

    std::cout << "corpus written to " << dir << " and bare documents to " << exdir << "\n";
    return 0;
}
