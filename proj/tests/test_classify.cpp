#include "doctest.h"

#include <stdexcept>

#include "finsite/classify.hpp"
#include "finsite/duality.hpp"
#include "finsite/examples.hpp"
#include "finsite/sheaf.hpp"

using namespace finsite;
namespace ex = finsite::examples;

namespace {

std::vector<FiniteCategory> corpus_categories() {
    return {ex::one_object(),         ex::parallel_pair(),       ex::coequalizer_diagram(),
            ex::diamond_category(),   ex::tworel_category(),     ex::tworel_prime_category(),
            ex::equalized_pair_category(), ex::idempotent_monoid(), ex::discrete_two(),
            category_of_poset(ex::chain_poset(3)), category_of_poset(ex::antichain_two())};
}

} // namespace

TEST_CASE("posets are reductive") {
    CHECK(is_reductive(ex::diamond_category()).is_true());
    CHECK(is_reductive(category_of_poset(ex::chain_poset(4))).is_true());
    CHECK(is_reductive(category_of_poset(ex::antichain_two())).is_true());
}

TEST_CASE("discrete categories are reductive") {
    CHECK(is_reductive(ex::discrete_two()).is_true());
}

TEST_CASE("the parallel pair is not reductive") {
    auto v = is_reductive(ex::parallel_pair());
    CHECK(v.is_false());
    CHECK(v.note.find("funnel") != std::string::npos);
}

TEST_CASE("tworel and tworel prime are reductive") {
    CHECK(is_reductive(ex::tworel_category()).is_true());
    CHECK(is_reductive(ex::tworel_prime_category()).is_true());
}

TEST_CASE("the diamond lattice is coalescent") {
    CHECK(is_coalescent(ex::diamond_category()).is_true());
}

TEST_CASE("posets without a bottom are not coalescent") {
    auto v = is_coalescent(category_of_poset(ex::antichain_two()));
    CHECK(v.is_false());
    CHECK(v.note.find("initial") != std::string::npos);
}

TEST_CASE("a discrete pair has no coproducts") {
    CHECK(is_coalescent(ex::discrete_two()).is_false());
}

TEST_CASE("posets are effectual") {
    CHECK(is_effectual(ex::diamond_category()).is_true());
    CHECK(is_effectual(category_of_poset(ex::chain_poset(3))).is_true());
}

TEST_CASE("tworel fails effectuality with a concrete funnel witness") {
    auto v = is_effectual(ex::tworel_category());
    CHECK(v.is_false());
    CHECK(v.note.find("funnel at A") != std::string::npos);
    CHECK(v.note.find("pair") != std::string::npos);
}

TEST_CASE("tworel prime is effectual") {
    CHECK(is_effectual(ex::tworel_prime_category()).is_true());
}

TEST_CASE("positivity: diamond fails, the trivial category passes") {
    auto diamond = is_positive(ex::diamond_category());
    CHECK(diamond.is_false());
    CHECK(diamond.note.find("disjoint") != std::string::npos);
    CHECK(is_positive(ex::one_object()).is_true()); // its object is strict initial
    auto dep = is_positive(ex::discrete_two());
    CHECK(dep.value == VerdictValue::Inconclusive); // not coalescent, so undefined
}

TEST_CASE("locally regular verdicts") {
    CHECK(is_locally_regular(ex::diamond_category()).is_true());
    CHECK(is_regular(ex::diamond_category()).is_true());
    auto pp = is_locally_regular(ex::parallel_pair());
    CHECK(pp.is_false());
    CHECK(is_locally_regular(ex::discrete_two()).is_true());
    CHECK(is_regular(ex::discrete_two()).is_false());
}

TEST_CASE("effectiveness on thin categories holds trivially") {
    CHECK(is_effective(ex::diamond_category()).is_true());
    CHECK(is_effective(category_of_poset(ex::chain_poset(3))).is_true());
}

TEST_CASE("classification report renders every verdict") {
    auto rep = classify(ex::diamond_category());
    auto text = rep.to_text();
    CHECK(text.find("reductive: true") != std::string::npos);
    CHECK(text.find("coalescent: true") != std::string::npos);
    CHECK(text.find("effectual: true") != std::string::npos);
    CHECK(text.find("locallyRegular: true") != std::string::npos);
    CHECK(text.find("regular: true") != std::string::npos);
    CHECK(text.find("augmented: true") != std::string::npos);
    CHECK(text.find("positive: false") != std::string::npos);
}

TEST_CASE("coalescent implies reductive with finite colimits and a strict initial object") {
    for (const auto& cat : corpus_categories()) {
        auto coal = is_coalescent(cat);
        if (!coal.is_true()) continue;
        CHECK(is_reductive(cat).is_true());
        CHECK(has_finite_coproducts(cat).is_true());
        auto init = initial_object(cat);
        REQUIRE(init.has_value());
        CHECK(is_strict_initial(cat, *init));
    }
}

TEST_CASE("reductive with pullbacks matches locally regular with funneling colimits") {
    for (const auto& cat : corpus_categories()) {
        bool lhs = is_reductive(cat).is_true() && has_pullbacks(cat).is_true();
        bool rhs = is_locally_regular(cat).is_true() && has_funneling_colimits(cat).is_true();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("effectual reductive categories with pullbacks are effective") {
    for (const auto& cat : corpus_categories()) {
        if (!(is_reductive(cat).is_true() && is_effectual(cat).is_true() && has_pullbacks(cat).is_true()))
            continue;
        CHECK(is_effective(cat).is_true());
    }
}

TEST_CASE("effectuality matches preservation of every funneling colimit") {
    for (const auto& cat : {ex::diamond_category(), ex::tworel_category(), ex::tworel_prime_category(),
                            category_of_poset(ex::chain_poset(3)), ex::discrete_two()}) {
        if (!is_reductive(cat).is_true()) continue;
        Site site = reductive_site(cat);
        bool all_preserved = true;
        for (int d0 = 0; d0 < cat.object_count() && all_preserved; ++d0) {
            std::vector<std::pair<int, int>> pairs;
            for (int x = 0; x < cat.object_count(); ++x) {
                const auto& h = cat.hom(x, d0);
                for (size_t i = 0; i < h.size(); ++i)
                    for (size_t j = i + 1; j < h.size(); ++j) pairs.push_back({h[i], h[j]});
            }
            for (long long mask = 0; mask < (1LL << pairs.size()) && all_preserved; ++mask) {
                std::vector<std::pair<int, int>> sub;
                for (size_t i = 0; i < pairs.size(); ++i)
                    if (mask & (1LL << i)) sub.push_back(pairs[i]);
                auto colim = joint_coequalizer(cat, d0, sub);
                REQUIRE(colim.has_value()); // reductive: every funnel has one
                Diagram funnel = funnel_diagram(cat, d0, sub);
                Cocone c;
                c.vertex = colim->second;
                c.legs.resize(funnel.shape.object_count());
                c.legs[0] = colim->first;
                for (size_t i = 0; i < sub.size(); ++i)
                    c.legs[i + 1] = cat.compose(colim->first, sub[i].first);
                REQUIRE(is_cocone(cat, funnel, c));
                if (!preserves_funnel_colimit(site, funnel, c)) all_preserved = false;
            }
        }
        CHECK(all_preserved == is_effectual(cat).is_true());
    }
}

TEST_CASE("correspondence round trip on small effectual reductive categories") {
    CHECK(correspondence_round_trip(ex::one_object()).has_value());
    CHECK(correspondence_round_trip(ex::diamond_category()).has_value());
    CHECK(correspondence_round_trip(ex::tworel_prime_category()).has_value());
    // the supercompact category of presheaves on the parallel pair closes
    // the loop too
    CHECK(is_effectual(ex::coequalizer_diagram()).is_true());
    CHECK(correspondence_round_trip(ex::coequalizer_diagram()).has_value());
    CHECK_THROWS_AS(correspondence_round_trip(ex::tworel_category()), std::invalid_argument);
}

TEST_CASE("classifier implications hold across every poset with at most four elements") {
    for (const auto& p : all_posets_up_to_iso(4)) {
        auto cat = category_of_poset(p);
        CHECK(is_reductive(cat).is_true()); // posets always are
        CHECK(is_effectual(cat).is_true()); // parallel morphisms coincide
        auto coal = is_coalescent(cat);
        if (coal.is_true()) {
            auto init = initial_object(cat);
            REQUIRE(init.has_value());
            CHECK(is_strict_initial(cat, *init));
        }
        bool lhs = has_pullbacks(cat).is_true();
        bool rhs = is_locally_regular(cat).is_true();
        CHECK(lhs == rhs); // funneling colimits and reductivity are free here
        if (lhs) CHECK(is_effective(cat).is_true());
    }
}

TEST_CASE("funnel caps yield an inconclusive verdict, not a guess") {
    ClassifyOptions opt;
    opt.funnel_cap = 1;
    auto v = is_reductive(ex::tworel_category(), opt);
    CHECK(v.value == VerdictValue::Inconclusive);
    CHECK(v.note.find("cap") != std::string::npos);
}
