#include "doctest.h"

#include "finsite/examples.hpp"
#include "finsite/fincat.hpp"

using namespace finsite;
namespace ex = finsite::examples;

namespace {

// X <-> Y retract: r∘s = id_Y, so r is a split epimorphism.
FiniteCategory retract_category() {
    CategoryBuilder b;
    int x = b.add_object("X");
    int y = b.add_object("Y");
    int idx = b.add_morphism("id_X", x, x);
    int idy = b.add_morphism("id_Y", y, y);
    b.set_identity(x, idx);
    b.set_identity(y, idy);
    int s = b.add_morphism("s", y, x);
    int r = b.add_morphism("r", x, y);
    int p = b.add_morphism("p", x, x); // s∘r
    b.set_composite(r, s, idy);
    b.set_composite(s, r, p);
    b.set_composite(p, p, p);
    b.set_composite(p, s, s);
    b.set_composite(r, p, r);
    return b.build();
}

Diagram single_object_diagram(const FiniteCategory& cat, int obj) {
    CategoryBuilder b;
    int o = b.add_object("pt");
    b.set_identity(o, b.add_morphism("id_pt", o, o));
    Diagram d;
    d.shape = b.build();
    d.on_objects = {obj};
    d.on_morphisms = {cat.identity(obj)};
    return d;
}

Diagram discrete_two_diagram(const FiniteCategory& cat, int x, int y) {
    CategoryBuilder b;
    int l = b.add_object("l");
    int r = b.add_object("r");
    b.set_identity(l, b.add_morphism("id_l", l, l));
    b.set_identity(r, b.add_morphism("id_r", r, r));
    Diagram d;
    d.shape = b.build();
    d.on_objects = {x, y};
    d.on_morphisms = {cat.identity(x), cat.identity(y)};
    return d;
}

} // namespace

TEST_CASE("one-object category validates") {
    auto cat = ex::one_object();
    CHECK(validate(cat).valid());
}

TEST_CASE("missing composite is reported as a structure issue") {
    // chain x --u--> y --v--> z with v∘u left out
    std::vector<std::string> objs = {"x", "y", "z"};
    std::vector<MorData> mors = {{"id_x", 0, 0}, {"id_y", 1, 1}, {"id_z", 2, 2}, {"u", 0, 1}, {"v", 1, 2},
                                 {"vu", 0, 2}};
    auto cat = FiniteCategory::make(objs, mors, {0, 1, 2}, {});
    auto rep = validate(cat);
    CHECK_FALSE(rep.valid());
    bool found = false;
    for (const auto& i : rep.issues)
        if (i.kind == "structure" && i.detail.find("missing composite") != std::string::npos &&
            i.detail.find("v") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("broken associativity names the offending triple") {
    // monoid {1, e} with e∘e = 1 is a group (Z/2), fine; instead take a
    // three-element table with (e∘e)∘e forced wrong
    std::vector<std::string> objs = {"m"};
    std::vector<MorData> mors = {{"1", 0, 0}, {"e", 0, 0}, {"z", 0, 0}};
    // e∘e = z, z∘e = 1, e∘z = z, z∘z = z : (e∘e)∘e = z∘e = 1 but e∘(e∘e) = e∘z = z
    std::vector<std::array<int, 3>> comp = {{1, 1, 2}, {2, 1, 0}, {1, 2, 2}, {2, 2, 2}};
    auto cat = FiniteCategory::make(objs, mors, {0}, comp);
    auto rep = validate(cat);
    CHECK_FALSE(rep.valid());
    bool found = false;
    for (const auto& i : rep.issues)
        if (i.kind == "law" && i.detail.find("associativity") != std::string::npos &&
            i.detail.find("e") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("identity carries every morphism flag") {
    auto cat = ex::diamond_category();
    auto flags = classify_morphism(cat, cat.identity(0));
    CHECK(flags.mono);
    CHECK(flags.epi);
    CHECK(flags.split_epi);
    CHECK(flags.iso);
}

TEST_CASE("diamond a->1 is monic and epic but not split epic") {
    auto cat = ex::diamond_category();
    int m = cat.morphism_index("a<=1");
    REQUIRE(m >= 0);
    auto flags = classify_morphism(cat, m);
    CHECK(flags.mono);
    CHECK(flags.epi);
    CHECK_FALSE(flags.split_epi);
    CHECK_FALSE(flags.iso);
}

TEST_CASE("parallel pair: f is trivially epic inside the small category") {
    // the only morphism out of B is the identity, so right-cancellation is
    // vacuous; non-epicness only appears at the sheaf level
    auto cat = ex::parallel_pair();
    auto flags = classify_morphism(cat, cat.morphism_index("f"));
    CHECK(flags.epi);
    CHECK(flags.mono);
    CHECK_FALSE(flags.split_epi);
}

TEST_CASE("identities and split epis are strict epimorphisms") {
    auto cat = retract_category();
    CHECK(is_strict_epi(cat, cat.morphism_index("id_X")));
    CHECK(is_strict_epi(cat, cat.morphism_index("r")));
    CHECK_FALSE(is_strict_epi(cat, cat.morphism_index("s")));
}

TEST_CASE("diamond a->1 is not a strict epimorphism") {
    auto cat = ex::diamond_category();
    CHECK_FALSE(is_strict_epi(cat, cat.morphism_index("a<=1")));
}

TEST_CASE("strict epis are epis on the bundled categories") {
    for (const auto& cat : {ex::one_object(), ex::parallel_pair(), ex::diamond_category(), ex::tworel_category(),
                            ex::tworel_prime_category(), ex::equalized_pair_category(), ex::idempotent_monoid(),
                            ex::coequalizer_diagram()}) {
        for (int m = 0; m < cat.morphism_count(); ++m)
            if (is_strict_epi(cat, m)) CHECK(classify_morphism(cat, m).epi);
    }
}

TEST_CASE("singleton families are strictly epic exactly when the morphism is strict") {
    for (const auto& cat : {ex::parallel_pair(), ex::diamond_category(), ex::tworel_category(),
                            ex::coequalizer_diagram(), ex::idempotent_monoid()}) {
        for (int m = 0; m < cat.morphism_count(); ++m)
            CHECK(is_strictly_epic_family(cat, {m}, cat.cod(m)) == is_strict_epi(cat, m));
    }
}

TEST_CASE("the diamond slices form a strictly epic family; the empty family needs an initial object") {
    auto cat = ex::diamond_category();
    CHECK(is_strictly_epic_family(cat, {cat.morphism_index("a<=1"), cat.morphism_index("b<=1")},
                                  cat.object_index("1")));
    CHECK_FALSE(is_strictly_epic_family(cat, {cat.morphism_index("a<=1")}, cat.object_index("1")));
    CHECK(is_strictly_epic_family(cat, {}, cat.object_index("0")));
    CHECK_FALSE(is_strictly_epic_family(cat, {}, cat.object_index("a")));
}

TEST_CASE("colimit of a single object is that object") {
    auto cat = ex::diamond_category();
    auto c = colimit(cat, single_object_diagram(cat, 1));
    REQUIRE(c.has_value());
    CHECK(c->vertex == 1);
    CHECK(c->legs[0] == cat.identity(1));
}

TEST_CASE("parallel pair has no coequalizer in its own category") {
    auto cat = ex::parallel_pair();
    auto d = funnel_diagram(cat, cat.object_index("B"),
                            {{cat.morphism_index("f"), cat.morphism_index("g")}});
    CHECK_FALSE(colimit(cat, d).has_value());
}

TEST_CASE("tworel: coequalizer of the R1 pair is the terminal object") {
    auto cat = ex::tworel_category();
    auto q = joint_coequalizer(cat, cat.object_index("A"),
                               {{cat.morphism_index("r1a"), cat.morphism_index("r1b")}});
    REQUIRE(q.has_value());
    CHECK(q->second == cat.object_index("B"));
    CHECK(q->first == cat.morphism_index("f"));
}

TEST_CASE("joint coequalizer of no pairs is the identity") {
    auto cat = ex::diamond_category();
    auto q = joint_coequalizer(cat, 2, {});
    REQUIRE(q.has_value());
    CHECK(q->first == cat.identity(2));
    CHECK(q->second == 2);
}

TEST_CASE("poset joint coequalizers collapse to the identity") {
    auto cat = ex::diamond_category();
    int m = cat.morphism_index("0<=1");
    auto q = joint_coequalizer(cat, cat.object_index("1"), {{m, m}});
    REQUIRE(q.has_value());
    CHECK(q->second == cat.object_index("1"));
}

TEST_CASE("tworel: joint coequalizer of both pairs is B") {
    auto cat = ex::tworel_category();
    auto q = joint_coequalizer(cat, cat.object_index("A"),
                               {{cat.morphism_index("r1a"), cat.morphism_index("r1b")},
                                {cat.morphism_index("r2a"), cat.morphism_index("r2b")}});
    REQUIRE(q.has_value());
    CHECK(q->second == cat.object_index("B"));
}

TEST_CASE("colimit agrees with joint_coequalizer on every funnel of the bundled categories") {
    for (const auto& cat : {ex::parallel_pair(), ex::diamond_category(), ex::tworel_category(),
                            ex::equalized_pair_category(), ex::idempotent_monoid()}) {
        for (int d0 = 0; d0 < cat.object_count(); ++d0) {
            std::vector<std::pair<int, int>> pairs;
            for (int x = 0; x < cat.object_count(); ++x) {
                const auto& h = cat.hom(x, d0);
                for (size_t i = 0; i < h.size(); ++i)
                    for (size_t j = i + 1; j < h.size(); ++j) pairs.push_back({h[i], h[j]});
            }
            for (long long mask = 0; mask < (1LL << pairs.size()); ++mask) {
                std::vector<std::pair<int, int>> sub;
                for (size_t i = 0; i < pairs.size(); ++i)
                    if (mask & (1LL << i)) sub.push_back(pairs[i]);
                auto via_joint = joint_coequalizer(cat, d0, sub);
                auto via_colimit = colimit(cat, funnel_diagram(cat, d0, sub));
                CHECK(via_joint.has_value() == via_colimit.has_value());
                if (via_joint && via_colimit) CHECK(via_joint->second == via_colimit->vertex);
            }
        }
    }
}

TEST_CASE("pushouts are multifunneling colimits: the diamond span") {
    auto cat = ex::diamond_category();
    CategoryBuilder b;
    int oz = b.add_object("z");
    int ox = b.add_object("x");
    int oy = b.add_object("y");
    b.set_identity(oz, b.add_morphism("id_z", oz, oz));
    b.set_identity(ox, b.add_morphism("id_x", ox, ox));
    b.set_identity(oy, b.add_morphism("id_y", oy, oy));
    b.add_morphism("l", oz, ox);
    b.add_morphism("r", oz, oy);
    Diagram d;
    d.shape = b.build();
    d.on_objects = {cat.object_index("0"), cat.object_index("a"), cat.object_index("b")};
    d.on_morphisms.assign(5, -1);
    d.on_morphisms[d.shape.identity(0)] = cat.identity(cat.object_index("0"));
    d.on_morphisms[d.shape.identity(1)] = cat.identity(cat.object_index("a"));
    d.on_morphisms[d.shape.identity(2)] = cat.identity(cat.object_index("b"));
    d.on_morphisms[d.shape.morphism_index("l")] = cat.morphism_index("0<=a");
    d.on_morphisms[d.shape.morphism_index("r")] = cat.morphism_index("0<=b");
    auto c = colimit(cat, d);
    REQUIRE(c.has_value());
    CHECK(c->vertex == cat.object_index("1"));
}

TEST_CASE("pullback of an identity cospan is the common object") {
    auto cat = ex::diamond_category();
    // cospan a -> 1 <- 1
    CategoryBuilder b;
    int ox = b.add_object("x");
    int oy = b.add_object("y");
    int oz = b.add_object("z");
    b.set_identity(ox, b.add_morphism("id_x", ox, ox));
    b.set_identity(oy, b.add_morphism("id_y", oy, oy));
    b.set_identity(oz, b.add_morphism("id_z", oz, oz));
    b.add_morphism("l", ox, oz);
    b.add_morphism("r", oy, oz);
    Diagram d;
    d.shape = b.build();
    int one = cat.object_index("1");
    d.on_objects = {one, one, one};
    d.on_morphisms.assign(5, -1);
    d.on_morphisms[d.shape.identity(0)] = cat.identity(one);
    d.on_morphisms[d.shape.identity(1)] = cat.identity(one);
    d.on_morphisms[d.shape.identity(2)] = cat.identity(one);
    d.on_morphisms[d.shape.morphism_index("l")] = cat.identity(one);
    d.on_morphisms[d.shape.morphism_index("r")] = cat.identity(one);
    auto cone = limit(cat, d);
    REQUIRE(cone.has_value());
    CHECK(cone->vertex == one);
}

TEST_CASE("parallel pair has no equalizer") {
    auto cat = ex::parallel_pair();
    CategoryBuilder b;
    int oa = b.add_object("a");
    int ob = b.add_object("b");
    b.set_identity(oa, b.add_morphism("id_a", oa, oa));
    b.set_identity(ob, b.add_morphism("id_b", ob, ob));
    b.add_morphism("u", oa, ob);
    b.add_morphism("v", oa, ob);
    Diagram d;
    d.shape = b.build();
    d.on_objects = {cat.object_index("A"), cat.object_index("B")};
    d.on_morphisms.assign(4, -1);
    d.on_morphisms[d.shape.identity(0)] = cat.identity(0);
    d.on_morphisms[d.shape.identity(1)] = cat.identity(1);
    d.on_morphisms[d.shape.morphism_index("u")] = cat.morphism_index("f");
    d.on_morphisms[d.shape.morphism_index("v")] = cat.morphism_index("g");
    CHECK_FALSE(limit(cat, d).has_value());
}

TEST_CASE("diamond: pullback of a -> 1 <- b is 0") {
    auto cat = ex::diamond_category();
    CategoryBuilder b;
    int ox = b.add_object("x");
    int oy = b.add_object("y");
    int oz = b.add_object("z");
    b.set_identity(ox, b.add_morphism("id_x", ox, ox));
    b.set_identity(oy, b.add_morphism("id_y", oy, oy));
    b.set_identity(oz, b.add_morphism("id_z", oz, oz));
    b.add_morphism("l", ox, oz);
    b.add_morphism("r", oy, oz);
    Diagram d;
    d.shape = b.build();
    d.on_objects = {cat.object_index("a"), cat.object_index("b"), cat.object_index("1")};
    d.on_morphisms.assign(5, -1);
    d.on_morphisms[d.shape.identity(0)] = cat.identity(cat.object_index("a"));
    d.on_morphisms[d.shape.identity(1)] = cat.identity(cat.object_index("b"));
    d.on_morphisms[d.shape.identity(2)] = cat.identity(cat.object_index("1"));
    d.on_morphisms[d.shape.morphism_index("l")] = cat.morphism_index("a<=1");
    d.on_morphisms[d.shape.morphism_index("r")] = cat.morphism_index("b<=1");
    auto cone = limit(cat, d);
    REQUIRE(cone.has_value());
    CHECK(cone->vertex == cat.object_index("0"));
}

TEST_CASE("comma components: one object diagram keeps all arrows together") {
    auto cat = ex::diamond_category();
    auto comps = under_comma_components(cat, cat.object_index("0"), single_object_diagram(cat, 3));
    CHECK(comps.size() == 1);
    CHECK(comps[0].size() == 1);
}

TEST_CASE("comma components: discrete diagram splits") {
    auto cat = ex::diamond_category();
    auto comps = under_comma_components(
        cat, cat.object_index("0"),
        discrete_two_diagram(cat, cat.object_index("a"), cat.object_index("b")));
    CHECK(comps.size() == 2);
}

TEST_CASE("tworel: the R1 legs are separated in the comma category of the R2 funnel") {
    auto cat = ex::tworel_category();
    auto funnel = funnel_diagram(cat, cat.object_index("A"),
                                 {{cat.morphism_index("r2a"), cat.morphism_index("r2b")}});
    auto comps = under_comma_components(cat, cat.object_index("R1"), funnel);
    // elements over the hub node: r1a and r1b
    int c1 = -1, c2 = -1;
    for (size_t k = 0; k < comps.size(); ++k)
        for (auto [node, m] : comps[k]) {
            if (node == 0 && m == cat.morphism_index("r1a")) c1 = static_cast<int>(k);
            if (node == 0 && m == cat.morphism_index("r1b")) c2 = static_cast<int>(k);
        }
    REQUIRE(c1 >= 0);
    REQUIRE(c2 >= 0);
    CHECK(c1 != c2);
}

TEST_CASE("find_equivalence: identity, absence, and symmetry") {
    auto d = ex::diamond_category();
    auto pp = ex::parallel_pair();
    auto e1 = find_equivalence(d, d);
    REQUIRE(e1.has_value());
    CHECK(is_full(d, d, *e1));
    CHECK(is_faithful(d, d, *e1));
    CHECK(is_essentially_surjective(d, d, *e1));
    CHECK_FALSE(find_equivalence(d, pp).has_value());
    CHECK_FALSE(find_equivalence(pp, d).has_value());

    // symmetry on a pair that are equivalent but presented differently
    auto c = ex::coequalizer_diagram();
    CHECK(find_equivalence(c, c).has_value());
}

TEST_CASE("the opposite construction is an involution") {
    for (const auto& cat : {ex::parallel_pair(), ex::diamond_category(), ex::tworel_prime_category(),
                            ex::idempotent_monoid()}) {
        auto opop = cat.opposite().opposite();
        REQUIRE(opop.morphism_count() == cat.morphism_count());
        for (int m = 0; m < cat.morphism_count(); ++m) {
            CHECK(opop.dom(m) == cat.dom(m));
            CHECK(opop.cod(m) == cat.cod(m));
        }
        for (int g = 0; g < cat.morphism_count(); ++g)
            for (int f = 0; f < cat.morphism_count(); ++f)
                if (cat.composable(g, f)) CHECK(opop.compose(g, f) == cat.compose(g, f));
    }
}

TEST_CASE("limits are colimits of the opposite diagram") {
    auto cat = ex::diamond_category();
    auto op = cat.opposite();
    // equalizer shape in cat vs coequalizer shape in op, over the same data
    for (int f = 0; f < cat.morphism_count(); ++f)
        for (int g = 0; g < cat.morphism_count(); ++g) {
            if (cat.dom(f) != cat.dom(g) || cat.cod(f) != cat.cod(g)) continue;
            auto lim = limit(cat, [&] {
                CategoryBuilder b;
                int oa = b.add_object("a");
                int ob = b.add_object("b");
                b.set_identity(oa, b.add_morphism("id_a", oa, oa));
                b.set_identity(ob, b.add_morphism("id_b", ob, ob));
                b.add_morphism("u", oa, ob);
                b.add_morphism("v", oa, ob);
                Diagram d;
                d.shape = b.build();
                d.on_objects = {cat.dom(f), cat.cod(f)};
                d.on_morphisms = {cat.identity(cat.dom(f)), cat.identity(cat.cod(f)), f, g};
                // builder order: id_a, id_b, u, v
                d.on_morphisms[d.shape.identity(0)] = cat.identity(cat.dom(f));
                d.on_morphisms[d.shape.identity(1)] = cat.identity(cat.cod(f));
                d.on_morphisms[d.shape.morphism_index("u")] = f;
                d.on_morphisms[d.shape.morphism_index("v")] = g;
                return d;
            }());
            auto colim_op = colimit(op, [&] {
                CategoryBuilder b;
                int oa = b.add_object("a");
                int ob = b.add_object("b");
                b.set_identity(oa, b.add_morphism("id_a", oa, oa));
                b.set_identity(ob, b.add_morphism("id_b", ob, ob));
                b.add_morphism("u", ob, oa); // arrows flip with the shape
                b.add_morphism("v", ob, oa);
                Diagram d;
                d.shape = b.build();
                d.on_objects = {cat.dom(f), cat.cod(f)};
                d.on_morphisms.assign(4, -1);
                d.on_morphisms[d.shape.identity(0)] = op.identity(cat.dom(f));
                d.on_morphisms[d.shape.identity(1)] = op.identity(cat.cod(f));
                d.on_morphisms[d.shape.morphism_index("u")] = f;
                d.on_morphisms[d.shape.morphism_index("v")] = g;
                return d;
            }());
            CHECK(lim.has_value() == colim_op.has_value());
            if (lim && colim_op) CHECK(lim->vertex == colim_op->vertex);
        }
}

TEST_CASE("isomorphism search is presentation independent") {
    // rebuild tworel with morphisms listed in a different order
    auto original = ex::tworel_category();
    CategoryBuilder b;
    int r1 = b.add_object("R1");
    int r2 = b.add_object("R2");
    int a = b.add_object("A");
    int bb = b.add_object("B");
    int f = b.add_morphism("f", a, bb);
    int g2 = b.add_morphism("g2", r2, bb);
    int g1 = b.add_morphism("g1", r1, bb);
    b.set_identity(r1, b.add_morphism("id_R1", r1, r1));
    b.set_identity(r2, b.add_morphism("id_R2", r2, r2));
    b.set_identity(a, b.add_morphism("id_A", a, a));
    b.set_identity(bb, b.add_morphism("id_B", bb, bb));
    int r2b = b.add_morphism("r2b", r2, a);
    int r2a = b.add_morphism("r2a", r2, a);
    int r1b = b.add_morphism("r1b", r1, a);
    int r1a = b.add_morphism("r1a", r1, a);
    b.set_composite(f, r1a, g1);
    b.set_composite(f, r1b, g1);
    b.set_composite(f, r2a, g2);
    b.set_composite(f, r2b, g2);
    auto shuffled = b.build();
    REQUIRE(validate(shuffled).valid());
    CHECK(find_isomorphism(original, shuffled).has_value());
    CHECK(find_isomorphism(shuffled, original).has_value());
}

TEST_CASE("equivalence search is reflexive and symmetric across the bundled categories") {
    std::vector<FiniteCategory> cats = {ex::one_object(),       ex::parallel_pair(),
                                        ex::coequalizer_diagram(), ex::diamond_category(),
                                        ex::tworel_category(),  ex::tworel_prime_category(),
                                        ex::equalized_pair_category(), ex::idempotent_monoid(),
                                        ex::discrete_two()};
    for (size_t i = 0; i < cats.size(); ++i) {
        CHECK(find_equivalence(cats[i], cats[i]).has_value());
        for (size_t j = i + 1; j < cats.size(); ++j)
            CHECK(find_equivalence(cats[i], cats[j]).has_value() ==
                  find_equivalence(cats[j], cats[i]).has_value());
    }
}

TEST_CASE("equivalence ignores duplicated isomorphic objects") {
    // chain poset vs the same with a split idempotent-style doubled point is
    // not expressible as a poset; instead check two skeletal categories of
    // different sizes stay inequivalent
    auto two = ex::discrete_two();
    auto one = ex::one_object();
    CHECK_FALSE(find_equivalence(two, one).has_value());
    CHECK_FALSE(find_equivalence(one, two).has_value());
}
