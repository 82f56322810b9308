#include "finsite/examples.hpp"

#include "finsite/classify.hpp"

namespace finsite::examples {

FiniteCategory one_object() {
    CategoryBuilder b;
    int x = b.add_object("X");
    b.set_identity(x, b.add_morphism("id_X", x, x));
    return b.build();
}

FiniteCategory parallel_pair() {
    CategoryBuilder b;
    int a = b.add_object("A");
    int bb = b.add_object("B");
    b.set_identity(a, b.add_morphism("id_A", a, a));
    b.set_identity(bb, b.add_morphism("id_B", bb, bb));
    b.add_morphism("f", a, bb);
    b.add_morphism("g", a, bb);
    return b.build();
}

FiniteCategory coequalizer_diagram() {
    CategoryBuilder b;
    int a = b.add_object("A");
    int bb = b.add_object("B");
    int q = b.add_object("Q");
    b.set_identity(a, b.add_morphism("id_A", a, a));
    b.set_identity(bb, b.add_morphism("id_B", bb, bb));
    b.set_identity(q, b.add_morphism("id_Q", q, q));
    int f = b.add_morphism("f", a, bb);
    int g = b.add_morphism("g", a, bb);
    int e = b.add_morphism("e", bb, q);
    int w = b.add_morphism("w", a, q); // e∘f = e∘g
    b.set_composite(e, f, w);
    b.set_composite(e, g, w);
    return b.build();
}

FinPoset diamond_poset() {
    FinPoset p;
    p.elements = {"0", "a", "b", "1"};
    p.leq.assign(4, std::vector<char>(4, 0));
    for (int i = 0; i < 4; ++i) p.leq[i][i] = 1;
    p.leq[0][1] = p.leq[0][2] = p.leq[0][3] = 1;
    p.leq[1][3] = p.leq[2][3] = 1;
    return p;
}

FiniteCategory diamond_category() { return category_of_poset(diamond_poset()); }

JoinSemilattice diamond_semilattice() { return *semilattice_of_poset(diamond_poset()); }

FiniteCategory tworel_category() {
    CategoryBuilder b;
    int r1 = b.add_object("R1");
    int r2 = b.add_object("R2");
    int a = b.add_object("A");
    int bb = b.add_object("B");
    b.set_identity(r1, b.add_morphism("id_R1", r1, r1));
    b.set_identity(r2, b.add_morphism("id_R2", r2, r2));
    b.set_identity(a, b.add_morphism("id_A", a, a));
    b.set_identity(bb, b.add_morphism("id_B", bb, bb));
    int r1a = b.add_morphism("r1a", r1, a);
    int r1b = b.add_morphism("r1b", r1, a);
    int r2a = b.add_morphism("r2a", r2, a);
    int r2b = b.add_morphism("r2b", r2, a);
    int f = b.add_morphism("f", a, bb);
    int g1 = b.add_morphism("g1", r1, bb);
    int g2 = b.add_morphism("g2", r2, bb);
    b.set_composite(f, r1a, g1);
    b.set_composite(f, r1b, g1);
    b.set_composite(f, r2a, g2);
    b.set_composite(f, r2b, g2);
    return b.build();
}

FiniteCategory tworel_prime_category() {
    CategoryBuilder b;
    int r1 = b.add_object("R1");
    int r2 = b.add_object("R2");
    int a = b.add_object("A");
    int c = b.add_object("C");
    int d = b.add_object("D");
    int bb = b.add_object("B");
    b.set_identity(r1, b.add_morphism("id_R1", r1, r1));
    b.set_identity(r2, b.add_morphism("id_R2", r2, r2));
    b.set_identity(a, b.add_morphism("id_A", a, a));
    b.set_identity(c, b.add_morphism("id_C", c, c));
    b.set_identity(d, b.add_morphism("id_D", d, d));
    b.set_identity(bb, b.add_morphism("id_B", bb, bb));
    int r1a = b.add_morphism("r1a", r1, a);
    int r1b = b.add_morphism("r1b", r1, a);
    int r2a = b.add_morphism("r2a", r2, a);
    int r2b = b.add_morphism("r2b", r2, a);
    int pc = b.add_morphism("pc", a, c); // coequalizes the R2 pair
    int pd = b.add_morphism("pd", a, d); // coequalizes the R1 pair
    int pb = b.add_morphism("pb", a, bb);
    int qc = b.add_morphism("qc", c, bb);
    int qd = b.add_morphism("qd", d, bb);
    int c1 = b.add_morphism("c1", r1, c);
    int c2 = b.add_morphism("c2", r1, c);
    int c3 = b.add_morphism("c3", r2, c);
    int d1 = b.add_morphism("d1", r1, d);
    int d2 = b.add_morphism("d2", r2, d);
    int d3 = b.add_morphism("d3", r2, d);
    int b1 = b.add_morphism("b1", r1, bb);
    int b2 = b.add_morphism("b2", r2, bb);

    b.set_composite(pc, r1a, c1);
    b.set_composite(pc, r1b, c2);
    b.set_composite(pc, r2a, c3);
    b.set_composite(pc, r2b, c3);
    b.set_composite(pd, r1a, d1);
    b.set_composite(pd, r1b, d1);
    b.set_composite(pd, r2a, d2);
    b.set_composite(pd, r2b, d3);
    b.set_composite(pb, r1a, b1);
    b.set_composite(pb, r1b, b1);
    b.set_composite(pb, r2a, b2);
    b.set_composite(pb, r2b, b2);
    b.set_composite(qc, pc, pb);
    b.set_composite(qd, pd, pb);
    b.set_composite(qc, c1, b1);
    b.set_composite(qc, c2, b1);
    b.set_composite(qc, c3, b2);
    b.set_composite(qd, d1, b1);
    b.set_composite(qd, d2, b2);
    b.set_composite(qd, d3, b2);
    return b.build();
}

FiniteCategory equalized_pair_category() {
    CategoryBuilder b;
    int x = b.add_object("X");
    int y = b.add_object("Y");
    int z = b.add_object("Z");
    b.set_identity(x, b.add_morphism("id_X", x, x));
    b.set_identity(y, b.add_morphism("id_Y", y, y));
    b.set_identity(z, b.add_morphism("id_Z", z, z));
    int t = b.add_morphism("t", x, y);
    int f = b.add_morphism("f", y, z);
    int g = b.add_morphism("g", y, z);
    int w = b.add_morphism("w", x, z);
    b.set_composite(f, t, w);
    b.set_composite(g, t, w);
    return b.build();
}

FiniteCategory idempotent_monoid() {
    CategoryBuilder b;
    int m = b.add_object("M");
    int one = b.add_morphism("1", m, m);
    int e = b.add_morphism("e", m, m);
    b.set_identity(m, one);
    b.set_composite(e, e, e);
    return b.build();
}

FiniteCategory discrete_two() {
    CategoryBuilder b;
    int x = b.add_object("X");
    int y = b.add_object("Y");
    b.set_identity(x, b.add_morphism("id_X", x, x));
    b.set_identity(y, b.add_morphism("id_Y", y, y));
    return b.build();
}

FinPoset chain_poset(int n) {
    FinPoset p;
    p.elements.resize(n);
    for (int i = 0; i < n; ++i) p.elements[i] = "c" + std::to_string(i);
    p.leq.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) p.leq[i][j] = 1;
    return p;
}

JoinSemilattice chain_semilattice(int n) { return *semilattice_of_poset(chain_poset(n)); }

FinPoset antichain_two() {
    FinPoset p;
    p.elements = {"x", "y"};
    p.leq = {{1, 0}, {0, 1}};
    return p;
}

JoinSemilattice njsl5() {
    // element order puts c before a and b so the canonical triple scan
    // reports the witness (c, a, b)
    FinPoset p;
    p.elements = {"0", "c", "a", "b", "1"};
    p.leq.assign(5, std::vector<char>(5, 0));
    for (int i = 0; i < 5; ++i) p.leq[i][i] = 1;
    for (int i = 1; i <= 3; ++i) {
        p.leq[0][i] = 1;
        p.leq[i][4] = 1;
    }
    p.leq[0][4] = 1;
    return *semilattice_of_poset(p);
}

Site parallel_pair_site() { return Site::trivial(parallel_pair()); }

Site diamond_reductive_site() { return reductive_site(diamond_category()); }

Site diamond_augmented_site() {
    FiniteCategory cat = diamond_category();
    return Site::principal(cat, strict_epimorphisms(cat), {cat.object_index("0")});
}

Site diamond_coalescent_site() { return site_of_semilattice(diamond_semilattice()); }

Site tworel_site() { return reductive_site(tworel_category()); }

Site tworel_prime_site() { return reductive_site(tworel_prime_category()); }

Site equalized_pair_site() {
    FiniteCategory cat = equalized_pair_category();
    std::set<int> t = {cat.morphism_index("id_X"), cat.morphism_index("id_Y"), cat.morphism_index("id_Z"),
                       cat.morphism_index("t")};
    return Site::principal(std::move(cat), std::move(t));
}

Site atomic_monoid_site() {
    FiniteCategory cat = idempotent_monoid();
    std::set<int> all = {cat.morphism_index("1"), cat.morphism_index("e")};
    return Site::principal(std::move(cat), std::move(all));
}

} // namespace finsite::examples
