#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glink/corpus.hpp"
#include "glink/homology.hpp"
#include "glink/web.hpp"

#include <random>

using namespace glink;

namespace {

FrobeniusAlgebra kh() { return FrobeniusAlgebra::from_polynomial(PolyQ::parse("X^2")); }
FrobeniusAlgebra lee() { return FrobeniusAlgebra::from_polynomial(PolyQ::parse("X^2-1")); }

LinkDiagram closure_of(const std::string& text) { return braid_closure(parse_braid(text)); }

// Frobenius condition oracle: (m (x) id)(id (x) Delta) = Delta m on all
// pairs of basis elements.
bool frobenius_condition(const FrobeniusAlgebra& A) {
    const int N = A.dim();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            // lhs: sum_t Delta(X^j)_{s,t} (X^i X^s) (x) X^t
            // rhs: Delta(X^i X^j)
            std::vector<std::vector<Rational>> lhs(N, std::vector<Rational>(N, Rational(0)));
            for (int s = 0; s < N; ++s)
                for (int t = 0; t < N; ++t) {
                    const Rational& c = A.comult(j, s, t);
                    if (c == 0) continue;
                    const auto& prod = A.mult(i, s);
                    for (int u = 0; u < N; ++u) {
                        lhs[u][t] += prod[u] * c;
                        lhs[u][t].canonicalize();
                    }
                }
            const auto& prod_ij = A.mult(i, j);
            std::vector<std::vector<Rational>> rhs(N, std::vector<Rational>(N, Rational(0)));
            for (int k = 0; k < N; ++k) {
                if (prod_ij[k] == 0) continue;
                for (int s = 0; s < N; ++s)
                    for (int t = 0; t < N; ++t) {
                        rhs[s][t] += prod_ij[k] * A.comult(k, s, t);
                        rhs[s][t].canonicalize();
                    }
            }
            if (lhs != rhs) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("khovanov algebra") {
    FrobeniusAlgebra A = kh();
    CHECK(A.dim() == 2);
    CHECK(A.graded());
    // Delta(1) = 1 (x) X + X (x) 1
    CHECK(A.comult(0, 0, 1) == Rational(1));
    CHECK(A.comult(0, 1, 0) == Rational(1));
    CHECK(A.comult(0, 0, 0) == Rational(0));
    CHECK(A.comult(0, 1, 1) == Rational(0));
    // Delta(X) = X (x) X
    CHECK(A.comult(1, 1, 1) == Rational(1));
    CHECK(A.comult(1, 0, 0) == Rational(0));
    // X^2 = 0
    CHECK(A.mult(1, 1) == std::vector<Rational>{0, 0});
    CHECK(A.counit(0) == Rational(0));
    CHECK(A.counit(1) == Rational(1));
    CHECK(frobenius_condition(A));
    CHECK(A.qdeg(0) == -1);
    CHECK(A.qdeg(1) == 1);
}

TEST_CASE("lee algebra") {
    FrobeniusAlgebra A = lee();
    CHECK_FALSE(A.graded());
    // Delta(X) = X (x) X + 1 (x) 1
    CHECK(A.comult(1, 1, 1) == Rational(1));
    CHECK(A.comult(1, 0, 0) == Rational(1));
    // X^2 = 1
    CHECK(A.mult(1, 1) == std::vector<Rational>{1, 0});
    CHECK(frobenius_condition(A));
}

TEST_CASE("rank one algebra") {
    FrobeniusAlgebra A =
        FrobeniusAlgebra::from_polynomial(PolyQ::linear_root(Rational(3)));  // X - 3
    CHECK(A.dim() == 1);
    // multiplication is invertible: 1 * 1 = 1
    CHECK(A.mult(0, 0) == std::vector<Rational>{1});
    CHECK(frobenius_condition(A));
    CHECK_THROWS(FrobeniusAlgebra::from_polynomial(PolyQ::parse("2*X^2")));  // not monic
}

TEST_CASE("frobenius condition for random deformations") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 2);
    for (int t = 0; t < 10; ++t) {
        Rational l1(num(rng), den(rng)), l2(num(rng), den(rng));
        l1.canonicalize();
        l2.canonicalize();
        if (l1 == l2) continue;
        PolyQ P = PolyQ::linear_root(l1) * PolyQ::linear_root(l2);
        CHECK(frobenius_condition(FrobeniusAlgebra::from_polynomial(P)));
    }
    CHECK(frobenius_condition(FrobeniusAlgebra::from_polynomial(PolyQ::parse("X^3"))));
    CHECK(frobenius_condition(FrobeniusAlgebra::from_polynomial(PolyQ::parse("X^3-X"))));
}

TEST_CASE("unknot homology") {
    ChainComplex C = cube_complex(closure_of("strands=1;"), kh());
    CHECK(C.total_dim() == 2);
    HomologyTable t = homology_table(C);
    HomologyTable expect;
    expect.dims[{0, -1}] = 1;
    expect.dims[{0, 1}] = 1;
    CHECK(t == expect);
    CHECK(t.to_json() == R"j({"(0,-1)":1,"(0,1)":1})j");
    CHECK(euler(t) == qint(2));
    CHECK(poincare(t).str() == "q + q^-1");
}

TEST_CASE("d squared vanishes across deformations") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> num(-5, 5);
    for (const char* name : {"hopf+", "trefoil", "figure8", "t3_3"}) {
        LinkDiagram d = corpus_diagram(name);
        for (const char* poly : {"X^2", "X^2-1", "X^2-X"}) {
            ChainComplex C = cube_complex(d, FrobeniusAlgebra::from_polynomial(PolyQ::parse(poly)));
            CHECK(C.d_squared_is_zero());
        }
        // random distinct rational roots
        Rational l1(num(rng)), l2(num(rng));
        if (l1 == l2) l2 += 1;
        PolyQ P = PolyQ::linear_root(l1) * PolyQ::linear_root(l2);
        ChainComplex C = cube_complex(d, FrobeniusAlgebra::from_polynomial(P));
        CHECK(C.d_squared_is_zero());
    }
    // remaining corpus diagrams, one undeformed and one deformed algebra each
    for (const auto& entry : corpus()) {
        LinkDiagram d = corpus_diagram(entry.name);
        CHECK(cube_complex(d, kh()).d_squared_is_zero());
        CHECK(cube_complex(d, FrobeniusAlgebra::from_polynomial(PolyQ::parse("X^2-X")))
                  .d_squared_is_zero());
    }
}

TEST_CASE("hopf homology and euler characteristic") {
    LinkDiagram hopf = corpus_diagram("hopf+");
    ChainComplex C = cube_complex(hopf, kh());
    HomologyTable t = homology_table(C);
    CHECK(t.total() == 4);
    CHECK(euler(t) == rt_invariant(hopf, GaugeConfig::gl(2)));
}

TEST_CASE("euler equals the invariant on the corpus") {
    GaugeConfig cfg = GaugeConfig::gl(2);
    for (const char* name : {"hopf-", "trefoil", "trefoil-", "figure8", "solomon", "t2_5"}) {
        LinkDiagram d = corpus_diagram(name);
        ChainComplex C = cube_complex(d, kh());
        CHECK(euler(homology_table(C)) == rt_invariant(d, cfg));
    }
}

TEST_CASE("homology agrees across diagrams of the same link") {
    // trefoil vs trefoil with an R2 pair inserted (same writhe, same link)
    HomologyTable a = homology_table(cube_complex(closure_of("strands=2; s1 s1 s1"), kh()));
    HomologyTable b =
        homology_table(cube_complex(closure_of("strands=2; s1 s1 s1 s1 s1^-1"), kh()));
    CHECK(a == b);
    // conjugate braid words close up to the same link
    HomologyTable c = homology_table(cube_complex(closure_of("strands=3; s1 s1 s1"), kh()));
    HomologyTable e =
        homology_table(cube_complex(closure_of("strands=3; s2 s1 s1 s1 s2^-1"), kh()));
    CHECK(c == e);
    // hopf via braid vs via its pd code
    LinkDiagram hb = corpus_diagram("hopf+");
    LinkDiagram hp = LinkDiagram::from_pd_json(hb.to_pd_json());
    CHECK(homology_table(cube_complex(hb, kh())) == homology_table(cube_complex(hp, kh())));
    // lee dimensions agree too
    CHECK(homology_table(cube_complex(closure_of("strands=2; s1 s1 s1"), lee())).total() ==
          homology_table(
              cube_complex(closure_of("strands=2; s1 s1 s1 s1 s1^-1"), lee()))
              .total());
}

TEST_CASE("threaded ranks match single-threaded") {
    LinkDiagram d = corpus_diagram("t2_6");
    ChainComplex C = cube_complex(d, kh());
    CHECK(homology_table(C, 1) == homology_table(C, 4));
    ChainComplex L = cube_complex(d, lee());
    CHECK(homology_table(L, 1) == homology_table(L, 4));
}

TEST_CASE("lee dimensions are 2^components") {
    for (const char* name : {"unknot", "hopf+", "hopf-", "trefoil", "figure8", "solomon",
                             "t2_5", "t3_3"}) {
        LinkDiagram d = corpus_diagram(name);
        ChainComplex C = cube_complex(d, lee());
        CHECK(homology_table(C).total() == (std::int64_t{1} << d.num_components()));
    }
}

TEST_CASE("single-root deformation keeps the undeformed dimension") {
    // Sigma = {lambda^2}: filtered degeneration, same total dimension as X^2
    PolyQ P = PolyQ::linear_root(Rational(2)).pow(2);  // (X-2)^2
    for (const char* name : {"unknot", "hopf+", "trefoil", "figure8"}) {
        LinkDiagram d = corpus_diagram(name);
        std::int64_t undeformed = homology_table(cube_complex(d, kh())).total();
        std::int64_t deformed =
            homology_table(cube_complex(d, FrobeniusAlgebra::from_polynomial(P))).total();
        CHECK(deformed == undeformed);
    }
}

TEST_CASE("crt idempotents") {
    DeformationSpec pm = DeformationSpec::parse("1,-1");
    auto e = crt_idempotents(pm);
    REQUIRE(e.size() == 2);
    // (1 + X)/2 and (1 - X)/2
    CHECK(e[0] == PolyQ({Rational(1, 2), Rational(1, 2)}));
    CHECK(e[1] == PolyQ({Rational(1, 2), Rational(-1, 2)}));

    DeformationSpec single = DeformationSpec::parse("5^3");
    auto es = crt_idempotents(single);
    REQUIRE(es.size() == 1);
    CHECK(es[0] == PolyQ::constant(1));

    // P = X^2 (X - 1): idempotents 1 - X^2 and X^2
    DeformationSpec zz = DeformationSpec::parse("0^2,1");
    auto ez = crt_idempotents(zz);
    REQUIRE(ez.size() == 2);
    CHECK(ez[0] == PolyQ({1, 0, -1}));
    CHECK(ez[1] == PolyQ({0, 0, 1}));
    PolyQ P = zz.polynomial();
    for (const auto& ei : ez) CHECK((ei * ei).mod(P) == ei.mod(P));

    CHECK_THROWS(DeformationSpec::parse("1,1"));
}

TEST_CASE("colored splitting") {
    DeformationSpec pm = DeformationSpec::parse("1,-1");

    auto unknot = colored_splitting(corpus_diagram("unknot"), pm);
    CHECK(unknot.size() == 2);
    for (const auto& [kappa, table] : unknot) CHECK(table.total() == 1);

    auto hopf = colored_splitting(corpus_diagram("hopf+"), pm);
    CHECK(hopf.size() == 4);
    std::int64_t sum = 0;
    for (const auto& [kappa, table] : hopf) {
        CHECK(table.total() == 1);
        sum += table.total();
    }
    CHECK(sum == 4);

    auto tref = colored_splitting(corpus_diagram("trefoil"), pm);
    CHECK(tref.size() == 2);  // one component: two constant colorings
    for (const auto& [kappa, table] : tref) CHECK(table.total() == 1);

    // sigma with multiplicities: {0^2, 1} on the unknot gives dims 2 and 1
    DeformationSpec zz = DeformationSpec::parse("0^2,1");
    auto uz = colored_splitting(corpus_diagram("unknot"), zz);
    REQUIRE(uz.size() == 2);
    CHECK(uz.at({0}).total() == 2);
    CHECK(uz.at({1}).total() == 1);
}

TEST_CASE("branching dimensions") {
    CHECK(branching_dims(2, {1, 1}, 1) == std::make_pair(2L, 2L));
    CHECK(branching_dims(4, {2, 2}, 2) == std::make_pair(6L, 6L));
    CHECK(branching_dims(3, {2, 1}, 0) == std::make_pair(1L, 1L));
    for (int k = 0; k <= 5; ++k) {
        auto [lhs, rhs] = branching_dims(5, {3, 1, 1}, k);
        CHECK(lhs == rhs);
    }
    CHECK_THROWS(branching_dims(3, {1, 1}, 0));
    CHECK_THROWS(branching_dims(2, {1, 1}, 3));
}

TEST_CASE("poincare and euler") {
    HomologyTable empty;
    CHECK(poincare(empty).is_zero());
    CHECK(euler(empty).is_zero());

    LinkDiagram hopf = corpus_diagram("hopf+");
    HomologyTable t = homology_table(cube_complex(hopf, kh()));
    CHECK(poincare(t).at_t_minus_one() == euler(t));
    CHECK(euler(t) == rt_invariant(hopf, GaugeConfig::gl(2)));
}

TEST_CASE("cube vertices track circle ownership") {
    // every resolution circle of the hopf closure mixes both components
    LinkDiagram hopf = corpus_diagram("hopf+");
    ChainComplex C = cube_complex(hopf, kh());
    REQUIRE(C.vertices().size() == 4);
    for (const auto& v : C.vertices())
        for (const auto& owners : v.circle_owners)
            CHECK(owners == (std::vector<int>{0, 1}));
    CHECK(C.vertices()[0].num_circles == 2);
    CHECK(C.vertices()[1].num_circles == 1);
    CHECK(C.vertices()[2].num_circles == 1);
    CHECK(C.vertices()[3].num_circles == 2);
    // a crossingless 2-component unlink keeps its circles separate
    LinkDiagram unlink = braid_closure(parse_braid("strands=2;"));
    ChainComplex U = cube_complex(unlink, kh());
    REQUIRE(U.vertices().size() == 1);
    CHECK(U.vertices()[0].circle_owners[0] == std::vector<int>{0});
    CHECK(U.vertices()[0].circle_owners[1] == std::vector<int>{1});
}

TEST_CASE("colored diagrams are rejected") {
    LinkDiagram colored = braid_closure(parse_braid("strands=1;"), {2});
    CHECK_THROWS(cube_complex(colored, kh()));
    CHECK_THROWS(colored_splitting(colored, DeformationSpec::parse("1,-1")));
}
