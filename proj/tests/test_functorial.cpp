#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glink/corpus.hpp"
#include "glink/functorial.hpp"

using namespace glink;

namespace {

FrobeniusAlgebra kh() { return FrobeniusAlgebra::from_polynomial(PolyQ::parse("X^2")); }
FrobeniusAlgebra lee() { return FrobeniusAlgebra::from_polynomial(PolyQ::parse("X^2-1")); }

SparseQMatrix square(const ChainMap& f) {
    return f.matrix * f.matrix;
}

}  // namespace

TEST_CASE("dot map on the unknot") {
    LinkDiagram unknot = corpus_diagram("unknot");
    ChainComplex C = cube_complex(unknot, kh());
    ChainMap x = dot_map(C, BasePoint{0, 0});
    CHECK(commutes_with_differential(C, x));
    // X^2 = 0 for the Khovanov algebra
    CHECK(square(x).is_zero());

    ChainComplex L = cube_complex(unknot, lee());
    ChainMap xl = dot_map(L, BasePoint{0, 0});
    // X^2 = 1 for the Lee algebra
    SparseQMatrix sq = square(xl);
    SparseQMatrix id(static_cast<int>(L.total_dim()), static_cast<int>(L.total_dim()));
    for (int i = 0; i < L.total_dim(); ++i) id.add(i, i, 1);
    CHECK((sq - id).is_zero());
}

TEST_CASE("dot maps are chain maps on the corpus") {
    for (const char* name : {"hopf+", "trefoil", "figure8"}) {
        LinkDiagram d = corpus_diagram(name);
        ChainComplex C = cube_complex(d, kh());
        for (int arc = 0; arc < d.num_arcs(); arc += 2)
            CHECK(commutes_with_differential(C, dot_map(C, BasePoint{arc, 0})));
        ChainComplex L = cube_complex(d, lee());
        CHECK(commutes_with_differential(L, dot_map(L, BasePoint{0, 0})));
    }
}

TEST_CASE("P-reduction lifts to chain level") {
    LinkDiagram tref = corpus_diagram("trefoil");
    ChainComplex C = cube_complex(tref, kh());
    ChainMap x = dot_map(C, BasePoint{2, 0});
    CHECK(square(x).is_zero());  // X^2 = 0

    ChainComplex L = cube_complex(tref, lee());
    ChainMap xl = dot_map(L, BasePoint{2, 0});
    SparseQMatrix sq = square(xl);
    SparseQMatrix id(static_cast<int>(L.total_dim()), static_cast<int>(L.total_dim()));
    for (int i = 0; i < L.total_dim(); ++i) id.add(i, i, 1);
    CHECK((sq - id).is_zero());  // X^2 = 1
}

TEST_CASE("saddle homotopy shape") {
    LinkDiagram hopf = corpus_diagram("hopf+");
    ChainComplex C = cube_complex(hopf, kh());
    for (int c = 0; c < hopf.num_crossings(); ++c) {
        ChainMap h = saddle_homotopy(C, c);
        CHECK_FALSE(h.matrix.is_zero());
        // h decreases the cube coordinate at one crossing only: h^2 = 0
        CHECK((h.matrix * h.matrix).is_zero());
    }
    // negative crossings are rejected
    LinkDiagram anti = corpus_diagram("hopf-");
    ChainComplex D = cube_complex(anti, kh());
    CHECK_THROWS(saddle_homotopy(D, 0));
}

TEST_CASE("neck cutting commutator identity") {
    for (const char* name : {"hopf+", "trefoil"}) {
        LinkDiagram d = corpus_diagram(name);
        ChainComplex C = cube_complex(d, kh());
        for (int c = 0; c < d.num_crossings(); ++c) {
            CommutatorReport rep = commutator_check(C, c);
            INFO(name, " crossing ", c, ": ", rep.detail);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("neck cutting for every positive corpus crossing") {
    for (const auto& entry : corpus()) {
        LinkDiagram d = corpus_diagram(entry.name);
        ChainComplex C = cube_complex(d, kh());
        for (int c = 0; c < d.num_crossings(); ++c) {
            if (d.crossings()[c].sign < 0) continue;
            INFO(entry.name, " crossing ", c);
            CHECK(commutator_check(C, c).pass);
        }
    }
}

TEST_CASE("neck cutting in the lee deformation") {
    // P-independent in the Bar-Natan model: same identity with deformed Delta
    LinkDiagram hopf = corpus_diagram("hopf+");
    ChainComplex C = cube_complex(hopf, lee());
    for (int c = 0; c < hopf.num_crossings(); ++c) {
        CommutatorReport rep = commutator_check(C, c);
        CHECK(rep.pass);
    }
}

TEST_CASE("under passage counting") {
    LinkDiagram tref = corpus_diagram("trefoil");
    // full traversal: three unders
    int full = 0;
    int arc = 0;
    do {
        bool under = false;
        arc = tref.next_arc(arc, &under);
        if (under) ++full;
    } while (arc != 0);
    CHECK(full == 3);
    CHECK(under_passages_between(tref, BasePoint{0, 0}, BasePoint{0, 5}) == 0);
    LinkDiagram hopf = corpus_diagram("hopf+");
    CHECK_THROWS(under_passages_between(hopf, BasePoint{0, 0}, BasePoint{2, 0}));
}

TEST_CASE("basepoint sign flips across an under passage") {
    LinkDiagram tref = corpus_diagram("trefoil");
    ChainComplex C = cube_complex(tref, kh());
    int checked = 0;
    for (int arc = 0; arc < tref.num_arcs(); ++arc) {
        bool under = false;
        int next = tref.next_arc(arc, &under);
        if (!under) continue;
        BasePointSign r = basepoint_sign(C, BasePoint{arc, 0}, BasePoint{next, 0});
        CHECK(r.nonzero);
        CHECK(r.under_passages == 1);
        CHECK(r.sign == -1);
        ++checked;
    }
    CHECK(checked == 3);
}

TEST_CASE("basepoint sign composes along the component") {
    LinkDiagram tref = corpus_diagram("trefoil");
    ChainComplex C = cube_complex(tref, kh());
    // same arc: identical maps
    BasePointSign same = basepoint_sign(C, BasePoint{0, 0}, BasePoint{0, 7});
    CHECK(same.sign == +1);
    CHECK(same.nonzero);
    // two steps along the component: sign multiplies passage signs; since
    // over-passages also flip in the Bar-Natan model, the measured sign is
    // (-1)^{passages}, matching (-1)^{unders} exactly when overs are even
    int arc = 0;
    bool u1 = false, u2 = false;
    int mid = tref.next_arc(arc, &u1);
    int far = tref.next_arc(mid, &u2);
    BasePointSign two = basepoint_sign(C, BasePoint{arc, 0}, BasePoint{far, 0});
    CHECK(two.nonzero);
    CHECK(two.sign == +1);  // one over + one under passage on the trefoil braid
}

TEST_CASE("bidegree bookkeeping") {
    LinkDiagram hopf = corpus_diagram("hopf+");
    ChainComplex C = cube_complex(hopf, kh());
    ChainMap x = dot_map(C, BasePoint{0, 0});
    CHECK(x.dh == 0);
    CHECK(x.dq == 2);
    // dot preserves hdeg and raises qdeg by 2 entrywise
    for (int c = 0; c < C.total_dim(); ++c) {
        for (const auto& [r, v] : x.matrix.column(c)) {
            CHECK(C.hdeg_of(r) == C.hdeg_of(c));
            CHECK(C.qdeg_of(r) == C.qdeg_of(c) + 2);
        }
    }
    ChainMap h = saddle_homotopy(C, 0);
    for (int c = 0; c < C.total_dim(); ++c) {
        for (const auto& [r, v] : h.matrix.column(c)) {
            CHECK(C.hdeg_of(r) == C.hdeg_of(c) - 1);
            CHECK(C.qdeg_of(r) == C.qdeg_of(c) + 2);
        }
    }
}
