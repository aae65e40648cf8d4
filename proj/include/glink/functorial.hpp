#pragma once

#include "glink/homology.hpp"

#include <string>

namespace glink {

/// Map between layers of one cube complex, sparse on the global basis,
/// with a declared (homological, quantum) offset.
struct ChainMap {
    SparseQMatrix matrix;
    int dh = 0;
    int dq = 0;

    friend ChainMap operator+(const ChainMap& a, const ChainMap& b);
    friend ChainMap operator-(const ChainMap& a, const ChainMap& b);
};

/// Multiplication by X on the tensor factor of the circle through the base
/// point, at every cube vertex.  An exact chain map of bidegree (0, 2).
ChainMap dot_map(const ChainComplex& C, const BasePoint& p);

/// True when m commutes with the differential exactly.
bool commutes_with_differential(const ChainComplex& C, const ChainMap& m);

/// Reverse-saddle homotopy at a positive crossing: defined on vertices with
/// the crossing in its higher resolution, carrying the forward edge sign.
ChainMap saddle_homotopy(const ChainComplex& C, int crossing);

struct CommutatorReport {
    bool pass = false;
    std::string detail;
};

/// Asserts d h + h d = X_a + X_b for base points a (under-in arc) and
/// b (under-out arc) of the crossing; reports the first offending entry.
CommutatorReport commutator_check(const ChainComplex& C, int crossing);

struct BasePointSign {
    int sign = 0;  // +1 / -1, or 0 when the induced maps do not determine it
    bool nonzero = false;
    int under_passages = 0;  // from p to q along the component
};

/// Compares the induced maps of dot_map(p) and dot_map(q) on homology.
BasePointSign basepoint_sign(const ChainComplex& C, const BasePoint& p, const BasePoint& q);

/// Number of under-passages walking from p to q along their component.
int under_passages_between(const LinkDiagram& d, const BasePoint& p, const BasePoint& q);

}  // namespace glink
