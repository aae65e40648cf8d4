#pragma once

#include "glink/bipoly.hpp"
#include "glink/diagram.hpp"
#include "glink/frobenius.hpp"
#include "glink/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace glink {

/// One vertex of the cube of resolutions: a circle configuration with
/// homological degree and quantum shift.
struct CubeVertex {
    std::uint32_t mask = 0;
    int hdeg = 0;
    int qshift = 0;
    int num_circles = 0;
    std::vector<int> circle_of_arc;            // arc -> local circle index
    std::vector<std::vector<int>> circle_owners;  // circle -> sorted component ids
    std::int64_t basis_offset = 0;             // offset into the global basis
    std::int64_t block_dim = 0;                // N^{num_circles} (full algebra)
};

/// Cube-of-resolutions chain complex over a Frobenius algebra, with basis
/// vectors tagged by (vertex, exponent vector over circles).
class ChainComplex {
public:
    ChainComplex(LinkDiagram diagram, FrobeniusAlgebra algebra);

    const LinkDiagram& diagram() const { return diagram_; }
    const FrobeniusAlgebra& algebra() const { return algebra_; }
    const std::vector<CubeVertex>& vertices() const { return vertices_; }
    std::int64_t total_dim() const { return total_dim_; }

    int hdeg_min() const { return -negatives_; }
    int hdeg_max() const { return static_cast<int>(diagram_.num_crossings()) - negatives_; }

    int hdeg_of(std::int64_t basis) const;
    /// Quantum degree (graded algebras) or filtration level (deformed).
    int qdeg_of(std::int64_t basis) const;
    int vertex_of(std::int64_t basis) const;
    /// Exponent of the given circle in a basis monomial.
    int exponent_of(std::int64_t basis, int circle) const;
    std::int64_t basis_index(int vertex, const std::vector<int>& exponents) const;

    /// Full differential as a sparse matrix on the global basis.
    const SparseQMatrix& differential() const { return d_; }

    /// d restricted to homological degree i (columns hdeg i, rows i+1).
    SparseQMatrix differential_block(int i) const;
    /// d restricted to (hdeg i, qdeg j) -> (i+1, j); graded algebras only.
    SparseQMatrix differential_block(int i, int j) const;

    std::vector<std::int64_t> basis_of(int i) const;
    std::vector<std::int64_t> basis_of(int i, int j) const;

    bool d_squared_is_zero() const;

private:
    void build_vertices();
    void build_differential();

    LinkDiagram diagram_;
    FrobeniusAlgebra algebra_;
    int negatives_ = 0;
    std::vector<CubeVertex> vertices_;
    std::int64_t total_dim_ = 0;
    SparseQMatrix d_;
};

/// Dimensions of homology per bidegree (i, j); deformed homology collapses
/// the quantum grading to j = 0.
struct HomologyTable {
    std::map<std::pair<int, int>, std::int64_t> dims;

    std::int64_t total() const;
    std::string to_json() const;  // {"(i,j)": dim, ...}
    friend bool operator==(const HomologyTable&, const HomologyTable&) = default;
};

/// Khovanov-type cube complex (rejects colored diagrams).
ChainComplex cube_complex(const LinkDiagram& d, const FrobeniusAlgebra& A);

/// Exact homology dimensions; graded per (i, j) when the algebra is graded,
/// else single-graded by i.  Deterministic for any thread count.
HomologyTable homology_table(const ChainComplex& C, int threads = 1);

BiPoly poincare(const HomologyTable& t);
LaurentPoly euler(const HomologyTable& t);

/// Homology of the kappa-isotypic subcomplex for each coloring of the link
/// components by deformation roots, keyed by the coloring (root index per
/// component).
std::map<std::vector<int>, HomologyTable> colored_splitting(const LinkDiagram& d,
                                                            const DeformationSpec& sigma,
                                                            int threads = 1);

}  // namespace glink
