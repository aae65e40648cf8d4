#pragma once

#include "glink/laurent.hpp"

#include <vector>

namespace glink {

/// Sparse matrix over the rationals, stored column-major with rows sorted.
class SparseQMatrix {
public:
    SparseQMatrix() = default;
    SparseQMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    void add(int r, int c, const Rational& v);  // accumulates
    const std::vector<std::pair<int, Rational>>& column(int c) const { return col_[c]; }
    std::size_t nonzeros() const;

    friend SparseQMatrix operator*(const SparseQMatrix& a, const SparseQMatrix& b);
    friend SparseQMatrix operator+(const SparseQMatrix& a, const SparseQMatrix& b);
    friend SparseQMatrix operator-(const SparseQMatrix& a, const SparseQMatrix& b);
    bool is_zero() const;

    /// Exact rank by sparse fraction-free elimination.
    int rank() const;

    std::vector<std::vector<Rational>> dense() const;  // row-major

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::vector<std::pair<int, Rational>>> col_;
};

/// Dense exact routines for generator-level work (kernels, induced maps).
using DenseQ = std::vector<std::vector<Rational>>;  // row-major

int dense_rank(DenseQ m);
/// Basis of the kernel, one column per basis vector.
std::vector<std::vector<Rational>> dense_kernel(const DenseQ& m);
/// Expresses `target` in the span of `basis` (vectors as columns);
/// returns false when target is outside the span.
bool dense_solve_in_span(const std::vector<std::vector<Rational>>& basis,
                         const std::vector<Rational>& target, std::vector<Rational>* coeffs);

}  // namespace glink
