#include "glink/linalg.hpp"

#include <algorithm>
#include <map>

namespace glink {

void SparseQMatrix::add(int r, int c, const Rational& v) {
    if (v == 0) return;
    auto& col = col_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, int row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
        it->second += v;
        it->second.canonicalize();
        if (it->second == 0) col.erase(it);
    } else {
        Rational vv = v;
        vv.canonicalize();
        col.insert(it, {r, vv});
    }
}

std::size_t SparseQMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : col_) n += c.size();
    return n;
}

bool SparseQMatrix::is_zero() const {
    for (const auto& c : col_)
        if (!c.empty()) return false;
    return true;
}

SparseQMatrix operator*(const SparseQMatrix& a, const SparseQMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("SparseQMatrix: shape mismatch in *");
    SparseQMatrix out(a.rows_, b.cols_);
    for (int c = 0; c < b.cols_; ++c) {
        std::map<int, Rational> acc;
        for (const auto& [k, bv] : b.col_[c]) {
            for (const auto& [r, av] : a.col_[k]) {
                Rational& slot = acc[r];
                slot += av * bv;
                slot.canonicalize();
            }
        }
        for (auto& [r, v] : acc)
            if (v != 0) out.col_[c].emplace_back(r, v);
    }
    return out;
}

SparseQMatrix operator+(const SparseQMatrix& a, const SparseQMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("SparseQMatrix: shape mismatch in +");
    SparseQMatrix out = a;
    for (int c = 0; c < b.cols_; ++c)
        for (const auto& [r, v] : b.col_[c]) out.add(r, c, v);
    return out;
}

SparseQMatrix operator-(const SparseQMatrix& a, const SparseQMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("SparseQMatrix: shape mismatch in -");
    SparseQMatrix out = a;
    for (int c = 0; c < b.cols_; ++c)
        for (const auto& [r, v] : b.col_[c]) out.add(r, c, -v);
    return out;
}

std::vector<std::vector<Rational>> SparseQMatrix::dense() const {
    std::vector<std::vector<Rational>> m(rows_, std::vector<Rational>(cols_, Rational(0)));
    for (int c = 0; c < cols_; ++c)
        for (const auto& [r, v] : col_[c]) m[r][c] = v;
    return m;
}

namespace {

using Col = std::vector<std::pair<int, Rational>>;

// out = a - f * b, both sorted by row
Col axpy(const Col& a, const Rational& f, const Col& b) {
    Col out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rational v = -f * b[j].second;
            v.canonicalize();
            if (v != 0) out.emplace_back(b[j].first, v);
            ++j;
        } else {
            Rational v = a[i].second - f * b[j].second;
            v.canonicalize();
            if (v != 0) out.emplace_back(a[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

int SparseQMatrix::rank() const {
    // column echelon: pivots keyed by leading row
    std::map<int, Col> pivots;  // row -> column normalized to leading 1
    int rank = 0;
    for (int c = 0; c < cols_; ++c) {
        Col cur = col_[c];
        while (!cur.empty()) {
            int lead = cur.front().first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                Rational inv = 1 / cur.front().second;
                inv.canonicalize();
                for (auto& [r, v] : cur) {
                    v *= inv;
                    v.canonicalize();
                }
                pivots.emplace(lead, std::move(cur));
                ++rank;
                break;
            }
            cur = axpy(cur, cur.front().second, it->second);
        }
    }
    return rank;
}

int dense_rank(DenseQ m) {
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        Rational inv = 1 / m[rank][c];
        inv.canonicalize();
        for (int j = c; j < cols; ++j) {
            m[rank][j] *= inv;
            m[rank][j].canonicalize();
        }
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (int j = c; j < cols; ++j) {
                m[r][j] -= f * m[rank][j];
                m[r][j].canonicalize();
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Rational>> dense_kernel(const DenseQ& m_in) {
    DenseQ m = m_in;
    if (m.empty()) return {};
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        Rational inv = 1 / m[rank][c];
        inv.canonicalize();
        for (int j = 0; j < cols; ++j) {
            m[rank][j] *= inv;
            m[rank][j].canonicalize();
        }
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (int j = 0; j < cols; ++j) {
                m[r][j] -= f * m[rank][j];
                m[r][j].canonicalize();
            }
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> kernel;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (int p = 0; p < rank; ++p) v[pivot_col[p]] = -m[p][free];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

bool dense_solve_in_span(const std::vector<std::vector<Rational>>& basis,
                         const std::vector<Rational>& target, std::vector<Rational>* coeffs) {
    const int n = static_cast<int>(target.size());
    const int k = static_cast<int>(basis.size());
    // augmented [basis | target], rows = n
    DenseQ m(n, std::vector<Rational>(k + 1, Rational(0)));
    for (int j = 0; j < k; ++j) {
        if (static_cast<int>(basis[j].size()) != n)
            throw std::invalid_argument("solve_in_span: vector size mismatch");
        for (int i = 0; i < n; ++i) m[i][j] = basis[j][i];
    }
    for (int i = 0; i < n; ++i) m[i][k] = target[i];

    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < k && rank < n; ++c) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        Rational inv = 1 / m[rank][c];
        inv.canonicalize();
        for (int j = 0; j <= k; ++j) {
            m[rank][j] *= inv;
            m[rank][j].canonicalize();
        }
        for (int r = 0; r < n; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (int j = 0; j <= k; ++j) {
                m[r][j] -= f * m[rank][j];
                m[r][j].canonicalize();
            }
        }
        pivot_col.push_back(c);
        ++rank;
    }
    // consistent iff no row has zero basis part but nonzero target
    for (int r = rank; r < n; ++r)
        if (m[r][k] != 0) return false;
    if (coeffs) {
        coeffs->assign(k, Rational(0));
        for (int p = 0; p < rank; ++p) (*coeffs)[pivot_col[p]] = m[p][k];
    }
    return true;
}

}  // namespace glink
