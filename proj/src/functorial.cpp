#include "glink/functorial.hpp"

#include <algorithm>
#include <sstream>

namespace glink {

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
    if (a.dh != b.dh || a.dq != b.dq)
        throw std::invalid_argument("ChainMap: bidegree mismatch in +");
    return ChainMap{a.matrix + b.matrix, a.dh, a.dq};
}

ChainMap operator-(const ChainMap& a, const ChainMap& b) {
    if (a.dh != b.dh || a.dq != b.dq)
        throw std::invalid_argument("ChainMap: bidegree mismatch in -");
    return ChainMap{a.matrix - b.matrix, a.dh, a.dq};
}

ChainMap dot_map(const ChainComplex& C, const BasePoint& p) {
    if (p.arc < 0 || p.arc >= C.diagram().num_arcs())
        throw std::out_of_range("dot_map: base point on missing arc");
    const int N = C.algebra().dim();
    ChainMap out{SparseQMatrix(static_cast<int>(C.total_dim()), static_cast<int>(C.total_dim())),
                 0, 2};
    const auto& verts = C.vertices();
    for (std::size_t v = 0; v < verts.size(); ++v) {
        const CubeVertex& vert = verts[v];
        int z = vert.circle_of_arc[p.arc];
        for (std::int64_t e = 0; e < vert.block_dim; ++e) {
            std::vector<int> exp(vert.num_circles);
            std::int64_t rem = e;
            for (int i = 0; i < vert.num_circles; ++i) {
                exp[i] = static_cast<int>(rem % N);
                rem /= N;
            }
            const auto& prod = C.algebra().mult(1, exp[z]);
            for (int s = 0; s < N; ++s) {
                if (prod[s] == 0) continue;
                std::vector<int> target = exp;
                target[z] = s;
                out.matrix.add(
                    static_cast<int>(C.basis_index(static_cast<int>(v), target)),
                    static_cast<int>(vert.basis_offset + e), prod[s]);
            }
        }
    }
    return out;
}

bool commutes_with_differential(const ChainComplex& C, const ChainMap& m) {
    return (C.differential() * m.matrix - m.matrix * C.differential()).is_zero();
}

ChainMap saddle_homotopy(const ChainComplex& C, int crossing) {
    const auto& d = C.diagram();
    if (crossing < 0 || crossing >= d.num_crossings())
        throw std::out_of_range("saddle_homotopy: no such crossing");
    const Crossing& x = d.crossings()[crossing];
    if (x.sign < 0)
        throw std::invalid_argument("saddle_homotopy: crossing is negative (mirror first)");
    const int N = C.algebra().dim();
    const auto& verts = C.vertices();
    ChainMap out{SparseQMatrix(static_cast<int>(C.total_dim()), static_cast<int>(C.total_dim())),
                 -1, 2};
    for (std::size_t v = 0; v < verts.size(); ++v) {
        if (!((v >> crossing) & 1)) continue;
        std::size_t u = v & ~(std::size_t{1} << crossing);
        const CubeVertex& src = verts[v];
        const CubeVertex& dst = verts[u];
        int sign = (__builtin_popcount(static_cast<std::uint32_t>(u) & ((1u << crossing) - 1)) %
                        2 ==
                    0)
                       ? +1
                       : -1;

        std::vector<int> ports = {x.a, x.b, x.c, x.d};
        std::vector<int> src_active, dst_active;
        for (int p : ports) {
            int s = src.circle_of_arc[p];
            int t = dst.circle_of_arc[p];
            if (std::find(src_active.begin(), src_active.end(), s) == src_active.end())
                src_active.push_back(s);
            if (std::find(dst_active.begin(), dst_active.end(), t) == dst_active.end())
                dst_active.push_back(t);
        }
        std::sort(src_active.begin(), src_active.end());
        std::sort(dst_active.begin(), dst_active.end());

        std::vector<int> rep_arc(src.num_circles, -1);
        for (int a = 0; a < d.num_arcs(); ++a)
            if (rep_arc[src.circle_of_arc[a]] < 0) rep_arc[src.circle_of_arc[a]] = a;

        bool reverse_is_merge = (src_active.size() == 2);
        for (std::int64_t e = 0; e < src.block_dim; ++e) {
            std::vector<int> exp(src.num_circles);
            std::int64_t rem = e;
            for (int i = 0; i < src.num_circles; ++i) {
                exp[i] = static_cast<int>(rem % N);
                rem /= N;
            }
            std::vector<int> dst_exp(dst.num_circles, -1);
            auto carry = [&]() {
                for (int i = 0; i < src.num_circles; ++i) {
                    if (std::find(src_active.begin(), src_active.end(), i) != src_active.end())
                        continue;
                    dst_exp[dst.circle_of_arc[rep_arc[i]]] = exp[i];
                }
            };
            if (reverse_is_merge) {
                int z = dst_active[0];
                const auto& prod = C.algebra().mult(exp[src_active[0]], exp[src_active[1]]);
                for (int s = 0; s < N; ++s) {
                    if (prod[s] == 0) continue;
                    std::fill(dst_exp.begin(), dst_exp.end(), -1);
                    carry();
                    dst_exp[z] = s;
                    Rational val = prod[s] * sign;
                    out.matrix.add(
                        static_cast<int>(C.basis_index(static_cast<int>(u), dst_exp)),
                        static_cast<int>(src.basis_offset + e), val);
                }
            } else {
                int z = src_active[0];
                for (int s = 0; s < N; ++s)
                    for (int t = 0; t < N; ++t) {
                        const Rational& cf = C.algebra().comult(exp[z], s, t);
                        if (cf == 0) continue;
                        std::fill(dst_exp.begin(), dst_exp.end(), -1);
                        carry();
                        dst_exp[dst_active[0]] = s;
                        dst_exp[dst_active[1]] = t;
                        Rational val = cf * sign;
                        out.matrix.add(
                            static_cast<int>(C.basis_index(static_cast<int>(u), dst_exp)),
                            static_cast<int>(src.basis_offset + e), val);
                    }
            }
        }
    }
    return out;
}

CommutatorReport commutator_check(const ChainComplex& C, int crossing) {
    CommutatorReport rep;
    const Crossing& x = C.diagram().crossings()[crossing];
    ChainMap h = saddle_homotopy(C, crossing);
    const SparseQMatrix& d = C.differential();
    SparseQMatrix commutator = d * h.matrix + h.matrix * d;
    ChainMap xa = dot_map(C, BasePoint{x.under_in(), 0});
    ChainMap xb = dot_map(C, BasePoint{x.under_out(), 0});
    SparseQMatrix residual = commutator - xa.matrix - xb.matrix;
    rep.pass = residual.is_zero();
    if (!rep.pass) {
        for (int c = 0; c < residual.cols() && rep.detail.empty(); ++c) {
            for (const auto& [r, v] : residual.column(c)) {
                std::ostringstream os;
                os << "residual at hdeg " << C.hdeg_of(c) << ", qdeg " << C.qdeg_of(c)
                   << ": entry (" << r << "," << c << ") = " << rational_str(v);
                rep.detail = os.str();
                break;
            }
        }
    } else {
        rep.detail = "d h + h d = X_under-in + X_under-out";
    }
    return rep;
}

int under_passages_between(const LinkDiagram& d, const BasePoint& p, const BasePoint& q) {
    if (p.arc < 0 || p.arc >= d.num_arcs() || q.arc < 0 || q.arc >= d.num_arcs())
        throw std::out_of_range("base point on missing arc");
    if (d.component_of(p.arc) != d.component_of(q.arc))
        throw std::invalid_argument("base points on different components");
    if (p.arc == q.arc && p.offset <= q.offset) return 0;
    int count = 0;
    int arc = p.arc;
    do {
        bool under = false;
        arc = d.next_arc(arc, &under);
        if (under) ++count;
    } while (arc != q.arc);
    return count;
}

namespace {

struct GradedPiece {
    std::vector<std::int64_t> basis;               // global indices of the (i,j) block
    std::map<std::int64_t, int> index_of;          // global -> local
    std::vector<std::vector<Rational>> image;      // image of d_{i-1,j}, local coords
    std::vector<std::vector<Rational>> reps;       // homology representatives, local coords
};

GradedPiece build_piece(const ChainComplex& C, int i, int j) {
    GradedPiece piece;
    piece.basis = C.basis_of(i, j);
    for (std::size_t k = 0; k < piece.basis.size(); ++k)
        piece.index_of[piece.basis[k]] = static_cast<int>(k);

    SparseQMatrix blk = C.differential_block(i, j);
    std::vector<std::vector<Rational>> kernel;
    if (blk.rows() == 0) {
        // no target space: everything is a cycle
        for (std::size_t k = 0; k < piece.basis.size(); ++k) {
            std::vector<Rational> v(piece.basis.size(), Rational(0));
            v[k] = 1;
            kernel.push_back(std::move(v));
        }
    } else {
        kernel = dense_kernel(blk.dense());
    }

    SparseQMatrix below = C.differential_block(i - 1, j);
    for (int c = 0; c < below.cols(); ++c) {
        std::vector<Rational> v(piece.basis.size(), Rational(0));
        bool nonzero = false;
        for (const auto& [r, val] : below.column(c)) {
            v[r] = val;
            nonzero = true;
        }
        if (nonzero) piece.image.push_back(std::move(v));
    }
    // representatives: kernel vectors independent modulo the image
    std::vector<std::vector<Rational>> span = piece.image;
    for (auto& k : kernel) {
        if (dense_solve_in_span(span, k, nullptr)) continue;
        span.push_back(k);
        piece.reps.push_back(k);
    }
    return piece;
}

// induced matrix of F on homology: (i,j) piece -> (i+dh, j+dq) piece
DenseQ induced_on_homology(const ChainMap& F, const GradedPiece& src,
                           const GradedPiece& dst) {
    DenseQ M(dst.reps.size(), std::vector<Rational>(src.reps.size(), Rational(0)));
    // basis of solution space: reps then image
    std::vector<std::vector<Rational>> span = dst.reps;
    for (const auto& v : dst.image) span.push_back(v);
    for (std::size_t scol = 0; scol < src.reps.size(); ++scol) {
        // push the representative through F
        std::vector<Rational> out(dst.basis.size(), Rational(0));
        for (std::size_t k = 0; k < src.basis.size(); ++k) {
            const Rational& coef = src.reps[scol][k];
            if (coef == 0) continue;
            for (const auto& [r, val] : F.matrix.column(static_cast<int>(src.basis[k]))) {
                auto it = dst.index_of.find(r);
                if (it == dst.index_of.end())
                    throw std::logic_error("induced map leaves the expected bidegree");
                out[it->second] += coef * val;
                out[it->second].canonicalize();
            }
        }
        std::vector<Rational> coeffs;
        if (!dense_solve_in_span(span, out, &coeffs))
            throw std::logic_error("induced map image not in cycles modulo boundaries");
        for (std::size_t r = 0; r < dst.reps.size(); ++r) M[r][scol] = coeffs[r];
    }
    return M;
}

}  // namespace

BasePointSign basepoint_sign(const ChainComplex& C, const BasePoint& p, const BasePoint& q) {
    BasePointSign out;
    out.under_passages = under_passages_between(C.diagram(), p, q);
    ChainMap fp = dot_map(C, p);
    ChainMap fq = dot_map(C, q);

    // bidegrees with nonzero homology
    HomologyTable table = homology_table(C);
    bool plus_ok = true, minus_ok = true;
    for (const auto& [key, dim] : table.dims) {
        auto [i, j] = key;
        GradedPiece src = build_piece(C, i, j);
        GradedPiece dst = build_piece(C, i, j + 2);
        DenseQ mp = induced_on_homology(fp, src, dst);
        DenseQ mq = induced_on_homology(fq, src, dst);
        for (std::size_t r = 0; r < mp.size(); ++r)
            for (std::size_t c = 0; c < mp[r].size(); ++c) {
                if (mp[r][c] != 0 || mq[r][c] != 0) out.nonzero = true;
                if (mq[r][c] != mp[r][c]) plus_ok = false;
                if (mq[r][c] != -mp[r][c]) minus_ok = false;
            }
    }
    if (!out.nonzero)
        out.sign = 0;
    else if (plus_ok && !minus_ok)
        out.sign = +1;
    else if (minus_ok && !plus_ok)
        out.sign = -1;
    else
        out.sign = 0;
    return out;
}

}  // namespace glink
