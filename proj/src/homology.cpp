#include "glink/homology.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

namespace glink {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

// smoothing pairs of crossing c at cube coordinate bit: bit 0 is the
// homologically lower resolution (turnback for positive crossings, oriented
// for negative ones)
std::pair<std::pair<int, int>, std::pair<int, int>> smoothing_pairs(const Crossing& x, int bit) {
    bool turnback = (x.sign > 0) ? (bit == 0) : (bit == 1);
    return turnback ? x.turnback_pairs() : x.oriented_pairs();
}

int qshift_contribution(int sign, int bit) {
    if (sign > 0) return bit == 0 ? 0 : -1;
    return bit == 0 ? +1 : 0;
}

}  // namespace

ChainComplex::ChainComplex(LinkDiagram diagram, FrobeniusAlgebra algebra)
    : diagram_(std::move(diagram)), algebra_(std::move(algebra)) {
    if (diagram_.num_crossings() > 20)
        throw std::invalid_argument("cube_complex: too many crossings");
    for (const auto& x : diagram_.crossings()) negatives_ += (x.sign < 0) ? 1 : 0;
    build_vertices();
    build_differential();
}

void ChainComplex::build_vertices() {
    const int m = diagram_.num_crossings();
    const int arcs = diagram_.num_arcs();
    const int N = algebra_.dim();
    vertices_.resize(std::size_t{1} << m);
    std::int64_t offset = 0;
    for (std::uint32_t v = 0; v < vertices_.size(); ++v) {
        CubeVertex& vert = vertices_[v];
        vert.mask = v;
        UnionFind uf(arcs);
        int hdeg = -negatives_;
        int qshift = 0;
        for (int c = 0; c < m; ++c) {
            int bit = (v >> c) & 1;
            const Crossing& x = diagram_.crossings()[c];
            auto [p1, p2] = smoothing_pairs(x, bit);
            uf.unite(p1.first, p1.second);
            uf.unite(p2.first, p2.second);
            hdeg += bit;
            qshift += qshift_contribution(x.sign, bit);
        }
        vert.hdeg = hdeg;
        vert.qshift = qshift;
        // circles ordered by smallest arc id
        std::map<int, int> rep_to_circle;
        vert.circle_of_arc.assign(arcs, -1);
        for (int a = 0; a < arcs; ++a) {
            int r = uf.find(a);
            auto [it, fresh] = rep_to_circle.emplace(r, static_cast<int>(rep_to_circle.size()));
            vert.circle_of_arc[a] = it->second;
        }
        vert.num_circles = static_cast<int>(rep_to_circle.size());
        vert.circle_owners.assign(vert.num_circles, {});
        for (int a = 0; a < arcs; ++a) {
            auto& owners = vert.circle_owners[vert.circle_of_arc[a]];
            int comp = diagram_.component_of(a);
            if (std::find(owners.begin(), owners.end(), comp) == owners.end())
                owners.push_back(comp);
        }
        for (auto& owners : vert.circle_owners) std::sort(owners.begin(), owners.end());
        vert.block_dim = 1;
        for (int i = 0; i < vert.num_circles; ++i) vert.block_dim *= N;
        vert.basis_offset = offset;
        offset += vert.block_dim;
    }
    total_dim_ = offset;
}

int ChainComplex::vertex_of(std::int64_t basis) const {
    // vertices have increasing offsets
    int lo = 0, hi = static_cast<int>(vertices_.size()) - 1;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (vertices_[mid].basis_offset <= basis)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

int ChainComplex::exponent_of(std::int64_t basis, int circle) const {
    const CubeVertex& v = vertices_[vertex_of(basis)];
    std::int64_t rem = basis - v.basis_offset;
    const int N = algebra_.dim();
    for (int i = 0; i < circle; ++i) rem /= N;
    return static_cast<int>(rem % N);
}

std::int64_t ChainComplex::basis_index(int vertex, const std::vector<int>& exponents) const {
    const CubeVertex& v = vertices_[vertex];
    std::int64_t idx = 0, stride = 1;
    const int N = algebra_.dim();
    for (int i = 0; i < v.num_circles; ++i) {
        idx += exponents[i] * stride;
        stride *= N;
    }
    return v.basis_offset + idx;
}

int ChainComplex::hdeg_of(std::int64_t basis) const { return vertices_[vertex_of(basis)].hdeg; }

int ChainComplex::qdeg_of(std::int64_t basis) const {
    const CubeVertex& v = vertices_[vertex_of(basis)];
    std::int64_t rem = basis - v.basis_offset;
    const int N = algebra_.dim();
    int q = v.qshift;
    for (int i = 0; i < v.num_circles; ++i) {
        q += algebra_.qdeg(static_cast<int>(rem % N));
        rem /= N;
    }
    return q;
}

void ChainComplex::build_differential() {
    const int m = diagram_.num_crossings();
    const int N = algebra_.dim();
    d_ = SparseQMatrix(static_cast<int>(total_dim_), static_cast<int>(total_dim_));
    for (std::uint32_t v = 0; v < vertices_.size(); ++v) {
        const CubeVertex& src = vertices_[v];
        for (int c = 0; c < m; ++c) {
            if ((v >> c) & 1) continue;
            std::uint32_t u = v | (1u << c);
            const CubeVertex& dst = vertices_[u];
            int sign = (__builtin_popcount(v & ((1u << c) - 1)) % 2 == 0) ? +1 : -1;

            // circles touched by crossing c on each side
            const Crossing& x = diagram_.crossings()[c];
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

            // correspondence of untouched circles through a representative arc
            std::vector<int> dst_circle_from_src(src.num_circles, -1);
            std::vector<int> rep_arc(src.num_circles, -1);
            for (int a = 0; a < diagram_.num_arcs(); ++a)
                if (rep_arc[src.circle_of_arc[a]] < 0) rep_arc[src.circle_of_arc[a]] = a;

            bool is_merge = (src_active.size() == 2);
            if (is_merge == (dst_active.size() == 2))
                throw std::logic_error("cube: saddle must change the circle count by one");

            for (std::int64_t e = 0; e < src.block_dim; ++e) {
                // decode source exponents
                std::vector<int> exp(src.num_circles);
                std::int64_t rem = e;
                for (int i = 0; i < src.num_circles; ++i) {
                    exp[i] = static_cast<int>(rem % N);
                    rem /= N;
                }
                std::vector<int> dst_exp(dst.num_circles, -1);
                auto carry_untouched = [&]() {
                    for (int i = 0; i < src.num_circles; ++i) {
                        if (std::find(src_active.begin(), src_active.end(), i) !=
                            src_active.end())
                            continue;
                        dst_exp[dst.circle_of_arc[rep_arc[i]]] = exp[i];
                    }
                };
                if (is_merge) {
                    int z = dst_active[0];
                    int p = exp[src_active[0]], r = exp[src_active[1]];
                    const auto& prod = algebra_.mult(p, r);
                    for (int s = 0; s < N; ++s) {
                        if (prod[s] == 0) continue;
                        std::fill(dst_exp.begin(), dst_exp.end(), -1);
                        carry_untouched();
                        dst_exp[z] = s;
                        Rational val = prod[s] * sign;
                        d_.add(static_cast<int>(basis_index(static_cast<int>(u), dst_exp)),
                               static_cast<int>(src.basis_offset + e), val);
                    }
                } else {
                    int z = src_active[0];
                    int u1 = dst_active[0], u2 = dst_active[1];
                    int p = exp[z];
                    for (int s = 0; s < N; ++s) {
                        for (int t = 0; t < N; ++t) {
                            const Rational& cf = algebra_.comult(p, s, t);
                            if (cf == 0) continue;
                            std::fill(dst_exp.begin(), dst_exp.end(), -1);
                            carry_untouched();
                            dst_exp[u1] = s;
                            dst_exp[u2] = t;
                            Rational val = cf * sign;
                            d_.add(static_cast<int>(basis_index(static_cast<int>(u), dst_exp)),
                                   static_cast<int>(src.basis_offset + e), val);
                        }
                    }
                }
            }
        }
    }
}

SparseQMatrix ChainComplex::differential_block(int i) const {
    auto cols = basis_of(i);
    auto rows = basis_of(i + 1);
    std::map<std::int64_t, int> row_of;
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = static_cast<int>(r);
    SparseQMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : d_.column(static_cast<int>(cols[c]))) {
            auto it = row_of.find(r);
            if (it != row_of.end()) out.add(it->second, static_cast<int>(c), v);
        }
    return out;
}

SparseQMatrix ChainComplex::differential_block(int i, int j) const {
    auto cols = basis_of(i, j);
    auto rows = basis_of(i + 1, j);
    std::map<std::int64_t, int> row_of;
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = static_cast<int>(r);
    SparseQMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : d_.column(static_cast<int>(cols[c]))) {
            auto it = row_of.find(r);
            if (it != row_of.end()) out.add(it->second, static_cast<int>(c), v);
        }
    return out;
}

std::vector<std::int64_t> ChainComplex::basis_of(int i) const {
    std::vector<std::int64_t> out;
    for (const auto& v : vertices_) {
        if (v.hdeg != i) continue;
        for (std::int64_t e = 0; e < v.block_dim; ++e) out.push_back(v.basis_offset + e);
    }
    return out;
}

std::vector<std::int64_t> ChainComplex::basis_of(int i, int j) const {
    std::vector<std::int64_t> out;
    for (const auto& v : vertices_) {
        if (v.hdeg != i) continue;
        for (std::int64_t e = 0; e < v.block_dim; ++e)
            if (qdeg_of(v.basis_offset + e) == j) out.push_back(v.basis_offset + e);
    }
    return out;
}

bool ChainComplex::d_squared_is_zero() const { return (d_ * d_).is_zero(); }

ChainComplex cube_complex(const LinkDiagram& d, const FrobeniusAlgebra& A) {
    for (int c = 0; c < d.num_components(); ++c)
        if (d.color(c) != 1)
            throw std::invalid_argument(
                "cube_complex: colored diagrams are not supported by the homology pipeline");
    return ChainComplex(d, A);
}

std::int64_t HomologyTable::total() const {
    std::int64_t t = 0;
    for (const auto& [k, v] : dims) t += v;
    return t;
}

std::string HomologyTable::to_json() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [k, v] : dims) {
        if (!first) os << ",";
        first = false;
        os << "\"(" << k.first << "," << k.second << ")\":" << v;
    }
    os << "}";
    return os.str();
}

namespace {

template <typename Key>
std::map<Key, int> parallel_ranks(std::vector<std::pair<Key, SparseQMatrix>>& blocks,
                                  int threads) {
    std::map<Key, int> result;
    if (blocks.empty()) return result;
    int nthreads = std::max(1, threads);
    if (nthreads == 1 || blocks.size() == 1) {
        for (auto& [k, m] : blocks) result[k] = m.rank();
        return result;
    }
    std::vector<int> ranks(blocks.size(), 0);
    std::vector<std::thread> pool;
    std::size_t chunk = (blocks.size() + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        std::size_t lo = t * chunk, hi = std::min(blocks.size(), lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi]() {
            for (std::size_t i = lo; i < hi; ++i) ranks[i] = blocks[i].second.rank();
        });
    }
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < blocks.size(); ++i) result[blocks[i].first] = ranks[i];
    return result;
}

}  // namespace

HomologyTable homology_table(const ChainComplex& C, int threads) {
    HomologyTable table;
    if (C.algebra().graded()) {
        // group by (i, j)
        std::map<std::pair<int, int>, std::int64_t> space_dims;
        for (std::int64_t b = 0; b < C.total_dim(); ++b)
            ++space_dims[{C.hdeg_of(b), C.qdeg_of(b)}];
        std::vector<std::pair<std::pair<int, int>, SparseQMatrix>> blocks;
        for (const auto& [key, dim] : space_dims)
            blocks.emplace_back(key, C.differential_block(key.first, key.second));
        auto ranks = parallel_ranks(blocks, threads);
        for (const auto& [key, dim] : space_dims) {
            auto [i, j] = key;
            std::int64_t h = dim - ranks[key];
            auto below = ranks.find({i - 1, j});
            if (below != ranks.end()) h -= below->second;
            if (h != 0) table.dims[{i, j}] = h;
        }
    } else {
        std::map<int, std::int64_t> space_dims;
        for (std::int64_t b = 0; b < C.total_dim(); ++b) ++space_dims[C.hdeg_of(b)];
        std::vector<std::pair<int, SparseQMatrix>> blocks;
        for (const auto& [i, dim] : space_dims) blocks.emplace_back(i, C.differential_block(i));
        auto ranks = parallel_ranks(blocks, threads);
        for (const auto& [i, dim] : space_dims) {
            std::int64_t h = dim - ranks[i];
            auto below = ranks.find(i - 1);
            if (below != ranks.end()) h -= below->second;
            if (h != 0) table.dims[{i, 0}] = h;
        }
    }
    return table;
}

BiPoly poincare(const HomologyTable& t) {
    BiPoly p;
    for (const auto& [k, v] : t.dims)
        p += BiPoly::term(Rational(static_cast<long>(v)), k.second, k.first);
    return p;
}

LaurentPoly euler(const HomologyTable& t) { return poincare(t).at_t_minus_one(); }

namespace {

// Data of the CRT block basis u_{i,t} = e_i (X - lambda_i)^t.
struct CrtBasis {
    std::vector<int> block_of;   // flat index -> root index
    std::vector<int> level_of;   // flat index -> t
    std::vector<int> offset;     // root index -> flat offset
    std::vector<int> block_dim;  // root index -> N_i
    // comultiplication in the CRT basis: delta[f] is a list of (f1, f2, coeff)
    std::vector<std::vector<std::tuple<int, int, Rational>>> delta;
    int N = 0;
};

CrtBasis build_crt_basis(const DeformationSpec& sigma, const FrobeniusAlgebra& A) {
    const int N = A.dim();
    CrtBasis B;
    B.N = N;
    std::vector<PolyQ> idem = crt_idempotents(sigma);
    PolyQ P = sigma.polynomial();

    std::vector<PolyQ> basis;  // flat CRT basis as polynomials mod P
    for (std::size_t i = 0; i < sigma.roots.size(); ++i) {
        B.offset.push_back(static_cast<int>(basis.size()));
        B.block_dim.push_back(sigma.roots[i].second);
        for (int t = 0; t < sigma.roots[i].second; ++t) {
            PolyQ u = (idem[i] * PolyQ::linear_root(sigma.roots[i].first).pow(t)).mod(P);
            basis.push_back(u);
            B.block_of.push_back(static_cast<int>(i));
            B.level_of.push_back(t);
        }
    }
    // change of basis: columns of U are the u's in monomial coordinates
    DenseQ U(N, std::vector<Rational>(N, Rational(0)));
    for (int f = 0; f < N; ++f)
        for (int s = 0; s < N; ++s) U[s][f] = basis[f].coeff(s);
    // invert U
    DenseQ inv(N, std::vector<Rational>(N, Rational(0)));
    for (int i = 0; i < N; ++i) inv[i][i] = 1;
    DenseQ mcopy = U;
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int r = c; r < N; ++r)
            if (mcopy[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("crt basis: singular transition matrix");
        std::swap(mcopy[c], mcopy[piv]);
        std::swap(inv[c], inv[piv]);
        Rational f = 1 / mcopy[c][c];
        f.canonicalize();
        for (int j = 0; j < N; ++j) {
            mcopy[c][j] *= f;
            inv[c][j] *= f;
            mcopy[c][j].canonicalize();
            inv[c][j].canonicalize();
        }
        for (int r = 0; r < N; ++r) {
            if (r == c || mcopy[r][c] == 0) continue;
            Rational g = mcopy[r][c];
            for (int j = 0; j < N; ++j) {
                mcopy[r][j] -= g * mcopy[c][j];
                inv[r][j] -= g * inv[c][j];
                mcopy[r][j].canonicalize();
                inv[r][j].canonicalize();
            }
        }
    }
    // Delta in the CRT basis
    B.delta.resize(N);
    for (int f = 0; f < N; ++f) {
        // Delta(u_f) in monomial (x) monomial coordinates
        DenseQ dm(N, std::vector<Rational>(N, Rational(0)));
        for (int k = 0; k < N; ++k) {
            Rational a = basis[f].coeff(k);
            if (a == 0) continue;
            for (int s = 0; s < N; ++s)
                for (int t = 0; t < N; ++t) {
                    const Rational& cf = A.comult(k, s, t);
                    if (cf == 0) continue;
                    dm[s][t] += a * cf;
                    dm[s][t].canonicalize();
                }
        }
        // convert both tensor legs to the CRT basis: coeff_{f1,f2} =
        // sum_{s,t} inv[f1][s] dm[s][t] inv[f2][t]
        for (int f1 = 0; f1 < N; ++f1)
            for (int f2 = 0; f2 < N; ++f2) {
                Rational acc(0);
                for (int s = 0; s < N; ++s) {
                    if (inv[f1][s] == 0) continue;
                    for (int t = 0; t < N; ++t) {
                        if (dm[s][t] == 0 || inv[f2][t] == 0) continue;
                        acc += inv[f1][s] * dm[s][t] * inv[f2][t];
                    }
                }
                acc.canonicalize();
                if (acc != 0) {
                    if (B.block_of[f1] != B.block_of[f] || B.block_of[f2] != B.block_of[f])
                        throw std::logic_error("crt basis: comultiplication not block diagonal");
                    B.delta[f].emplace_back(f1, f2, acc);
                }
            }
    }
    return B;
}

}  // namespace

std::map<std::vector<int>, HomologyTable> colored_splitting(const LinkDiagram& d,
                                                            const DeformationSpec& sigma,
                                                            int threads) {
    for (int c = 0; c < d.num_components(); ++c)
        if (d.color(c) != 1)
            throw std::invalid_argument("colored_splitting: diagram colors must be 1");
    FrobeniusAlgebra A = FrobeniusAlgebra::from_polynomial(sigma.polynomial());
    ChainComplex C(d, A);  // reuse vertex/cube structure
    CrtBasis B = build_crt_basis(sigma, A);
    const int ncomp = d.num_components();
    const int nroots = static_cast<int>(sigma.roots.size());
    const auto& verts = C.vertices();

    // The kappa-projector is the product over components of the CRT
    // idempotent acting through the dot map at a fixed base point (the
    // component's first arc).  Per vertex and circle this leaves: the block
    // of kappa if the circle carries base points of kappa-equal components,
    // nothing if it carries base points in conflict, and all blocks if it
    // carries none.
    std::vector<int> base_arc(ncomp);
    for (int c = 0; c < ncomp; ++c) base_arc[c] = d.components()[c][0];

    std::map<std::vector<int>, HomologyTable> result;
    std::vector<int> kappa(ncomp, 0);
    for (;;) {
        // per-vertex, per-circle admissible flat CRT indices
        std::vector<char> alive(verts.size(), 1);
        std::vector<std::vector<std::vector<int>>> allowed(verts.size());
        std::vector<std::int64_t> offsets(verts.size(), 0);
        std::int64_t total = 0;
        for (std::size_t v = 0; v < verts.size(); ++v) {
            const CubeVertex& vert = verts[v];
            allowed[v].assign(vert.num_circles, {});
            std::vector<int> block_of_circle(vert.num_circles, -2);  // -2 = free
            for (int c = 0; c < ncomp; ++c) {
                int cr = vert.circle_of_arc[base_arc[c]];
                if (block_of_circle[cr] == -2)
                    block_of_circle[cr] = kappa[c];
                else if (block_of_circle[cr] != kappa[c])
                    block_of_circle[cr] = -1;  // conflicting idempotents
            }
            for (int cr = 0; cr < vert.num_circles; ++cr) {
                if (block_of_circle[cr] == -1) {
                    alive[v] = 0;
                    break;
                }
                if (block_of_circle[cr] == -2) {
                    for (int f = 0; f < B.N; ++f) allowed[v][cr].push_back(f);
                } else {
                    int blk = block_of_circle[cr];
                    for (int t = 0; t < B.block_dim[blk]; ++t)
                        allowed[v][cr].push_back(B.offset[blk] + t);
                }
            }
            offsets[v] = total;
            if (alive[v]) {
                std::int64_t dim = 1;
                for (int cr = 0; cr < vert.num_circles; ++cr)
                    dim *= static_cast<std::int64_t>(allowed[v][cr].size());
                total += dim;
            }
        }
        auto flat_of = [&](std::size_t v, const std::vector<int>& flats) {
            std::int64_t idx = 0, stride = 1;
            for (int cr = 0; cr < verts[v].num_circles; ++cr) {
                const auto& adm = allowed[v][cr];
                auto it = std::find(adm.begin(), adm.end(), flats[cr]);
                if (it == adm.end()) return std::int64_t{-1};
                idx += (it - adm.begin()) * stride;
                stride *= static_cast<std::int64_t>(adm.size());
            }
            return offsets[v] + idx;
        };

        SparseQMatrix dk(static_cast<int>(total), static_cast<int>(total));
        const int m = d.num_crossings();
        for (std::size_t v = 0; v < verts.size(); ++v) {
            if (!alive[v]) continue;
            const CubeVertex& src = verts[v];
            std::vector<int> rep_arc(src.num_circles, -1);
            for (int a = 0; a < d.num_arcs(); ++a)
                if (rep_arc[src.circle_of_arc[a]] < 0) rep_arc[src.circle_of_arc[a]] = a;
            std::int64_t src_dim = 1;
            for (int cr = 0; cr < src.num_circles; ++cr)
                src_dim *= static_cast<std::int64_t>(allowed[v][cr].size());
            for (int c = 0; c < m; ++c) {
                if ((v >> c) & 1) continue;
                std::size_t u = v | (std::size_t{1} << c);
                if (!alive[u]) continue;
                const CubeVertex& dst = verts[u];
                int sign = (__builtin_popcount(static_cast<std::uint32_t>(v) & ((1u << c) - 1)) %
                                2 ==
                            0)
                               ? +1
                               : -1;
                const Crossing& x = d.crossings()[c];
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
                bool is_merge = (src_active.size() == 2);

                for (std::int64_t e = 0; e < src_dim; ++e) {
                    // decode flat CRT indices per circle
                    std::vector<int> fv(src.num_circles);
                    std::int64_t rem = e;
                    for (int cr = 0; cr < src.num_circles; ++cr) {
                        const auto& adm = allowed[v][cr];
                        fv[cr] = adm[rem % adm.size()];
                        rem /= static_cast<std::int64_t>(adm.size());
                    }
                    std::vector<int> df(dst.num_circles, -1);
                    auto carry = [&]() {
                        for (int cr = 0; cr < src.num_circles; ++cr) {
                            if (std::find(src_active.begin(), src_active.end(), cr) !=
                                src_active.end())
                                continue;
                            df[dst.circle_of_arc[rep_arc[cr]]] = fv[cr];
                        }
                    };
                    if (is_merge) {
                        int z = dst_active[0];
                        int f1 = fv[src_active[0]], f2 = fv[src_active[1]];
                        if (B.block_of[f1] != B.block_of[f2]) continue;
                        int blk = B.block_of[f1];
                        int s = B.level_of[f1] + B.level_of[f2];
                        if (s >= B.block_dim[blk]) continue;
                        std::fill(df.begin(), df.end(), -1);
                        carry();
                        df[z] = B.offset[blk] + s;
                        std::int64_t row = flat_of(u, df);
                        if (row >= 0)
                            dk.add(static_cast<int>(row), static_cast<int>(offsets[v] + e),
                                   Rational(sign));
                    } else {
                        int z = src_active[0];
                        for (const auto& [f1, f2, cf] : B.delta[fv[z]]) {
                            std::fill(df.begin(), df.end(), -1);
                            carry();
                            df[dst_active[0]] = f1;
                            df[dst_active[1]] = f2;
                            std::int64_t row = flat_of(u, df);
                            if (row < 0) continue;
                            Rational val = cf * sign;
                            dk.add(static_cast<int>(row), static_cast<int>(offsets[v] + e), val);
                        }
                    }
                }
            }
        }

        // homology of the kappa part, graded by homological degree only
        std::map<int, std::int64_t> space_dims;
        std::map<int, std::vector<std::int64_t>> basis_by_h;
        for (std::size_t v = 0; v < verts.size(); ++v) {
            if (!alive[v]) continue;
            std::int64_t dim = 1;
            for (int cr = 0; cr < verts[v].num_circles; ++cr)
                dim *= static_cast<std::int64_t>(allowed[v][cr].size());
            for (std::int64_t e = 0; e < dim; ++e)
                basis_by_h[verts[v].hdeg].push_back(offsets[v] + e);
            space_dims[verts[v].hdeg] += dim;
        }
        std::vector<std::pair<int, SparseQMatrix>> blocks;
        for (const auto& [i, dim] : space_dims) {
            auto cols = basis_by_h[i];
            std::map<std::int64_t, int> row_of;
            auto rit = basis_by_h.find(i + 1);
            if (rit != basis_by_h.end())
                for (std::size_t r = 0; r < rit->second.size(); ++r)
                    row_of[rit->second[r]] = static_cast<int>(r);
            SparseQMatrix blk(static_cast<int>(row_of.size()), static_cast<int>(cols.size()));
            for (std::size_t cidx = 0; cidx < cols.size(); ++cidx)
                for (const auto& [r, val] : dk.column(static_cast<int>(cols[cidx]))) {
                    auto it = row_of.find(r);
                    if (it != row_of.end()) blk.add(it->second, static_cast<int>(cidx), val);
                }
            blocks.emplace_back(i, std::move(blk));
        }
        auto ranks = parallel_ranks(blocks, threads);
        HomologyTable tbl;
        for (const auto& [i, dim] : space_dims) {
            std::int64_t h = dim - ranks[i];
            auto below = ranks.find(i - 1);
            if (below != ranks.end()) h -= below->second;
            if (h != 0) tbl.dims[{i, 0}] = h;
        }
        result[kappa] = tbl;

        // next coloring
        int pos = 0;
        while (pos < ncomp && ++kappa[pos] == nroots) kappa[pos++] = 0;
        if (pos == ncomp) break;
    }
    return result;
}

}  // namespace glink
