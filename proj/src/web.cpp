#include "glink/web.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace glink {

namespace {

std::int64_t binom_count(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// k-subsets of {1..N} as bitmasks (bit s-1 for element s), ascending.
struct SubsetTable {
    int N, k;
    std::vector<std::uint32_t> masks;

    SubsetTable(int N_, int k_) : N(N_), k(k_) {
        if (N < 0 || N > 24) throw std::domain_error("web: rank out of supported range 1..24");
        if (k < 0 || k > N) return;  // empty: zero-dimensional space
        if (k == 0) {
            masks.push_back(0);
            return;
        }
        std::uint32_t m = (1u << k) - 1;
        std::uint32_t limit = 1u << N;
        while (m < limit) {
            masks.push_back(m);
            // Gosper's hack: next subset of the same size
            std::uint32_t c = m & -m, r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
            if (c == 0) break;
        }
    }
    std::int64_t dim() const { return static_cast<std::int64_t>(masks.size()); }
    std::int64_t index_of(std::uint32_t mask) const {
        auto it = std::lower_bound(masks.begin(), masks.end(), mask);
        return it - masks.begin();
    }
};

// #{(a,b) in A x B : a > b}
int cross_inversions(std::uint32_t A, std::uint32_t B) {
    int total = 0;
    std::uint32_t a = A;
    while (a) {
        int bit = __builtin_ctz(a);
        total += __builtin_popcount(B & ((1u << bit) - 1));
        a &= a - 1;
    }
    return total;
}

// q-degree of a state: sum over s in S of (N + 1 - 2s)
int state_weight(std::uint32_t S, int N) {
    int w = 0;
    std::uint32_t m = S;
    while (m) {
        int s = __builtin_ctz(m) + 1;
        w += N + 1 - 2 * s;
        m &= m - 1;
    }
    return w;
}

LaurentPoly qpow(int e) { return LaurentPoly::q(e); }

}  // namespace

Profile apply_gen(const Profile& before, const WebGen& g) {
    Profile out = before;
    auto need = [&](bool cond, const char* what) {
        if (!cond) throw std::invalid_argument(std::string("web: profile mismatch at ") + what);
    };
    auto in_range = [&](int pos, int arity) {
        return pos >= 0 && pos + arity <= static_cast<int>(before.size());
    };
    switch (g.kind) {
        case WebGenKind::Identity:
            need(in_range(g.pos, 1) && before[g.pos].label == g.x, "identity");
            return out;
        case WebGenKind::Merge:
            need(g.x >= 1 && g.y >= 1 && in_range(g.pos, 2), "merge");
            need(before[g.pos] == EdgeEnd{g.x, true} && before[g.pos + 1] == EdgeEnd{g.y, true},
                 "merge");
            out.erase(out.begin() + g.pos, out.begin() + g.pos + 2);
            out.insert(out.begin() + g.pos, EdgeEnd{g.x + g.y, true});
            return out;
        case WebGenKind::Split:
            need(g.x >= 1 && g.y >= 1 && in_range(g.pos, 1), "split");
            need(before[g.pos] == EdgeEnd{g.x + g.y, true}, "split");
            out.erase(out.begin() + g.pos);
            out.insert(out.begin() + g.pos, {EdgeEnd{g.x, true}, EdgeEnd{g.y, true}});
            return out;
        case WebGenKind::Cup:
            need(g.x >= 1 && g.pos >= 0 && g.pos <= static_cast<int>(before.size()), "cup");
            out.insert(out.begin() + g.pos, {EdgeEnd{g.x, true}, EdgeEnd{g.x, false}});
            return out;
        case WebGenKind::CupRev:
            need(g.x >= 1 && g.pos >= 0 && g.pos <= static_cast<int>(before.size()), "cupr");
            out.insert(out.begin() + g.pos, {EdgeEnd{g.x, false}, EdgeEnd{g.x, true}});
            return out;
        case WebGenKind::Cap:
            need(in_range(g.pos, 2), "cap");
            need(before[g.pos] == EdgeEnd{g.x, true} && before[g.pos + 1] == EdgeEnd{g.x, false},
                 "cap");
            out.erase(out.begin() + g.pos, out.begin() + g.pos + 2);
            return out;
        case WebGenKind::CapRev:
            need(in_range(g.pos, 2), "capr");
            need(before[g.pos] == EdgeEnd{g.x, false} && before[g.pos + 1] == EdgeEnd{g.x, true},
                 "capr");
            out.erase(out.begin() + g.pos, out.begin() + g.pos + 2);
            return out;
        case WebGenKind::CrossPos:
        case WebGenKind::CrossNeg:
            need(in_range(g.pos, 2), "crossing");
            need(before[g.pos].up && before[g.pos + 1].up, "crossing");
            std::swap(out[g.pos], out[g.pos + 1]);
            return out;
    }
    throw std::logic_error("web: unknown generator");
}

Profile SlicedWeb::top() const {
    Profile p = bottom;
    for (const auto& g : gens) p = apply_gen(p, g);
    return p;
}

bool SlicedWeb::has_crossings() const {
    for (const auto& g : gens)
        if (g.kind == WebGenKind::CrossPos || g.kind == WebGenKind::CrossNeg) return true;
    return false;
}

std::int64_t state_dim(int N, const Profile& p) {
    std::int64_t d = 1;
    for (const auto& e : p) d *= binom_count(N, e.label);
    return d;
}

namespace {

// Sparse state vector, sorted by index.
using StateVec = std::vector<std::pair<std::int64_t, LaurentPoly>>;

void normalize(StateVec& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    StateVec out;
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i)
            out.back().second += c;
        else
            out.emplace_back(i, std::move(c));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second.is_zero(); }),
              out.end());
    v = std::move(out);
}

// local input index -> [(local output index, coeff)]
using LocalMap = std::vector<std::vector<std::pair<std::int64_t, LaurentPoly>>>;

struct LayerAction {
    int arity_in = 0;   // profile entries consumed at g.pos
    int arity_out = 0;  // profile entries produced
    std::int64_t dim_in = 1, dim_out = 1;
    LocalMap map;  // size dim_in
};

LayerAction local_action(const WebGen& g, int N) {
    LayerAction act;
    switch (g.kind) {
        case WebGenKind::Identity: {
            SubsetTable t(N, g.x);
            act.arity_in = act.arity_out = 1;
            act.dim_in = act.dim_out = t.dim();
            act.map.resize(act.dim_in);
            for (std::int64_t i = 0; i < act.dim_in; ++i)
                act.map[i].emplace_back(i, LaurentPoly::one());
            return act;
        }
        case WebGenKind::Merge: {
            SubsetTable tx(N, g.x), ty(N, g.y), tz(N, g.x + g.y);
            act.arity_in = 2;
            act.arity_out = 1;
            act.dim_in = tx.dim() * ty.dim();
            act.dim_out = tz.dim();
            act.map.resize(act.dim_in);
            for (std::int64_t i = 0; i < tx.dim(); ++i) {
                for (std::int64_t j = 0; j < ty.dim(); ++j) {
                    std::uint32_t S = tx.masks[i], T = ty.masks[j];
                    if (S & T) continue;
                    act.map[i * ty.dim() + j].emplace_back(
                        tz.index_of(S | T), qpow(-cross_inversions(T, S)));
                }
            }
            return act;
        }
        case WebGenKind::Split: {
            SubsetTable tx(N, g.x), ty(N, g.y), tz(N, g.x + g.y);
            act.arity_in = 1;
            act.arity_out = 2;
            act.dim_in = tz.dim();
            act.dim_out = tx.dim() * ty.dim();
            act.map.resize(act.dim_in);
            for (std::int64_t u = 0; u < tz.dim(); ++u) {
                std::uint32_t U = tz.masks[u];
                // enumerate x-subsets S of U
                for (std::int64_t i = 0; i < tx.dim(); ++i) {
                    std::uint32_t S = tx.masks[i];
                    if ((S & U) != S) continue;
                    std::uint32_t T = U & ~S;
                    act.map[u].emplace_back(i * ty.dim() + ty.index_of(T),
                                            qpow(cross_inversions(S, T)));
                }
            }
            return act;
        }
        case WebGenKind::Cup:
        case WebGenKind::CupRev: {
            SubsetTable t(N, g.x);
            act.arity_in = 0;
            act.arity_out = 2;
            act.dim_in = 1;
            act.dim_out = t.dim() * t.dim();
            act.map.resize(1);
            for (std::int64_t i = 0; i < t.dim(); ++i) {
                LaurentPoly coeff = (g.kind == WebGenKind::Cup)
                                        ? LaurentPoly::one()
                                        : qpow(-state_weight(t.masks[i], N));
                act.map[0].emplace_back(i * t.dim() + i, coeff);
            }
            return act;
        }
        case WebGenKind::Cap:
        case WebGenKind::CapRev: {
            SubsetTable t(N, g.x);
            act.arity_in = 2;
            act.arity_out = 0;
            act.dim_in = t.dim() * t.dim();
            act.dim_out = 1;
            act.map.resize(act.dim_in);
            for (std::int64_t i = 0; i < t.dim(); ++i) {
                LaurentPoly coeff = (g.kind == WebGenKind::Cap)
                                        ? qpow(state_weight(t.masks[i], N))
                                        : LaurentPoly::one();
                act.map[i * t.dim() + i].emplace_back(0, coeff);
            }
            return act;
        }
        case WebGenKind::CrossPos:
        case WebGenKind::CrossNeg:
            throw std::invalid_argument("web: crossings must be expanded before evaluation");
    }
    throw std::logic_error("web: unknown generator");
}

StateVec apply_layer(const StateVec& v, const WebGen& g, const Profile& before, int N) {
    LayerAction act = local_action(g, N);
    // strides: prefix entries [0, pos), local, suffix
    std::int64_t suf = 1;
    for (std::size_t e = g.pos + act.arity_in; e < before.size(); ++e)
        suf *= binom_count(N, before[e].label);
    std::int64_t in_block = act.dim_in * suf;
    std::int64_t out_block = act.dim_out * suf;
    StateVec out;
    out.reserve(v.size());
    for (const auto& [idx, coeff] : v) {
        std::int64_t a = idx / in_block;
        std::int64_t rem = idx % in_block;
        std::int64_t loc = rem / suf;
        std::int64_t s = rem % suf;
        for (const auto& [loc2, f] : act.map[loc])
            out.emplace_back(a * out_block + loc2 * suf + s, coeff * f);
    }
    normalize(out);
    return out;
}

}  // namespace

WebMatrix WebMatrix::identity(std::int64_t n) {
    WebMatrix m;
    m.rows = m.cols = n;
    m.col.resize(n);
    for (std::int64_t i = 0; i < n; ++i) m.col[i].emplace_back(i, LaurentPoly::one());
    return m;
}

WebMatrix WebMatrix::zero(std::int64_t r, std::int64_t c) {
    WebMatrix m;
    m.rows = r;
    m.cols = c;
    m.col.resize(c);
    return m;
}

WebMatrix operator*(const WebMatrix& a, const WebMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("WebMatrix: shape mismatch");
    WebMatrix out = WebMatrix::zero(a.rows, b.cols);
    for (std::int64_t c = 0; c < b.cols; ++c) {
        std::map<std::int64_t, LaurentPoly> acc;
        for (const auto& [k, bv] : b.col[c])
            for (const auto& [r, av] : a.col[k]) acc[r] += av * bv;
        for (auto& [r, v] : acc)
            if (!v.is_zero()) out.col[c].emplace_back(r, v);
    }
    return out;
}

WebMatrix operator+(const WebMatrix& a, const WebMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("WebMatrix: shape mismatch");
    WebMatrix out = a;
    for (std::int64_t c = 0; c < b.cols; ++c) {
        std::map<std::int64_t, LaurentPoly> acc(out.col[c].begin(), out.col[c].end());
        for (const auto& [r, v] : b.col[c]) acc[r] += v;
        out.col[c].assign(acc.begin(), acc.end());
        out.col[c].erase(std::remove_if(out.col[c].begin(), out.col[c].end(),
                                        [](const auto& e) { return e.second.is_zero(); }),
                         out.col[c].end());
    }
    return out;
}

WebMatrix operator-(const WebMatrix& a, const WebMatrix& b) {
    return a + b.scaled(LaurentPoly::constant(-1));
}

WebMatrix WebMatrix::scaled(const LaurentPoly& f) const {
    WebMatrix out = *this;
    for (auto& c : out.col) {
        for (auto& [r, v] : c) v = v * f;
        c.erase(std::remove_if(c.begin(), c.end(),
                               [](const auto& e) { return e.second.is_zero(); }),
                c.end());
    }
    return out;
}

bool WebMatrix::is_zero() const {
    for (const auto& c : col)
        if (!c.empty()) return false;
    return true;
}

bool WebMatrix::is_identity() const {
    if (rows != cols) return false;
    for (std::int64_t c = 0; c < cols; ++c) {
        if (col[c].size() != 1) return false;
        if (col[c][0].first != c) return false;
        if (col[c][0].second != LaurentPoly::one()) return false;
    }
    return true;
}

WebMatrix eval_layer(const WebGen& g, const Profile& before, int N) {
    Profile after = apply_gen(before, g);
    WebMatrix m = WebMatrix::zero(state_dim(N, after), state_dim(N, before));
    for (std::int64_t j = 0; j < m.cols; ++j) {
        StateVec v{{j, LaurentPoly::one()}};
        StateVec w = apply_layer(v, g, before, N);
        m.col[j].assign(w.begin(), w.end());
    }
    return m;
}

WebMatrix web_matrix(const SlicedWeb& w, int N) {
    std::int64_t dim_bot = state_dim(N, w.bottom);
    Profile final_profile = w.top();  // validates
    WebMatrix m = WebMatrix::zero(state_dim(N, final_profile), dim_bot);
    for (std::int64_t j = 0; j < dim_bot; ++j) {
        StateVec v{{j, LaurentPoly::one()}};
        Profile p = w.bottom;
        for (const auto& g : w.gens) {
            v = apply_layer(v, g, p, N);
            p = apply_gen(p, g);
        }
        m.col[j].assign(v.begin(), v.end());
    }
    return m;
}

LaurentPoly moy_eval(const SlicedWeb& w, int N) {
    if (!w.bottom.empty()) throw std::invalid_argument("moy_eval: web is not closed (bottom)");
    StateVec v{{0, LaurentPoly::one()}};
    Profile p = w.bottom;
    for (const auto& g : w.gens) {
        v = apply_layer(v, g, p, N);
        p = apply_gen(p, g);
    }
    if (!p.empty()) throw std::invalid_argument("moy_eval: web is not closed (top)");
    if (v.empty()) return LaurentPoly::zero();
    return v[0].second;
}

namespace {

int checked_rank(int N) {
    if (N < 1 || N > 24) throw std::domain_error("gauge: rank out of supported range 1..24");
    return N;
}

}  // namespace

GaugeConfig GaugeConfig::gl(int N) {
    return GaugeConfig{checked_rank(N), Kind::Gl, LaurentPoly::one()};
}

GaugeConfig GaugeConfig::sl(int N) {
    return GaugeConfig{checked_rank(N), Kind::Sl, LaurentPoly::monomial(-1, 1, N)};
}

GaugeConfig GaugeConfig::custom(int N, const LaurentPoly& c) {
    if (!c.is_monomial()) throw std::invalid_argument("gauge: c must be a unit (monomial)");
    return GaugeConfig{checked_rank(N), Kind::Custom, c};
}

LaurentPoly GaugeConfig::c_pow(std::int64_t e) const { return c.pow(e); }

std::string GaugeConfig::name() const {
    switch (kind) {
        case Kind::Gl: return "gl";
        case Kind::Sl: return "sl";
        case Kind::Custom: return "custom(c=" + c.str() + ")";
    }
    return "?";
}

namespace {

LaurentPoly minus_q_pow(int e) {
    // (-q)^e
    bool odd = ((e % 2) + 2) % 2 == 1;
    return LaurentPoly::monomial(odd ? -1 : 1, e);
}

LaurentPoly minus_qinv_pow(int e) {
    bool odd = ((e % 2) + 2) % 2 == 1;
    return LaurentPoly::monomial(odd ? -1 : 1, -e);
}

// Ladder web of the k-th expansion term for a crossing on (a up)(b up).
std::vector<WebGen> ladder_snippet(int a, int b, int k, int pos) {
    std::vector<WebGen> gens;
    if (a >= b) {
        // rung k right-to-left, then rung a-b+k left-to-right
        if (k > 0 && b - k > 0) gens.push_back(WebGen::split(k, b - k, pos + 1));
        if (k > 0) gens.push_back(WebGen::merge(a, k, pos));
        int m = a - b + k;
        if (m > 0) {
            gens.push_back(WebGen::split(b, m, pos));
            if (b - k > 0) gens.push_back(WebGen::merge(m, b - k, pos + 1));
        }
    } else {
        // rung k left-to-right, then rung b-a+k right-to-left
        if (k > 0 && a - k > 0) gens.push_back(WebGen::split(a - k, k, pos));
        if (k > 0) gens.push_back(WebGen::merge(k, b, pos + (a - k > 0 ? 1 : 0)));
        int m = b - a + k;
        if (a - k > 0) {
            gens.push_back(WebGen::split(m, a, pos + 1));
            gens.push_back(WebGen::merge(a - k, m, pos));
        } else {
            gens.push_back(WebGen::split(b, a, pos));
        }
    }
    return gens;
}

struct ExpansionTerm {
    LaurentPoly coeff;
    std::vector<WebGen> gens;
};

std::vector<ExpansionTerm> expand_crossing(int a, int b, int sign, const GaugeConfig& cfg,
                                           int pos) {
    std::vector<ExpansionTerm> terms;
    int kmax = std::min(a, b);
    for (int k = 0; k <= kmax; ++k) {
        LaurentPoly coeff;
        if (sign > 0)
            coeff = cfg.c_pow(static_cast<std::int64_t>(a) * b) * minus_q_pow(k - kmax);
        else
            coeff = cfg.c_pow(-static_cast<std::int64_t>(a) * b) * minus_qinv_pow(k - kmax);
        terms.push_back({coeff, ladder_snippet(a, b, k, pos)});
    }
    return terms;
}

}  // namespace

WebLinearCombo crossing_expansion(int a, int b, int sign, const GaugeConfig& cfg) {
    if (a < 1 || b < 1 || a > cfg.N || b > cfg.N)
        throw std::domain_error("crossing_expansion: labels out of range");
    WebLinearCombo combo;
    for (auto& t : expand_crossing(a, b, sign, cfg, 0)) {
        SlicedWeb w;
        w.rank = cfg.N;
        w.bottom = {EdgeEnd{a, true}, EdgeEnd{b, true}};
        w.gens = std::move(t.gens);
        combo.push_back({t.coeff, std::move(w)});
    }
    return combo;
}

namespace {

// Braid-with-colors presentation extracted from a diagram.
struct BraidPresentation {
    BraidWord word;
    std::vector<int> strand_colors;  // color at each bottom position
};

BraidPresentation pd_to_braid(const LinkDiagram& d);

BraidPresentation braid_presentation(const LinkDiagram& d) {
    if (d.braid()) {
        BraidPresentation p;
        p.word = *d.braid();
        p.strand_colors.resize(p.word.strands, 1);
        for (int pos = 0; pos < p.word.strands; ++pos)
            p.strand_colors[pos] = d.color(d.component_of_position(pos));
        return p;
    }
    return pd_to_braid(d);
}

// Seifert-circle braid recovery for PD-born diagrams.
BraidPresentation pd_to_braid(const LinkDiagram& d) {
    const auto& xs = d.crossings();
    const int m = d.num_arcs();
    // Seifert circles via the oriented smoothing
    std::vector<int> parent(m);
    for (int i = 0; i < m; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& x : xs) {
        auto [p1, p2] = x.oriented_pairs();
        parent[find(p1.first)] = find(p1.second);
        parent[find(p2.first)] = find(p2.second);
    }
    std::map<int, int> circle_id;  // representative -> dense id
    for (int a = 0; a < m; ++a) circle_id.emplace(find(a), 0);
    {
        int next = 0;
        for (auto& [rep, id] : circle_id) id = next++;
    }
    const int nc = static_cast<int>(circle_id.size());
    auto circle_of = [&](int arc) { return circle_id.at(find(arc)); };

    // adjacency between circles through crossings
    std::vector<std::pair<int, int>> cross_circles(xs.size());
    std::vector<std::vector<int>> adj(nc);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        auto [p1, p2] = xs[k].oriented_pairs();
        int c1 = circle_of(p1.first), c2 = circle_of(p2.first);
        if (c1 == c2)
            throw UnsliceableError("pd slicing: crossing joins a Seifert circle to itself");
        cross_circles[k] = {c1, c2};
        adj[c1].push_back(c2);
        adj[c2].push_back(c1);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    // isolated circles (free loops) go to trailing columns
    std::vector<int> active, isolated;
    for (int c = 0; c < nc; ++c) (adj[c].empty() ? isolated : active).push_back(c);

    // the active circles must form a simple path
    std::vector<int> column_of(nc, -1);
    std::vector<int> path;
    if (!active.empty()) {
        std::vector<int> ends;
        for (int c : active)
            if (adj[c].size() == 1) ends.push_back(c);
        if (xs.empty() || (active.size() == 1)) {
            path = active;
        } else {
            if (ends.size() != 2)
                throw UnsliceableError("pd slicing: Seifert circles do not form a path");
            // deterministic end: circle containing the smallest arc
            std::vector<int> min_arc(nc, m);
            for (int a = 0; a < m; ++a) min_arc[circle_of(a)] = std::min(min_arc[circle_of(a)], a);
            int start = (min_arc[ends[0]] <= min_arc[ends[1]]) ? ends[0] : ends[1];
            int prev = -1, cur = start;
            while (true) {
                path.push_back(cur);
                if (adj[cur].size() > 2)
                    throw UnsliceableError("pd slicing: Seifert circles do not form a path");
                int next = -1;
                for (int nb : adj[cur])
                    if (nb != prev) next = nb;
                if (next == -1) break;
                prev = cur;
                cur = next;
            }
            if (path.size() != active.size())
                throw UnsliceableError("pd slicing: Seifert circles do not form a path");
        }
    }
    if (path.size() > 3)
        throw UnsliceableError(
            "pd slicing: more than three Seifert columns; supply a braid presentation instead");
    for (std::size_t i = 0; i < path.size(); ++i) column_of[path[i]] = static_cast<int>(i);

    // spine circle: meets every crossing (middle column when there are 3)
    int spine = -1;
    if (!path.empty()) spine = (path.size() == 3) ? path[1] : path[0];
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (cross_circles[k].first != spine && cross_circles[k].second != spine)
            throw UnsliceableError("pd slicing: crossing misses the spine circle");
    }

    // walk the spine circle through oriented smoothings, collecting crossings
    auto seifert_step = [&](int arc) -> std::pair<int, int> {
        // returns (next arc, crossing index) or crossing -1 for free loops
        for (std::size_t k = 0; k < xs.size(); ++k) {
            auto [p1, p2] = xs[k].oriented_pairs();
            if (p1.first == arc) return {p1.second, static_cast<int>(k)};
            if (p2.first == arc) return {p2.second, static_cast<int>(k)};
        }
        return {arc, -1};
    };
    std::vector<int> word_crossings;
    if (spine >= 0 && !xs.empty()) {
        int start_arc = -1;
        for (int a = 0; a < m; ++a)
            if (circle_of(a) == spine) {
                start_arc = a;
                break;
            }
        int arc = start_arc;
        do {
            auto [nxt, k] = seifert_step(arc);
            if (k >= 0) word_crossings.push_back(k);
            arc = nxt;
        } while (arc != start_arc);
        if (word_crossings.size() != xs.size())
            throw UnsliceableError("pd slicing: spine walk missed crossings");
    }

    BraidPresentation out;
    out.word.strands = static_cast<int>(path.size() + isolated.size());
    if (out.word.strands == 0) out.word.strands = 1;  // degenerate: no arcs at all
    for (int k : word_crossings) {
        int c1 = column_of[cross_circles[k].first];
        int c2 = column_of[cross_circles[k].second];
        int gen = std::min(c1, c2) + 1;
        if (std::abs(c1 - c2) != 1)
            throw UnsliceableError("pd slicing: crossing joins non-adjacent columns");
        out.word.letters.emplace_back(gen, xs[k].sign);
    }

    // bottom arc of each active column: the out-arc of its last crossing in
    // word order (for the spine, the walk started at its smallest arc)
    std::vector<int> bottom_arc(nc, -1);
    if (spine >= 0) {
        for (int a = 0; a < m; ++a)
            if (circle_of(a) == spine) {
                bottom_arc[spine] = a;
                break;
            }
    }
    for (int c : active) {
        if (c == spine) continue;
        // find the last crossing in word order touching circle c; its
        // smoothing out-arc on c's side is the arc crossing the cut line
        int found = -1;
        for (auto it = word_crossings.rbegin(); it != word_crossings.rend(); ++it) {
            if (cross_circles[*it].first == c || cross_circles[*it].second == c) {
                found = *it;
                break;
            }
        }
        if (found < 0) throw UnsliceableError("pd slicing: column without crossings");
        auto [p1, p2] = xs[found].oriented_pairs();
        bottom_arc[c] = (circle_of(p1.first) == c) ? p1.second : p2.second;
    }
    out.strand_colors.assign(out.word.strands, 1);
    for (std::size_t i = 0; i < path.size(); ++i)
        out.strand_colors[i] = d.color(d.component_of(bottom_arc[path[i]]));
    for (std::size_t i = 0; i < isolated.size(); ++i) {
        int arc = -1;
        for (int a = 0; a < m; ++a)
            if (circle_of(a) == isolated[i]) {
                arc = a;
                break;
            }
        out.strand_colors[path.size() + i] = d.color(d.component_of(arc));
    }
    return out;
}

SlicedWeb sliced_from_presentation(const BraidPresentation& p) {
    SlicedWeb w;
    const int n = p.word.strands;
    std::vector<int> col = p.strand_colors;
    for (int pos = 0; pos < n; ++pos) w.gens.push_back(WebGen::cup(col[pos], pos));
    for (const auto& [i, s] : p.word.letters) {
        w.gens.push_back(WebGen::cross(s, i - 1));
        std::swap(col[i - 1], col[i]);
    }
    for (int pos = n - 1; pos >= 0; --pos) w.gens.push_back(WebGen::cap(col[pos], pos));
    int maxc = 1;
    for (int c : p.strand_colors) maxc = std::max(maxc, c);
    w.rank = maxc;
    return w;
}

}  // namespace

SlicedWeb slice_diagram(const LinkDiagram& d) {
    return sliced_from_presentation(braid_presentation(d));
}

namespace {

struct CrossingSite {
    std::size_t gen_index;
    int a, b, sign, pos;
};

std::vector<CrossingSite> crossing_sites(const SlicedWeb& w) {
    std::vector<CrossingSite> sites;
    Profile p = w.bottom;
    for (std::size_t i = 0; i < w.gens.size(); ++i) {
        const WebGen& g = w.gens[i];
        if (g.kind == WebGenKind::CrossPos || g.kind == WebGenKind::CrossNeg) {
            sites.push_back({i, p[g.pos].label, p[g.pos + 1].label,
                             g.kind == WebGenKind::CrossPos ? +1 : -1, g.pos});
        }
        p = apply_gen(p, g);
    }
    return sites;
}

}  // namespace

LaurentPoly rt_invariant(const LinkDiagram& d, const GaugeConfig& cfg, int threads) {
    for (int comp = 0; comp < d.num_components(); ++comp) {
        if (d.color(comp) < 1 || d.color(comp) > cfg.N)
            throw std::domain_error("rt_invariant: component color out of range 1..N");
    }
    SlicedWeb sliced = slice_diagram(d);
    auto sites = crossing_sites(sliced);

    // per-crossing expansion terms
    std::vector<std::vector<ExpansionTerm>> expansions;
    for (const auto& s : sites)
        expansions.push_back(expand_crossing(s.a, s.b, s.sign, cfg, s.pos));

    std::int64_t total = 1;
    for (const auto& e : expansions) total *= static_cast<std::int64_t>(e.size());

    auto eval_combo = [&](std::int64_t combo) {
        SlicedWeb term;
        term.rank = cfg.N;
        LaurentPoly coeff = LaurentPoly::one();
        std::int64_t rest = combo;
        std::vector<int> choice(sites.size());
        for (std::size_t j = 0; j < sites.size(); ++j) {
            choice[j] = static_cast<int>(rest % expansions[j].size());
            rest /= static_cast<std::int64_t>(expansions[j].size());
            coeff *= expansions[j][choice[j]].coeff;
        }
        std::size_t site_at = 0;
        for (std::size_t i = 0; i < sliced.gens.size(); ++i) {
            if (site_at < sites.size() && sites[site_at].gen_index == i) {
                const auto& snippet = expansions[site_at][choice[site_at]].gens;
                term.gens.insert(term.gens.end(), snippet.begin(), snippet.end());
                ++site_at;
            } else {
                term.gens.push_back(sliced.gens[i]);
            }
        }
        return coeff * moy_eval(term, cfg.N);
    };

    int nthreads = std::max(1, threads);
    if (nthreads == 1 || total < 8) {
        LaurentPoly sum;
        for (std::int64_t t = 0; t < total; ++t) sum += eval_combo(t);
        return sum;
    }
    std::vector<LaurentPoly> partial(nthreads);
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            LaurentPoly local;
            for (std::int64_t i = t; i < total; i += nthreads) local += eval_combo(i);
            partial[t] = std::move(local);
        });
    }
    for (auto& th : pool) th.join();
    LaurentPoly sum;
    for (const auto& p : partial) sum += p;  // exact addition: order-independent
    return sum;
}

WebMatrix crossing_matrix(int sign, const GaugeConfig& cfg) {
    WebLinearCombo combo = crossing_expansion(1, 1, sign, cfg);
    WebMatrix acc = WebMatrix::zero(state_dim(cfg.N, combo[0].web.bottom),
                                    state_dim(cfg.N, combo[0].web.bottom));
    for (const auto& [coeff, w] : combo) acc = acc + web_matrix(w, cfg.N).scaled(coeff);
    return acc;
}

CheckReport skein_check(const GaugeConfig& cfg, int trials, unsigned seed) {
    CheckReport rep;
    const LaurentPoly twist = LaurentPoly::q(1) - LaurentPoly::q(-1);

    // operator identity (sigma - c q)(sigma + c q^{-1}) = 0, and R2 on matrices
    WebMatrix sigma = crossing_matrix(+1, cfg);
    WebMatrix sigma_inv = crossing_matrix(-1, cfg);
    std::int64_t dim = sigma.rows;
    WebMatrix f1 = sigma - WebMatrix::identity(dim).scaled(cfg.c * LaurentPoly::q(1));
    WebMatrix f2 = sigma + WebMatrix::identity(dim).scaled(cfg.c * LaurentPoly::q(-1));
    if (!(f1 * f2).is_zero()) {
        rep.pass = false;
        rep.detail += "operator identity (sigma - cq)(sigma + cq^-1) = 0 failed; ";
    }
    if (!(sigma * sigma_inv).is_identity()) {
        rep.pass = false;
        rep.detail += "sigma * sigma^{-1} != id; ";
    }

    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick_strands(2, 3), pick_len(0, 4), pick_sign(0, 1);
    for (int t = 0; t < trials; ++t) {
        BraidWord w;
        w.strands = pick_strands(rng);
        int len = pick_len(rng);
        std::uniform_int_distribution<int> pick_gen(1, w.strands - 1);
        for (int j = 0; j < len; ++j)
            w.letters.emplace_back(pick_gen(rng), pick_sign(rng) ? 1 : -1);
        std::uniform_int_distribution<int> pick_pos(0, static_cast<int>(w.letters.size()));
        int pos = pick_pos(rng);
        int gen = pick_gen(rng);

        BraidWord wp = w, wm = w;
        wp.letters.insert(wp.letters.begin() + pos, {gen, +1});
        wm.letters.insert(wm.letters.begin() + pos, {gen, -1});

        LaurentPoly v0 = rt_invariant(braid_closure(w), cfg);
        LaurentPoly vp = rt_invariant(braid_closure(wp), cfg);
        LaurentPoly vm = rt_invariant(braid_closure(wm), cfg);
        LaurentPoly lhs = vp * cfg.c_pow(-1) - vm * cfg.c_pow(1);
        LaurentPoly rhs = twist * v0;
        if (lhs != rhs) {
            rep.pass = false;
            std::ostringstream os;
            os << "skein failed on braid (strands=" << w.strands << " len=" << len
               << " insert s" << gen << " at " << pos << "); ";
            rep.detail += os.str();
        }
    }
    if (rep.pass) {
        std::ostringstream os;
        os << "operator identity and " << trials << " randomized closures verified (N=" << cfg.N
           << ", gauge " << cfg.name() << ")";
        rep.detail = os.str();
    }
    return rep;
}

LaurentPoly det_slide_ratio(int N, int b, const LaurentPoly& c) {
    if (b < 1 || b > N) throw std::domain_error("det_slide_ratio: need 1 <= b <= N");
    GaugeConfig cfg = GaugeConfig::custom(N, c);
    BraidWord hopf;
    hopf.strands = 2;
    hopf.letters = {{1, 1}, {1, 1}};
    BraidWord r2;
    r2.strands = 2;
    r2.letters = {{1, 1}, {1, -1}};
    LaurentPoly vpos = rt_invariant(braid_closure(hopf, {N, b}), cfg);
    LaurentPoly vneg = rt_invariant(braid_closure(r2, {N, b}), cfg);
    return vpos.divide_exact(vneg);
}

LaurentPoly framing_factor(int k, const GaugeConfig& cfg) {
    if (k < 1 || k > cfg.N) throw std::domain_error("framing_factor: need 1 <= k <= N");
    BraidWord curl;
    curl.strands = 2;
    curl.letters = {{1, 1}};
    BraidWord triv;
    triv.strands = 1;
    LaurentPoly curled = rt_invariant(braid_closure(curl, {k}), cfg);
    LaurentPoly flat = rt_invariant(braid_closure(triv, {k}), cfg);
    return curled.divide_exact(flat);
}

std::string SlicedWeb::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& g : gens) {
        if (!first) os << "; ";
        first = false;
        switch (g.kind) {
            case WebGenKind::Identity: os << "id(" << g.x << ")"; break;
            case WebGenKind::Merge: os << "merge(" << g.x << "," << g.y << ")"; break;
            case WebGenKind::Split: os << "split(" << g.x << "," << g.y << ")"; break;
            case WebGenKind::Cup: os << "cup(" << g.x << ")"; break;
            case WebGenKind::CupRev: os << "cupr(" << g.x << ")"; break;
            case WebGenKind::Cap: os << "cap(" << g.x << ")"; break;
            case WebGenKind::CapRev: os << "capr(" << g.x << ")"; break;
            case WebGenKind::CrossPos: os << "pos()"; break;
            case WebGenKind::CrossNeg: os << "neg()"; break;
        }
        if (g.pos != 0) os << "@" << g.pos;
    }
    return os.str();
}

SlicedWeb SlicedWeb::parse(const std::string& text, int rank) {
    SlicedWeb w;
    w.rank = rank;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ';')) {
        // trim
        std::size_t b = piece.find_first_not_of(" \t\n");
        if (b == std::string::npos) continue;
        std::size_t e = piece.find_last_not_of(" \t\n");
        piece = piece.substr(b, e - b + 1);
        int pos = 0;
        std::size_t at = piece.find('@');
        if (at != std::string::npos) {
            pos = std::stoi(piece.substr(at + 1));
            piece = piece.substr(0, at);
        }
        std::size_t lp = piece.find('('), rp = piece.rfind(')');
        if (lp == std::string::npos || rp == std::string::npos || rp < lp)
            throw std::invalid_argument("web: bad generator '" + piece + "'");
        std::string name = piece.substr(0, lp);
        std::string args = piece.substr(lp + 1, rp - lp - 1);
        std::vector<int> nums;
        std::stringstream as(args);
        std::string n;
        while (std::getline(as, n, ','))
            if (!n.empty()) nums.push_back(std::stoi(n));
        auto one = [&]() {
            if (nums.size() != 1) throw std::invalid_argument("web: expected one label");
            return nums[0];
        };
        auto two = [&]() {
            if (nums.size() != 2) throw std::invalid_argument("web: expected two labels");
            return std::make_pair(nums[0], nums[1]);
        };
        if (name == "id") {
            w.gens.push_back(WebGen::identity(one(), pos));
        } else if (name == "cup") {
            w.gens.push_back(WebGen::cup(one(), pos));
        } else if (name == "cupr") {
            w.gens.push_back(WebGen::cupr(one(), pos));
        } else if (name == "cap") {
            w.gens.push_back(WebGen::cap(one(), pos));
        } else if (name == "capr") {
            w.gens.push_back(WebGen::capr(one(), pos));
        } else if (name == "merge") {
            auto [x, y] = two();
            w.gens.push_back(WebGen::merge(x, y, pos));
        } else if (name == "split") {
            auto [x, y] = two();
            w.gens.push_back(WebGen::split(x, y, pos));
        } else if (name == "pos") {
            w.gens.push_back(WebGen::cross(+1, pos));
        } else if (name == "neg") {
            w.gens.push_back(WebGen::cross(-1, pos));
        } else {
            throw std::invalid_argument("web: unknown generator '" + name + "'");
        }
    }
    return w;
}

}  // namespace glink
