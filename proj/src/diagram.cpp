#include "glink/diagram.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace glink {

int BraidWord::writhe() const {
    int w = 0;
    for (const auto& [i, s] : letters) w += s;
    return w;
}

std::vector<int> BraidWord::permutation() const {
    std::vector<int> pos(strands);
    std::iota(pos.begin(), pos.end(), 1);  // pos[p] = strand currently at position p+1
    for (const auto& [i, s] : letters) std::swap(pos[i - 1], pos[i]);
    // strand starting at position p ends where it sits at the top
    std::vector<int> perm(strands);
    for (int p = 0; p < strands; ++p) perm[pos[p] - 1] = p + 1;
    return perm;
}

BraidWord BraidWord::inverse_mirror() const {
    BraidWord out = *this;
    for (auto& [i, s] : out.letters) s = -s;
    return out;
}

namespace {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> toks;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ';') {
            if (!cur.empty()) {
                toks.push_back(cur);
                cur.clear();
            }
            if (c == ';') toks.push_back(";");
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) toks.push_back(cur);
    return toks;
}

}  // namespace

BraidWord parse_braid(const std::string& text) {
    auto toks = tokenize(text);
    std::size_t i = 0;
    BraidWord b;
    bool have_strands = false;
    while (i < toks.size()) {
        const std::string& t = toks[i];
        if (t == ";") {
            ++i;
            continue;
        }
        if (t.rfind("strands=", 0) == 0) {
            b.strands = std::stoi(t.substr(8));
            if (b.strands < 1) throw std::invalid_argument("braid: strands must be >= 1");
            have_strands = true;
            ++i;
            continue;
        }
        if (t.rfind("colors=", 0) == 0) {
            ++i;  // handled by parse_braid_colors
            continue;
        }
        if (!have_strands) throw std::invalid_argument("braid: missing strands= header");
        if (t.size() < 2 || t[0] != 's')
            throw std::invalid_argument("braid: unknown token '" + t + "'");
        std::size_t caret = t.find('^');
        int sign = 1;
        std::string idx_s;
        if (caret == std::string::npos) {
            idx_s = t.substr(1);
        } else {
            idx_s = t.substr(1, caret - 1);
            std::string e = t.substr(caret + 1);
            if (e == "-1")
                sign = -1;
            else if (e == "1")
                sign = 1;
            else
                throw std::invalid_argument("braid: unknown token '" + t + "'");
        }
        int idx;
        try {
            idx = std::stoi(idx_s);
        } catch (...) {
            throw std::invalid_argument("braid: unknown token '" + t + "'");
        }
        if (idx < 1 || idx >= b.strands)
            throw std::invalid_argument("braid: generator index out of range in '" + t + "'");
        b.letters.emplace_back(idx, sign);
        ++i;
    }
    if (!have_strands) throw std::invalid_argument("braid: missing strands= header");
    return b;
}

std::vector<int> parse_braid_colors(const std::string& text) {
    for (const std::string& t : tokenize(text)) {
        if (t.rfind("colors=", 0) == 0) {
            std::vector<int> out;
            std::string body = t.substr(7);
            std::stringstream ss(body);
            std::string piece;
            while (std::getline(ss, piece, ',')) {
                if (piece.empty()) continue;
                out.push_back(std::stoi(piece));
            }
            return out;
        }
    }
    return {};
}

int LinkDiagram::component_of(int arc) const {
    if (arc < 0 || arc >= num_arcs_) throw std::out_of_range("arc id out of range");
    return component_of_[arc];
}

int LinkDiagram::color(int component) const {
    auto it = colors_.find(component);
    return it == colors_.end() ? 1 : it->second;
}

void LinkDiagram::set_color(int component, int c) {
    if (component < 0 || component >= num_components())
        throw std::out_of_range("component id out of range");
    colors_[component] = c;
}

void LinkDiagram::set_all_colors(int c) {
    for (int k = 0; k < num_components(); ++k) colors_[k] = c;
}

int LinkDiagram::writhe() const {
    int w = 0;
    for (const auto& x : crossings_) w += x.sign;
    return w;
}

int LinkDiagram::next_arc(int arc, bool* under, int* crossing) const {
    for (std::size_t k = 0; k < crossings_.size(); ++k) {
        const Crossing& x = crossings_[k];
        if (x.under_in() == arc) {
            if (under) *under = true;
            if (crossing) *crossing = static_cast<int>(k);
            return x.under_out();
        }
        if (x.over_in() == arc) {
            if (under) *under = false;
            if (crossing) *crossing = static_cast<int>(k);
            return x.over_out();
        }
    }
    // free loop
    if (under) *under = false;
    if (crossing) *crossing = -1;
    return arc;
}

void LinkDiagram::finalize_components() {
    components_.clear();
    component_of_.assign(num_arcs_, -1);
    for (int start = 0; start < num_arcs_; ++start) {
        if (component_of_[start] != -1) continue;
        int comp = static_cast<int>(components_.size());
        std::vector<int> arcs;
        int cur = start;
        do {
            if (component_of_[cur] != -1)
                throw std::invalid_argument("diagram: inconsistent orientation traversal");
            component_of_[cur] = comp;
            arcs.push_back(cur);
            cur = next_arc(cur);
        } while (cur != start);
        components_.push_back(std::move(arcs));
    }
}

int LinkDiagram::component_of_position(int pos) const {
    if (!braid_ || pos < 0 || pos >= static_cast<int>(braid_position_component_.size()))
        throw std::out_of_range("component_of_position: not a braid diagram or bad position");
    return braid_position_component_[pos];
}

std::vector<int> LinkDiagram::canonicalize() {
    finalize_components();
    // relabel arcs in traversal order, components by smallest arc id
    std::vector<int> order(components_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return *std::min_element(components_[x].begin(), components_[x].end()) <
               *std::min_element(components_[y].begin(), components_[y].end());
    });
    std::vector<int> new_id(num_arcs_, -1);
    int next = 0;
    std::vector<std::vector<int>> new_components;
    std::map<int, int> new_colors;
    for (int newc = 0; newc < static_cast<int>(order.size()); ++newc) {
        const auto& arcs = components_[order[newc]];
        // rotate to start at the smallest arc id
        std::size_t pos = std::min_element(arcs.begin(), arcs.end()) - arcs.begin();
        std::vector<int> rotated;
        for (std::size_t k = 0; k < arcs.size(); ++k)
            rotated.push_back(arcs[(pos + k) % arcs.size()]);
        std::vector<int> renum;
        for (int a : rotated) {
            new_id[a] = next;
            renum.push_back(next);
            ++next;
        }
        new_components.push_back(std::move(renum));
        auto it = colors_.find(order[newc]);
        if (it != colors_.end()) new_colors[newc] = it->second;
    }
    for (auto& x : crossings_) {
        x.a = new_id[x.a];
        x.b = new_id[x.b];
        x.c = new_id[x.c];
        x.d = new_id[x.d];
    }
    std::sort(crossings_.begin(), crossings_.end(), [](const Crossing& x, const Crossing& y) {
        return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
    });
    components_ = std::move(new_components);
    colors_ = std::move(new_colors);
    component_of_.assign(num_arcs_, -1);
    for (int c = 0; c < static_cast<int>(components_.size()); ++c)
        for (int a : components_[c]) component_of_[a] = c;
    return new_id;
}

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

}  // namespace

LinkDiagram LinkDiagram::from_braid_closure(const BraidWord& b, const std::vector<int>& colors) {
    const int n = b.strands;
    LinkDiagram d;
    int next_id = n;
    std::vector<int> cur(n);
    std::iota(cur.begin(), cur.end(), 0);
    for (const auto& [i, s] : b.letters) {
        int x = cur[i - 1], y = cur[i];
        int z = next_id++;
        int w = next_id++;
        if (s > 0)
            d.crossings_.push_back(Crossing{y, w, z, x, +1});
        else
            d.crossings_.push_back(Crossing{x, y, w, z, -1});
        cur[i - 1] = z;
        cur[i] = w;
    }
    // closure identifies top arc at each position with the bottom arc there
    UnionFind uf(next_id);
    for (int p = 0; p < n; ++p) uf.unite(cur[p], p);
    std::vector<int> rep(next_id, -1);
    int dense = 0;
    for (int a = 0; a < next_id; ++a)
        if (uf.find(a) == a) rep[a] = dense++;
    auto arc_of = [&](int a) { return rep[uf.find(a)]; };
    for (auto& x : d.crossings_) {
        x.a = arc_of(x.a);
        x.b = arc_of(x.b);
        x.c = arc_of(x.c);
        x.d = arc_of(x.d);
    }
    d.num_arcs_ = dense;
    d.finalize_components();
    if (!colors.empty()) {
        // colors listed per component, ordered by smallest starting position
        std::vector<int> perm = b.permutation();
        std::vector<bool> seen(n, false);
        int ci = 0;
        for (int p = 0; p < n; ++p) {
            if (seen[p]) continue;
            int q = p;
            do {
                seen[q] = true;
                q = perm[q] - 1;
            } while (q != p);
            if (ci >= static_cast<int>(colors.size()))
                throw std::invalid_argument("braid colors: fewer colors than components");
            d.colors_[d.component_of_[arc_of(p)]] = colors[ci++];
        }
        if (ci != static_cast<int>(colors.size()))
            throw std::invalid_argument("braid colors: more colors than components");
    }
    std::vector<int> bottom_arc(n);
    for (int p = 0; p < n; ++p) bottom_arc[p] = arc_of(p);
    std::vector<int> renum = d.canonicalize();
    d.braid_ = b;
    d.braid_position_component_.resize(n);
    for (int p = 0; p < n; ++p)
        d.braid_position_component_[p] = d.component_of_[renum[bottom_arc[p]]];
    return d;
}

LinkDiagram braid_closure(const BraidWord& b, const std::vector<int>& colors) {
    return LinkDiagram::from_braid_closure(b, colors);
}

LinkDiagram LinkDiagram::mirror() const {
    LinkDiagram d = *this;
    for (auto& x : d.crossings_) {
        // same planar ports, over/under exchanged: ccw list restarts at the
        // old over-in port
        Crossing y = x;
        if (x.sign > 0) {
            y.a = x.d;
            y.b = x.a;
            y.c = x.b;
            y.d = x.c;
            y.sign = -1;
        } else {
            y.a = x.b;
            y.b = x.c;
            y.c = x.d;
            y.d = x.a;
            y.sign = +1;
        }
        x = y;
    }
    if (d.braid_) d.braid_ = d.braid_->inverse_mirror();
    d.canonicalize();
    return d;
}

std::string LinkDiagram::to_pd_json() const {
    nlohmann::json j;
    j["crossings"] = nlohmann::json::array();
    for (const auto& x : crossings_) {
        j["crossings"].push_back({x.a, x.b, x.c, x.d});
    }
    j["orientations"] = components_;
    nlohmann::json cols = nlohmann::json::object();
    for (int c = 0; c < num_components(); ++c) cols[std::to_string(c)] = color(c);
    j["colors"] = cols;
    return j.dump() + "\n";
}

LinkDiagram LinkDiagram::from_pd_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("pd: invalid JSON: ") + e.what());
    }
    if (!j.contains("crossings") || !j.contains("orientations"))
        throw std::invalid_argument("pd: missing crossings/orientations");

    std::vector<std::array<int, 4>> raw;
    for (const auto& rec : j["crossings"]) {
        if (!rec.is_array() || rec.size() != 4)
            throw std::invalid_argument("pd: crossing record must have 4 arcs");
        raw.push_back({rec[0].get<int>(), rec[1].get<int>(), rec[2].get<int>(), rec[3].get<int>()});
    }
    std::vector<std::vector<int>> orient;
    for (const auto& comp : j["orientations"]) {
        std::vector<int> arcs;
        for (const auto& a : comp) arcs.push_back(a.get<int>());
        if (arcs.empty()) throw std::invalid_argument("pd: empty component");
        orient.push_back(std::move(arcs));
    }

    // arc ids may be arbitrary; map to dense 0..m-1 first
    std::map<int, int> arc_id;
    auto intern = [&](int a) {
        auto [it, fresh] = arc_id.emplace(a, static_cast<int>(arc_id.size()));
        return it->second;
    };
    for (auto& comp : orient)
        for (auto& a : comp) a = intern(a);
    std::vector<int> uses;
    for (auto& rec : raw)
        for (auto& a : rec) {
            auto it = arc_id.find(a);
            if (it == arc_id.end())
                throw std::invalid_argument("pd: crossing uses arc missing from orientations");
            a = it->second;
        }
    const int m = static_cast<int>(arc_id.size());
    uses.assign(m, 0);
    for (const auto& rec : raw)
        for (int a : rec) ++uses[a];
    std::vector<int> seen_in_orient(m, 0);
    for (const auto& comp : orient)
        for (int a : comp) ++seen_in_orient[a];
    for (int a = 0; a < m; ++a) {
        if (seen_in_orient[a] != 1)
            throw std::invalid_argument("pd: each arc must appear exactly once in orientations");
        if (uses[a] != 0 && uses[a] != 2)
            throw std::invalid_argument("pd: dangling arc (arc must bound exactly two ports)");
    }

    // successor of each arc along its oriented component
    std::vector<int> nxt(m, -1);
    for (const auto& comp : orient)
        for (std::size_t p = 0; p < comp.size(); ++p) nxt[comp[p]] = comp[(p + 1) % comp.size()];

    // Deduce signs.  Every arc is an in-port at exactly one crossing and an
    // out-port at exactly one; the under strand a -> c is pinned by the
    // record, the over direction follows by constraint propagation.
    std::vector<int> sign(raw.size(), 0);
    std::vector<int> in_used(m, 0), out_used(m, 0);
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const auto& r = raw[k];
        if (nxt[r[0]] != r[2])
            throw std::invalid_argument("pd: inconsistent orientation (under strand " +
                                        std::to_string(r[0]) + "->" + std::to_string(r[2]) + ")");
        if (in_used[r[0]]++ || out_used[r[2]]++)
            throw std::invalid_argument("pd: arc used twice as the same kind of port");
    }
    auto feasible_pos = [&](std::size_t k) {  // over d -> b
        return nxt[raw[k][3]] == raw[k][1] && !in_used[raw[k][3]] && !out_used[raw[k][1]];
    };
    auto feasible_neg = [&](std::size_t k) {  // over b -> d
        return nxt[raw[k][1]] == raw[k][3] && !in_used[raw[k][1]] && !out_used[raw[k][3]];
    };
    auto commit = [&](std::size_t k, int s) {
        sign[k] = s;
        int oin = s > 0 ? raw[k][3] : raw[k][1];
        int oout = s > 0 ? raw[k][1] : raw[k][3];
        in_used[oin] = 1;
        out_used[oout] = 1;
    };
    std::size_t undecided = raw.size();
    while (undecided > 0) {
        bool progress = false;
        for (std::size_t k = 0; k < raw.size(); ++k) {
            if (sign[k] != 0) continue;
            bool fp = feasible_pos(k), fn = feasible_neg(k);
            if (!fp && !fn)
                throw std::invalid_argument("pd: inconsistent orientation at crossing " +
                                            std::to_string(k));
            if (fp != fn) {
                commit(k, fp ? +1 : -1);
                --undecided;
                progress = true;
            }
        }
        if (progress) continue;
        // both directions locally feasible: take the first undecided crossing
        // positive and keep propagating
        for (std::size_t k = 0; k < raw.size(); ++k) {
            if (sign[k] == 0) {
                commit(k, +1);
                --undecided;
                break;
            }
        }
    }
    for (int a = 0; a < m; ++a) {
        if (uses[a] == 0) continue;
        if (!in_used[a] || !out_used[a])
            throw std::invalid_argument("pd: inconsistent orientation (arc " + std::to_string(a) +
                                        " unbalanced)");
    }

    LinkDiagram d;
    d.num_arcs_ = m;
    for (std::size_t k = 0; k < raw.size(); ++k)
        d.crossings_.push_back(Crossing{raw[k][0], raw[k][1], raw[k][2], raw[k][3], sign[k]});
    d.finalize_components();
    // components found by traversal must match the declared ones
    if (d.num_components() != static_cast<int>(orient.size()))
        throw std::invalid_argument("pd: component count mismatch");

    if (j.contains("colors")) {
        for (auto it = j["colors"].begin(); it != j["colors"].end(); ++it) {
            int comp = std::stoi(it.key());
            if (comp < 0 || comp >= d.num_components())
                throw std::invalid_argument("pd: color for unknown component");
            d.colors_[comp] = it.value().get<int>();
        }
    }
    d.canonicalize();
    return d;
}

LinkDiagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    if (path.size() >= 6 && path.substr(path.size() - 6) == ".braid") {
        BraidWord b = parse_braid(text);
        return braid_closure(b, parse_braid_colors(text));
    }
    if (path.size() >= 3 && path.substr(path.size() - 3) == ".pd")
        return LinkDiagram::from_pd_json(text);
    throw std::invalid_argument("unknown diagram file extension: " + path);
}

}  // namespace glink
