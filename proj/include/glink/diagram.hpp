#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace glink {

/// Braid word on a fixed number of strands; letters are (generator index,
/// sign) with 1 <= index < strands.
struct BraidWord {
    int strands = 1;
    std::vector<std::pair<int, int>> letters;  // (i, +1/-1)

    int writhe() const;
    /// Underlying permutation (one-line, 1-based): strand starting at
    /// position p ends at position perm[p-1].
    std::vector<int> permutation() const;
    BraidWord inverse_mirror() const;  // all letter signs flipped
};

/// Parses the .braid grammar: "strands=N; [colors=c1,c2,...;] s1 s2^-1 ...".
BraidWord parse_braid(const std::string& text);
/// Optional per-component colors from the colors= header (component order).
std::vector<int> parse_braid_colors(const std::string& text);

/// One crossing, PD-style: ports (a, b, c, d) are arc ids listed
/// counterclockwise starting from the incoming under-arc a.  The under
/// strand runs a -> c; the over strand runs d -> b at a positive crossing
/// and b -> d at a negative one.
struct Crossing {
    int a, b, c, d;
    int sign;  // +1 right-handed, -1 left-handed

    int under_in() const { return a; }
    int under_out() const { return c; }
    int over_in() const { return sign > 0 ? d : b; }
    int over_out() const { return sign > 0 ? b : d; }

    /// The two arc pairings of the orientation-respecting smoothing, each
    /// ordered (in-arc, out-arc).
    std::pair<std::pair<int, int>, std::pair<int, int>> oriented_pairs() const {
        if (sign > 0) return {{a, b}, {d, c}};
        return {{a, d}, {b, c}};
    }
    /// The other planar smoothing (turnback / dumbbell side).
    std::pair<std::pair<int, int>, std::pair<int, int>> turnback_pairs() const {
        if (sign > 0) return {{a, d}, {b, c}};
        return {{a, b}, {c, d}};
    }
};

/// Marked point on an arc; offset orders base points along the arc.
struct BasePoint {
    int arc = 0;
    int offset = 0;
};

/// Oriented link diagram with dense arc ids, traversal-ordered components,
/// and per-component colors (default 1).
class LinkDiagram {
public:
    LinkDiagram() = default;

    int num_arcs() const { return num_arcs_; }
    int num_components() const { return static_cast<int>(components_.size()); }
    int num_crossings() const { return static_cast<int>(crossings_.size()); }
    const std::vector<Crossing>& crossings() const { return crossings_; }
    /// Arcs of one component in traversal order, starting at its smallest arc.
    const std::vector<std::vector<int>>& components() const { return components_; }
    int component_of(int arc) const;
    int color(int component) const;
    void set_color(int component, int c);
    void set_all_colors(int c);
    int writhe() const;

    /// Arc following `arc` along the orientation, with the crossing passed
    /// through; `under` reports whether the passage went under.
    int next_arc(int arc, bool* under = nullptr, int* crossing = nullptr) const;

    const std::optional<BraidWord>& braid() const { return braid_; }
    /// For braid-built diagrams: component of the strand at a bottom position.
    int component_of_position(int pos) const;

    /// Flips every crossing (over <-> under); writhe negates.
    LinkDiagram mirror() const;

    /// Canonical JSON serialization (stable across parse/serialize cycles).
    std::string to_pd_json() const;

    static LinkDiagram from_braid_closure(const BraidWord& b,
                                          const std::vector<int>& colors = {});
    static LinkDiagram from_pd_json(const std::string& text);

private:
    void finalize_components();
    std::vector<int> canonicalize();  // returns old arc id -> new arc id

    int num_arcs_ = 0;
    std::vector<Crossing> crossings_;
    std::vector<std::vector<int>> components_;
    std::vector<int> component_of_;
    std::map<int, int> colors_;
    std::optional<BraidWord> braid_;
    std::vector<int> braid_position_component_;
};

/// Trace closure of a braid word.
LinkDiagram braid_closure(const BraidWord& b, const std::vector<int>& colors = {});

/// Reads a .braid or .pd file by extension.
LinkDiagram load_diagram(const std::string& path);

}  // namespace glink
