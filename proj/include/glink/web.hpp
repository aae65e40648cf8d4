#pragma once

#include "glink/diagram.hpp"
#include "glink/laurent.hpp"

#include <string>
#include <vector>

namespace glink {

/// One boundary point of a sliced web: edge label and direction of travel
/// (up = toward the top of the slice).
struct EdgeEnd {
    int label = 1;
    bool up = true;
    friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};
using Profile = std::vector<EdgeEnd>;

enum class WebGenKind {
    Identity,  // id on one edge (validation only)
    Merge,     // (x up)(y up) -> (x+y up)
    Split,     // (x+y up) -> (x up)(y up)
    Cup,       // () -> (k up)(k down)
    CupRev,    // () -> (k down)(k up)
    Cap,       // (k up)(k down) -> ()
    CapRev,    // (k down)(k up) -> ()
    CrossPos,  // (a up)(b up) -> (b up)(a up), left strand over
    CrossNeg,  // same, left strand under
};

struct WebGen {
    WebGenKind kind;
    int pos = 0;
    int x = 0, y = 0;  // labels; Merge/Split use both, Cup/Cap/Identity use x

    static WebGen identity(int x, int pos) { return {WebGenKind::Identity, pos, x, 0}; }
    static WebGen merge(int x, int y, int pos) { return {WebGenKind::Merge, pos, x, y}; }
    static WebGen split(int x, int y, int pos) { return {WebGenKind::Split, pos, x, y}; }
    static WebGen cup(int k, int pos) { return {WebGenKind::Cup, pos, k, 0}; }
    static WebGen cupr(int k, int pos) { return {WebGenKind::CupRev, pos, k, 0}; }
    static WebGen cap(int k, int pos) { return {WebGenKind::Cap, pos, k, 0}; }
    static WebGen capr(int k, int pos) { return {WebGenKind::CapRev, pos, k, 0}; }
    static WebGen cross(int sign, int pos) {
        return {sign > 0 ? WebGenKind::CrossPos : WebGenKind::CrossNeg, pos, 0, 0};
    }
};

/// A sliced web: a bottom profile and a word of elementary layers.
/// Crossing layers are placeholders; evaluation requires expanding them.
struct SlicedWeb {
    int rank = 2;  // default rank for text parsing and standalone evaluation
    Profile bottom;
    std::vector<WebGen> gens;

    /// Applies profile transitions, validating as it goes.
    Profile top() const;
    bool closed() const { return bottom.empty() && top().empty(); }
    bool has_crossings() const;

    std::string str() const;
    static SlicedWeb parse(const std::string& text, int rank);
};

/// Profile transition of a single generator (throws on mismatch).
Profile apply_gen(const Profile& before, const WebGen& g);

struct GaugeConfig {
    int N = 2;
    enum class Kind { Gl, Sl, Custom } kind = Kind::Gl;
    LaurentPoly c = LaurentPoly::one();

    static GaugeConfig gl(int N);
    /// c = -q^{1/N}; exponent denominator N.
    static GaugeConfig sl(int N);
    /// c must be a monomial (unit).
    static GaugeConfig custom(int N, const LaurentPoly& c);
    LaurentPoly c_pow(std::int64_t e) const;
    std::string name() const;
};

/// Sparse matrix over Laurent polynomials, column-major.
struct WebMatrix {
    std::int64_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::int64_t, LaurentPoly>>> col;

    static WebMatrix identity(std::int64_t n);
    static WebMatrix zero(std::int64_t r, std::int64_t c);
    friend WebMatrix operator*(const WebMatrix& a, const WebMatrix& b);
    friend WebMatrix operator+(const WebMatrix& a, const WebMatrix& b);
    friend WebMatrix operator-(const WebMatrix& a, const WebMatrix& b);
    WebMatrix scaled(const LaurentPoly& f) const;
    bool is_zero() const;
    bool is_identity() const;
};

/// Dimension of the state space of a profile: product of binom(N, label).
std::int64_t state_dim(int N, const Profile& p);

/// Explicit matrix of one elementary layer on the given bottom profile.
WebMatrix eval_layer(const WebGen& g, const Profile& before, int N);

/// Matrix of a whole crossing-free layer word on its bottom profile.
WebMatrix web_matrix(const SlicedWeb& w, int N);

/// Exact MOY evaluation of a closed crossing-free web.
LaurentPoly moy_eval(const SlicedWeb& w, int N);

struct WebTerm {
    LaurentPoly coeff;
    SlicedWeb web;
};
using WebLinearCombo = std::vector<WebTerm>;

/// Ladder expansion of a colored crossing on bottom profile (a up)(b up).
WebLinearCombo crossing_expansion(int a, int b, int sign, const GaugeConfig& cfg);

/// Thrown when a diagram admits no consistent sliced presentation.
struct UnsliceableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic sliced presentation of a diagram (braid closures directly;
/// PD codes through Seifert-circle braid recovery).
SlicedWeb slice_diagram(const LinkDiagram& d);

/// Reshetikhin-Turaev invariant: expand all crossings, evaluate all closed
/// webs, and sum.  Deterministic for any thread count.
LaurentPoly rt_invariant(const LinkDiagram& d, const GaugeConfig& cfg, int threads = 1);

/// Crossing matrix on (1 up)(1 up) after expansion; used for operator checks.
WebMatrix crossing_matrix(int sign, const GaugeConfig& cfg);

struct CheckReport {
    bool pass = true;
    std::string detail;
};

/// Randomized verification of c^{-1} X+ - c X- = (q - q^{-1}) id on braid
/// closures, plus the operator identity (sigma - cq)(sigma + cq^{-1}) = 0.
CheckReport skein_check(const GaugeConfig& cfg, int trials, unsigned seed = 1);

/// Ratio of the det-slide diagram evaluated with positive vs negative
/// crossing; equals c^{2Nb} (-q)^{-2b}.
LaurentPoly det_slide_ratio(int N, int b, const LaurentPoly& c);

/// Measured positive-curl factor on a k-colored unknot.
LaurentPoly framing_factor(int k, const GaugeConfig& cfg);

}  // namespace glink
