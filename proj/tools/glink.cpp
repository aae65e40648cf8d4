#include <CLI11.hpp>

#include "glink/cache.hpp"
#include "glink/corpus.hpp"
#include "glink/functorial.hpp"
#include "glink/homology.hpp"
#include "glink/verify.hpp"
#include "glink/web.hpp"

#include <iostream>
#include <sstream>

using namespace glink;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUnsupported = 3;

struct CommonOpts {
    int rank = 2;
    std::string gauge = "gl";
    std::string custom_c;
    std::string format = "text";
    int threads = 1;
    bool no_cache = false;
};

GaugeConfig make_gauge(const CommonOpts& o) {
    if (o.gauge == "gl") return GaugeConfig::gl(o.rank);
    if (o.gauge == "sl") return GaugeConfig::sl(o.rank);
    if (o.gauge == "custom") {
        if (o.custom_c.empty())
            throw std::invalid_argument("custom gauge requires --c <monomial>");
        return GaugeConfig::custom(o.rank, LaurentPoly::parse(o.custom_c));
    }
    throw std::invalid_argument("unknown gauge: " + o.gauge);
}

std::string poly_json(const LaurentPoly& p) {
    std::ostringstream os;
    os << "{\"terms\":{";
    bool first = true;
    LaurentPoly n = p.normalized();
    for (const auto& [e, c] : n.scaled_terms()) {
        if (!first) os << ",";
        first = false;
        std::int64_t g = std::gcd(e < 0 ? -e : e, n.denom());
        std::int64_t num = e, den = n.denom();
        if (g > 1) {
            num /= g;
            den /= g;
        }
        os << "\"" << num;
        if (den != 1) os << "/" << den;
        os << "\":\"" << rational_str(c) << "\"";
    }
    os << "}}";
    return os.str();
}

// deterministic payload describing a command for the cache key
std::string cache_payload(const std::string& cmd, const LinkDiagram& d,
                          const std::string& params) {
    return cmd + "\n" + d.to_pd_json() + params;
}

int with_cache(const std::string& payload, const CommonOpts& o,
               const std::function<std::string()>& compute) {
    ResultCache cache;
    std::string key = ResultCache::key_of(payload);
    if (!o.no_cache) {
        if (auto hit = cache.get(key)) {
            std::cout << *hit;
            return kExitOk;
        }
    }
    std::string out = compute();
    std::cout << out;
    if (!o.no_cache) cache.put(key, out);
    return kExitOk;
}

int run_invariant(const std::string& file, const CommonOpts& o) {
    LinkDiagram d = load_diagram(file);
    GaugeConfig cfg = make_gauge(o);
    std::ostringstream params;
    params << "\ninvariant rank=" << o.rank << " gauge=" << cfg.name()
           << " format=" << o.format << "\n";
    return with_cache(cache_payload("invariant", d, params.str()), o, [&]() {
        LaurentPoly v = rt_invariant(d, cfg, o.threads);
        if (o.format == "json") return poly_json(v) + "\n";
        if (o.format == "tsv") {
            std::ostringstream os;
            LaurentPoly n = v.normalized();
            for (const auto& [e, c] : n.scaled_terms()) {
                std::int64_t g = std::gcd(e < 0 ? -e : e, n.denom());
                std::int64_t num = e / (g ? g : 1), den = n.denom() / (g ? g : 1);
                os << num;
                if (den != 1) os << "/" << den;
                os << "\t" << rational_str(c) << "\n";
            }
            return os.str();
        }
        return v.str() + "\n";
    });
}

FrobeniusAlgebra algebra_from_opts(const std::string& deform, const std::string& sigma, int rank) {
    if (!sigma.empty())
        return FrobeniusAlgebra::from_polynomial(DeformationSpec::parse(sigma).polynomial());
    if (!deform.empty()) {
        std::string p = deform;
        if (p.rfind("P=", 0) == 0) p = p.substr(2);
        return FrobeniusAlgebra::from_polynomial(PolyQ::parse(p));
    }
    PolyQ xn = PolyQ::X().pow(rank);
    return FrobeniusAlgebra::from_polynomial(xn);
}

int run_homology(const std::string& file, const std::string& deform, const std::string& sigma,
                 const CommonOpts& o, bool rank_given) {
    LinkDiagram d = load_diagram(file);
    if (o.rank != 2 && deform.empty() && sigma.empty())
        throw UnsliceableError("chain-level homology is implemented for rank 2 only");
    FrobeniusAlgebra A = algebra_from_opts(deform, sigma, 2);
    if (rank_given && A.dim() != o.rank)
        throw std::invalid_argument("deformation degree " + std::to_string(A.dim()) +
                                    " does not match --rank " + std::to_string(o.rank));
    std::ostringstream params;
    params << "\nhomology P=" << A.polynomial().str() << " format=" << o.format << "\n";
    return with_cache(cache_payload("homology", d, params.str()), o, [&]() {
        ChainComplex C = cube_complex(d, A);
        HomologyTable t = homology_table(C, o.threads);
        std::ostringstream os;
        if (o.format == "tsv") {
            for (const auto& [k, v] : t.dims)
                os << k.first << "\t" << k.second << "\t" << v << "\n";
            return os.str();
        }
        os << t.to_json() << "\n";
        if (o.format != "json") os << "poincare: " << poincare(t).str() << "\n";
        return os.str();
    });
}

int run_split(const std::string& file, const std::string& sigma, const CommonOpts& o) {
    LinkDiagram d = load_diagram(file);
    DeformationSpec spec = DeformationSpec::parse(sigma);
    std::ostringstream params;
    params << "\nsplit sigma=" << spec.str() << " format=" << o.format << "\n";
    return with_cache(cache_payload("split", d, params.str()), o, [&]() {
        auto split = colored_splitting(d, spec, o.threads);
        std::ostringstream os;
        bool first = true;
        os << "{";
        for (const auto& [kappa, table] : split) {
            if (!first) os << ",";
            first = false;
            os << "\"";
            for (std::size_t i = 0; i < kappa.size(); ++i) {
                if (i) os << ",";
                os << rational_str(spec.roots[kappa[i]].first);
            }
            os << "\":" << table.total();
        }
        os << "}\n";
        return os.str();
    });
}

int run_dot(const std::string& file, int arc, const CommonOpts& o) {
    LinkDiagram d = load_diagram(file);
    FrobeniusAlgebra A = algebra_from_opts("", "", 2);
    ChainComplex C = cube_complex(d, A);
    ChainMap x = dot_map(C, BasePoint{arc, 0});
    bool chain_map = commutes_with_differential(C, x);
    std::cout << "dot at arc " << arc << ": chain map " << (chain_map ? "yes" : "NO")
              << ", bidegree (0,2)\n";
    HomologyTable t = homology_table(C, o.threads);
    std::cout << "homology " << t.to_json() << "\n";
    return chain_map ? kExitOk : kExitVerifyFail;
}

int run_verify_functoriality(const std::string& file) {
    LinkDiagram d = load_diagram(file);
    FrobeniusAlgebra A = algebra_from_opts("", "", 2);
    ChainComplex C = cube_complex(d, A);
    bool all = true;
    for (int c = 0; c < d.num_crossings(); ++c) {
        if (d.crossings()[c].sign < 0) {
            std::cout << "crossing " << c << ": negative, skipped (mirror first)\n";
            continue;
        }
        CommutatorReport rep = commutator_check(C, c);
        std::cout << "crossing " << c << ": " << (rep.pass ? "ok" : "FAIL") << " residual "
                  << (rep.pass ? "0" : rep.detail) << "\n";
        all = all && rep.pass;
    }
    return all ? kExitOk : kExitVerifyFail;
}

int run_verify(const std::string& suite, const CommonOpts& o, int n, unsigned seed) {
    // -n is the suite's size knob: strand count for hecke, trial count for
    // the randomized suites
    std::vector<SuiteResult> results;
    if (suite == "all")
        results = verify_all(o.threads);
    else if (suite == "hecke")
        results = verify_hecke(n > 0 ? std::min(n, 6) : 5);
    else if (suite == "moy")
        results = verify_moy(std::max(o.rank, 2));
    else if (suite == "skein")
        results = verify_skein(std::max(o.rank, 2), n > 0 ? n : 100, seed);
    else if (suite == "detslide")
        results = verify_detslide();
    else if (suite == "framing")
        results = verify_framing();
    else if (suite == "euler")
        results = verify_euler(o.threads);
    else if (suite == "lee")
        results = verify_lee(o.threads);
    else if (suite == "crt")
        results = verify_crt(n > 0 ? n : 20, seed);
    else if (suite == "branching")
        results = verify_branching();
    else if (suite == "commutator")
        results = verify_commutator();
    else if (suite == "basepoint")
        results = verify_basepoint();
    else
        throw std::invalid_argument("unknown verify suite: " + suite);

    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) std::cout << "  " << r.detail;
        std::cout << "\n";
        all = all && r.pass;
    }
    return all ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gl(N) link invariants, Khovanov-type homology, and relation verifiers"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts opts;
    app.add_option("--rank,-N", opts.rank, "rank N of gl(N)")->capture_default_str();
    app.add_option("--gauge", opts.gauge, "gl, sl, or custom")->capture_default_str();
    app.add_option("--c", opts.custom_c, "custom gauge unit, e.g. '-q^(1/2)'");
    app.add_option("--format", opts.format, "text or json")->capture_default_str();
    app.add_option("--threads", opts.threads, "worker thread count")->capture_default_str();
    app.add_flag("--no-cache", opts.no_cache, "bypass GLINK_CACHE");

    std::string file, deform, sigma, suite = "all";
    int arc = 0, trials = 0;
    unsigned seed = 1;
    bool all_flag = false;

    auto* inv = app.add_subcommand("invariant", "Reshetikhin-Turaev gl(N) invariant");
    inv->add_option("diagram", file, "diagram file (.braid or .pd)")->required();

    auto* hom = app.add_subcommand("homology", "Khovanov-type homology table");
    hom->add_option("diagram", file)->required();
    hom->add_option("--deform", deform, "deformation polynomial, e.g. \"P=X^2-1\"");
    hom->add_option("--sigma", sigma, "deformation roots, e.g. \"1,-1\" or \"0^2,1\"");

    auto* spl = app.add_subcommand("split", "per-coloring deformed homology dimensions");
    spl->add_option("diagram", file)->required();
    spl->add_option("--sigma", sigma, "deformation roots")->required();

    auto* dot = app.add_subcommand("dot", "dot (base point) action report");
    dot->add_option("diagram", file)->required();
    dot->add_option("--at", arc, "arc id of the base point")->capture_default_str();

    auto* ver = app.add_subcommand("verify", "run relation suites");
    ver->add_option("suite", suite,
                    "all, hecke, moy, skein, detslide, framing, euler, lee, crt, branching, "
                    "commutator, basepoint, functoriality")
        ->capture_default_str();
    ver->add_flag("--all", all_flag, "run every suite");
    ver->add_option("-n", trials, "suite size: strands (hecke) or trials (skein, crt)");
    ver->add_option("--seed", seed, "random seed")->capture_default_str();
    ver->add_option("--diagram", file, "diagram file (functoriality suite)");

    auto* conv = app.add_subcommand("convert", "print the canonical PD code of a diagram");
    conv->add_option("diagram", file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (inv->parsed()) return run_invariant(file, opts);
        if (hom->parsed()) return run_homology(file, deform, sigma, opts, app.count("--rank") > 0);
        if (spl->parsed()) return run_split(file, sigma, opts);
        if (dot->parsed()) return run_dot(file, arc, opts);
        if (conv->parsed()) {
            std::cout << load_diagram(file).to_pd_json();
            return kExitOk;
        }
        if (ver->parsed()) {
            if (all_flag) suite = "all";
            if (suite == "functoriality") {
                if (file.empty()) throw std::invalid_argument("functoriality needs --diagram");
                return run_verify_functoriality(file);
            }
            return run_verify(suite, opts, trials, seed);
        }
    } catch (const UnsliceableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
