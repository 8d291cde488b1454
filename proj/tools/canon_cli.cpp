// Command-line driver. Exit codes: 0 success, 2 configuration error,
// 3 verification failure, 4 degeneracy budget exhausted.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "canon/bundle.hpp"
#include "canon/cone.hpp"
#include "canon/curve.hpp"
#include "canon/errors.hpp"
#include "canon/report.hpp"
#include "canon/rng.hpp"
#include "canon/spanlab.hpp"
#include "canon/verify.hpp"
#include "canon/version.hpp"

using namespace canon;

namespace {

constexpr int exit_config = 2;
constexpr int exit_verification = 3;
constexpr int exit_degeneracy = 4;

const char* conventions =
    "Conventions: coordinates z0..z{g-1} of P^{g-1}; monomials ordered by degree, then\n"
    "descending lexicographic exponents (z0 > z1 > ...). Forms are written as\n"
    "[[exponents], coefficient] pairs with coefficients in 0..p-1, zeros omitted,\n"
    "normalized so the first nonzero coefficient is 1.\n";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

struct Loaded {
    CurveModel curve;
    std::vector<Vec> points;
};

Loaded load_curve(const std::string& path) {
    CurveFile f = curve_from_json(read_file(path));
    return Loaded{f.curve, f.points};
}

CurveContext make_context(const Loaded& l, std::size_t panel) {
    return CurveContext(l.curve, l.points, panel, 0);
}

Json header(const std::string& command, const CurveContext& ctx) {
    Json j;
    j["version"] = version_tag;
    j["command"] = command;
    Json c;
    c["genus"] = ctx.genus();
    c["prime"] = ctx.prime();
    c["seed"] = ctx.curve().seed;
    c["panel"] = ctx.panel().size();
    c["holdout"] = ctx.holdout().size();
    j["curve"] = c;
    return j;
}

/// A random net outside D drawn from the w-seed stream.
Net draw_net(const CurveContext& ctx, std::uint64_t w_seed, Rng& rng, std::size_t& attempts) {
    for (attempts = 1; attempts <= 20; ++attempts) {
        Matrix W(ctx.prime(), 3, ctx.nvars());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < ctx.nvars(); ++j) W(i, j) = rng.element(ctx.prime());
        try {
            Net net = build_net(ctx, W);
            if (!net.in_D && !net.in_B) return net;
        } catch (const RankDeficientW&) {
        }
    }
    throw GenerationFailed("no net outside D for w-seed " + std::to_string(w_seed));
}

template <typename T>
T config_field(const Json& j, const char* name, T fallback) {
    if (!j.contains(name)) return fallback;
    try {
        return j.at(name).get<T>();
    } catch (const Json::exception&) {
        throw ConfigError(std::string(name) + ": wrong type");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("Quartic tangent cones of canonical curves over F_p (") + version_tag + ")"};
    app.footer(conventions);
    app.require_subcommand(1);

    int genus = 4;
    std::uint32_t prime = 1000003;
    std::uint64_t seed = 1, w_seed = 1;
    std::size_t points = 0, degree = 2, panel = 0, sweep = 200, max_pencils = 20;
    std::string curve_path, out_path, config_path;
    bool full = false;

    auto* gen = app.add_subcommand("gen-curve", "Generate a random smooth canonical curve");
    gen->add_option("--genus", genus, "Genus (4 or 5)")->required()->check(CLI::IsMember({4, 5}));
    gen->add_option("--prime", prime, "Prime field size (at least 10^6)")->capture_default_str();
    gen->add_option("--seed", seed, "Curve seed")->required();
    gen->add_option("--points", points, "Number of sampled points to store")->capture_default_str();
    gen->add_option("--out", out_path, "Output curve file (stdout if omitted)");

    auto* ideal = app.add_subcommand("ideal", "Basis of the degree-N piece of the ideal");
    ideal->add_option("--curve", curve_path, "Curve file")->required();
    ideal->add_option("--degree", degree, "Degree N (2..4)")->required()->check(CLI::Range(2, 4));
    ideal->add_option("--panel", panel, "Evaluation panel size (0 = 4 dim Sym^4)");
    ideal->add_option("--out", out_path, "Write the basis JSON here");

    auto* rec = app.add_subcommand("reconstruct", "Reconstruct the quartic F_W of a random net");
    rec->add_option("--curve", curve_path, "Curve file")->required();
    rec->add_option("--w-seed", w_seed, "Seed for the net")->required();
    rec->add_option("--max-pencils", max_pencils, "Pencil cap")->capture_default_str()->check(CLI::Range(1, 200));
    rec->add_option("--panel", panel, "Evaluation panel size (0 = 4 dim Sym^4)");
    rec->add_option("--out", out_path, "Output JSON (stdout if omitted)");

    auto* spans = app.add_subcommand("spans", "Span dimensions of |F_4| and |F_3| and base-locus probes");
    spans->add_option("--curve", curve_path, "Curve file")->required();
    spans->add_option("--config", config_path, "Experiment config JSON")->required();

    auto* hess = app.add_subcommand("hessian", "Hessian and Steinerian sweep over P(W*) as CSV");
    hess->add_option("--curve", curve_path, "Curve file")->required();
    hess->add_option("--w-seed", w_seed, "Seed for the net")->required();
    hess->add_option("--sweep", sweep, "Number of fibers")->capture_default_str()->check(CLI::Range(2, 100000));
    hess->add_option("--panel", panel, "Evaluation panel size (0 = 4 dim Sym^4)");
    hess->add_option("--out", out_path, "Output CSV (stdout if omitted)");

    auto* ver = app.add_subcommand("verify", "Run the acceptance suite on a curve");
    ver->add_option("--curve", curve_path, "Curve file")->required();
    ver->add_flag("--full", full, "Full sample sizes and the determinism rerun");
    ver->add_option("--seed", seed, "Verification seed")->capture_default_str();
    ver->add_option("--panel", panel, "Evaluation panel size (0 = 4 dim Sym^4)");
    ver->add_option("--out", out_path, "Report JSON (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (*gen) {
            if (prime < 1000000) throw ConfigError("prime: must be at least 1000000");
            CurveModel curve = generate_curve(genus, prime, seed);
            write_output(out_path, curve_to_json(curve, points > 0 ? sample_points(curve, points) : std::vector<Vec>{}));
            return 0;
        }

        const Loaded loaded = load_curve(curve_path);
        if (*ideal) {
            CurveContext ctx = make_context(loaded, panel);
            const IdealPiece& piece = ctx.ideal(degree);
            std::cout << "dim I(" << degree << ") = " << piece.dim() << "\n";
            if (!out_path.empty()) {
                Json j = header("ideal", ctx);
                j["degree"] = degree;
                j["dim"] = piece.dim();
                Json basis = Json::array();
                for (const auto& f : piece.forms(ctx.prime(), ctx.nvars())) basis.push_back(form_json(f));
                j["basis"] = basis;
                write_output(out_path, dump_report(j));
            }
            return 0;
        }
        if (*rec) {
            CurveContext ctx = make_context(loaded, panel);
            Rng rng(w_seed, "reconstruct-w");
            std::size_t attempts = 0;
            Net net = draw_net(ctx, w_seed, rng, attempts);
            ReconstructOptions opts;
            opts.max_pencils = std::max(max_pencils, opts.initial_pencils);
            QuarticCone cone = reconstruct_quartic(ctx, net, rng, opts);
            Json j = header("reconstruct", ctx);
            j["config"] = {{"w_seed", w_seed}, {"max_pencils", opts.max_pencils}, {"net_attempts", attempts}};
            j["cone"] = cone_json(cone);
            write_output(out_path, dump_report(j));
            return 0;
        }
        if (*spans) {
            Json cfg;
            try {
                cfg = Json::parse(read_file(config_path));
            } catch (const Json::parse_error&) {
                throw ConfigError("config: not valid JSON");
            }
            if (!cfg.is_object()) throw ConfigError("config: must be an object");
            for (const auto& [key, value] : cfg.items()) {
                static const char* known[] = {"seed", "sample_count", "batch_size", "stable_batches",
                                              "include_squares", "probe_points", "panel", "report", "trajectory_csv"};
                if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
                    std::end(known))
                    throw ConfigError(key + ": unknown config field");
            }
            SpanOptions opts;
            const auto span_seed = config_field<std::uint64_t>(cfg, "seed", 1);
            opts.sample_count = config_field<std::size_t>(cfg, "sample_count", opts.sample_count);
            opts.batch_size = config_field<std::size_t>(cfg, "batch_size", opts.batch_size);
            opts.stable_batches = config_field<std::size_t>(cfg, "stable_batches", opts.stable_batches);
            opts.include_squares = config_field<bool>(cfg, "include_squares", opts.include_squares);
            const auto probes = config_field<std::size_t>(cfg, "probe_points", 500);
            const auto span_panel = config_field<std::size_t>(cfg, "panel", 0);
            const auto report_path = config_field<std::string>(cfg, "report", "");
            const auto csv_path = config_field<std::string>(cfg, "trajectory_csv", "");
            if (opts.batch_size == 0) throw ConfigError("batch_size: must be positive");
            if (opts.sample_count == 0) throw ConfigError("sample_count: must be positive");

            CurveContext ctx = make_context(loaded, span_panel);
            SpanAccumulator f4 = accumulate_f4(ctx, span_seed, opts);
            SpanOptions f3opts = opts;
            f3opts.include_squares = false;
            SpanAccumulator f3 = accumulate_f3(ctx, span_seed, f3opts);
            Rng rng(span_seed, "spans-probe");
            SquaresReport sq = squares_containment(ctx, f4, rng);
            BaseLocusReport b4 = base_locus_probe(ctx, f4, probes, rng);
            BaseLocusReport b3 = base_locus_probe(ctx, f3, probes, rng);

            Json j = header("spans", ctx);
            j["config"] = cfg;
            j["f4"] = span_json(f4);
            j["f3"] = span_json(f3);
            j["squares"] = {{"checked", sq.checked}, {"contained", sq.contained}};
            j["base_locus"] = {{"f4", probe_json(b4)}, {"f3", probe_json(b3)}};
            write_output(report_path, dump_report(j));
            if (!csv_path.empty()) {
                std::ostringstream out;
                out << "degree,samples,rank\n";
                for (const auto* s : {&f4, &f3})
                    for (const auto& b : s->trajectory) out << s->degree() << ',' << b.samples << ',' << b.rank << '\n';
                write_output(csv_path, out.str());
            }
            std::cerr << "rank F_4 = " << f4.rank() << ", rank F_3 = " << f3.rank() << "\n";
            return b4.passed() && b3.passed() && sq.all_contained() ? 0 : exit_verification;
        }
        if (*hess) {
            CurveContext ctx = make_context(loaded, panel);
            Rng rng(w_seed, "reconstruct-w");
            std::size_t attempts = 0;
            Net net = draw_net(ctx, w_seed, rng, attempts);
            QuarticCone cone = reconstruct_quartic(ctx, net, rng);
            PlaneCurve gamma = gamma_equation(ctx, net);
            Rng srng = rng.split("sweep");
            auto rows = hessian_sweep(ctx, net, cone, gamma, sweep, srng);
            write_output(out_path, sweep_to_csv(rows));
            std::size_t bad = 0;
            for (const auto& r : rows)
                if (r.det.is_zero() != r.gamma_value.is_zero() || (r.kernel_match && !*r.kernel_match)) ++bad;
            return bad == 0 ? 0 : exit_verification;
        }
        if (*ver) {
            CurveContext ctx = make_context(loaded, panel);
            VerifyConfig cfg = full ? VerifyConfig{} : VerifyConfig::quick();
            cfg.seed = seed;
            auto results = run_criteria(ctx, cfg);
            const std::string first = dump_report(verify_report(ctx, cfg, results));
            if (full) results.push_back(determinism_check(ctx, cfg, first));
            Json report = verify_report(ctx, cfg, results);
            write_output(out_path, dump_report(report));
            bool all = true;
            for (const auto& r : results) {
                std::cerr << (r.passed ? "PASS  " : "FAIL  ") << r.id << ". " << r.name << ": " << r.summary << "\n";
                all = all && r.passed;
            }
            return all ? 0 : exit_verification;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.error_class()) {
            case ErrorClass::Config: return exit_config;
            case ErrorClass::Verification: return exit_verification;
            case ErrorClass::Degeneracy: return exit_degeneracy;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
