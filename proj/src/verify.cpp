#include "canon/verify.hpp"

#include <functional>
#include <optional>
#include <sstream>

#include "canon/bundle.hpp"
#include "canon/cone.hpp"
#include "canon/errors.hpp"
#include "canon/net.hpp"
#include "canon/pencil.hpp"
#include "canon/rng.hpp"
#include "canon/spanlab.hpp"
#include "canon/version.hpp"

namespace canon {

VerifyConfig VerifyConfig::quick() {
    VerifyConfig c;
    c.corank_samples = 10;
    c.corank_d_samples = 3;
    c.reconstructions = 2;
    c.curve_check_points = 50;
    c.oracle_points = 20;
    c.double_quadric_nets = 2;
    c.polar_cones = 1;
    c.sweep = 20;
    c.steinerian = 10;
    c.secant_random = 20;
    c.secant_engineered = 1;
    c.span_samples = 40;
    c.probe_points = 100;
    return c;
}

bool VerifyConfig::full_scale() const {
    const VerifyConfig m;
    return corank_samples >= m.corank_samples && corank_d_samples >= m.corank_d_samples &&
           reconstructions >= m.reconstructions && curve_check_points >= m.curve_check_points &&
           oracle_points >= m.oracle_points && double_quadric_nets >= m.double_quadric_nets &&
           sweep >= m.sweep && steinerian >= m.steinerian && secant_random >= m.secant_random &&
           secant_engineered >= m.secant_engineered && probe_points >= m.probe_points;
}

Json VerifyConfig::to_json() const {
    Json j;
    j["seed"] = seed;
    j["corank_samples"] = corank_samples;
    j["corank_d_samples"] = corank_d_samples;
    j["reconstructions"] = reconstructions;
    j["curve_check_points"] = curve_check_points;
    j["oracle_points"] = oracle_points;
    j["double_quadric_nets"] = double_quadric_nets;
    j["polar_cones"] = polar_cones;
    j["sweep"] = sweep;
    j["steinerian"] = steinerian;
    j["secant_random"] = secant_random;
    j["secant_engineered"] = secant_engineered;
    j["span_samples"] = span_samples;
    j["probe_points"] = probe_points;
    j["full_scale"] = full_scale();
    return j;
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

namespace {

struct Built {
    QuarticCone cone;
    PlaneCurve gamma;
};

Matrix random_w(const CurveContext& ctx, Rng& rng) {
    Matrix W(ctx.prime(), 3, ctx.nvars());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < ctx.nvars(); ++j) W(i, j) = rng.element(ctx.prime());
    return W;
}

Vec combination(const std::vector<Vec>& basis, Rng& rng) {
    const std::uint32_t p = basis[0][0].prime();
    Vec x(basis[0].size(), Fp(0, p));
    for (const auto& b : basis) x = add(x, scale(b, rng.nonzero(p)));
    return x;
}

/// Shared state across criteria for one curve.
class Suite {
public:
    Suite(const CurveContext& ctx, const VerifyConfig& cfg) : ctx_(ctx), cfg_(cfg), root_(cfg.seed, "verify") {}

    std::vector<CriterionResult> run() {
        std::vector<CriterionResult> out;
        add(out, 1, "ideal dimensions", [&](CriterionResult& r) { ideal_dimensions(r); });
        add(out, 2, "Petri dichotomy", [&](CriterionResult& r) { petri(r); });
        add(out, 3, "plane curve degree", [&](CriterionResult& r) { plane_curve(r); });
        add(out, 4, "corank law", [&](CriterionResult& r) { corank_law(r); });
        add(out, 5, "reconstruction certificate", [&](CriterionResult& r) { reconstruction(r); });
        add(out, 6, "double-quadric law", [&](CriterionResult& r) { double_quadric(r); });
        add(out, 7, "polar cubics", [&](CriterionResult& r) { polars(r); });
        add(out, 8, "Hessian and Steinerian", [&](CriterionResult& r) { hessian(r); });
        add(out, 9, "node count", [&](CriterionResult& r) { nodes(r); });
        add(out, 10, "secant criterion", [&](CriterionResult& r) { secants(r); });
        add(out, 11, "span dimensions", [&](CriterionResult& r) { spans(r); });
        add(out, 12, "base-locus probes", [&](CriterionResult& r) { base_locus(r); });
        return out;
    }

private:
    void add(std::vector<CriterionResult>& out, int id, const char* name, const std::function<void(CriterionResult&)>& f) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        r.data = Json::object();
        try {
            f(r);
        } catch (const std::exception& e) {
            r.passed = false;
            r.data["error"] = e.what();
            r.summary = std::string("error: ") + e.what();
        }
        out.push_back(std::move(r));
    }

    Rng stream(const char* tag) const { return root_.split(tag); }
    std::size_t g() const { return ctx_.nvars(); }
    std::uint32_t p() const { return ctx_.prime(); }

    const std::vector<Built>& cones() {
        if (cones_.empty()) throw VerificationFailed("no reconstructed quartics available");
        return cones_;
    }

    void ideal_dimensions(CriterionResult& r) {
        // Riemann-Roch: C(g-1+n, n) - (2n-1)(g-1).
        const std::size_t want[2][3] = {{1, 5, 14}, {3, 15, 42}};
        const int gi = ctx_.genus() - 4;
        bool ok = true;
        Json dims = Json::array(), holdout = Json::array();
        std::ostringstream s;
        for (std::size_t n = 2; n <= 4; ++n) {
            const std::size_t d = ctx_.ideal(n).dim();
            const std::size_t h = kernel_basis(evaluation_matrix(ctx_.holdout(), n, g())).size();
            dims.push_back(d);
            holdout.push_back(h);
            ok = ok && d == want[gi][n - 2] && h == d;
            s << (n > 2 ? "," : "") << d;
        }
        r.data["dims"] = dims;
        r.data["holdout_dims"] = holdout;
        r.passed = ok;
        r.summary = "dim I(2..4) = " + s.str();
    }

    void petri(CriterionResult& r) {
        PetriResult pr = petri_check(ctx_);
        r.data["product_rank"] = pr.product_rank;
        r.data["ideal3_dim"] = pr.ideal3_dim;
        r.data["surjective"] = pr.surjective;
        r.passed = pr.surjective == (ctx_.genus() == 5);
        r.summary = "rank " + std::to_string(pr.product_rank) + " of " + std::to_string(pr.ideal3_dim) +
                    (pr.surjective ? ", surjective" : ", not surjective");
    }

    void plane_curve(CriterionResult& r) {
        Rng rng = stream("plane-curve");
        std::size_t nets = 0, holdout_failures = 0;
        bool degree_ok = true;
        for (int t = 0; t < 3; ++t) {
            Net net = build_net(ctx_, random_w(ctx_, rng));
            PlaneCurve pc = gamma_equation(ctx_, net);
            ++nets;
            degree_ok = degree_ok && pc.gamma.degree() == 2 * g() - 2;
            for (const auto& x : ctx_.holdout())
                if (!pc.gamma(net.project(x)).is_zero()) ++holdout_failures;
        }
        r.data["nets"] = nets;
        r.data["degree"] = 2 * g() - 2;
        r.data["holdout_points"] = ctx_.holdout().size();
        r.data["holdout_failures"] = holdout_failures;
        r.passed = degree_ok && holdout_failures == 0;
        r.summary = "degree " + std::to_string(2 * g() - 2) + ", 1-dim fit, " + std::to_string(holdout_failures) +
                    " holdout failures";
    }

    void corank_law(CriterionResult& r) {
        Rng rng = stream("corank");
        std::size_t generic = 0, generic_corank2 = 0, d_samples = 0, d_jump = 0, disagreements = 0, skipped = 0;
        auto sample = [&](const Matrix& W, bool engineered) {
            Net net = build_net(ctx_, W);
            std::vector<Vec> rows = net.W.row_list();
            Matrix V = Matrix::from_rows(p(), {combination(rows, rng), combination(rows, rng)}, g());
            Vec w = combination(rows, rng);
            PencilData pd;
            try {
                pd = build_pencil(ctx_, V);
            } catch (const InadmissiblePencil&) {
                ++skipped;
                return false;
            }
            if (rank(Matrix::from_rows(p(), {V.row(0), V.row(1), w}, g())) != 3) {
                ++skipped;
                return false;
            }
            CupGram cg = cup_gram(ctx_, pd, w);
            const bool jump = cg.corank >= 3;
            const bool hess = hessian_psi_membership(ctx_, pd, w);
            if (jump != net.in_D || hess != net.in_D) ++disagreements;
            if (engineered) {
                ++d_samples;
                if (jump) ++d_jump;
            } else {
                ++generic;
                if (cg.corank == 2) ++generic_corank2;
            }
            return true;
        };
        while (generic < cfg_.corank_samples) sample(random_w(ctx_, rng), false);
        while (d_samples < cfg_.corank_d_samples) sample(engineered_d_net(ctx_, rng), true);
        r.data["generic_samples"] = generic;
        r.data["generic_corank_2"] = generic_corank2;
        r.data["d_samples"] = d_samples;
        r.data["d_corank_jump"] = d_jump;
        r.data["disagreements"] = disagreements;
        r.data["skipped"] = skipped;
        r.passed = generic >= cfg_.corank_samples && generic_corank2 == generic && d_jump == d_samples && disagreements == 0;
        r.summary = std::to_string(generic_corank2) + "/" + std::to_string(generic) + " corank 2, " +
                    std::to_string(d_jump) + "/" + std::to_string(d_samples) + " jumps in D, " +
                    std::to_string(disagreements) + " disagreements";
    }

    void reconstruction(CriterionResult& r) {
        Rng rng = stream("reconstruct");
        std::size_t ok = 0;
        Json certs = Json::array();
        for (std::size_t k = 0; cones_.size() < cfg_.reconstructions; ++k) {
            if (k > 3 * cfg_.reconstructions + 10) throw VerificationFailed("too many unusable nets");
            Rng sub = rng.split("net-" + std::to_string(k));
            Net net = build_net(ctx_, random_w(ctx_, sub));
            if (net.in_D || net.in_B) continue;
            ReconstructOptions opts;
            opts.oracle_points = cfg_.oracle_points;
            QuarticCone cone = reconstruct_quartic(ctx_, net, sub, opts);
            std::size_t off = 0;
            for (const auto& x : sample_points(ctx_.curve(), cfg_.curve_check_points, sub))
                if (!cone.F(x).is_zero()) ++off;
            const ConeCertificate& c = cone.certificate;
            const bool pass = c.passed() && c.solution_dim == 1 && off == 0 && singular_along_vertex(cone.F, net) &&
                              c.oracle_checked == cfg_.oracle_points && c.oracle_disagreements == 0 &&
                              c.holdout_pencil_match;
            if (pass) ++ok;
            Json cj = certificate_json(c);
            cj["fresh_curve_points"] = cfg_.curve_check_points;
            cj["fresh_curve_failures"] = off;
            certs.push_back(cj);
            cones_.push_back(Built{cone, gamma_equation(ctx_, net)});
        }
        r.data["certificates"] = certs;
        r.passed = ok == cones_.size() && ok >= cfg_.reconstructions;
        r.summary = std::to_string(ok) + "/" + std::to_string(cones_.size()) + " certificates pass, dim S = " +
                    std::to_string(cones_.front().cone.certificate.constrained_dim);
    }

    void double_quadric(CriterionResult& r) {
        Rng rng = stream("double-quadric");
        std::size_t ok = 0;
        for (std::size_t k = 0; k < cfg_.double_quadric_nets; ++k) {
            Net net = build_net(ctx_, engineered_d_net(ctx_, rng));
            if (!net.in_D || net.res_kernel.size() != 1) continue;
            QuarticCone dq = double_quadric_quartic(ctx_, net);
            Form q = *vertex_quadric(ctx_, net);
            bool on_vertex = true;
            for (int t = 0; t < 5; ++t) on_vertex = on_vertex && q(combination(net.vertex, rng)).is_zero();
            if (dq.F == (q * q).normalized() && ctx_.vanishes_on_curve(q) && on_vertex && dq.certificate.passed()) ++ok;
        }
        r.data["nets"] = cfg_.double_quadric_nets;
        r.data["passed"] = ok;
        r.passed = ok == cfg_.double_quadric_nets;
        r.summary = std::to_string(ok) + "/" + std::to_string(cfg_.double_quadric_nets) + " equal Q^2 with 1-dim ker(res)";
    }

    void polars(CriterionResult& r) {
        Rng rng = stream("polars");
        const Matrix i3 = Matrix::from_rows(p(), ctx_.ideal(3).basis, monomials(g(), 3).size());
        std::size_t checked = 0, good = 0, lw_ok = 0, cones_checked = 0, oracle_points = 0, disagreements = 0;
        const auto& cs = cones();
        for (std::size_t c = 0; c < std::min(cfg_.polar_cones, cs.size()); ++c) {
            const Built& b = cs[c];
            std::vector<Vec> xs = b.cone.net.vertex;
            xs.push_back(combination(b.cone.net.vertex, rng));
            for (const auto& x : xs) {
                Form px = polar_cubic(b.cone, x);
                OracleAgreement a = check_polar_agreement(ctx_, b.cone.net, b.gamma, px, x, cfg_.oracle_points, rng);
                oracle_points += a.checked;
                disagreements += a.disagreements;
                ++checked;
                if (row_space_contains(i3, px.coeffs()) && singular_along_vertex(px, b.cone.net) &&
                    a.checked == cfg_.oracle_points && a.disagreements == 0)
                    ++good;
            }
            LwResult lw = lw_space(ctx_, b.cone.net, b.cone);
            ++cones_checked;
            if (lw.basis.size() == g() - 3 && lw.polar_rank == g() - 3 && lw.polars_in_lw) ++lw_ok;
        }
        r.data["polars"] = checked;
        r.data["polars_passed"] = good;
        r.data["oracle_points"] = oracle_points;
        r.data["oracle_disagreements"] = disagreements;
        r.data["lw_checked"] = cones_checked;
        r.data["lw_passed"] = lw_ok;
        r.data["lw_dim_expected"] = g() - 3;
        r.passed = checked > 0 && good == checked && lw_ok == cones_checked;
        r.summary = std::to_string(good) + "/" + std::to_string(checked) + " polars pass, dim L_W = rank = " +
                    std::to_string(g() - 3) + " on " + std::to_string(lw_ok) + "/" + std::to_string(cones_checked);
    }

    void hessian(CriterionResult& r) {
        Rng rng = stream("hessian");
        const Built& b = cones().front();
        auto rows = hessian_sweep(ctx_, b.cone.net, b.cone, b.gamma, cfg_.sweep, rng);
        std::size_t on = 0, off = 0, mismatches = 0;
        for (const auto& row : rows) {
            (row.gamma_value.is_zero() ? on : off)++;
            if (row.det.is_zero() != row.gamma_value.is_zero()) ++mismatches;
        }
        std::size_t smooth = 0, matches = 0, nodes = 0;
        auto try_point = [&](const Vec& x) {
            try {
                if (steinerian_check(ctx_, b.cone.net, b.cone, b.gamma, x)) ++matches;
                ++smooth;
            } catch (const NodeFiber&) {
                ++nodes;
            }
        };
        for (const auto& x : ctx_.holdout()) {
            if (smooth >= cfg_.steinerian) break;
            try_point(x);
        }
        while (smooth < cfg_.steinerian)
            for (const auto& x : sample_points(ctx_.curve(), 10, rng))
                if (smooth < cfg_.steinerian) try_point(x);
        r.data["fibers"] = rows.size();
        r.data["on_gamma"] = on;
        r.data["off_gamma"] = off;
        r.data["mismatches"] = mismatches;
        r.data["steinerian_smooth"] = smooth;
        r.data["steinerian_matches"] = matches;
        r.data["steinerian_node_fibers"] = nodes;
        r.passed = rows.size() >= cfg_.sweep && on > 0 && off > 0 && mismatches == 0 && smooth >= cfg_.steinerian &&
                   matches == smooth;
        r.summary = std::to_string(mismatches) + " mismatches over " + std::to_string(rows.size()) + " fibers (" +
                    std::to_string(on) + " on Gamma), Steinerian " + std::to_string(matches) + "/" +
                    std::to_string(smooth);
    }

    void nodes(CriterionResult& r) {
        Rng rng = stream("nodes");
        const std::size_t want = 2 * (g() - 1) * (g() - 3);
        Json counts = Json::array();
        bool ok = true;
        const auto& cs = cones();
        for (std::size_t c = 0; c < std::min<std::size_t>(3, cs.size()); ++c) {
            NodeCount nc = node_count(cs[c].gamma, rng);
            counts.push_back(nc.nodes);
            ok = ok && nc.nodes == want;
        }
        r.data["expected"] = want;
        r.data["counts"] = counts;
        r.passed = ok;
        r.summary = "nodes " + counts.dump() + ", expected " + std::to_string(want);
    }

    void secants(CriterionResult& r) {
        Rng rng = stream("secants");
        const Built& b = cones().front();
        std::size_t random_ok = 0;
        for (std::size_t k = 0; k < cfg_.secant_random; ++k) {
            auto pts = sample_points(ctx_.curve(), 2, rng);
            SecantResult s = secant_criterion(ctx_, b.cone.net, b.cone, pts[0], pts[1]);
            if (!s.contained && !s.predicted) ++random_ok;
        }
        struct Branch {
            std::size_t both = 0, contained = 0, predicted = 0, cross_terms_zero = 0;
        };
        auto branch = [&](bool through_vertex) {
            Branch out;
            for (std::size_t k = 0; k < cfg_.secant_engineered; ++k) {
                SecantSetup setup = through_vertex ? engineered_secant_through_vertex(ctx_, rng)
                                                   : engineered_secant_double_section(ctx_, rng);
                Net net = build_net(ctx_, setup.W);
                QuarticCone cone = reconstruct_quartic(ctx_, net, rng);
                SecantResult s = secant_criterion(ctx_, net, cone, setup.p, setup.q);
                if (s.contained) ++out.contained;
                if (s.predicted) ++out.predicted;
                if (s.contained && s.predicted) ++out.both;
                UniPoly line = restrict_to_line(cone.F, setup.p, setup.q);
                if (line.coeff(1).is_zero() && line.coeff(3).is_zero()) ++out.cross_terms_zero;
            }
            return out;
        };
        Branch vertex = branch(true), dbl = branch(false);
        auto branch_json = [](const Branch& x) {
            Json j;
            j["contained_and_predicted"] = x.both;
            j["contained"] = x.contained;
            j["predicted"] = x.predicted;
            j["cross_terms_zero"] = x.cross_terms_zero;
            return j;
        };
        r.data["random_pairs"] = cfg_.secant_random;
        r.data["random_false_false"] = random_ok;
        r.data["vertex_branch"] = branch_json(vertex);
        r.data["double_section_branch"] = branch_json(dbl);
        const std::size_t n = cfg_.secant_engineered;
        r.passed = random_ok == cfg_.secant_random && vertex.both == n && dbl.both == n;
        r.summary = std::to_string(random_ok) + "/" + std::to_string(cfg_.secant_random) +
                    " random (false,false); vertex branch " + std::to_string(vertex.both) + "/" + std::to_string(n) +
                    " (true,true); double-section branch " + std::to_string(dbl.both) + "/" + std::to_string(n) +
                    " (true,true), contained " + std::to_string(dbl.contained) + ", predicted " +
                    std::to_string(dbl.predicted);
    }

    void spans(CriterionResult& r) {
        // Table values of dim |F_4| plus one.
        const std::size_t want = ctx_.genus() == 4 ? 5 : 16;
        SpanOptions opts;
        opts.sample_count = cfg_.span_samples;
        opts.include_squares = false;
        f4_ = accumulate_f4(ctx_, cfg_.seed, opts);
        Rng rng = stream("squares");
        SquaresReport sq = squares_containment(ctx_, *f4_, rng);
        SpanOptions with = opts;
        with.include_squares = true;
        SpanAccumulator f4sq = accumulate_f4(ctx_, cfg_.seed, with);
        r.data["f4"] = span_json(*f4_);
        r.data["f4_with_squares_rank"] = f4sq.rank();
        r.data["expected_rank"] = want;
        r.data["ideal4_dim"] = ctx_.ideal(4).dim();
        r.data["squares_checked"] = sq.checked;
        r.data["squares_contained"] = sq.contained;
        r.passed = f4_->saturated && f4_->rank() == want && f4sq.rank() == want && sq.all_contained() &&
                   f4_->rank() < ctx_.ideal(4).dim();
        r.summary = "rank " + std::to_string(f4_->rank()) + " (expected " + std::to_string(want) + ") < dim I(4) = " +
                    std::to_string(ctx_.ideal(4).dim()) + ", squares " + std::to_string(sq.contained) + "/" +
                    std::to_string(sq.checked);
    }

    void base_locus(CriterionResult& r) {
        if (!f4_) throw VerificationFailed("F_4 span unavailable");
        SpanOptions opts;
        opts.sample_count = cfg_.span_samples;
        opts.include_squares = false;
        SpanAccumulator f3 = accumulate_f3(ctx_, cfg_.seed, opts);
        Rng rng = stream("base-locus");
        BaseLocusReport b4 = base_locus_probe(ctx_, *f4_, cfg_.probe_points, rng);
        BaseLocusReport b3 = base_locus_probe(ctx_, f3, cfg_.probe_points, rng);
        r.data["f4"] = probe_json(b4);
        r.data["f3"] = probe_json(b3);
        r.data["f3_rank"] = f3.rank();
        r.data["f3_projective_dim"] = static_cast<long long>(f3.rank()) - 1;
        r.data["f3_saturated"] = f3.saturated;
        r.passed = b4.passed() && b3.passed() && b4.random.probes >= cfg_.probe_points &&
                   b3.random.probes >= cfg_.probe_points;
        r.summary = std::to_string(b4.candidates.size() + b3.candidates.size()) + " candidates over " +
                    std::to_string(b4.random.probes) + " random and structured probes (F_4, F_3); dim |F_3| = " +
                    std::to_string(static_cast<long long>(f3.rank()) - 1) + " reported";
    }

    const CurveContext& ctx_;
    VerifyConfig cfg_;
    Rng root_;
    std::vector<Built> cones_;
    std::optional<SpanAccumulator> f4_;
};

}  // namespace

std::vector<CriterionResult> run_criteria(const CurveContext& ctx, const VerifyConfig& cfg) {
    return Suite(ctx, cfg).run();
}

Json verify_report(const CurveContext& ctx, const VerifyConfig& cfg, const std::vector<CriterionResult>& results) {
    Json j;
    j["version"] = version_tag;
    Json curve;
    curve["genus"] = ctx.genus();
    curve["prime"] = ctx.prime();
    curve["seed"] = ctx.curve().seed;
    curve["panel"] = ctx.panel().size();
    curve["holdout"] = ctx.holdout().size();
    j["curve"] = curve;
    j["config"] = cfg.to_json();
    Json crit = Json::array();
    bool all = true;
    for (const auto& r : results) {
        Json c;
        c["id"] = r.id;
        c["name"] = r.name;
        c["passed"] = r.passed;
        c["summary"] = r.summary;
        c["data"] = r.data;
        crit.push_back(c);
        all = all && r.passed;
    }
    j["criteria"] = crit;
    j["all_passed"] = all;
    return j;
}

CriterionResult determinism_check(const CurveContext& ctx, const VerifyConfig& cfg, const std::string& first) {
    CriterionResult r;
    r.id = 13;
    r.name = "determinism";
    const std::string second = dump_report(verify_report(ctx, cfg, run_criteria(ctx, cfg)));
    r.passed = second == first;
    r.data = Json::object();
    r.data["bytes"] = first.size();
    r.data["identical"] = r.passed;
    r.summary = r.passed ? "rerun report identical (" + std::to_string(first.size()) + " bytes)" : "rerun report differs";
    return r;
}

}  // namespace canon
