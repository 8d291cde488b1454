#include "canon/cone.hpp"

#include "canon/errors.hpp"
#include "canon/rng.hpp"

namespace canon {

namespace {

Matrix forms_matrix(const std::vector<Form>& forms, std::size_t cols, std::uint32_t p) {
    std::vector<Vec> rows;
    for (const auto& f : forms) rows.push_back(f.coeffs());
    return Matrix::from_rows(p, rows, cols);
}

/// All partials of f restricted to the vertex, concatenated.
Vec vertex_partials(const Form& f, const Matrix& a) {
    Vec out;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        Vec c = f.partial(i).substitute(a).coeffs();
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

/// A point u of P(W*) off Gamma.
Vec random_fiber_point(const PlaneCurve& gamma, std::uint32_t p, Rng& rng) {
    for (;;) {
        Vec u = rng.vector(p, 3);
        if (!is_zero(u) && !gamma.gamma(u).is_zero()) return u;
    }
}

Vec combine(const std::vector<Vec>& basis, const Vec& beta) {
    Vec b(basis[0].size(), Fp(0, beta[0].prime()));
    for (std::size_t i = 0; i < basis.size(); ++i) b = add(b, scale(basis[i], beta[i]));
    return b;
}

/// Zero of f on a random line, if the restriction has a rational root.
std::optional<Vec> zero_on_random_line(const Form& f, Rng& rng) {
    const std::uint32_t p = f.prime();
    Vec base = rng.vector(p, f.nvars()), dir = rng.vector(p, f.nvars());
    UniPoly r = restrict_to_line(f, base, dir);
    if (r.is_zero() || r.degree() < 1) return std::nullopt;
    auto roots = distinct_roots(r);
    if (roots.empty()) return std::nullopt;
    Vec b = add(base, scale(dir, roots[rng.below(roots.size())]));
    if (is_zero(b)) return std::nullopt;
    return b;
}

template <typename Predicate>
OracleAgreement agreement(const Form& f, std::size_t count, Rng& rng, Predicate oracle) {
    OracleAgreement out;
    const std::uint32_t p = f.prime();
    for (std::size_t attempt = 0; out.checked < count && attempt < 40 * count + 100; ++attempt) {
        std::optional<Vec> b;
        if (attempt % 2 == 0) b = rng.vector(p, f.nvars());
        else b = zero_on_random_line(f, rng);
        if (!b || is_zero(*b)) continue;
        try {
            bool o = oracle(*b);
            ++out.checked;
            if (o) ++out.oracle_true;
            if (o != f(*b).is_zero()) ++out.disagreements;
        } catch (const DegenerateInput&) {
        }
    }
    return out;
}

}  // namespace

Matrix SplitFiber::vperp_matrix() const { return Matrix::from_columns(w[0].prime(), vperp, w.size()); }

Form SplitFiber::predicted() const {
    Form l = Form::linear(ell);
    return l * l * Form::from_gram(G);
}

SplitFiber split_fiber(const CurveContext& ctx, const Net& net, const Matrix& V) {
    SplitFiber sf;
    sf.pencil = build_pencil(ctx, V);
    for (std::size_t i = 0; i < 3; ++i) {
        Matrix ext = sf.pencil.V;
        ext.append_row(net.W.row(i));
        if (rank(ext) == 3) {
            sf.w = net.W.row(i);
            break;
        }
    }
    if (sf.w.empty()) throw std::invalid_argument("split_fiber: V is not contained in W");
    CupGram cup = cup_gram(ctx, sf.pencil, sf.w);
    if (cup.corank != 2) throw CorankJump("cup-product Gram has corank " + std::to_string(cup.corank));
    sf.vperp = kernel_basis(sf.pencil.V);
    const std::size_t n = sf.vperp.size();
    std::vector<Vec> ys;
    for (const auto& v : sf.vperp) ys.push_back(solve_consistent(cup.gram, v).particular);
    sf.G = Matrix(ctx.prime(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sf.G(i, j) = dot(sf.vperp[i], ys[j]);
    for (const auto& v : sf.vperp) sf.ell.push_back(dot(sf.w, v));
    return sf;
}

bool ConeCertificate::passed() const {
    if (!vanishes_on_curve || !singular_along_vertex) return false;
    if (!oracle_applicable) return true;
    return solution_dim == 1 && oracle_checked > 0 && oracle_disagreements == 0 && holdout_pencil_match;
}

std::vector<Form> vertex_singular_subspace(const CurveContext& ctx, const Net& net, std::size_t degree) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    const auto basis = ctx.ideal(degree).forms(p, g);
    const Matrix a = net.vertex_matrix();
    std::vector<Vec> cols;
    for (const auto& f : basis) cols.push_back(vertex_partials(f, a));
    auto ker = kernel_basis(Matrix::from_columns(p, cols, cols[0].size()));
    std::vector<Vec> coeffs;
    for (const auto& k : ker) {
        Form f(p, g, degree);
        for (std::size_t j = 0; j < basis.size(); ++j) f = f + basis[j] * k[j];
        coeffs.push_back(f.coeffs());
    }
    std::vector<Form> out;
    if (coeffs.empty()) return out;
    for (auto& c : row_space_basis(Matrix::from_rows(p, coeffs, monomials(g, degree).size())))
        out.emplace_back(p, g, degree, c);
    return out;
}

bool singular_along_vertex(const Form& f, const Net& net) { return is_zero(vertex_partials(f, net.vertex_matrix())); }

OracleAgreement check_oracle_agreement(const CurveContext& ctx, const Net& net, const PlaneCurve& gamma,
                                       const Form& F, std::size_t count, Rng& rng) {
    return agreement(F, count, rng, [&](const Vec& b) { return fw_oracle_value(ctx, net, gamma, b); });
}

OracleAgreement check_polar_agreement(const CurveContext& ctx, const Net& net, const PlaneCurve& gamma,
                                      const Form& polar, const Vec& x, std::size_t count, Rng& rng) {
    return agreement(polar, count, rng, [&](const Vec& b) { return polar_oracle(ctx, net, gamma, x, b); });
}

QuarticCone reconstruct_quartic(const CurveContext& ctx, const Net& net, Rng& rng, const ReconstructOptions& opts) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    if (net.in_D) throw NonGenericD("reconstruction requires W outside D");
    QuarticCone cone{net, Form(p, g, 4), {}};
    ConeCertificate& cert = cone.certificate;

    const auto S = vertex_singular_subspace(ctx, net, 4);
    cert.constrained_dim = S.size();
    if (S.empty()) throw InconsistentReconstruction("no quartic in I(4) is singular along the vertex");
    const PlaneCurve gamma = gamma_equation(ctx, net);
    const std::size_t m = S.size();
    const std::size_t samples = 2 * (g - 2) + 3;

    auto next_fiber = [&]() -> SplitFiber {
        for (int attempt = 0; attempt < 200; ++attempt) {
            Vec u = random_fiber_point(gamma, p, rng);
            try {
                return split_fiber(ctx, net, net.pencil_of(u));
            } catch (const InadmissiblePencil&) {
                ++cert.pencils_skipped;
            } catch (const CorankJump&) {
                ++cert.pencils_skipped;
            }
        }
        throw UnderdeterminedReconstruction("no admissible pencil found");
    };

    // Each fiber contributes rows [S_1(b) .. S_m(b) | -ell(b)^2 G(b) in its own column].
    struct FiberRows {
        std::vector<Vec> s_values;
        Vec predicted;
    };
    std::vector<FiberRows> fibers;
    auto add_fiber = [&]() {
        SplitFiber sf = next_fiber();
        Form pred = sf.predicted();
        FiberRows fr;
        while (fr.predicted.size() < samples) {
            Vec beta = rng.vector(p, sf.vperp.size());
            if (dot(sf.ell, beta).is_zero()) continue;
            Vec b = combine(sf.vperp, beta);
            Vec sv;
            for (const auto& f : S) sv.push_back(f(b));
            fr.s_values.push_back(sv);
            fr.predicted.push_back(pred(beta));
        }
        fibers.push_back(std::move(fr));
    };

    std::vector<Vec> ker;
    std::size_t K = opts.initial_pencils;
    for (;;) {
        while (fibers.size() < K) add_fiber();
        Matrix sys(p, 0, m + K);
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t r = 0; r < samples; ++r) {
                Vec row(m + K, Fp(0, p));
                for (std::size_t j = 0; j < m; ++j) row[j] = fibers[k].s_values[r][j];
                row[m + k] = -fibers[k].predicted[r];
                sys.append_row(row);
            }
        ker = kernel_basis(sys);
        if (ker.size() == 1) break;
        if (ker.empty()) throw InconsistentReconstruction("splitting system has only the zero solution");
        if (++K > opts.max_pencils) throw UnderdeterminedReconstruction("solution space still has dimension " +
                                                                       std::to_string(ker.size()));
    }
    cert.pencils_used = K;
    cert.solution_dim = ker.size();
    Form F(p, g, 4);
    for (std::size_t j = 0; j < m; ++j) F = F + S[j] * ker[0][j];
    if (F.is_zero()) throw InconsistentReconstruction("solution has zero quartic part");
    cone.F = F.normalized();

    if (!opts.verify) return cone;
    cert.curve_points_checked = ctx.panel().size() + ctx.holdout().size();
    cert.vanishes_on_curve = ctx.vanishes_on_curve(cone.F);
    cert.singular_along_vertex = singular_along_vertex(cone.F, net);
    Rng vrng = rng.split("verify");
    OracleAgreement ag = check_oracle_agreement(ctx, net, gamma, cone.F, opts.oracle_points, vrng);
    cert.oracle_checked = ag.checked;
    cert.oracle_true = ag.oracle_true;
    cert.oracle_disagreements = ag.disagreements;
    SplitFiber hold = next_fiber();
    Form restricted = cone.F.substitute(hold.vperp_matrix());
    cert.holdout_pencil_match = !restricted.is_zero() && proportional(restricted.coeffs(), hold.predicted().coeffs());
    if (!cert.passed()) throw VerificationFailed("reconstructed quartic failed its certificate");
    return cone;
}

QuarticCone double_quadric_quartic(const CurveContext& ctx, const Net& net) {
    if (!net.in_D || net.res_kernel.size() != 1)
        throw NonGenericD("ker(res) has dimension " + std::to_string(net.res_kernel.size()));
    Form q = *vertex_quadric(ctx, net);
    QuarticCone cone{net, (q * q).normalized(), {}};
    ConeCertificate& cert = cone.certificate;
    cert.oracle_applicable = false;
    cert.solution_dim = 1;
    cert.curve_points_checked = ctx.panel().size() + ctx.holdout().size();
    cert.vanishes_on_curve = ctx.vanishes_on_curve(cone.F);
    cert.singular_along_vertex = singular_along_vertex(cone.F, net);
    return cone;
}

Matrix engineered_d_net(const CurveContext& ctx, Rng& rng) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    const auto qs = ctx.ideal(2).forms(p, g);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Form q(p, g, 2);
        for (const auto& b : qs) q = q + b * rng.element(p);
        auto x = zero_on_random_line(q, rng);
        if (!x) continue;
        std::vector<Vec> vertex{*x};
        if (g == 5) {
            // A second point on the tangent hyperplane section of Q, so the line xy lies on Q.
            auto tangent = kernel_basis(Matrix::from_rows({q.gradient_at(*x)}));
            Matrix t = Matrix::from_columns(p, tangent, g);
            Form restricted = q.substitute(t);
            auto y = zero_on_random_line(restricted, rng);
            if (!y) continue;
            Vec yy = t * *y;
            if (proportional(yy, *x)) continue;
            vertex.push_back(yy);
        }
        auto w = kernel_basis(Matrix::from_rows(p, vertex, g));
        return Matrix::from_rows(p, w, g);
    }
    throw NonGenericD("could not engineer a net in D");
}

Form polar_cubic(const QuarticCone& cone, const Vec& x) {
    if (x.size() != cone.F.nvars() || is_zero(x) || !is_zero(cone.net.W * x))
        throw DegenerateInput(DegenerateInput::Reason::NotVertexVector, "x must be a nonzero vertex vector");
    return cone.F.polar(x);
}

SecantResult secant_criterion(const CurveContext& ctx, const Net& net, const QuarticCone& cone, const Vec& p,
                              const Vec& q) {
    SecantResult r;
    r.contained = restrict_to_line(cone.F, p, q).is_zero();
    std::vector<Vec> rows{p, q};
    rows.insert(rows.end(), net.vertex.begin(), net.vertex.end());
    r.meets_vertex = rank(Matrix::from_rows(ctx.prime(), rows, ctx.nvars())) <= ctx.nvars() - 2;
    const TangentData tp = tangent_vector(ctx.curve(), p), tq = tangent_vector(ctx.curve(), q);
    Matrix conditions = Matrix::from_rows(
        ctx.prime(), {net.W * tp.point, net.W * tp.direction, net.W * tq.point, net.W * tq.direction}, 3);
    r.double_section = rank(conditions) < 3;
    r.predicted = r.meets_vertex || r.double_section;
    return r;
}

bool tangent_space_check(const CurveContext& ctx, const Net& net, const QuarticCone& cone, const Vec& p) {
    const TangentData t = tangent_vector(ctx.curve(), p);
    std::vector<Vec> span{t.point, t.direction};
    span.insert(span.end(), net.vertex.begin(), net.vertex.end());
    if (rank(Matrix::from_rows(ctx.prime(), span, ctx.nvars())) != ctx.nvars() - 1)
        throw SigmaPoint("tangent line meets the vertex");
    Vec grad = cone.F.gradient_at(p);
    if (is_zero(grad)) return false;
    for (const auto& v : span)
        if (!dot(grad, v).is_zero()) return false;
    return true;
}

LwResult lw_space(const CurveContext& ctx, const Net& net, const QuarticCone& cone) {
    LwResult r;
    r.basis = vertex_singular_subspace(ctx, net, 3);
    const std::size_t cols = monomials(ctx.nvars(), 3).size();
    std::vector<Form> polars;
    for (const auto& x : net.vertex) polars.push_back(polar_cubic(cone, x));
    r.polar_rank = rank(forms_matrix(polars, cols, ctx.prime()));
    r.polars_in_lw = true;
    Matrix lw = forms_matrix(r.basis, cols, ctx.prime());
    for (const auto& f : polars)
        if (r.basis.empty() || !row_space_contains(lw, f.coeffs())) r.polars_in_lw = false;
    return r;
}

}  // namespace canon

namespace canon {

namespace {

Vec random_vector_outside(const std::vector<Vec>& span, std::uint32_t p, std::size_t n, Rng& rng) {
    for (;;) {
        Vec v = rng.vector(p, n);
        std::vector<Vec> rows = span;
        rows.push_back(v);
        if (rank(Matrix::from_rows(p, rows, n)) == span.size() + 1) return v;
    }
}

/// Forms of degree 3 vanishing at q exactly when the tangent lines at q and p meet:
/// det[h1; h2; grad Q(q); grad K(q)] for h1, h2 spanning the forms vanishing on T_p C.
Form tangent_meeting_cubic(const CurveModel& curve, const Matrix& h) {
    const std::uint32_t p = curve.prime;
    const std::vector<Form> dq = curve.generators[0].gradient(), dk = curve.generators[1].gradient();
    Form phi(p, 4, 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) continue;
            Matrix m = Matrix::from_rows(p, {h.row(0), h.row(1), PrimeField(p).unit(4, i), PrimeField(p).unit(4, j)}, 4);
            Fp c = determinant(m);
            if (!c.is_zero()) phi = phi + dq[i] * dk[j] * c;
        }
    return phi;
}

}  // namespace

SecantSetup engineered_secant_through_vertex(const CurveContext& ctx, Rng& rng) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    const auto& pts = ctx.panel();
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::size_t i = rng.below(pts.size()), j = rng.below(pts.size());
        if (i == j) continue;
        std::vector<Vec> vertex{add(pts[i], scale(pts[j], rng.nonzero(p)))};
        while (vertex.size() < g - 3) vertex.push_back(random_vector_outside(vertex, p, g, rng));
        Matrix W = Matrix::from_rows(p, kernel_basis(Matrix::from_rows(p, vertex, g)), g);
        Net net = build_net(ctx, W);
        if (net.in_D || net.in_B) continue;
        return SecantSetup{W, pts[i], pts[j]};
    }
    throw NonGenericD("could not engineer a secant through the vertex");
}

SecantSetup engineered_secant_double_section(const CurveContext& ctx, Rng& rng) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    const auto& pts = ctx.panel();
    for (int attempt = 0; attempt < 200; ++attempt) {
        const Vec& a = pts[rng.below(pts.size())];
        TangentData ta = tangent_vector(ctx.curve(), a);
        Vec b;
        if (g == 5) {
            b = pts[rng.below(pts.size())];
            if (b == a) continue;
        } else {
            Matrix h = Matrix::from_rows(p, kernel_basis(Matrix::from_rows({ta.point, ta.direction})), 4);
            Form phi = tangent_meeting_cubic(ctx.curve(), h);
            std::vector<Vec> candidates;
            try {
                candidates = common_zeros_p3(ctx.curve().generators[0], ctx.curve().generators[1], phi, rng);
            } catch (const NonGenericCoordinates&) {
                continue;
            }
            for (const auto& c : candidates)
                if (!proportional(c, a)) b = c;
            if (b.empty()) continue;
        }
        TangentData tb = tangent_vector(ctx.curve(), b);
        auto s = kernel_basis(Matrix::from_rows(p, {ta.point, ta.direction, tb.point, tb.direction}, g));
        if (s.empty()) continue;
        std::vector<Vec> rows{s[0]};
        while (rows.size() < 3) rows.push_back(random_vector_outside(rows, p, g, rng));
        Matrix W = Matrix::from_rows(p, rows, g);
        Net net = build_net(ctx, W);
        if (net.in_D || net.in_B) continue;
        return SecantSetup{W, a, b};
    }
    throw NonGenericD("could not engineer a doubly vanishing section");
}

}  // namespace canon
