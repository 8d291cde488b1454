#include "canon/bundle.hpp"

#include <sstream>

#include "canon/errors.hpp"
#include "canon/rng.hpp"

namespace canon {

namespace {

UniPoly y_slice(const BiPoly& f, Fp x0) { return UniPoly(f.prime, f.at_x(x0)); }

/// f(x, 1) for a binary form f(x, y) given as a form in three variables with z = 0.
UniPoly at_infinity(const Form& f, std::size_t var) {
    const std::uint32_t p = f.prime();
    Vec base{Fp(0, p), Fp(1, p), Fp(0, p)}, dir{Fp(1, p), Fp(0, p), Fp(0, p)};
    if (var == 0) return restrict_to_line(f, base, dir);
    return restrict_to_line(f.partial(var - 1), base, dir);
}

bool singular_at_infinity(const Form& g) {
    const std::uint32_t p = g.prime();
    // Points (x : 1 : 0).
    UniPoly common = at_infinity(g, 0);
    for (std::size_t v = 1; v <= 3; ++v) common = gcd(common, at_infinity(g, v));
    if (common.is_zero() || common.degree() > 0) return true;
    // The point (1 : 0 : 0).
    Vec e0{Fp(1, p), Fp(0, p), Fp(0, p)};
    return g(e0).is_zero() && is_zero(g.gradient_at(e0));
}

}  // namespace

FiberQuadric fiber_quadric(const CurveContext& ctx, const Net& net, const QuarticCone& cone, const Vec& u) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    FiberQuadric fq;
    fq.u = u;
    auto vperp = kernel_basis(net.pencil_of(u));
    Matrix vertex = Matrix::from_rows(p, net.vertex, g);
    std::vector<Vec> cols;
    for (const auto& v : vperp) {
        Matrix ext = vertex;
        ext.append_row(v);
        if (rank(ext) == net.vertex.size() + 1) {
            cols.push_back(v);
            break;
        }
    }
    cols.insert(cols.end(), net.vertex.begin(), net.vertex.end());
    fq.basis = Matrix::from_columns(p, cols, g);
    Form restricted = cone.F.substitute(fq.basis);
    const std::size_t n = cols.size();
    Form quotient(p, n, 2);
    const auto& t = restricted.table();
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (restricted.coeffs()[k].is_zero()) continue;
        if (t[k][0] < 2) throw SplittingViolation("fiber restriction has a monomial of ell-degree < 2");
        Exponent e = t[k];
        e[0] -= 2;
        quotient.coeffs()[quotient.table().index_of(e)] += restricted.coeffs()[k];
    }
    fq.gram = quotient.gram();
    fq.det = determinant(fq.gram);
    return fq;
}

bool steinerian_check(const CurveContext& ctx, const Net& net, const QuarticCone& cone, const PlaneCurve& gamma,
                      const Vec& p) {
    const Vec u = net.project(p);
    std::size_t over = 0;
    for (const auto& x : ctx.panel())
        if (proportional(net.project(x), u)) ++over;
    if (over > 1) throw NodeFiber("two panel points project to the same point of Gamma");
    if (is_zero(gamma.gamma.gradient_at(u))) throw NodeFiber("pi(p) is a singular point of Gamma");
    FiberQuadric fq = fiber_quadric(ctx, net, cone, u);
    auto ker = kernel_basis(fq.gram);
    if (ker.size() != 1) return false;
    return proportional(fq.basis * ker[0], p);
}

NodeCount node_count(const PlaneCurve& gamma, Rng& rng, int max_attempts) {
    const Form& g0 = gamma.gamma;
    const std::uint32_t p = g0.prime();
    const std::size_t d = g0.degree();
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        Matrix t(p, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) t(i, j) = rng.element(p);
        if (determinant(t).is_zero()) continue;
        Form g = g0.substitute(t);
        if (g(Vec{Fp(0, p), Fp(1, p), Fp(0, p)}).is_zero() || singular_at_infinity(g)) continue;

        BiPoly f = dehomogenize_ternary(g);
        if (f.degree_y() != static_cast<int>(d)) continue;
        BiPoly fx = f.d_dx(), fy = f.d_dy();
        UniPoly r1 = resultant_y(f, fx), r2 = resultant_y(f, fy);
        if (r2.is_zero()) continue;
        UniPoly h = gcd(r1, r2);
        UniPoly hsf = squarefree_part(h);
        if (hsf.degree() <= 0) return NodeCount{0, 0, attempt};
        // Each singular abscissa must be a root of multiplicity exactly 2 of the discriminant.
        auto [quo, rem] = divmod(r2, hsf * hsf);
        if (!rem.is_zero() || gcd(quo, hsf).degree() > 0) continue;
        bool valid = true;
        std::size_t rational = 0;
        for (Fp x0 : distinct_roots(hsf)) {
            UniPoly common = gcd(gcd(y_slice(f, x0), y_slice(fx, x0)), y_slice(fy, x0));
            if (common.degree() != 1) valid = false;
            ++rational;
        }
        if (!valid) continue;
        return NodeCount{static_cast<std::size_t>(hsf.degree()), rational, attempt};
    }
    throw NonGenericCoordinates("no generic coordinate system found for node counting");
}

std::vector<SweepRow> hessian_sweep(const CurveContext& ctx, const Net& net, const QuarticCone& cone,
                                    const PlaneCurve& gamma, std::size_t count, Rng& rng) {
    std::vector<SweepRow> rows;
    const std::uint32_t p = ctx.prime();
    for (const auto& x : ctx.panel()) {
        if (rows.size() >= count / 2) break;
        SweepRow r;
        r.u = normalize_first_nonzero(net.project(x));
        r.gamma_value = gamma.gamma(r.u);
        r.det = fiber_quadric(ctx, net, cone, r.u).det;
        try {
            r.kernel_match = steinerian_check(ctx, net, cone, gamma, x);
        } catch (const NodeFiber&) {
        }
        rows.push_back(r);
    }
    while (rows.size() < count) {
        Vec u = rng.vector(p, 3);
        if (is_zero(u)) continue;
        SweepRow r;
        r.u = normalize_first_nonzero(u);
        r.gamma_value = gamma.gamma(r.u);
        r.det = fiber_quadric(ctx, net, cone, r.u).det;
        rows.push_back(r);
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "u0,u1,u2,gamma,det,kernel_match\n";
    for (const auto& r : rows) {
        out << r.u[0] << ',' << r.u[1] << ',' << r.u[2] << ',' << r.gamma_value << ',' << r.det << ',';
        if (r.kernel_match) out << (*r.kernel_match ? 1 : 0);
        out << '\n';
    }
    return out.str();
}

}  // namespace canon
