#include "canon/net.hpp"

#include "canon/errors.hpp"

namespace canon {

using Reason = DegenerateInput::Reason;

Matrix Net::vertex_matrix() const { return Matrix::from_columns(W.prime(), vertex, W.cols()); }

Matrix Net::pencil_of(const Vec& u) const {
    auto a = kernel_basis(Matrix::from_rows({u}));
    if (a.size() != 2) throw std::invalid_argument("Net::pencil_of: u must be nonzero");
    return Matrix::from_rows(W.prime(), {W.transpose() * a[0], W.transpose() * a[1]}, W.cols());
}

Net build_net(const CurveContext& ctx, const Matrix& W) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    if (W.rows() != 3 || W.cols() != g) throw RankDeficientW("W must be 3 x g");
    Echelon e = rref(W);
    if (e.rank() != 3) throw RankDeficientW("W has rank " + std::to_string(e.rank()));
    Net net;
    net.W = e.reduced;
    net.vertex = row_space_basis(Matrix::from_rows(p, kernel_basis(net.W), g));

    for (const auto* pts : {&ctx.panel(), &ctx.holdout()})
        for (const auto& x : *pts)
            if (is_zero(net.W * x)) net.in_B = true;

    // Restrict I(2) to the vertex: both sides have dimension (g-2)(g-3)/2.
    Matrix a = net.vertex_matrix();
    std::vector<Vec> rows;
    for (const Form& q : ctx.ideal(2).forms(p, g)) rows.push_back(q.substitute(a).coeffs());
    net.res = Matrix::from_rows(p, rows, binomial(g - 2, 2));
    net.res_kernel = kernel_basis(net.res.transpose());
    net.in_D = !net.res_kernel.empty();
    return net;
}

std::optional<Form> vertex_quadric(const CurveContext& ctx, const Net& net) {
    if (net.res_kernel.size() != 1) return std::nullopt;
    const auto qs = ctx.ideal(2).forms(ctx.prime(), ctx.nvars());
    Form q(ctx.prime(), ctx.nvars(), 2);
    for (std::size_t i = 0; i < qs.size(); ++i) q = q + qs[i] * net.res_kernel[0][i];
    return q.normalized();
}

PlaneCurve gamma_equation(const CurveContext& ctx, const Net& net) {
    if (net.in_B) throw AmbiguousFit("W has a base point on C; projection is not a morphism");
    const std::size_t deg = 2 * ctx.nvars() - 2;
    const std::size_t need = binomial(2 * ctx.nvars(), 2) + 10;
    std::vector<Vec> projected;
    for (const auto& x : ctx.panel()) projected.push_back(net.project(x));
    if (projected.size() < need) throw AmbiguousFit("too few panel points for the plane-curve fit");
    auto ker = kernel_basis(evaluation_matrix(projected, deg, 3));
    if (ker.size() != 1) throw AmbiguousFit("fit kernel has dimension " + std::to_string(ker.size()));
    return PlaneCurve{Form(ctx.prime(), 3, deg, normalize_first_nonzero(ker[0])), projected.size()};
}

OracleWitness fw_oracle(const CurveContext& ctx, const Net& net, const PlaneCurve& gamma, const Vec& b) {
    Vec u = net.project(b);
    if (is_zero(u)) throw DegenerateInput(Reason::InVertex, "b lies in the vertex");
    if (gamma.gamma(u).is_zero()) throw DegenerateInput(Reason::OnGammaFiber, "pi(b) lies on Gamma");
    OracleWitness wit;
    wit.b = b;
    try {
        wit.pencil = build_pencil(ctx, net.pencil_of(u));
    } catch (const InadmissiblePencil& e) {
        throw DegenerateInput(Reason::InadmissiblePencil, e.what());
    }
    std::size_t i = 0;
    while (u[i].is_zero()) ++i;
    wit.w = net.W.row(i);
    wit.cup = cup_gram(ctx, wit.pencil, wit.w);
    if (wit.cup.corank != 2) throw DegenerateInput(Reason::CorankJump, "corank " + std::to_string(wit.cup.corank));
    try {
        wit.y = solve_consistent(wit.cup.gram, b).particular;
    } catch (const InconsistentSystem&) {
        throw VerificationFailed("b does not annihilate V_b although it should by construction");
    }
    wit.value = dot(b, wit.y).is_zero();
    return wit;
}

bool fw_oracle_value(const CurveContext& ctx, const Net& net, const PlaneCurve& gamma, const Vec& b) {
    return fw_oracle(ctx, net, gamma, b).value;
}

bool polar_oracle(const CurveContext& ctx, const Net& net, const PlaneCurve& gamma, const Vec& x, const Vec& b) {
    if (x.size() != net.nvars() || is_zero(x) || !is_zero(net.W * x))
        throw DegenerateInput(Reason::NotVertexVector, "x must be a nonzero vertex vector");
    return dot(x, fw_oracle(ctx, net, gamma, b).y).is_zero();
}

}  // namespace canon
