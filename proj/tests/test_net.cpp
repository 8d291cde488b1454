#include "canon/errors.hpp"
#include "canon/cone.hpp"
#include "canon/net.hpp"
#include "canon/rng.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace canon;

namespace {

const CurveContext& ctx_for(int genus) { return genus == 4 ? fixtures::context4() : fixtures::context5(); }

struct Setup {
    Net net;
    PlaneCurve gamma;
};

const Setup& generic(int genus) {
    static const Setup s4 = [] {
        Rng rng(21, "net-generic-4");
        Net n = build_net(fixtures::context4(), fixtures::random_matrix(1000003, 3, 4, rng));
        return Setup{n, gamma_equation(fixtures::context4(), n)};
    }();
    static const Setup s5 = [] {
        Rng rng(21, "net-generic-5");
        Net n = build_net(fixtures::context5(), fixtures::random_matrix(1000003, 3, 5, rng));
        return Setup{n, gamma_equation(fixtures::context5(), n)};
    }();
    return genus == 4 ? s4 : s5;
}

}  // namespace

TEST_CASE("vertex is the annihilator and the restriction map is square") {
    Rng rng(22, "net-vertex");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const std::size_t g = ctx.nvars();
        for (int t = 0; t < 5; ++t) {
            Net net = build_net(ctx, fixtures::random_matrix(ctx.prime(), 3, g, rng));
            CHECK(net.vertex.size() == g - 3);
            for (const auto& x : net.vertex) CHECK(is_zero(net.W * x));
            CHECK(net.res.rows() == (g - 2) * (g - 3) / 2);
            CHECK(net.res.cols() == (g - 2) * (g - 3) / 2);
            CHECK(net.res.rows() == ctx.ideal(2).dim());
            CHECK_FALSE(net.in_D);
            CHECK_FALSE(net.in_B);
            CHECK(rank(net.res) == net.res.rows());
        }
    }
}

TEST_CASE("genus 4 degeneracy is the vertex lying on the quadric") {
    const CurveContext& ctx = fixtures::context4();
    const Form q = ctx.ideal(2).forms(ctx.prime(), 4)[0];
    Rng rng(23, "net-d4");
    for (int t = 0; t < 6; ++t) {
        Matrix W = t % 2 ? engineered_d_net(ctx, rng) : fixtures::random_matrix(ctx.prime(), 3, 4, rng);
        Net net = build_net(ctx, W);
        CHECK(net.in_D == q(net.vertex[0]).is_zero());
        CHECK(net.in_D == (t % 2 == 1));
        if (net.in_D) {
            auto vq = vertex_quadric(ctx, net);
            REQUIRE(vq.has_value());
            CHECK(*vq == q.normalized());
        }
    }
}

TEST_CASE("genus 5 engineered degenerate nets have a one-dimensional restriction kernel") {
    const CurveContext& ctx = fixtures::context5();
    Rng rng(24, "net-d5");
    for (int t = 0; t < 3; ++t) {
        Net net = build_net(ctx, engineered_d_net(ctx, rng));
        CHECK(net.in_D);
        REQUIRE(net.res_kernel.size() == 1);
        auto vq = vertex_quadric(ctx, net);
        REQUIRE(vq.has_value());
        CHECK(ctx.vanishes_on_curve(*vq));
        // The quadric contains the vertex line.
        for (int k = 0; k < 4; ++k) {
            Vec x = add(scale(net.vertex[0], rng.element(ctx.prime())), scale(net.vertex[1], rng.element(ctx.prime())));
            CHECK((*vq)(x).is_zero());
        }
    }
}

TEST_CASE("rank-deficient nets are rejected") {
    const CurveContext& ctx = fixtures::context4();
    Rng rng(25, "net-rank");
    Matrix W = fixtures::random_matrix(ctx.prime(), 3, 4, rng);
    for (std::size_t j = 0; j < 4; ++j) W(2, j) = W(0, j) + W(1, j);
    CHECK_THROWS_AS(build_net(ctx, W), RankDeficientW);
    CHECK_THROWS_AS(build_net(ctx, fixtures::random_matrix(ctx.prime(), 2, 4, rng)), RankDeficientW);
}

TEST_CASE("a net with a base point on the curve is flagged in B and in D") {
    Rng rng(26, "net-basepoint");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const std::size_t g = ctx.nvars();
        auto hp = kernel_basis(Matrix::from_rows({ctx.panel()[0]}));
        std::vector<Vec> rows;
        for (int r = 0; r < 3; ++r) {
            Vec v(g, Fp(0, ctx.prime()));
            for (const auto& h : hp) v = add(v, scale(h, rng.element(ctx.prime())));
            rows.push_back(v);
        }
        Net net = build_net(ctx, Matrix::from_rows(ctx.prime(), rows, g));
        CHECK(net.in_B);
        CHECK(net.in_D);
        CHECK_THROWS_AS(gamma_equation(ctx, net), AmbiguousFit);
    }
}

TEST_CASE("the plane curve has degree 2g-2 and passes through fresh projections") {
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const Setup& s = generic(genus);
        CHECK(s.gamma.gamma.degree() == static_cast<std::size_t>(2 * genus - 2));
        CHECK(s.gamma.gamma.nvars() == 3);
        for (const auto& x : ctx.holdout()) CHECK(s.gamma.gamma(s.net.project(x)).is_zero());
        Rng rng(27, "net-gamma");
        for (const auto& x : sample_points(ctx.curve(), 20, rng)) CHECK(s.gamma.gamma(s.net.project(x)).is_zero());
    }
}

TEST_CASE("oracle preconditions are reported by reason") {
    Rng rng(28, "net-oracle-pre");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const Setup& s = generic(genus);
        auto reason = [&](const Vec& b) {
            try {
                fw_oracle(ctx, s.net, s.gamma, b);
            } catch (const DegenerateInput& e) {
                return static_cast<int>(e.reason());
            }
            return -1;
        };
        CHECK(reason(ctx.holdout()[0]) == static_cast<int>(DegenerateInput::Reason::OnGammaFiber));
        CHECK(reason(s.net.vertex[0]) == static_cast<int>(DegenerateInput::Reason::InVertex));
        Vec b = rng.vector(ctx.prime(), ctx.nvars());
        CHECK_THROWS_AS(polar_oracle(ctx, s.net, s.gamma, Vec(ctx.nvars(), Fp(0, ctx.prime())), b), DegenerateInput);
        CHECK_THROWS_AS(polar_oracle(ctx, s.net, s.gamma, b, b), DegenerateInput);
    }
}

TEST_CASE("oracle values are independent of representatives and scalars") {
    Rng rng(29, "net-oracle-robust");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const std::uint32_t p = ctx.prime();
        const Setup& s = generic(genus);
        std::size_t falses = 0;
        for (int t = 0; t < 10; ++t) {
            Vec b = rng.vector(p, ctx.nvars());
            OracleWitness wit = fw_oracle(ctx, s.net, s.gamma, b);
            if (!wit.value) ++falses;
            // b annihilates V_b, so shifting y by V_b leaves both pairings alone.
            CHECK(dot(b, wit.pencil.V.row(0)).is_zero());
            CHECK(dot(b, wit.pencil.V.row(1)).is_zero());
            Vec shifted = add(wit.y, scale(wit.pencil.V.row(0), rng.nonzero(p)));
            shifted = add(shifted, scale(wit.pencil.V.row(1), rng.nonzero(p)));
            CHECK(dot(b, shifted) == dot(b, wit.y));
            for (const auto& x : s.net.vertex) CHECK(dot(x, shifted) == dot(x, wit.y));
            // Rescaled b and a different lift w give the same booleans.
            CHECK(fw_oracle_value(ctx, s.net, s.gamma, scale(b, rng.nonzero(p))) == wit.value);
            Vec w2 = add(scale(wit.w, rng.nonzero(p)), scale(wit.pencil.V.row(0), rng.element(p)));
            CupGram cg2 = cup_gram(ctx, wit.pencil, w2);
            Vec y2 = solve_consistent(cg2.gram, b).particular;
            CHECK(dot(b, y2).is_zero() == wit.value);
            for (const auto& x : s.net.vertex)
                CHECK(dot(x, y2).is_zero() == polar_oracle(ctx, s.net, s.gamma, x, b));
        }
        CHECK(falses == 10);
    }
}
