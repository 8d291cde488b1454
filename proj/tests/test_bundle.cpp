#include "canon/bundle.hpp"
#include "canon/errors.hpp"
#include "canon/rng.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace canon;

namespace {

const CurveContext& ctx_for(int genus) { return genus == 4 ? fixtures::context4() : fixtures::context5(); }

struct Built {
    QuarticCone cone;
    PlaneCurve gamma;
};

const Built& generic(int genus) {
    auto make = [](int g) {
        const CurveContext& ctx = ctx_for(g);
        Rng rng(41, g == 4 ? "bundle-4" : "bundle-5");
        Net net = build_net(ctx, fixtures::random_matrix(ctx.prime(), 3, ctx.nvars(), rng));
        QuarticCone cone = reconstruct_quartic(ctx, net, rng);
        return Built{cone, gamma_equation(ctx, net)};
    };
    static const Built b4 = make(4);
    static const Built b5 = make(5);
    return genus == 4 ? b4 : b5;
}

}  // namespace

TEST_CASE("fiber quadrics are singular exactly over the plane curve") {
    Rng rng(42, "bundle-hessian");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const Built& b = generic(genus);
        auto rows = hessian_sweep(ctx, b.cone.net, b.cone, b.gamma, 100, rng);
        REQUIRE(rows.size() == 100);
        std::size_t on = 0;
        for (const auto& r : rows) {
            CHECK(r.det.is_zero() == r.gamma_value.is_zero());
            if (r.gamma_value.is_zero()) ++on;
        }
        CHECK(on == 50);
        FiberQuadric fq = fiber_quadric(ctx, b.cone.net, b.cone, rows.back().u);
        CHECK(fq.gram.rows() == ctx.nvars() - 2);
        CHECK(fq.gram == fq.gram.transpose());
        CHECK(fq.basis.cols() == ctx.nvars() - 2);
    }
}

TEST_CASE("the singular point of the fiber over pi(p) is p") {
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const Built& b = generic(genus);
        std::size_t checked = 0;
        for (std::size_t i = 0; i < 50; ++i) {
            const Vec& pt = ctx.holdout()[i];
            try {
                CHECK(steinerian_check(ctx, b.cone.net, b.cone, b.gamma, pt));
                FiberQuadric fq = fiber_quadric(ctx, b.cone.net, b.cone, b.cone.net.project(pt));
                CHECK(kernel_basis(fq.gram).size() == 1);
                ++checked;
            } catch (const NodeFiber&) {
            }
        }
        CHECK(checked >= 45);
    }
}

TEST_CASE("a node of the plane curve raises NodeFiber") {
    Rng rng(43, "bundle-node");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        SecantSetup s = engineered_secant_through_vertex(ctx, rng);
        Net net = build_net(ctx, s.W);
        QuarticCone cone = reconstruct_quartic(ctx, net, rng);
        PlaneCurve gamma = gamma_equation(ctx, net);
        CHECK(proportional(net.project(s.p), net.project(s.q)));
        CHECK(is_zero(gamma.gamma.gradient_at(net.project(s.p))));
        CHECK_THROWS_AS(steinerian_check(ctx, net, cone, gamma, s.p), NodeFiber);
    }
}

TEST_CASE("node counts match 2(g-1)(g-3)") {
    for (int genus : {4, 5}) {
        const Built& b = generic(genus);
        Rng rng(44, "bundle-nodes");
        NodeCount nc = node_count(b.gamma, rng);
        CHECK(nc.nodes == static_cast<std::size_t>(2 * (genus - 1) * (genus - 3)));
        CHECK(nc.rational_nodes <= nc.nodes);
        // The count does not depend on the coordinate change.
        Rng rng2(45, "bundle-nodes");
        CHECK(node_count(b.gamma, rng2).nodes == nc.nodes);
    }
    // Bookkeeping identity behind the formula.
    for (int g = 4; g <= 5; ++g) CHECK((2 * g - 3) * (g - 2) - g == 2 * (g - 1) * (g - 3));
}

TEST_CASE("node count on small plane curves with known singularities") {
    const std::uint32_t p = 1000003;
    PrimeField f(p);
    // Nodal cubic y^2 z - x^3 - x^2 z: one node.
    Form x = Form::linear(f.unit(3, 0)), y = Form::linear(f.unit(3, 1)), z = Form::linear(f.unit(3, 2));
    Form nodal = y * y * z - x * x * x - x * x * z;
    Rng rng(46, "bundle-small");
    CHECK(node_count(PlaneCurve{nodal, 0}, rng).nodes == 1);
    // Smooth Fermat cubic: none.
    Form fermat = x * x * x + y * y * y + z * z * z;
    CHECK(node_count(PlaneCurve{fermat, 0}, rng).nodes == 0);
    // Four general lines: six nodes.
    Form lines = x * y * (x + y + z) * (x + y * f(2) + z * f(5));
    NodeCount nc = node_count(PlaneCurve{lines, 0}, rng);
    CHECK(nc.nodes == 6);
    CHECK(nc.rational_nodes == 6);
}

TEST_CASE("sweep CSV has a fixed header and one line per row") {
    Rng rng(47, "bundle-csv");
    const CurveContext& ctx = fixtures::context4();
    const Built& b = generic(4);
    auto rows = hessian_sweep(ctx, b.cone.net, b.cone, b.gamma, 6, rng);
    std::string csv = sweep_to_csv(rows);
    CHECK(csv.rfind("u0,u1,u2,gamma,det,kernel_match\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}
