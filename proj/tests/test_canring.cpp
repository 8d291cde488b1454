#include "canon/canring.hpp"
#include "canon/errors.hpp"
#include "canon/rng.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace canon;

TEST_CASE("graded piece ranks and ideal dimensions follow Riemann-Roch") {
    // Frozen values: C(g-1+n, n) - (2n-1)(g-1).
    const std::size_t want[2][3] = {{1, 5, 14}, {3, 15, 42}};
    for (const CurveContext* ctx : {&fixtures::context4(), &fixtures::context5()}) {
        const int gi = ctx->genus() - 4;
        CHECK(ctx->piece(1).dim() == ctx->nvars());
        for (std::size_t n = 2; n <= 4; ++n) {
            CHECK(ctx->piece(n).dim() == (2 * n - 1) * (ctx->nvars() - 1));
            CHECK(ctx->ideal(n).dim() == want[gi][n - 2]);
            CHECK(expected_ideal_dim(ctx->genus(), n) == want[gi][n - 2]);
            // Independent route: kernel of the holdout evaluation matrix.
            Matrix hold = evaluation_matrix(ctx->holdout(), n, ctx->nvars());
            auto ker = kernel_basis(hold);
            CHECK(ker.size() == want[gi][n - 2]);
            CHECK(row_space_basis(Matrix::from_rows(ctx->prime(), ker, hold.cols())) == ctx->ideal(n).basis);
        }
        CHECK(ctx->panel().size() == 4 * binomial(ctx->nvars() + 3, 4));
        CHECK(ctx->panel().size() + ctx->holdout().size() >= 200);
    }
}

TEST_CASE("a 21-point evaluation matrix of quartic monomials has a 14-dimensional kernel at genus 4") {
    const CurveContext& ctx = fixtures::context4();
    std::vector<Vec> pts(ctx.holdout().begin(), ctx.holdout().begin() + 21);
    Matrix m = evaluation_matrix(pts, 4, 4);
    CHECK(m.cols() == 35);
    CHECK(kernel_basis(m).size() == 14);
}

TEST_CASE("ideal elements vanish and ideal pieces are closed under multiplication by linear forms") {
    for (const CurveContext* ctx : {&fixtures::context4(), &fixtures::context5()}) {
        const std::uint32_t p = ctx->prime();
        const std::size_t g = ctx->nvars();
        for (std::size_t n = 2; n <= 4; ++n)
            for (const Form& f : ctx->ideal(n).forms(p, g)) {
                CHECK(ctx->vanishes_on_curve(f));
                CHECK(is_zero(ctx->class_of(f).values));
            }
        for (std::size_t n = 2; n <= 3; ++n) {
            Matrix next = Matrix::from_rows(p, ctx->ideal(n + 1).basis, monomials(g, n + 1).size());
            for (const Form& f : ctx->ideal(n).forms(p, g))
                for (std::size_t i = 0; i < g; ++i) {
                    Exponent e(g, 0);
                    e[i] = 1;
                    CHECK(row_space_contains(next, (f * Form::monomial(p, e, Fp(1, p))).coeffs()));
                }
        }
    }
}

TEST_CASE("multiplication of classes") {
    const CurveContext& ctx = fixtures::context5();
    const std::uint32_t p = ctx.prime();
    Rng rng(8, "multiply");
    auto random_class = [&](std::size_t d) { return ctx.class_of(Form(p, 5, d, rng.vector(p, monomials(5, d).size()))); };
    RingClass one{0, Vec(ctx.panel().size(), Fp(1, p))};
    RingClass b = random_class(2);
    CHECK(multiply(one, b) == b);
    for (int i = 0; i < 100; ++i) {
        RingClass x = random_class(1), y = random_class(1), z = random_class(1);
        RingClass left = multiply(multiply(x, y), z), right = multiply(x, multiply(y, z));
        CHECK(left == right);
        CHECK(left.degree == 3);
        CHECK(ctx.is_valid_class(left));
    }
    // A random panel vector is not a class of degree 2.
    CHECK_FALSE(ctx.is_valid_class(RingClass{2, rng.vector(p, ctx.panel().size())}));
}

TEST_CASE("coefficient reduction round-trips through the holdout panel") {
    for (const CurveContext* ctx : {&fixtures::context4(), &fixtures::context5()}) {
        const std::uint32_t p = ctx->prime();
        const std::size_t g = ctx->nvars();
        Rng rng(9, "roundtrip");
        for (std::size_t n = 1; n <= 4; ++n) {
            const GradedPiece& gp = ctx->piece(n);
            Vec c = rng.vector(p, monomials(g, n).size());
            Vec r = gp.reduction * c;
            CHECK(r == ctx->coordinates(ctx->class_of_coeffs(n, c)));
            // Re-interpolate on standard monomials and compare on holdout points.
            Vec lifted(c.size(), Fp(0, p));
            for (std::size_t k = 0; k < gp.standard.size(); ++k) lifted[gp.standard[k]] = r[k];
            Form f(p, g, n, c), h(p, g, n, lifted);
            for (const auto& x : ctx->holdout()) CHECK(f(x) == h(x));
        }
    }
}

TEST_CASE("Petri dichotomy") {
    PetriResult r4 = petri_check(fixtures::context4());
    CHECK_FALSE(r4.surjective);
    CHECK(r4.product_rank == 4);
    CHECK(r4.ideal3_dim == 5);

    PetriResult r5 = petri_check(fixtures::context5());
    CHECK(r5.surjective);
    CHECK(r5.product_rank == 15);

    for (std::uint64_t seed = 20; seed < 25; ++seed) {
        CurveContext ctx(generate_curve(5, 1000003, seed));
        PetriResult r = petri_check(ctx);
        CHECK(r.product_rank == std::min<std::size_t>(15, r.ideal3_dim));
        CHECK(r.surjective);
    }
}

TEST_CASE("context rejects undersized panels") {
    CHECK_THROWS_AS(CurveContext(fixtures::context4().curve(), 20, 10), ConfigError);
}
