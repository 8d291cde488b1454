#include <algorithm>
#include <array>

#include "canon/cone.hpp"
#include "canon/errors.hpp"
#include "canon/net.hpp"
#include "canon/pencil.hpp"
#include "canon/rng.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace canon;

namespace {

const CurveContext& ctx_for(int genus) { return genus == 4 ? fixtures::context4() : fixtures::context5(); }

Vec lift(const PencilData& pd, const Vec& y, std::size_t g) {
    Vec v(g, Fp(0, y[0].prime()));
    for (std::size_t a = 0; a < pd.complement.size(); ++a) v[pd.complement[a]] = y[a];
    return v;
}

}  // namespace

TEST_CASE("generic pencils have a codimension-one product space") {
    Rng rng(11, "pencil-generic");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const std::size_t g = ctx.nvars();
        for (int t = 0; t < 5; ++t) {
            PencilData pd = build_pencil(ctx, fixtures::random_matrix(ctx.prime(), 2, g, rng));
            CHECK(pd.vbar.size() == ctx.piece(3).dim());
            CHECK(pd.product_rank + 1 == ctx.piece(3).dim());
            CHECK(pd.complement.size() == g - 2);
            // First nonzero coordinate normalized to 1.
            auto it = std::find_if(pd.vbar.begin(), pd.vbar.end(), [](Fp x) { return !x.is_zero(); });
            REQUIRE(it != pd.vbar.end());
            CHECK(it->value() == 1);
        }
    }
    // Frozen: 2 * 9 - 4 = 14 inside dim R_3 = 15 at genus 4.
    PencilData pd = build_pencil(fixtures::context4(), fixtures::random_matrix(1000003, 2, 4, rng));
    CHECK(pd.product_rank == 14);
    CHECK(fixtures::context4().piece(3).dim() == 15);
}

TEST_CASE("vbar annihilates V.R_2 computed through ring classes") {
    Rng rng(12, "pencil-annihilates");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const std::uint32_t p = ctx.prime();
        const std::size_t g = ctx.nvars();
        PencilData pd = build_pencil(ctx, fixtures::random_matrix(p, 2, g, rng));
        for (std::size_t r = 0; r < 2; ++r) {
            RingClass s = ctx.class_of(Form::linear(pd.V.row(r)));
            for (int t = 0; t < 5; ++t) {
                Form q(p, g, 2, rng.vector(p, monomials(g, 2).size()));
                CHECK(dot(pd.vbar, ctx.coordinates(multiply(s, ctx.class_of(q)))).is_zero());
            }
        }
    }
}

TEST_CASE("a simple base point keeps codimension one, a double base point does not") {
    // With base point p, V.H0(2K) = H0(3K - p): still a hyperplane, cut out by evaluation at p.
    // With V vanishing on p and its tangent direction the image has codimension 2.
    Rng rng(13, "pencil-basepoint");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const std::uint32_t p = ctx.prime();
        const std::size_t g = ctx.nvars();
        const Vec& pt = ctx.holdout()[3];
        auto pencil_in = [&](const std::vector<Vec>& span) {
            std::vector<Vec> rows;
            for (int r = 0; r < 2; ++r) {
                Vec v(g, Fp(0, p));
                for (const auto& h : span) v = add(v, scale(h, rng.element(p)));
                rows.push_back(v);
            }
            return Matrix::from_rows(p, rows, g);
        };
        PencilData simple = build_pencil(ctx, pencil_in(kernel_basis(Matrix::from_rows({pt}))));
        CHECK(proportional(simple.functional, monomial_values(pt, 3)));

        TangentData t = tangent_vector(ctx.curve(), pt);
        Matrix twice = pencil_in(kernel_basis(Matrix::from_rows({t.point, t.direction})));
        CHECK_THROWS_AS(build_pencil(ctx, twice), InadmissiblePencil);
    }
}

TEST_CASE("the trilinear form is symmetric and factors through the quotient by V") {
    Rng rng(14, "pencil-trilinear");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const std::uint32_t p = ctx.prime();
        const std::size_t g = ctx.nvars();
        PencilData pd = build_pencil(ctx, fixtures::random_matrix(p, 2, g, rng));
        for (int t = 0; t < 20; ++t) {
            std::array<Vec, 3> v{rng.vector(p, g), rng.vector(p, g), rng.vector(p, g)};
            Fp base = trilinear(pd, v[0], v[1], v[2]);
            std::array<int, 3> perm{0, 1, 2};
            while (std::next_permutation(perm.begin(), perm.end()))
                CHECK(trilinear(pd, v[perm[0]], v[perm[1]], v[perm[2]]) == base);
            Vec s = add(scale(pd.V.row(0), rng.element(p)), scale(pd.V.row(1), rng.element(p)));
            CHECK(trilinear(pd, s, v[1], v[2]).is_zero());
            // Reduction modulo V changes nothing.
            CHECK(trilinear(pd, reduce_mod_pencil(pd, v[0]), v[1], v[2]) == base);
        }
    }
}

TEST_CASE("psi cubic matches the trilinear form on the complement") {
    Rng rng(15, "pencil-psi");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const std::uint32_t p = ctx.prime();
        const std::size_t g = ctx.nvars();
        PencilData pd = build_pencil(ctx, fixtures::random_matrix(p, 2, g, rng));
        Form psi = psi_cubic(pd);
        CHECK(psi.nvars() == g - 2);
        CHECK(psi.degree() == 3);
        for (int t = 0; t < 10; ++t) {
            Vec y = rng.vector(p, g - 2);
            Vec c = lift(pd, y, g);
            CHECK(psi(y) == trilinear(pd, c, c, c));
        }
    }
}

TEST_CASE("cup-product Gram: symmetry, kernel, polar identity and class route") {
    Rng rng(16, "pencil-cup");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const std::uint32_t p = ctx.prime();
        const std::size_t g = ctx.nvars();
        for (int t = 0; t < 4; ++t) {
            PencilData pd = build_pencil(ctx, fixtures::random_matrix(p, 2, g, rng));
            Vec w = rng.vector(p, g);
            CupGram cg = cup_gram(ctx, pd, w);
            CHECK(cg.gram == cg.gram.transpose());
            CHECK(cg.corank == 2);
            CHECK(is_zero(cg.gram * pd.V.row(0)));
            CHECK(is_zero(cg.gram * pd.V.row(1)));
            CHECK(cup_gram_via_classes(ctx, pd, w) == cg.gram);
            for (int k = 0; k < 5; ++k) {
                Vec s = rng.vector(p, g), u = rng.vector(p, g);
                CHECK(dot(s, cg.gram * u) == trilinear(pd, w, s, u));
            }
        }
    }
}

TEST_CASE("Hessian of psi equals six times the complement Gram determinant") {
    Rng rng(17, "pencil-hessian");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const std::uint32_t p = ctx.prime();
        const std::size_t g = ctx.nvars();
        PencilData pd = build_pencil(ctx, fixtures::random_matrix(p, 2, g, rng));
        Form psi = psi_cubic(pd);
        Form hess = hessian_determinant(psi);
        CHECK(hess.degree() == g - 2);
        Fp six_pow(1, p);
        for (std::size_t i = 0; i < g - 2; ++i) six_pow = six_pow * Fp(6, p);
        for (int t = 0; t < 10; ++t) {
            Vec y = rng.vector(p, g - 2);
            Vec w = lift(pd, y, g);
            Matrix cg = complement_gram(pd, cup_gram(ctx, pd, w));
            CHECK(hess(y) == six_pow * determinant(cg));
        }
    }
}

TEST_CASE("corank jumps exactly on the degeneracy divisor") {
    Rng rng(18, "pencil-corank");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const std::uint32_t p = ctx.prime();
        const std::size_t g = ctx.nvars();
        std::size_t in_d = 0;
        for (int t = 0; t < 12; ++t) {
            Matrix W = t % 3 == 0 ? engineered_d_net(ctx, rng) : fixtures::random_matrix(p, 3, g, rng);
            Net net = build_net(ctx, W);
            Matrix V = Matrix::from_rows(p, {net.W.row(0), net.W.row(1)}, g);
            PencilData pd = build_pencil(ctx, V);
            const Vec& w = net.W.row(2);
            CupGram cg = cup_gram(ctx, pd, w);
            CHECK(cg.corank >= 2);
            CHECK((cg.corank >= 3) == net.in_D);
            CHECK(hessian_psi_membership(ctx, pd, w) == net.in_D);
            if (net.in_D) ++in_d;
        }
        CHECK(in_d == 4);
    }
}
