#include "canon/cone.hpp"
#include "canon/rng.hpp"
#include "canon/spanlab.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace canon;

namespace {

const CurveContext& ctx_for(int genus) { return genus == 4 ? fixtures::context4() : fixtures::context5(); }

const SpanAccumulator& f4_nets_only(int genus) {
    static const SpanAccumulator a4 = accumulate_f4(fixtures::context4(), 1, {60, 5, 3, false});
    static const SpanAccumulator a5 = accumulate_f4(fixtures::context5(), 1, {60, 5, 3, false});
    return genus == 4 ? a4 : a5;
}

}  // namespace

TEST_CASE("accumulator keeps an echelon basis of the row span") {
    const std::uint32_t p = 1000003;
    Rng rng(51, "span-acc");
    SpanAccumulator acc(p, 3, 2);
    Form a(p, 3, 2, rng.vector(p, 6)), b(p, 3, 2, rng.vector(p, 6));
    CHECK(acc.add(a, {}));
    CHECK(acc.add(b, {}));
    CHECK_FALSE(acc.add(a * Fp(3, p) + b * Fp(7, p), {}));
    CHECK(acc.rank() == 2);
    CHECK(acc.rows().size() == 3);
    CHECK(acc.contains(a - b));
    CHECK(rank(Matrix::from_rows(p, acc.basis(), 6)) == 2);
    // Insertion order does not change the span.
    SpanAccumulator rev(p, 3, 2);
    rev.add(b, {});
    rev.add(a, {});
    CHECK(rev.basis() == acc.basis());
}

TEST_CASE("F_4 spans saturate at the expected ranks") {
    // Frozen expectations: projective dimensions 4 and 15, plus one.
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        const SpanAccumulator& acc = f4_nets_only(genus);
        CHECK(acc.saturated);
        CHECK(acc.rank() == (genus == 4 ? 5u : 16u));
        CHECK(acc.rank() < ctx.ideal(4).dim());
        Matrix i4 = Matrix::from_rows(ctx.prime(), ctx.ideal(4).basis, monomials(ctx.nvars(), 4).size());
        for (const auto& f : acc.rows()) CHECK(row_space_contains(i4, f.coeffs()));
        for (std::size_t k = 1; k < acc.trajectory.size(); ++k)
            CHECK(acc.trajectory[k].rank >= acc.trajectory[k - 1].rank);
        CHECK(acc.provenance().size() == acc.rows().size());
    }
}

TEST_CASE("saturated rank is seed independent and stable under further nets") {
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        for (std::uint64_t seed : {2u, 3u}) {
            SpanAccumulator acc = accumulate_f4(ctx, seed, {60, 5, 3, false});
            CHECK(acc.rank() == f4_nets_only(genus).rank());
        }
    }
    // Ten extra nets never enlarge the genus 4 span.
    const CurveContext& ctx = fixtures::context4();
    SpanAccumulator acc = f4_nets_only(4);
    Rng rng(52, "span-extra");
    for (int t = 0; t < 10; ++t) {
        Net net = build_net(ctx, fixtures::random_matrix(ctx.prime(), 3, 4, rng));
        CHECK_FALSE(acc.add(reconstruct_quartic(ctx, net, rng).F, {}));
    }
}

TEST_CASE("squares of quadrics lie in the span of reconstructed quartics") {
    Rng rng(53, "span-squares");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        SquaresReport r = squares_containment(ctx, f4_nets_only(genus), rng);
        CHECK(r.checked == ctx.ideal(2).dim() + 20);
        CHECK(r.all_contained());
    }
    // Complement sampling at genus 4: a random element of I(4) is not in the span.
    const CurveContext& ctx = fixtures::context4();
    Form f(ctx.prime(), 4, 4);
    for (const auto& b : ctx.ideal(4).forms(ctx.prime(), 4)) f = f + b * rng.element(ctx.prime());
    CHECK_FALSE(f4_nets_only(4).contains(f));
}

TEST_CASE("F_3 spans: rows lie in I(3) and the rank is bounded") {
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        SpanAccumulator acc = accumulate_f3(ctx, 1, {40, 5, 3, false});
        Matrix i3 = Matrix::from_rows(ctx.prime(), ctx.ideal(3).basis, monomials(ctx.nvars(), 3).size());
        for (const auto& f : acc.rows()) CHECK(row_space_contains(i3, f.coeffs()));
        CHECK(acc.rank() <= ctx.ideal(3).dim());
        CHECK(acc.rows().size() == acc.samples_used * static_cast<std::size_t>(genus - 3));
        CHECK(acc.saturated);
    }
}

TEST_CASE("base locus of the spans is the curve") {
    Rng rng(54, "span-probe");
    for (int genus : {4, 5}) {
        const CurveContext& ctx = ctx_for(genus);
        BaseLocusReport r = base_locus_probe(ctx, f4_nets_only(genus), 100, rng);
        CHECK(r.curve_points == 200);
        CHECK(r.curve_failures == 0);
        CHECK(r.random.probes == 100);
        CHECK(r.quadric.probes >= 20);
        CHECK(r.vertex.probes == 20);
        CHECK(r.secant.probes == 20);
        CHECK(r.passed());
    }
}

TEST_CASE("squares alone have the whole quadric in their base locus") {
    const CurveContext& ctx = fixtures::context4();
    SpanAccumulator squares = accumulate_f4(ctx, 1, {0, 5, 3, true});
    CHECK(squares.rank() == 1);
    Rng rng(55, "span-squares-only");
    BaseLocusReport r = base_locus_probe(ctx, squares, 20, rng);
    CHECK(r.curve_failures == 0);
    CHECK(r.quadric.candidates == r.quadric.probes);
    CHECK_FALSE(r.passed());
}

TEST_CASE("trajectory CSV") {
    std::string csv = trajectory_csv(f4_nets_only(4));
    CHECK(csv.rfind("samples,rank\n", 0) == 0);
}
