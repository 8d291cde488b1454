#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canon/canring.hpp"
#include "canon/form.hpp"
#include "canon/matrix.hpp"

namespace canon {

class Rng;

/// Where a row of a span came from.
struct Provenance {
    enum class Kind { Net, Square };
    Kind kind = Kind::Net;
    std::size_t sample = 0;  // index of the net draw, or of the quadric combination
    Matrix W;                // the net, for Kind::Net
    int vertex_index = -1;   // for cubic polars: which vertex basis vector x
};

/// Span of forms of one degree, kept as an echelon basis.
class SpanAccumulator {
public:
    SpanAccumulator(std::uint32_t prime, std::size_t nvars, std::size_t degree);

    std::uint32_t prime() const { return p_; }
    std::size_t nvars() const { return n_; }
    std::size_t degree() const { return d_; }
    std::size_t rank() const { return basis_.size(); }

    /// Adds a row; returns true when the rank grows.
    bool add(const Form& f, Provenance prov);
    bool contains(const Form& f) const;
    /// True when every row vanishes at x.
    bool all_vanish_at(const Vec& x) const;

    const std::vector<Form>& rows() const { return rows_; }
    const std::vector<Provenance>& provenance() const { return provenance_; }
    const std::vector<Vec>& basis() const { return basis_; }

    struct BatchPoint {
        std::size_t samples = 0;
        std::size_t rank = 0;
    };
    std::vector<BatchPoint> trajectory;
    std::vector<std::string> skipped;  // reconstruction errors, one entry per resampled W
    std::size_t samples_used = 0;
    bool saturated = false;

private:
    std::uint32_t p_;
    std::size_t n_, d_;
    std::vector<Form> rows_;
    std::vector<Provenance> provenance_;
    std::vector<Vec> basis_;  // reduced echelon rows
    std::vector<std::size_t> pivots_;
};

struct SpanOptions {
    std::size_t sample_count = 60;  // maximum number of nets
    std::size_t batch_size = 5;
    std::size_t stable_batches = 3;  // stop after this many batches without rank growth
    bool include_squares = true;     // F_4 only: add squares spanning Sym^2 I(2)
};

/// |F_4|: reconstructed F_W for random W outside D, plus optionally squares of quadrics.
SpanAccumulator accumulate_f4(const CurveContext& ctx, std::uint64_t seed, const SpanOptions& opts = {});

/// |F_3|: the polars P_x(F_W) for a basis of x in the vertex.
SpanAccumulator accumulate_f3(const CurveContext& ctx, std::uint64_t seed, const SpanOptions& opts = {});

struct SquaresReport {
    std::size_t checked = 0;
    std::size_t contained = 0;
    bool all_contained() const { return checked > 0 && contained == checked; }
};
/// Q^2 for each basis quadric and 20 random combinations.
SquaresReport squares_containment(const CurveContext& ctx, const SpanAccumulator& f4, Rng& rng);

struct ProbeClass {
    std::size_t probes = 0;
    std::size_t candidates = 0;  // probes at which every row vanishes
};
struct BaseLocusReport {
    std::size_t curve_points = 0;
    std::size_t curve_failures = 0;  // curve points where some row is nonzero
    ProbeClass random, quadric, vertex, secant;
    std::vector<Vec> candidates;
    bool passed() const;
};
/// Curve points must be base points; random and structured probes off C must not be.
BaseLocusReport base_locus_probe(const CurveContext& ctx, const SpanAccumulator& span, std::size_t off_curve_count,
                                 Rng& rng);

std::string trajectory_csv(const SpanAccumulator& span);

}  // namespace canon
