#include "canon/spanlab.hpp"

#include <sstream>

#include "canon/cone.hpp"
#include "canon/errors.hpp"
#include "canon/rng.hpp"

namespace canon {

SpanAccumulator::SpanAccumulator(std::uint32_t prime, std::size_t nvars, std::size_t degree)
    : p_(prime), n_(nvars), d_(degree) {}

namespace {

/// Reduces v against reduced echelon rows; returns the remainder.
Vec reduce(const std::vector<Vec>& basis, const std::vector<std::size_t>& pivots, Vec v) {
    for (std::size_t r = 0; r < basis.size(); ++r) {
        Fp c = v[pivots[r]];
        if (!c.is_zero()) v = sub(v, scale(basis[r], c));
    }
    return v;
}

}  // namespace

bool SpanAccumulator::add(const Form& f, Provenance prov) {
    if (f.prime() != p_ || f.nvars() != n_ || f.degree() != d_)
        throw std::invalid_argument("SpanAccumulator::add: form has the wrong shape");
    rows_.push_back(f);
    provenance_.push_back(std::move(prov));
    Vec rem = reduce(basis_, pivots_, f.coeffs());
    std::size_t piv = 0;
    while (piv < rem.size() && rem[piv].is_zero()) ++piv;
    if (piv == rem.size()) return false;
    rem = scale(rem, rem[piv].inverse());
    for (auto& b : basis_)
        if (!b[piv].is_zero()) b = sub(b, scale(rem, b[piv]));
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    basis_.insert(basis_.begin() + pos, rem);
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

bool SpanAccumulator::contains(const Form& f) const { return is_zero(reduce(basis_, pivots_, f.coeffs())); }

bool SpanAccumulator::all_vanish_at(const Vec& x) const {
    Vec mv = monomial_values(x, d_);
    for (const auto& b : basis_)
        if (!dot(b, mv).is_zero()) return false;
    return true;
}

namespace {

/// Squares spanning Sym^2 I(2): Q_i^2 and (Q_i + Q_j)^2.
void add_squares(const CurveContext& ctx, SpanAccumulator& acc) {
    const auto qs = ctx.ideal(2).forms(ctx.prime(), ctx.nvars());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = i; j < qs.size(); ++j) {
            Form q = i == j ? qs[i] : qs[i] + qs[j];
            Provenance prov;
            prov.kind = Provenance::Kind::Square;
            prov.sample = idx++;
            acc.add((q * q).normalized(), prov);
        }
}

/// Draws nets in sample order, reconstructs F_W and hands it to `use`, stopping
/// once the rank has been stable for the configured number of batches.
template <typename Use>
void run_nets(const CurveContext& ctx, std::uint64_t seed, const SpanOptions& opts, SpanAccumulator& acc, Use use) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    const Rng root(seed, "spans");
    const std::size_t batch = std::max<std::size_t>(opts.batch_size, 1);
    std::size_t stable = 0, last_rank = acc.rank();
    if (acc.rank() > 0) acc.trajectory.push_back({0, acc.rank()});
    for (std::size_t sample = 0; sample < opts.sample_count; ++sample) {
        Rng rng = root.split("net-" + std::to_string(sample));
        bool done = false;
        for (int attempt = 0; attempt < 20 && !done; ++attempt) {
            Matrix W(p, 3, g);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < g; ++j) W(i, j) = rng.element(p);
            try {
                Net net = build_net(ctx, W);
                if (net.in_D || net.in_B) {
                    acc.skipped.push_back("sample " + std::to_string(sample) + ": net in D");
                    continue;
                }
                QuarticCone cone = reconstruct_quartic(ctx, net, rng);
                use(cone, sample);
                done = true;
            } catch (const Error& e) {
                acc.skipped.push_back("sample " + std::to_string(sample) + ": " + e.what());
            }
        }
        if (!done) throw VerificationFailed("no usable net for sample " + std::to_string(sample));
        ++acc.samples_used;
        if (acc.samples_used % batch == 0) {
            acc.trajectory.push_back({acc.samples_used, acc.rank()});
            stable = acc.rank() == last_rank ? stable + 1 : 0;
            last_rank = acc.rank();
            if (stable >= opts.stable_batches) {
                acc.saturated = true;
                return;
            }
        }
    }
    if (acc.trajectory.empty() || acc.trajectory.back().samples != acc.samples_used)
        acc.trajectory.push_back({acc.samples_used, acc.rank()});
}

}  // namespace

SpanAccumulator accumulate_f4(const CurveContext& ctx, std::uint64_t seed, const SpanOptions& opts) {
    SpanAccumulator acc(ctx.prime(), ctx.nvars(), 4);
    if (opts.include_squares) add_squares(ctx, acc);
    run_nets(ctx, seed, opts, acc, [&](const QuarticCone& cone, std::size_t sample) {
        Provenance prov;
        prov.sample = sample;
        prov.W = cone.net.W;
        acc.add(cone.F, prov);
    });
    return acc;
}

SpanAccumulator accumulate_f3(const CurveContext& ctx, std::uint64_t seed, const SpanOptions& opts) {
    SpanAccumulator acc(ctx.prime(), ctx.nvars(), 3);
    run_nets(ctx, seed, opts, acc, [&](const QuarticCone& cone, std::size_t sample) {
        for (std::size_t k = 0; k < cone.net.vertex.size(); ++k) {
            Provenance prov;
            prov.sample = sample;
            prov.W = cone.net.W;
            prov.vertex_index = static_cast<int>(k);
            acc.add(polar_cubic(cone, cone.net.vertex[k]).normalized(), prov);
        }
    });
    return acc;
}

SquaresReport squares_containment(const CurveContext& ctx, const SpanAccumulator& f4, Rng& rng) {
    SquaresReport r;
    const auto qs = ctx.ideal(2).forms(ctx.prime(), ctx.nvars());
    auto check = [&](const Form& q) {
        ++r.checked;
        if (f4.contains(q * q)) ++r.contained;
    };
    for (const auto& q : qs) check(q);
    for (int t = 0; t < 20; ++t) {
        Form q(ctx.prime(), ctx.nvars(), 2);
        for (const auto& b : qs) q = q + b * rng.element(ctx.prime());
        if (q.is_zero()) continue;
        check(q);
    }
    return r;
}

bool BaseLocusReport::passed() const {
    return curve_points > 0 && curve_failures == 0 && random.candidates == 0 && quadric.candidates == 0 &&
           vertex.candidates == 0 && secant.candidates == 0;
}

BaseLocusReport base_locus_probe(const CurveContext& ctx, const SpanAccumulator& span, std::size_t off_curve_count,
                                 Rng& rng) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    const CurveModel& curve = ctx.curve();
    BaseLocusReport rep;

    for (const auto& x : sample_points(curve, 200, rng)) {
        ++rep.curve_points;
        if (!span.all_vanish_at(x)) ++rep.curve_failures;
    }

    auto probe = [&](ProbeClass& cls, const Vec& x) {
        if (is_zero(x) || curve.contains(x)) return false;
        ++cls.probes;
        if (span.all_vanish_at(x)) {
            ++cls.candidates;
            rep.candidates.push_back(x);
        }
        return true;
    };

    while (rep.random.probes < off_curve_count) probe(rep.random, rng.vector(p, g));

    // Points on quadrics containing C but off C.
    const auto qs = ctx.ideal(2).forms(p, g);
    while (rep.quadric.probes < 20) {
        Form q(p, g, 2);
        for (const auto& b : qs) q = q + b * rng.element(p);
        Vec base = rng.vector(p, g), dir = rng.vector(p, g);
        UniPoly r = restrict_to_line(q, base, dir);
        if (r.is_zero() || r.degree() < 1) continue;
        for (Fp t : distinct_roots(r)) probe(rep.quadric, add(base, scale(dir, t)));
    }

    // Points on the vertex of random nets.
    while (rep.vertex.probes < 20) {
        Matrix W(p, 3, g);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < g; ++j) W(i, j) = rng.element(p);
        Vec x(g, Fp(0, p));
        for (const auto& v : kernel_basis(W)) x = add(x, scale(v, rng.element(p)));
        probe(rep.vertex, x);
    }

    // Points on secant lines off C.
    while (rep.secant.probes < 20) {
        auto pts = sample_points(curve, 2, rng);
        probe(rep.secant, add(pts[0], scale(pts[1], rng.nonzero(p))));
    }
    return rep;
}

std::string trajectory_csv(const SpanAccumulator& span) {
    std::ostringstream out;
    out << "samples,rank\n";
    for (const auto& b : span.trajectory) out << b.samples << ',' << b.rank << '\n';
    return out.str();
}

}  // namespace canon
