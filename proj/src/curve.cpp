#include "canon/curve.hpp"

#include <set>

#include "canon/errors.hpp"
#include "canon/rng.hpp"
#include "canon/unipoly.hpp"

namespace canon {

namespace {

Form random_form(std::uint32_t p, std::size_t nvars, std::size_t degree, Rng& rng) {
    return Form(p, nvars, degree, rng.vector(p, monomials(nvars, degree).size()));
}

/// A rational point of the quadric q, found on random lines.
Vec point_on_quadric(const Form& q, Rng& rng) {
    const std::uint32_t p = q.prime();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Vec base = rng.vector(p, q.nvars()), dir = rng.vector(p, q.nvars());
        UniPoly r = restrict_to_line(q, base, dir);
        if (r.is_zero() || r.degree() < 1) continue;
        auto roots = distinct_roots(r);
        if (roots.empty()) continue;
        Vec x = add(base, scale(dir, roots.front()));
        if (!is_zero(x)) return normalize_first_nonzero(x);
    }
    throw InsufficientPoints("no rational point found on the quadric");
}

/// Columns span the hyperplane {h . z = 0}.
Matrix hyperplane_basis(const Vec& h) {
    auto ker = kernel_basis(Matrix::from_rows({h}));
    return Matrix::from_columns(h[0].prime(), ker, h.size());
}

class PointSet {
public:
    explicit PointSet(const CurveModel& c) : curve_(c) {}
    void offer(Vec x) {
        if (is_zero(x) || !curve_.contains(x)) return;
        x = normalize_first_nonzero(std::move(x));
        if (seen_.insert(x).second) out_.push_back(std::move(x));
    }
    std::size_t size() const { return out_.size(); }
    std::vector<Vec> take(std::size_t count) {
        out_.resize(std::min(count, out_.size()));
        return std::move(out_);
    }

private:
    const CurveModel& curve_;
    std::set<Vec> seen_;
    std::vector<Vec> out_;
};

std::vector<Vec> sample_genus4(const CurveModel& curve, std::size_t count, Rng& rng) {
    const std::uint32_t p = curve.prime;
    const Form& q = curve.generators[0];
    const Form& k = curve.generators[1];
    const Vec x0 = point_on_quadric(q, rng);
    const Matrix b = q.gram();
    // Lines through x0 meet Q again at x(v) = Q(v) x0 - 2 B(x0, v) v.
    auto project = [&](const Vec& v) {
        Fp qv = q(v);
        Fp bxv = dot(x0, b * v);
        return sub(scale(x0, qv), scale(v, bxv + bxv));
    };
    // v runs over the plane a + s b + t c; for fixed s, K(x(v)) is a sextic in t.
    const Vec a = rng.vector(p, 4), bv = rng.vector(p, 4), c = rng.vector(p, 4);
    PointSet found(curve);
    const std::size_t budget = 40 * count + 2000;
    Vec ts;
    for (std::uint32_t j = 0; j <= 6; ++j) ts.push_back(Fp(j, p));
    for (std::size_t iter = 0; iter < budget && found.size() < count; ++iter) {
        Fp s = rng.element(p);
        Vec base = add(a, scale(bv, s));
        Vec ys;
        for (Fp t : ts) ys.push_back(k(project(add(base, scale(c, t)))));
        UniPoly sextic = interpolate(ts, ys);
        if (sextic.is_zero()) continue;
        for (Fp t : distinct_roots(sextic)) found.offer(project(add(base, scale(c, t))));
    }
    if (found.size() < count) throw InsufficientPoints("genus-4 sampling budget exhausted");
    return found.take(count);
}

std::vector<Vec> sample_genus5(const CurveModel& curve, std::size_t count, Rng& rng) {
    const std::uint32_t p = curve.prime;
    PointSet found(curve);
    const std::size_t budget = 20 * count + 500;
    for (std::size_t iter = 0; iter < budget && found.size() < count; ++iter) {
        Vec h = rng.vector(p, 5);
        if (is_zero(h)) continue;
        try {
            for (auto& x : hyperplane_points(curve, h, rng)) found.offer(x);
        } catch (const NonGenericCoordinates&) {
        }
    }
    if (found.size() < count) throw InsufficientPoints("genus-5 sampling budget exhausted");
    return found.take(count);
}

}  // namespace

bool CurveModel::contains(const Vec& x) const {
    for (const auto& f : generators)
        if (!f(x).is_zero()) return false;
    return true;
}

CurveModel make_curve(int genus, std::uint32_t prime, std::uint64_t seed, std::vector<Form> generators) {
    if (genus != 4 && genus != 5) throw UnsupportedGenus("genus must be 4 or 5, got " + std::to_string(genus));
    const std::vector<std::size_t> degrees = genus == 4 ? std::vector<std::size_t>{2, 3} : std::vector<std::size_t>{2, 2, 2};
    if (generators.size() != degrees.size()) throw ConfigError("generators: wrong number of forms for the genus");
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const Form& f = generators[i];
        if (f.nvars() != static_cast<std::size_t>(genus) || f.degree() != degrees[i] || f.prime() != prime)
            throw ConfigError("generators[" + std::to_string(i) + "]: wrong shape or prime");
    }
    return CurveModel{genus, prime, seed, std::move(generators)};
}

CurveModel generate_curve(int genus, std::uint32_t prime, std::uint64_t seed) {
    if (genus != 4 && genus != 5) throw UnsupportedGenus("genus must be 4 or 5, got " + std::to_string(genus));
    if (prime < 1000000 || !is_prime(prime)) throw ConfigError("prime: must be a prime >= 10^6");
    Rng root(seed, "curve");
    const std::size_t g = static_cast<std::size_t>(genus);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Rng rng = root.split("attempt-" + std::to_string(attempt));
        std::vector<Form> gens;
        if (genus == 4) {
            gens.push_back(random_form(prime, 4, 2, rng));
            gens.push_back(random_form(prime, 4, 3, rng));
        } else {
            for (int i = 0; i < 3; ++i) gens.push_back(random_form(prime, 5, 2, rng));
        }
        CurveModel curve = make_curve(genus, prime, seed, std::move(gens));
        try {
            Rng srng = rng.split("smoothness");
            auto pts = sample_points(curve, 50, srng);
            bool smooth = true;
            for (const auto& x : pts)
                if (rank(jacobian_at(curve, x)) != g - 2) smooth = false;
            if (smooth) return curve;
        } catch (const InsufficientPoints&) {
        }
    }
    throw GenerationFailed("no smooth curve within the retry budget");
}

std::vector<Vec> sample_points(const CurveModel& curve, std::size_t count, Rng& rng) {
    if (count == 0) throw ConfigError("count: must be at least 1");
    return curve.genus == 4 ? sample_genus4(curve, count, rng) : sample_genus5(curve, count, rng);
}

std::vector<Vec> sample_points(const CurveModel& curve, std::size_t count) {
    Rng rng(curve.seed, "sample-points");
    return sample_points(curve, count, rng);
}

std::vector<Vec> hyperplane_points(const CurveModel& curve, const Vec& h, Rng& rng) {
    std::vector<Vec> raw;
    if (curve.genus == 4) {
        raw = common_zeros_p3(curve.generators[0], curve.generators[1], Form::linear(h), rng);
    } else {
        Matrix a = hyperplane_basis(h);
        auto zeros = common_zeros_p3(curve.generators[0].substitute(a), curve.generators[1].substitute(a),
                                     curve.generators[2].substitute(a), rng);
        for (const auto& t : zeros) raw.push_back(a * t);
    }
    std::set<Vec> seen;
    std::vector<Vec> out;
    for (auto& x : raw) {
        x = normalize_first_nonzero(x);
        if (curve.contains(x) && dot(h, x).is_zero() && seen.insert(x).second) out.push_back(x);
    }
    return out;
}

Matrix jacobian_at(const CurveModel& curve, const Vec& x) {
    std::vector<Vec> rows;
    for (const auto& f : curve.generators) rows.push_back(f.gradient_at(x));
    return Matrix::from_rows(curve.prime, rows, curve.nvars());
}

TangentData tangent_vector(const CurveModel& curve, const Vec& x) {
    if (x.size() != curve.nvars() || is_zero(x) || !curve.contains(x)) throw NotOnCurve("point is not on the curve");
    Matrix j = jacobian_at(curve, x);
    if (rank(j) != curve.nvars() - 2) throw SingularPoint("Jacobian rank below g - 2");
    auto ker = kernel_basis(j);
    for (const auto& v : ker)
        if (!proportional(v, x)) return {normalize_first_nonzero(x), normalize_first_nonzero(v)};
    throw SingularPoint("tangent kernel degenerate");
}

}  // namespace canon
