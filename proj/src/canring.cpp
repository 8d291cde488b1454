#include "canon/canring.hpp"

#include <set>

#include "canon/errors.hpp"
#include "canon/rng.hpp"

namespace canon {

std::vector<Form> IdealPiece::forms(std::uint32_t prime, std::size_t nvars) const {
    std::vector<Form> out;
    for (const auto& b : basis) out.emplace_back(prime, nvars, degree, b);
    return out;
}

std::size_t expected_rn_dim(int genus, std::size_t n) {
    const auto g = static_cast<std::size_t>(genus);
    if (n == 0) return 1;
    if (n == 1) return g;
    return (2 * n - 1) * (g - 1);
}

std::size_t expected_ideal_dim(int genus, std::size_t n) {
    const auto g = static_cast<std::size_t>(genus);
    return binomial(g - 1 + n, n) - expected_rn_dim(genus, n);
}

Matrix evaluation_matrix(const std::vector<Vec>& points, std::size_t degree, std::size_t nvars) {
    if (points.empty()) throw std::invalid_argument("evaluation_matrix: no points");
    const std::uint32_t p = points[0][0].prime();
    Matrix m(p, points.size(), monomials(nvars, degree).size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        Vec v = monomial_values(points[i], degree);
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[j];
    }
    return m;
}

CurveContext::CurveContext(CurveModel curve, std::size_t panel_size, std::size_t holdout_size)
    : curve_(std::move(curve)) {
    build({}, panel_size, holdout_size);
}

CurveContext::CurveContext(CurveModel curve, std::vector<Vec> known_points, std::size_t panel_size,
                           std::size_t holdout_size)
    : curve_(std::move(curve)) {
    build(std::move(known_points), panel_size, holdout_size);
}

void CurveContext::build(std::vector<Vec> known, std::size_t panel_size, std::size_t holdout_size) {
    const std::size_t sym4 = binomial(nvars() + 3, 4);
    if (panel_size == 0) panel_size = 4 * sym4;
    if (holdout_size == 0) holdout_size = 2 * sym4;
    if (panel_size < 2 * sym4) throw ConfigError("panel_size: must be at least 2 dim Sym^4");
    const std::size_t total = panel_size + holdout_size;

    std::set<Vec> seen;
    std::vector<Vec> pts;
    auto offer = [&](const Vec& x) {
        if (pts.size() < total && seen.insert(x).second) pts.push_back(x);
    };
    for (const auto& x : known) {
        if (!curve_.contains(x)) throw NotOnCurve("context: supplied point is off the curve");
        offer(normalize_first_nonzero(x));
    }
    if (pts.size() < total) {
        Rng rng(curve_.seed, "panel");
        for (const auto& x : sample_points(curve_, total, rng)) offer(x);
    }
    if (pts.size() < total) throw InsufficientPoints("context: not enough distinct points");
    panel_.assign(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(panel_size));
    holdout_.assign(pts.begin() + static_cast<std::ptrdiff_t>(panel_size), pts.end());

    for (std::size_t n = 1; n <= max_degree; ++n) {
        GradedPiece& gp = pieces_[n];
        gp.degree = n;
        gp.eval = evaluation_matrix(panel_, n, nvars());
        Echelon e = rref(gp.eval);
        if (e.rank() != expected_rn_dim(genus(), n))
            throw RankDeficiency("rank E_" + std::to_string(n) + " = " + std::to_string(e.rank()) + ", expected " +
                                 std::to_string(expected_rn_dim(genus(), n)));
        gp.standard = e.pivots;
        Matrix cols = gp.eval.select_cols(gp.standard);
        gp.row_index = independent_rows(cols);
        gp.row_inverse = inverse(cols.select_rows(gp.row_index));
        gp.reduction = gp.row_inverse * gp.eval.select_rows(gp.row_index);

        if (n < 2) continue;
        IdealPiece& ip = ideals_[n];
        ip.degree = n;
        auto ker = kernel_basis(gp.eval);
        if (!ker.empty()) ip.basis = row_space_basis(Matrix::from_rows(prime(), ker, gp.eval.cols()));
        if (ip.dim() != expected_ideal_dim(genus(), n)) throw RankDeficiency("dim I(" + std::to_string(n) + ") mismatch");
        Matrix hold = evaluation_matrix(holdout_, n, nvars());
        for (const auto& b : ip.basis)
            if (!is_zero(hold * b)) throw RankDeficiency("ideal element fails on the holdout panel");
    }
}

const GradedPiece& CurveContext::piece(std::size_t n) const {
    if (n < 1 || n > max_degree) throw std::out_of_range("CurveContext::piece: degree out of range");
    return pieces_[n];
}

const IdealPiece& CurveContext::ideal(std::size_t n) const {
    if (n < 2 || n > max_degree) throw std::out_of_range("CurveContext::ideal: degree out of range");
    return ideals_[n];
}

RingClass CurveContext::class_of(const Form& f) const {
    RingClass c{f.degree(), {}};
    c.values.reserve(panel_.size());
    for (const auto& x : panel_) c.values.push_back(f(x));
    return c;
}

RingClass CurveContext::class_of_coeffs(std::size_t degree, const Vec& coeffs) const {
    return RingClass{degree, piece(degree).eval * coeffs};
}

Vec CurveContext::coordinates(const RingClass& c) const {
    const GradedPiece& gp = piece(c.degree);
    Vec sub;
    for (auto r : gp.row_index) sub.push_back(c.values[r]);
    return gp.row_inverse * sub;
}

bool CurveContext::is_valid_class(const RingClass& c) const {
    const GradedPiece& gp = piece(c.degree);
    return gp.eval.select_cols(gp.standard) * coordinates(c) == c.values;
}

bool CurveContext::vanishes_on_curve(const Form& f) const {
    for (const auto& x : panel_)
        if (!f(x).is_zero()) return false;
    for (const auto& x : holdout_)
        if (!f(x).is_zero()) return false;
    return true;
}

RingClass multiply(const RingClass& a, const RingClass& b) {
    if (a.values.size() != b.values.size()) throw std::invalid_argument("multiply: panel mismatch");
    RingClass c{a.degree + b.degree, Vec(a.values.size())};
    for (std::size_t i = 0; i < a.values.size(); ++i) c.values[i] = a.values[i] * b.values[i];
    return c;
}

PetriResult petri_check(const CurveContext& ctx) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    Matrix products(p, 0, monomials(g, 3).size());
    for (const Form& q : ctx.ideal(2).forms(p, g))
        for (std::size_t i = 0; i < g; ++i) {
            Exponent e(g, 0);
            e[i] = 1;
            products.append_row((q * Form::monomial(p, e, Fp(1, p))).coeffs());
        }
    PetriResult r;
    r.product_rank = rank(products);
    r.ideal3_dim = ctx.ideal(3).dim();
    r.surjective = r.product_rank == r.ideal3_dim;
    return r;
}

}  // namespace canon
