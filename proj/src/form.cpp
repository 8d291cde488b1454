#include "canon/form.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>

#include "canon/errors.hpp"
#include "canon/rng.hpp"

namespace canon {

namespace {

void enumerate(std::size_t pos, std::size_t remaining, Exponent& cur, std::vector<Exponent>& out) {
    if (pos + 1 == cur.size()) {
        cur[pos] = static_cast<std::uint8_t>(remaining);
        out.push_back(cur);
        return;
    }
    for (std::size_t a = remaining + 1; a-- > 0;) {
        cur[pos] = static_cast<std::uint8_t>(a);
        enumerate(pos + 1, remaining - a, cur, out);
    }
}

Fp mono_value(const Exponent& e, const std::vector<Vec>& powers, std::uint32_t p) {
    Fp v(1, p);
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) v *= powers[i][e[i]];
    return v;
}

std::vector<Vec> power_table(const Vec& point, std::size_t degree, std::uint32_t p) {
    std::vector<Vec> pw(point.size(), Vec(degree + 1, Fp(1, p)));
    for (std::size_t i = 0; i < point.size(); ++i)
        for (std::size_t k = 1; k <= degree; ++k) pw[i][k] = pw[i][k - 1] * point[i];
    return pw;
}

}  // namespace

MonomialTable::MonomialTable(std::size_t nvars, std::size_t degree) : nvars_(nvars), degree_(degree) {
    if (nvars == 0) throw std::invalid_argument("MonomialTable: need at least one variable");
    if (degree > 250) throw std::invalid_argument("MonomialTable: degree too large");
    Exponent cur(nvars, 0);
    enumerate(0, degree, cur, exps_);
    std::uint64_t span = 1;
    for (std::size_t i = 0; i < nvars; ++i) {
        span *= degree + 1;
        if (span > (1ULL << 26)) throw std::invalid_argument("MonomialTable: table too large");
    }
    lookup_.assign(span, UINT32_MAX);
    for (std::size_t i = 0; i < exps_.size(); ++i) lookup_[encode(exps_[i])] = static_cast<std::uint32_t>(i);
}

std::uint64_t MonomialTable::encode(const Exponent& e) const {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < nvars_; ++i) code = code * (degree_ + 1) + e[i];
    return code;
}

std::size_t MonomialTable::index_of(const Exponent& e) const {
    if (e.size() != nvars_) throw std::out_of_range("MonomialTable::index_of: arity mismatch");
    std::size_t total = 0;
    for (auto x : e) total += x;
    if (total != degree_) throw std::out_of_range("MonomialTable::index_of: degree mismatch");
    return lookup_[encode(e)];
}

const MonomialTable& monomials(std::size_t nvars, std::size_t degree) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<MonomialTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{nvars, degree}];
    if (!slot) slot = std::make_unique<MonomialTable>(nvars, degree);
    return *slot;
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Form::Form(std::uint32_t prime, std::size_t nvars, std::size_t degree)
    : p_(prime), n_(nvars), d_(degree), c_(monomials(nvars, degree).size(), Fp(0, prime)) {}

Form::Form(std::uint32_t prime, std::size_t nvars, std::size_t degree, Vec coeffs)
    : p_(prime), n_(nvars), d_(degree), c_(std::move(coeffs)) {
    if (c_.size() != monomials(nvars, degree).size()) throw std::invalid_argument("Form: coefficient count mismatch");
}

Form Form::linear(const Vec& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("Form::linear: empty");
    // Degree-1 table order is z0, z1, ..., matching the coordinate order.
    return Form(coeffs[0].prime(), coeffs.size(), 1, coeffs);
}

Form Form::monomial(std::uint32_t prime, const Exponent& e, Fp c) {
    std::size_t d = 0;
    for (auto x : e) d += x;
    Form f(prime, e.size(), d);
    f.c_[f.table().index_of(e)] = c;
    return f;
}

Form Form::from_gram(const Matrix& g) {
    const std::size_t n = g.rows();
    Form f(g.prime(), n, 2);
    const auto& t = f.table();
    for (std::size_t k = 0; k < t.size(); ++k) {
        std::vector<std::size_t> vars;
        for (std::size_t i = 0; i < n; ++i)
            for (int r = 0; r < t[k][i]; ++r) vars.push_back(i);
        f.c_[k] = vars[0] == vars[1] ? g(vars[0], vars[0]) : g(vars[0], vars[1]) + g(vars[1], vars[0]);
    }
    return f;
}

Fp Form::operator()(const Vec& point) const {
    if (point.size() != n_) throw std::invalid_argument("Form: evaluation point has wrong arity");
    auto pw = power_table(point, d_, p_);
    const auto& t = table();
    unsigned __int128 acc = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (c_[k].is_zero()) continue;
        acc += std::uint64_t(c_[k].value()) * mono_value(t[k], pw, p_).value();
    }
    return Fp(static_cast<std::uint64_t>(acc % p_), p_);
}

Form Form::operator+(const Form& o) const {
    if (n_ != o.n_ || d_ != o.d_) throw std::invalid_argument("Form+: shape mismatch");
    return Form(p_, n_, d_, add(c_, o.c_));
}

Form Form::operator-(const Form& o) const {
    if (n_ != o.n_ || d_ != o.d_) throw std::invalid_argument("Form-: shape mismatch");
    return Form(p_, n_, d_, sub(c_, o.c_));
}

Form Form::operator*(Fp s) const { return Form(p_, n_, d_, scale(c_, s)); }

Form Form::operator*(const Form& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Form*: arity mismatch");
    const auto& ta = table();
    const auto& tb = o.table();
    const auto& tr = monomials(n_, d_ + o.d_);
    std::vector<unsigned __int128> acc(tr.size(), 0);
    Exponent e(n_);
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < tb.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            for (std::size_t v = 0; v < n_; ++v) e[v] = static_cast<std::uint8_t>(ta[i][v] + tb[j][v]);
            acc[tr.index_of(e)] += std::uint64_t(c_[i].value()) * o.c_[j].value();
        }
    }
    Vec r;
    r.reserve(acc.size());
    for (auto a : acc) r.push_back(Fp(static_cast<std::uint64_t>(a % p_), p_));
    return Form(p_, n_, d_ + o.d_, std::move(r));
}

Form Form::partial(std::size_t var) const {
    if (d_ == 0) return Form(p_, n_, 0);
    Form r(p_, n_, d_ - 1);
    const auto& t = table();
    const auto& tr = r.table();
    Exponent e(n_);
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (c_[k].is_zero() || t[k][var] == 0) continue;
        e = t[k];
        Fp mult(e[var], p_);
        --e[var];
        r.c_[tr.index_of(e)] += c_[k] * mult;
    }
    return r;
}

std::vector<Form> Form::gradient() const {
    std::vector<Form> g;
    for (std::size_t i = 0; i < n_; ++i) g.push_back(partial(i));
    return g;
}

Vec Form::gradient_at(const Vec& point) const {
    Vec g;
    for (std::size_t i = 0; i < n_; ++i) g.push_back(partial(i)(point));
    return g;
}

Form Form::polar(const Vec& x) const {
    if (x.size() != n_) throw std::invalid_argument("Form::polar: arity mismatch");
    Form r(p_, n_, d_ == 0 ? 0 : d_ - 1);
    for (std::size_t i = 0; i < n_; ++i)
        if (!x[i].is_zero()) r = r + partial(i) * x[i];
    return r;
}

Form Form::substitute(const Matrix& a) const {
    if (a.rows() != n_) throw std::invalid_argument("Form::substitute: matrix must have nvars rows");
    const std::size_t k = a.cols();
    // powers[i][e] = (row i of a as a linear form)^e
    std::vector<std::vector<Form>> powers(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        powers[i].push_back(Form(p_, k, 0, Vec{Fp(1, p_)}));
        Form li = Form::linear(a.row(i));
        for (std::size_t e = 1; e <= d_; ++e) powers[i].push_back(powers[i].back() * li);
    }
    Form out(p_, k, d_);
    const auto& t = table();
    for (std::size_t m = 0; m < t.size(); ++m) {
        if (c_[m].is_zero()) continue;
        Form term(p_, k, 0, Vec{c_[m]});
        for (std::size_t i = 0; i < n_; ++i)
            if (t[m][i]) term = term * powers[i][t[m][i]];
        out = out + term;
    }
    return out;
}

Matrix Form::gram() const {
    if (d_ != 2) throw std::invalid_argument("Form::gram: not a quadric");
    Matrix g(p_, n_, n_);
    const auto& t = table();
    Fp half = Fp(2, p_).inverse();
    for (std::size_t k = 0; k < t.size(); ++k) {
        std::vector<std::size_t> vars;
        for (std::size_t i = 0; i < n_; ++i)
            for (int r = 0; r < t[k][i]; ++r) vars.push_back(i);
        if (vars[0] == vars[1]) {
            g(vars[0], vars[0]) = c_[k];
        } else {
            g(vars[0], vars[1]) = c_[k] * half;
            g(vars[1], vars[0]) = c_[k] * half;
        }
    }
    return g;
}

Form Form::normalized() const { return Form(p_, n_, d_, normalize_first_nonzero(c_)); }

UniPoly restrict_to_line(const Form& f, const Vec& base, const Vec& dir) {
    Matrix a = Matrix::from_columns(f.prime(), {base, dir}, f.nvars());
    Form b = f.substitute(a);
    // Binary table index j is t0^(d-j) t1^j.
    return UniPoly(f.prime(), b.coeffs());
}

Vec monomial_values(const Vec& point, std::size_t degree) {
    const std::uint32_t p = point.at(0).prime();
    const auto& t = monomials(point.size(), degree);
    auto pw = power_table(point, degree, p);
    Vec out;
    out.reserve(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) out.push_back(mono_value(t[k], pw, p));
    return out;
}

BiPoly dehomogenize_ternary(const Form& f) {
    if (f.nvars() != 3) throw std::invalid_argument("dehomogenize_ternary: need three variables");
    const std::uint32_t p = f.prime();
    const std::size_t d = f.degree();
    std::vector<Vec> cy(d + 1, Vec(d + 1, Fp(0, p)));
    const auto& t = f.table();
    for (std::size_t k = 0; k < t.size(); ++k) cy[t[k][1]][t[k][0]] += f.coeffs()[k];
    BiPoly out{p, {}};
    for (auto& c : cy) out.by_y.emplace_back(p, c);
    return out;
}

namespace {

/// Coefficients of f as a polynomial in `var`, evaluated at the other coordinates.
Vec coefficients_in_var(const Form& f, std::size_t var, const Vec& rest) {
    const std::uint32_t p = f.prime();
    Vec full(f.nvars(), Fp(0, p));
    for (std::size_t i = 0, j = 0; i < f.nvars(); ++i)
        if (i != var) full[i] = rest[j++];
    auto pw = power_table(full, f.degree(), p);
    Vec out(f.degree() + 1, Fp(0, p));
    const auto& t = f.table();
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (f.coeffs()[k].is_zero()) continue;
        Fp v(1, p);
        for (std::size_t i = 0; i < f.nvars(); ++i)
            if (i != var && t[k][i]) v *= pw[i][t[k][i]];
        out[t[k][var]] += f.coeffs()[k] * v;
    }
    return out;
}

}  // namespace

Form eliminate(const Form& f, const Form& g, std::size_t var, Rng& rng) {
    if (f.nvars() != g.nvars() || f.nvars() < 2) throw std::invalid_argument("eliminate: arity mismatch");
    const std::uint32_t p = f.prime();
    const std::size_t k = f.nvars() - 1;
    const std::size_t m = f.degree(), n = g.degree();
    const auto& target = monomials(k, m * n);
    std::size_t npts = target.size() + 8;
    for (int attempt = 0; attempt < 4; ++attempt, npts *= 2) {
        Matrix rows(p, 0, target.size());
        Vec rhs;
        for (std::size_t s = 0; s < npts; ++s) {
            Vec r = rng.vector(p, k);
            Vec fc = coefficients_in_var(f, var, r);
            Vec gc = coefficients_in_var(g, var, r);
            // Sylvester wants coefficient lists lowest degree first, formal degrees m and n.
            rhs.push_back(sylvester_resultant(fc, m, gc, n));
            rows.append_row(monomial_values(r, m * n));
        }
        try {
            Solution sol = solve_consistent(rows, rhs);
            if (!sol.kernel.empty()) continue;
            return Form(p, k, m * n, sol.particular);
        } catch (const InconsistentSystem&) {
            throw std::logic_error("eliminate: resultant values are not a form of the expected degree");
        }
    }
    throw NonGenericCoordinates("eliminate: interpolation points failed to separate monomials");
}

std::vector<Vec> common_zeros_p3(const Form& f1, const Form& f2, const Form& f3, Rng& rng) {
    if (f1.nvars() != 4 || f2.nvars() != 4 || f3.nvars() != 4)
        throw std::invalid_argument("common_zeros_p3: forms must be in four variables");
    const std::uint32_t p = f1.prime();
    Matrix a(p, 4, 4);
    do {
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) a(i, j) = rng.element(p);
    } while (determinant(a).is_zero());
    const Form g1 = f1.substitute(a), g2 = f2.substitute(a), g3 = f3.substitute(a);
    const Form r12 = eliminate(g1, g2, 3, rng);
    const Form r13 = eliminate(g1, g3, 3, rng);
    if (r12.is_zero() || r13.is_zero()) throw NonGenericCoordinates("common_zeros_p3: forms share a component");
    const Form h = eliminate(r12, r13, 2, rng);
    if (h.is_zero()) throw NonGenericCoordinates("common_zeros_p3: eliminant vanishes identically");

    // Zeros of the binary eliminant in P^1: affine roots (t : 1), plus (1 : 0)
    // when the y0^D coefficient vanishes.
    const std::size_t D = h.degree();
    const Fp zero(0, p), one(1, p);
    Vec hc(D + 1, zero);
    for (std::size_t j = 0; j <= D; ++j) hc[D - j] = h.coeffs()[j];
    std::vector<std::pair<Fp, Fp>> base_points;
    for (Fp t : distinct_roots(UniPoly(p, hc))) base_points.emplace_back(t, one);
    if (h.coeffs()[0].is_zero()) base_points.emplace_back(one, zero);

    std::set<Vec> seen;
    std::vector<Vec> out;
    for (auto [y0, y1] : base_points) {
        UniPoly u12 = restrict_to_line(r12, {y0, y1, zero}, {zero, zero, one});
        UniPoly u13 = restrict_to_line(r13, {y0, y1, zero}, {zero, zero, one});
        UniPoly us = gcd(u12, u13);
        if (us.is_zero() || us.degree() < 1) continue;
        for (Fp s : distinct_roots(us)) {
            Vec base{y0, y1, s, zero}, dir{zero, zero, zero, one};
            UniPoly w = gcd(gcd(restrict_to_line(g1, base, dir), restrict_to_line(g2, base, dir)),
                            restrict_to_line(g3, base, dir));
            if (w.is_zero() || w.degree() < 1) continue;
            for (Fp wr : distinct_roots(w)) {
                Vec x = a * Vec{y0, y1, s, wr};
                if (!f1(x).is_zero() || !f2(x).is_zero() || !f3(x).is_zero()) continue;
                x = normalize_first_nonzero(x);
                if (seen.insert(x).second) out.push_back(x);
            }
        }
    }
    return out;
}

}  // namespace canon
