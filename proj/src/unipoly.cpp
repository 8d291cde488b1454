#include "canon/unipoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "canon/matrix.hpp"
#include "canon/rng.hpp"

namespace canon {

UniPoly::UniPoly(std::uint32_t prime, Vec coeffs) : p_(prime), c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(Fp c) { return UniPoly(c.prime(), Vec{c}); }

UniPoly UniPoly::monomial(Fp c, std::size_t degree) {
    Vec v(degree + 1, Fp(0, c.prime()));
    v[degree] = c;
    return UniPoly(c.prime(), std::move(v));
}

UniPoly UniPoly::linear_root(Fp root) { return UniPoly(root.prime(), Vec{-root, Fp(1, root.prime())}); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Fp UniPoly::operator()(Fp x) const {
    Fp acc(0, p_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    Vec r(std::max(c_.size(), o.c_.size()), Fp(0, p_));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UniPoly(p_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    Vec r(std::max(c_.size(), o.c_.size()), Fp(0, p_));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return UniPoly(p_, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly(p_);
    std::vector<unsigned __int128> acc(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += std::uint64_t(c_[i].value()) * o.c_[j].value();
    Vec r;
    r.reserve(acc.size());
    for (auto a : acc) r.push_back(Fp(static_cast<std::uint64_t>(a % p_), p_));
    return UniPoly(p_, std::move(r));
}

UniPoly UniPoly::operator*(Fp s) const { return UniPoly(p_, scale(c_, s)); }

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly(p_);
    Vec r(c_.size() - 1, Fp(0, p_));
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Fp(i, p_);
    return UniPoly(p_, std::move(r));
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("UniPoly division by zero");
    const std::uint32_t p = a.prime();
    if (a.degree() < b.degree()) return {UniPoly(p), a};
    Vec rem = a.coeffs();
    const std::size_t db = b.coeffs().size() - 1;
    Vec q(rem.size() - db, Fp(0, p));
    Fp inv = b.leading().inverse();
    for (std::size_t k = rem.size(); k-- > db;) {
        Fp f = rem[k] * inv;
        q[k - db] = f;
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeffs()[j];
    }
    rem.resize(db);
    return {UniPoly(p, std::move(q)), UniPoly(p, std::move(rem))};
}

UniPoly mod(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& m) {
    const std::uint32_t p = base.prime();
    UniPoly result = mod(UniPoly::constant(Fp(1, p)), m);
    UniPoly b = mod(base, m);
    while (e) {
        if (e & 1) result = mod(result * b, m);
        b = mod(b * b, m);
        e >>= 1;
    }
    return result;
}

UniPoly squarefree_part(const UniPoly& f) {
    if (f.degree() <= 0) return f.monic();
    UniPoly g = gcd(f, f.derivative());
    return divmod(f, g).first.monic();
}

namespace {

void split_linear_product(const UniPoly& g, Rng& rng, std::vector<Fp>& out) {
    const std::uint32_t p = g.prime();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        UniPoly m = g.monic();
        out.push_back(-m.coeff(0));
        return;
    }
    for (int attempt = 0; attempt < 200; ++attempt) {
        Fp a = rng.element(p);
        UniPoly shifted(p, Vec{a, Fp(1, p)});
        UniPoly t = powmod(shifted, (p - 1) / 2, g) - UniPoly::constant(Fp(1, p));
        UniPoly d = gcd(g, t);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear_product(d, rng, out);
            split_linear_product(divmod(g, d).first, rng, out);
            return;
        }
    }
    // Tiny fields can defeat random splitting; fall back to a scan.
    for (std::uint32_t x = 0; x < p; ++x)
        if (g(Fp(x, p)).is_zero()) out.push_back(Fp(x, p));
}

}  // namespace

std::vector<Fp> distinct_roots(const UniPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("distinct_roots: zero polynomial");
    const std::uint32_t p = f.prime();
    if (f.degree() == 0) return {};
    UniPoly fm = f.monic();
    UniPoly x(p, Vec{Fp(0, p), Fp(1, p)});
    UniPoly xp = powmod(x, p, fm);
    UniPoly g = gcd(fm, xp - x);
    std::vector<Fp> roots;
    Rng rng(0x5eed, "distinct_roots");
    split_linear_product(g, rng, roots);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

Fp sylvester_resultant(const Vec& f, std::size_t m, const Vec& g, std::size_t n) {
    if (f.empty() || g.empty()) throw std::invalid_argument("sylvester_resultant: empty coefficient list");
    const std::uint32_t p = f[0].prime();
    const std::size_t N = m + n;
    if (N == 0) return Fp(1, p);
    auto fc = [&](std::size_t i) { return i < f.size() ? f[i] : Fp(0, p); };
    auto gc = [&](std::size_t i) { return i < g.size() ? g[i] : Fp(0, p); };
    Matrix s(p, N, N);
    // Rows 0..n-1: shifts of f, highest coefficient first.
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) s(r, r + k) = fc(m - k);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) s(n + r, r + k) = gc(n - k);
    return determinant(std::move(s));
}

Fp resultant(const UniPoly& f, const UniPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
    return sylvester_resultant(f.coeffs(), f.degree(), g.coeffs(), g.degree());
}

UniPoly interpolate(const Vec& xs, const Vec& ys) {
    if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("interpolate: bad input sizes");
    const std::uint32_t p = xs[0].prime();
    const std::size_t n = xs.size();
    // Newton divided differences.
    Vec coef = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    UniPoly result = UniPoly::constant(coef[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;) result = result * UniPoly::linear_root(xs[k]) + UniPoly::constant(coef[k]);
    (void)p;
    return result;
}

int BiPoly::degree_y() const {
    for (std::size_t j = by_y.size(); j-- > 0;)
        if (!by_y[j].is_zero()) return static_cast<int>(j);
    return -1;
}

int BiPoly::total_degree() const {
    int d = -1;
    for (std::size_t j = 0; j < by_y.size(); ++j)
        if (!by_y[j].is_zero()) d = std::max(d, by_y[j].degree() + static_cast<int>(j));
    return d;
}

Vec BiPoly::at_x(Fp x0) const {
    int dy = degree_y();
    Vec out;
    for (int j = 0; j <= dy; ++j) out.push_back(by_y[j](x0));
    return out;
}

Fp BiPoly::operator()(Fp x, Fp y) const {
    Fp acc(0, prime);
    for (std::size_t j = by_y.size(); j-- > 0;) acc = acc * y + by_y[j](x);
    return acc;
}

BiPoly BiPoly::d_dx() const {
    BiPoly r{prime, {}};
    for (const auto& c : by_y) r.by_y.push_back(c.derivative());
    return r;
}

BiPoly BiPoly::d_dy() const {
    BiPoly r{prime, {}};
    for (std::size_t j = 1; j < by_y.size(); ++j) r.by_y.push_back(by_y[j] * Fp(j, prime));
    if (r.by_y.empty()) r.by_y.push_back(UniPoly(prime));
    return r;
}

UniPoly resultant_y(const BiPoly& f, const BiPoly& g) {
    const std::uint32_t p = f.prime;
    const int m = f.degree_y(), n = g.degree_y();
    if (m < 0 || n < 0) throw std::invalid_argument("resultant_y: zero polynomial");
    int max_dx_f = 0, max_dx_g = 0;
    for (const auto& c : f.by_y) max_dx_f = std::max(max_dx_f, c.degree());
    for (const auto& c : g.by_y) max_dx_g = std::max(max_dx_g, c.degree());
    const int bound = std::min(f.total_degree() * g.total_degree(), n * max_dx_f + m * max_dx_g);
    Vec xs, ys;
    for (int k = 0; k <= bound; ++k) {
        Fp x0(static_cast<std::uint64_t>(k), p);
        xs.push_back(x0);
        ys.push_back(sylvester_resultant(f.at_x(x0), m, g.at_x(x0), n));
    }
    return interpolate(xs, ys);
}

}  // namespace canon
