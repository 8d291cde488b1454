#pragma once

#include <utility>
#include <vector>

#include "canon/field.hpp"

namespace canon {

/// Univariate polynomial over F_p, lowest degree first. The zero polynomial
/// has no coefficients; otherwise the leading coefficient is nonzero.
class UniPoly {
public:
    explicit UniPoly(std::uint32_t prime) : p_(prime) {}
    UniPoly(std::uint32_t prime, Vec coeffs);

    static UniPoly constant(Fp c);
    static UniPoly monomial(Fp c, std::size_t degree);
    /// x - root
    static UniPoly linear_root(Fp root);

    std::uint32_t prime() const { return p_; }
    const Vec& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree, or -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Fp coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Fp(0, p_); }
    Fp leading() const { return c_.empty() ? Fp(0, p_) : c_.back(); }

    Fp operator()(Fp x) const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(Fp s) const;
    bool operator==(const UniPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

    UniPoly monic() const;
    UniPoly derivative() const;

private:
    void trim();
    std::uint32_t p_;
    Vec c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly mod(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero if both are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// base^e mod m.
UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& m);
/// f / gcd(f, f'), monic.
UniPoly squarefree_part(const UniPoly& f);

/// All roots of f in F_p, each once, in increasing order. f must be nonzero.
/// Uses gcd(f, x^p - x) followed by equal-degree splitting with a fixed
/// deterministic sequence of shifts.
std::vector<Fp> distinct_roots(const UniPoly& f);

/// Sylvester-matrix resultant using the actual degrees of f and g.
Fp resultant(const UniPoly& f, const UniPoly& g);
/// Sylvester determinant with formal degrees m >= deg f, n >= deg g.
Fp sylvester_resultant(const Vec& f_coeffs, std::size_t m, const Vec& g_coeffs, std::size_t n);

/// Lagrange interpolation through (xs[i], ys[i]); xs pairwise distinct.
UniPoly interpolate(const Vec& xs, const Vec& ys);

/// Bivariate polynomial sum_j by_y[j](x) * y^j.
struct BiPoly {
    std::uint32_t prime;
    std::vector<UniPoly> by_y;

    int degree_y() const;
    int total_degree() const;
    /// Coefficients in y after substituting x = x0 (length degree_y()+1).
    Vec at_x(Fp x0) const;
    Fp operator()(Fp x, Fp y) const;
    BiPoly d_dx() const;
    BiPoly d_dy() const;
};

/// Res_y(f, g) as a polynomial in x: evaluated at enough abscissae by the
/// scalar Sylvester determinant (formal y-degrees) and interpolated.
UniPoly resultant_y(const BiPoly& f, const BiPoly& g);

}  // namespace canon
