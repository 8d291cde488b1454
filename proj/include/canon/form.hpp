#pragma once

#include <cstdint>
#include <vector>

#include "canon/field.hpp"
#include "canon/matrix.hpp"
#include "canon/unipoly.hpp"

namespace canon {

class Rng;

using Exponent = std::vector<std::uint8_t>;

/// All monomials of a fixed degree in n variables, in the global order:
/// lexicographic on exponent tuples with z0 > z1 > ... (so z0^d comes first).
/// Across degrees the order is graded; a single table only holds one degree.
class MonomialTable {
public:
    MonomialTable(std::size_t nvars, std::size_t degree);

    std::size_t nvars() const { return nvars_; }
    std::size_t degree() const { return degree_; }
    std::size_t size() const { return exps_.size(); }
    const Exponent& operator[](std::size_t i) const { return exps_[i]; }
    const std::vector<Exponent>& exponents() const { return exps_; }
    /// Position of an exponent tuple; throws std::out_of_range if absent.
    std::size_t index_of(const Exponent& e) const;

private:
    std::uint64_t encode(const Exponent& e) const;
    std::size_t nvars_, degree_;
    std::vector<Exponent> exps_;
    std::vector<std::uint32_t> lookup_;  // dense index by mixed-radix code
};

/// Shared immutable table for (nvars, degree).
const MonomialTable& monomials(std::size_t nvars, std::size_t degree);

std::size_t binomial(std::size_t n, std::size_t k);

/// Homogeneous polynomial of fixed degree; coefficients follow MonomialTable order.
class Form {
public:
    Form(std::uint32_t prime, std::size_t nvars, std::size_t degree);
    Form(std::uint32_t prime, std::size_t nvars, std::size_t degree, Vec coeffs);

    static Form linear(const Vec& coeffs);
    static Form monomial(std::uint32_t prime, const Exponent& e, Fp c);
    /// sum_{ij} g_ij z_i z_j for a symmetric matrix g.
    static Form from_gram(const Matrix& g);

    std::uint32_t prime() const { return p_; }
    std::size_t nvars() const { return n_; }
    std::size_t degree() const { return d_; }
    const MonomialTable& table() const { return monomials(n_, d_); }
    const Vec& coeffs() const { return c_; }
    Vec& coeffs() { return c_; }
    Fp coeff(const Exponent& e) const { return c_[table().index_of(e)]; }
    bool is_zero() const { return canon::is_zero(c_); }

    Fp operator()(const Vec& point) const;

    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator*(const Form& o) const;
    Form operator*(Fp s) const;
    bool operator==(const Form& o) const { return p_ == o.p_ && n_ == o.n_ && d_ == o.d_ && c_ == o.c_; }

    Form partial(std::size_t var) const;
    std::vector<Form> gradient() const;
    Vec gradient_at(const Vec& point) const;
    /// Polar sum_i x_i dF/dz_i.
    Form polar(const Vec& x) const;
    /// F(A t) where A is nvars x k; the result is a form in k variables.
    Form substitute(const Matrix& a) const;
    /// Symmetric Gram matrix of a quadric (off-diagonal entries halved).
    Matrix gram() const;
    Form normalized() const;

private:
    std::uint32_t p_;
    std::size_t n_, d_;
    Vec c_;
};

/// F(base + u*dir) as a polynomial in u.
UniPoly restrict_to_line(const Form& f, const Vec& base, const Vec& dir);

/// Evaluation vector of all degree-d monomials at a point (table order).
Vec monomial_values(const Vec& point, std::size_t degree);

/// Ternary form f(x, y, 1) as sum_j c_j(x) y^j.
BiPoly dehomogenize_ternary(const Form& f);

/// Homogeneous resultant of f and g with respect to variable `var`, a form of
/// degree deg f * deg g in the remaining variables (original order kept).
/// Computed by scalar Sylvester determinants at random points followed by
/// interpolation in the monomial basis.
Form eliminate(const Form& f, const Form& g, std::size_t var, Rng& rng);

/// Projective zeros over F_p of three forms in four variables, normalized,
/// each verified to annihilate all three forms exactly. Uses a random
/// coordinate change, two eliminations and back-substitution by gcds.
std::vector<Vec> common_zeros_p3(const Form& f1, const Form& f2, const Form& f3, Rng& rng);

}  // namespace canon
