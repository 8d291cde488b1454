#pragma once

#include <array>
#include <vector>

#include "canon/curve.hpp"
#include "canon/field.hpp"
#include "canon/form.hpp"
#include "canon/matrix.hpp"

namespace canon {

/// R_n = Sym^n H^0(omega) / I(n) realized on the point panel. The standard
/// monomials (pivot columns of E_n) give coordinates on R_n.
struct GradedPiece {
    std::size_t degree = 0;
    Matrix eval;                         // panel points x monomials
    std::vector<std::size_t> standard;   // monomial indices forming a basis of R_n
    std::vector<std::size_t> row_index;  // panel rows on which eval[:, standard] is invertible
    Matrix row_inverse;                  // inverse of eval[row_index, standard]
    Matrix reduction;                    // Sym^n coefficients -> R_n coordinates
    std::size_t dim() const { return standard.size(); }
};

/// I(n) as an echelon basis of coefficient vectors (rows of the RREF).
struct IdealPiece {
    std::size_t degree = 0;
    std::vector<Vec> basis;
    std::size_t dim() const { return basis.size(); }
    std::vector<Form> forms(std::uint32_t prime, std::size_t nvars) const;
};

/// Residue class in R_n, stored as its values on the panel.
struct RingClass {
    std::size_t degree = 0;
    Vec values;
    bool operator==(const RingClass&) const = default;
};

/// dim R_n by Riemann-Roch: g for n = 1, (2n - 1)(g - 1) for n >= 2.
std::size_t expected_rn_dim(int genus, std::size_t n);
/// dim I(n) = C(g - 1 + n, n) - dim R_n.
std::size_t expected_ideal_dim(int genus, std::size_t n);

/// Curve plus a fixed evaluation panel (default 4 dim Sym^4 points) and a
/// disjoint holdout panel (default 2 dim Sym^4), with pieces for n = 1..4.
/// Immutable after construction.
class CurveContext {
public:
    explicit CurveContext(CurveModel curve, std::size_t panel_size = 0, std::size_t holdout_size = 0);
    /// Uses given points first (e.g. from a curve file) and samples the rest.
    CurveContext(CurveModel curve, std::vector<Vec> known_points, std::size_t panel_size, std::size_t holdout_size);

    const CurveModel& curve() const { return curve_; }
    std::uint32_t prime() const { return curve_.prime; }
    int genus() const { return curve_.genus; }
    std::size_t nvars() const { return curve_.nvars(); }
    const std::vector<Vec>& panel() const { return panel_; }
    const std::vector<Vec>& holdout() const { return holdout_; }

    static constexpr std::size_t max_degree = 4;
    const GradedPiece& piece(std::size_t n) const;
    /// Throws for n outside 2..4.
    const IdealPiece& ideal(std::size_t n) const;

    RingClass class_of(const Form& f) const;
    RingClass class_of_coeffs(std::size_t degree, const Vec& coeffs) const;
    /// Coordinates of a class in the standard-monomial basis of R_n.
    Vec coordinates(const RingClass& c) const;
    /// True when the values lie in the column space of E_n.
    bool is_valid_class(const RingClass& c) const;
    /// f vanishes at every panel and holdout point.
    bool vanishes_on_curve(const Form& f) const;

private:
    void build(std::vector<Vec> known, std::size_t panel_size, std::size_t holdout_size);
    CurveModel curve_;
    std::vector<Vec> panel_, holdout_;
    std::array<GradedPiece, max_degree + 1> pieces_;
    std::array<IdealPiece, max_degree + 1> ideals_;
};

/// Pointwise product of classes.
RingClass multiply(const RingClass& a, const RingClass& b);

/// Evaluation matrix of all degree-n monomials at the given points.
Matrix evaluation_matrix(const std::vector<Vec>& points, std::size_t degree, std::size_t nvars);

/// Rank of the span of z_i Q for Q in I(2), compared against dim I(3).
struct PetriResult {
    std::size_t product_rank = 0;
    std::size_t ideal3_dim = 0;
    bool surjective = false;
};
PetriResult petri_check(const CurveContext& ctx);

}  // namespace canon
