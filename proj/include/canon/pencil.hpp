#pragma once

#include <vector>

#include "canon/canring.hpp"
#include "canon/field.hpp"
#include "canon/form.hpp"
#include "canon/matrix.hpp"

namespace canon {

/// A pencil V in H^0(omega) with the functional vbar on R_3 cutting out V.R_2.
struct PencilData {
    Matrix V;                            // 2 x g, reduced echelon
    Vec vbar;                            // functional on R_3, standard-monomial coordinates
    Vec functional;                      // the same functional pulled back to Sym^3 coefficients
    std::vector<std::size_t> complement; // non-pivot columns of V: coordinates on H^0(omega)/V
    std::size_t product_rank = 0;        // dim V.R_2
};

/// Throws InadmissiblePencil unless V.R_2 has codimension exactly 1 in R_3.
PencilData build_pencil(const CurveContext& ctx, const Matrix& V);

/// vbar(s t u) for linear forms s, t, u.
Fp trilinear(const PencilData& pencil, const Vec& s, const Vec& t, const Vec& u);

/// Representative of w modulo V with zeros in the pivot columns of V.
Vec reduce_mod_pencil(const PencilData& pencil, const Vec& w);

/// The cubic Psi_V in the complement coordinates y: Psi(y) = vbar((sum_a y_a z_{c_a})^3).
Form psi_cubic(const PencilData& pencil);

/// Determinant of the Hessian matrix of a form in n <= 4 variables, a form of degree n (deg f - 2).
Form hessian_determinant(const Form& f);

struct CupGram {
    Vec w;
    Matrix gram;  // g x g, gram(i, j) = vbar(w z_i z_j)
    std::size_t corank = 0;
};

CupGram cup_gram(const CurveContext& ctx, const PencilData& pencil, const Vec& w);

/// Same Gram assembled from evaluation classes and pointwise products.
Matrix cup_gram_via_classes(const CurveContext& ctx, const PencilData& pencil, const Vec& w);

/// The Gram of the cup product restricted to the complement coordinates.
Matrix complement_gram(const PencilData& pencil, const CupGram& cup);

/// True iff the (g-2) x (g-2) complement Gram at w is singular, i.e. [w] lies on Hess(Psi_V).
bool hessian_psi_membership(const CurveContext& ctx, const PencilData& pencil, const Vec& w);

}  // namespace canon
