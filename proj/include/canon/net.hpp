#pragma once

#include <optional>
#include <vector>

#include "canon/canring.hpp"
#include "canon/pencil.hpp"

namespace canon {

/// A net W in H^0(omega): rows of a 3 x g matrix, reduced echelon.
struct Net {
    Matrix W;
    std::vector<Vec> vertex;  // basis of the annihilator W-perp (g - 3 vectors)
    bool in_B = false;        // some panel point is a base point of W
    bool in_D = false;        // the res map is singular
    Matrix res;               // I(2) -> H^0(vertex, O(2)), rows indexed by the I(2) basis
    std::vector<Vec> res_kernel;  // combinations of the I(2) basis vanishing on the vertex

    std::size_t nvars() const { return W.cols(); }
    /// Columns are the vertex basis vectors (g x (g - 3)).
    Matrix vertex_matrix() const;
    /// pi(x) = W x in coordinates of P(W*).
    Vec project(const Vec& x) const { return W * x; }
    /// The pencil {a W : a . u = 0} for u in P(W*), as a 2 x g matrix.
    Matrix pencil_of(const Vec& u) const;
};

Net build_net(const CurveContext& ctx, const Matrix& W);

/// The quadric of I(2) containing the vertex, when ker(res) is 1-dimensional.
std::optional<Form> vertex_quadric(const CurveContext& ctx, const Net& net);

/// Image of C in P(W*): the plane curve of degree 2g - 2.
struct PlaneCurve {
    Form gamma;  // ternary, normalized
    std::size_t fit_points = 0;
};

/// Fits gamma through projected panel points; throws AmbiguousFit unless the kernel is 1-dimensional.
PlaneCurve gamma_equation(const CurveContext& ctx, const Net& net);

/// The data behind one oracle call.
struct OracleWitness {
    Vec b;
    PencilData pencil;  // V_b = H_b cap W
    Vec w;
    CupGram cup;
    Vec y;              // gram y = b, defined modulo V_b
    bool value = false; // <b, y> == 0
};

/// Membership of b in F_W via the cup-product Gram. Throws DegenerateInput when
/// b is in the vertex, pi(b) is on Gamma, V_b is inadmissible, or the corank jumps.
OracleWitness fw_oracle(const CurveContext& ctx, const Net& net, const PlaneCurve& gamma, const Vec& b);
bool fw_oracle_value(const CurveContext& ctx, const Net& net, const PlaneCurve& gamma, const Vec& b);

/// Membership of b in the polar P_x(F_W): same witness, tested against x.
bool polar_oracle(const CurveContext& ctx, const Net& net, const PlaneCurve& gamma, const Vec& x, const Vec& b);

}  // namespace canon
