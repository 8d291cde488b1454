#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "canon/canring.hpp"
#include "canon/net.hpp"
#include "canon/pencil.hpp"

namespace canon {

class Rng;

/// Restriction data of F_W to the linear space P(V-perp) for a pencil V in W.
struct SplitFiber {
    PencilData pencil;
    Vec w;                    // element of W not in V
    std::vector<Vec> vperp;   // basis v_1..v_{g-2} of the annihilator of V
    Vec ell;                  // ell(beta) = w(sum beta_i v_i); vanishes exactly on W-perp
    Matrix G;                 // G_ij = <v_i, y_j> with gram y_j = v_j
    /// Columns are the vperp vectors (g x (g - 2)).
    Matrix vperp_matrix() const;
    /// The predicted restriction ell^2 * beta^T G beta as a form in g - 2 variables.
    Form predicted() const;
};

/// Throws InadmissiblePencil or CorankJump.
SplitFiber split_fiber(const CurveContext& ctx, const Net& net, const Matrix& V);

struct ConeCertificate {
    std::size_t constrained_dim = 0;   // dim S
    std::size_t pencils_used = 0;
    std::size_t pencils_skipped = 0;
    std::size_t solution_dim = 0;
    std::size_t curve_points_checked = 0;
    bool vanishes_on_curve = false;
    bool singular_along_vertex = false;
    std::size_t oracle_checked = 0;
    std::size_t oracle_true = 0;
    std::size_t oracle_disagreements = 0;
    bool holdout_pencil_match = false;
    bool oracle_applicable = true;  // false for double quadrics, where W is in D
    bool passed() const;
};

struct QuarticCone {
    Net net;
    Form F;
    ConeCertificate certificate;
};

struct ReconstructOptions {
    std::size_t initial_pencils = 6;
    std::size_t max_pencils = 20;
    std::size_t oracle_points = 50;
    bool verify = true;
};

/// Basis of {F in I(d) : every partial of F vanishes identically on the vertex}.
std::vector<Form> vertex_singular_subspace(const CurveContext& ctx, const Net& net, std::size_t degree);

/// True when every partial of f vanishes identically on the vertex.
bool singular_along_vertex(const Form& f, const Net& net);

/// Requires net outside D. Throws UnderdeterminedReconstruction,
/// InconsistentReconstruction, or VerificationFailed.
QuarticCone reconstruct_quartic(const CurveContext& ctx, const Net& net, Rng& rng,
                                const ReconstructOptions& opts = {});

/// For net in D with 1-dimensional ker(res): F = Q^2. Throws NonGenericD otherwise.
QuarticCone double_quadric_quartic(const CurveContext& ctx, const Net& net);

/// A random net whose vertex lies on a quadric of I(2) (so W is in D).
Matrix engineered_d_net(const CurveContext& ctx, Rng& rng);

/// Oracle points: half uniform random, half zeros of F on random lines.
/// Returns (checked, disagreements, true count).
struct OracleAgreement {
    std::size_t checked = 0;
    std::size_t disagreements = 0;
    std::size_t oracle_true = 0;
};
OracleAgreement check_oracle_agreement(const CurveContext& ctx, const Net& net, const PlaneCurve& gamma,
                                       const Form& F, std::size_t count, Rng& rng);

/// P_x(F) = sum x_i dF/dz_i for a nonzero vertex vector x.
Form polar_cubic(const QuarticCone& cone, const Vec& x);

/// Agreement of polar_oracle(x, .) with the vanishing of P_x(F) on random admissible points.
OracleAgreement check_polar_agreement(const CurveContext& ctx, const Net& net, const PlaneCurve& gamma,
                                      const Form& polar, const Vec& x, std::size_t count, Rng& rng);

struct SecantResult {
    bool contained = false;
    bool predicted = false;
    bool meets_vertex = false;
    bool double_section = false;
};
SecantResult secant_criterion(const CurveContext& ctx, const Net& net, const QuarticCone& cone, const Vec& p,
                              const Vec& q);

/// A net together with two curve points whose secant it is built to contain.
struct SecantSetup {
    Matrix W;
    Vec p, q;
};
/// The vertex meets the line pq.
SecantSetup engineered_secant_through_vertex(const CurveContext& ctx, Rng& rng);
/// W contains a section vanishing doubly at p and q. At genus 4, q is found on
/// the cubic cone of points whose tangent line meets the tangent line at p.
SecantSetup engineered_secant_double_section(const CurveContext& ctx, Rng& rng);

/// Throws SigmaPoint when the tangent line of C at p meets the vertex.
bool tangent_space_check(const CurveContext& ctx, const Net& net, const QuarticCone& cone, const Vec& p);

struct LwResult {
    std::vector<Form> basis;     // L_W
    std::size_t polar_rank = 0;  // rank of x -> P_x(F) on the vertex
    bool polars_in_lw = false;
};
LwResult lw_space(const CurveContext& ctx, const Net& net, const QuarticCone& cone);

}  // namespace canon
