#pragma once

#include <optional>
#include <vector>

#include "canon/cone.hpp"
#include "canon/net.hpp"

namespace canon {

class Rng;

/// Residual quadric of F_W on P(V_u-perp) for u in P(W*).
struct FiberQuadric {
    Vec u;
    Matrix basis;  // g x (g-2): columns e0, then the vertex basis; ell = first coordinate
    Matrix gram;   // (g-2) x (g-2) Gram of F|_{V_u-perp} / ell^2
    Fp det;
};

/// Throws SplittingViolation if F restricted to P(V_u-perp) is not divisible by ell^2.
FiberQuadric fiber_quadric(const CurveContext& ctx, const Net& net, const QuarticCone& cone, const Vec& u);

/// The singular point of the fiber over pi(p), in ambient coordinates, compared with p.
/// Throws NodeFiber when pi(p) is a singular point of Gamma.
bool steinerian_check(const CurveContext& ctx, const Net& net, const QuarticCone& cone, const PlaneCurve& gamma,
                      const Vec& p);

struct NodeCount {
    std::size_t nodes = 0;
    std::size_t rational_nodes = 0;
    int attempts = 0;
};

/// Number of singular points of gamma over the algebraic closure, from the
/// squarefree part of gcd(Res_y(gamma, gamma_x), Res_y(gamma, gamma_y)) in
/// random coordinates. Throws NonGenericCoordinates after `max_attempts` failures.
NodeCount node_count(const PlaneCurve& gamma, Rng& rng, int max_attempts = 5);

struct SweepRow {
    Vec u;
    Fp gamma_value;
    Fp det;
    std::optional<bool> kernel_match;  // set for fibers over projected curve points
};

/// Fibers over projections of panel points (up to half of `count`), then random u.
std::vector<SweepRow> hessian_sweep(const CurveContext& ctx, const Net& net, const QuarticCone& cone,
                                    const PlaneCurve& gamma, std::size_t count, Rng& rng);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace canon
