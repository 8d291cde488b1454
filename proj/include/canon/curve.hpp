#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canon/field.hpp"
#include "canon/form.hpp"
#include "canon/matrix.hpp"

namespace canon {

class Rng;

/// Canonical complete intersection: a quadric and a cubic in P^3 (g = 4) or
/// three quadrics in P^4 (g = 5). Coordinates z0..z_{g-1} are a basis of H^0(omega).
struct CurveModel {
    int genus = 0;
    std::uint32_t prime = 0;
    std::uint64_t seed = 0;
    std::vector<Form> generators;

    std::size_t nvars() const { return static_cast<std::size_t>(genus); }
    bool contains(const Vec& x) const;
};

/// Embedded tangent line of C at `point`, spanned by point and direction.
struct TangentData {
    Vec point;
    Vec direction;
};

/// Checks generator shapes for the genus; throws UnsupportedGenus / ConfigError.
CurveModel make_curve(int genus, std::uint32_t prime, std::uint64_t seed, std::vector<Form> generators);

/// Random canonical curve, deterministic in (genus, prime, seed). Retries
/// until 50 sampled points all have Jacobian rank g - 2.
CurveModel generate_curve(int genus, std::uint32_t prime, std::uint64_t seed);

/// `count` distinct normalized rational points, in discovery order.
/// Genus 4 uses stereographic projection of the quadric from one of its
/// points; genus 5 uses random hyperplane slices.
std::vector<Vec> sample_points(const CurveModel& curve, std::size_t count, Rng& rng);
/// Same, with the stream derived from the curve seed.
std::vector<Vec> sample_points(const CurveModel& curve, std::size_t count);

/// All rational points of C on the hyperplane {h . z = 0}, normalized.
std::vector<Vec> hyperplane_points(const CurveModel& curve, const Vec& h, Rng& rng);

/// Rows are the gradients of the generators at x.
Matrix jacobian_at(const CurveModel& curve, const Vec& x);

/// Throws NotOnCurve if x is off C and SingularPoint if the Jacobian rank is below g - 2.
TangentData tangent_vector(const CurveModel& curve, const Vec& x);

struct CurveFile {
    CurveModel curve;
    std::vector<Vec> points;
};

std::string curve_to_json(const CurveModel& curve, const std::vector<Vec>& points);
/// Parses and validates a curve file; throws ConfigError naming the bad field.
CurveFile curve_from_json(const std::string& text);

}  // namespace canon
