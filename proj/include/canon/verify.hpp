#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canon/canring.hpp"
#include "canon/report.hpp"

namespace canon {

/// Sample sizes of the acceptance suite. The defaults are the minimum sizes of the full suite;
/// criteria pass against the configured sizes.
struct VerifyConfig {
    std::uint64_t seed = 1;
    std::size_t corank_samples = 50;
    std::size_t corank_d_samples = 10;
    std::size_t reconstructions = 10;
    std::size_t curve_check_points = 200;
    std::size_t oracle_points = 50;
    std::size_t double_quadric_nets = 5;
    std::size_t polar_cones = 3;
    std::size_t sweep = 100;
    std::size_t steinerian = 50;
    std::size_t secant_random = 100;
    std::size_t secant_engineered = 5;
    std::size_t span_samples = 60;
    std::size_t probe_points = 500;

    /// Reduced counts for smoke runs.
    static VerifyConfig quick();
    /// True when every count reaches the default (acceptance) size.
    bool full_scale() const;
    Json to_json() const;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string summary;
    Json data;
};

/// Criteria 1-12 on one curve.
std::vector<CriterionResult> run_criteria(const CurveContext& ctx, const VerifyConfig& cfg);

/// Report with the config, version tag and one entry per criterion.
Json verify_report(const CurveContext& ctx, const VerifyConfig& cfg, const std::vector<CriterionResult>& results);

/// Criterion 13: reruns the suite and compares the serialized report with `first`.
CriterionResult determinism_check(const CurveContext& ctx, const VerifyConfig& cfg, const std::string& first);

/// Serialization used for reports: ordered keys, two-space indent, trailing newline.
std::string dump_report(const Json& j);

}  // namespace canon
