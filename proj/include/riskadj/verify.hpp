#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riskadj/closed_form.hpp"
#include "riskadj/moments.hpp"

namespace riskadj {

/// One oracle measurement. A check passes when value <= tolerance.
struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyOptions {
    int grid_resolution = 1001;
    double grid_half_width = 0.5;
    int fd_directions = 100;
    std::uint64_t seed = 42;
};

namespace tolerance {
inline constexpr double kBudget = 1e-12;
inline constexpr double kStructural = 1e-12;
inline constexpr double kKkt = 1e-8;
inline constexpr double kPairwise = 1e-8;
inline constexpr double kNullSpace = 1e-9;
inline constexpr double kNullSpaceBasis = 1e-10;
inline constexpr double kTangency = 1e-8;
inline constexpr double kFiniteDifference = 1e-5;
inline constexpr double kDominance = 1e-12;
inline constexpr double kGrid = 1e-6;
} // namespace tolerance

/// Runs every oracle that applies to `w`. Pass the solver trace to add the
/// structural checks (sum alpha, sum beta, a + b, B u, B v); leave it empty
/// for externally supplied weights.
std::vector<CheckResult> verify_weights(const AssetMoments& moments, std::span<const double> w,
                                        const ClosedFormTrace* trace,
                                        const VerifyOptions& options);

/// verify_weights plus the optimality checks for a claimed maximizer:
/// dominance over the minimum-variance portfolio and, for n <= 3, the
/// brute-force grid search.
std::vector<CheckResult> verify_optimum(const AssetMoments& moments, std::span<const double> w,
                                        const ClosedFormTrace* trace,
                                        const VerifyOptions& options);

struct RandomVerifyReport {
    std::vector<std::size_t> dims;
    int instances = 0;
    int rejected_not_max = 0;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;  // worst value per check over all instances

    bool passed() const;
};

/// Generates `instances` random problems, cycling through `dims`, and
/// aggregates the oracle results. Instances whose stationary point is not a
/// maximum are checked for stationarity and for agreement between the guard
/// and the sign of sum(Omega^-1 mu).
RandomVerifyReport verify_random(const std::vector<std::size_t>& dims, int instances,
                                 const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& checks);

} // namespace riskadj
