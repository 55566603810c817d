#pragma once

#include <string>
#include <vector>

#include "riskadj/linalg.hpp"
#include "riskadj/moments.hpp"

namespace riskadj {

/// T periods of simple returns for n named assets; returns[t][i] is asset
/// i in period t.
struct ReturnSeries {
    std::vector<std::string> asset_names;
    std::vector<Vec> returns;

    std::size_t assets() const noexcept { return asset_names.size(); }
    std::size_t periods() const noexcept { return returns.size(); }
};

/// Throws InvalidInput if the series breaks its invariants (T >= 2, n >= 2,
/// unique names, rectangular, finite).
void validate(const ReturnSeries& series);

/// Sample mean and covariance (divisor T - 1).
struct SampleMoments {
    Vec mu;
    SymMatrix omega;
};

/// Raw estimates with no SPD requirement.
SampleMoments sample_moments(const ReturnSeries& series);

/// Sample moments validated SPD. Throws NotSpd when T <= n or the
/// estimated covariance is singular.
AssetMoments estimate_moments(const ReturnSeries& series);

/// Omega^{-1} 1 / sum(Omega^{-1} 1).
Vec min_variance_weights(const SymMatrix& omega);

} // namespace riskadj
