#include "riskadj/estimation.hpp"

#include <cmath>
#include <set>
#include <string>

#include "riskadj/errors.hpp"

namespace riskadj {

void validate(const ReturnSeries& series) {
    const std::size_t n = series.assets();
    if (n < 2) {
        throw Error(ErrorCode::InvalidInput, "need at least 2 assets, got " + std::to_string(n));
    }
    if (series.periods() < 2) {
        throw Error(ErrorCode::InvalidInput,
                    "need at least 2 periods, got " + std::to_string(series.periods()));
    }
    std::set<std::string> seen;
    for (const auto& name : series.asset_names) {
        if (!seen.insert(name).second) {
            throw Error(ErrorCode::InvalidInput, "duplicate asset name '" + name + "'");
        }
    }
    for (std::size_t t = 0; t < series.periods(); ++t) {
        if (series.returns[t].size() != n) {
            throw Error(ErrorCode::DimensionMismatch,
                        "period " + std::to_string(t) + " has " +
                            std::to_string(series.returns[t].size()) + " returns, expected " +
                            std::to_string(n));
        }
        for (double r : series.returns[t]) {
            if (!std::isfinite(r)) {
                throw Error(ErrorCode::InvalidInput,
                            "period " + std::to_string(t) + " has a non-finite return");
            }
        }
    }
}

SampleMoments sample_moments(const ReturnSeries& series) {
    validate(series);
    const std::size_t n = series.assets();
    const std::size_t periods = series.periods();

    Vec mu(n, 0.0);
    for (const auto& row : series.returns) {
        for (std::size_t i = 0; i < n; ++i) mu[i] += row[i];
    }
    for (double& m : mu) m /= static_cast<double>(periods);

    SymMatrix omega(n);
    const double divisor = static_cast<double>(periods - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (const auto& row : series.returns) acc += (row[i] - mu[i]) * (row[j] - mu[j]);
            omega.set(i, j, acc / divisor);
        }
    }
    return {std::move(mu), std::move(omega)};
}

AssetMoments estimate_moments(const ReturnSeries& series) {
    SampleMoments sample = sample_moments(series);
    if (series.periods() <= series.assets()) {
        throw Error(ErrorCode::NotSpd,
                    "sample covariance is singular: " + std::to_string(series.periods()) +
                        " periods for " + std::to_string(series.assets()) +
                        " assets (need more periods than assets)");
    }
    const SpdDiagnostic diag = spd_diagnostic(sample.omega);
    if (!diag.ok) {
        const std::string& name = series.asset_names[diag.pivot_index];
        throw Error(ErrorCode::NotSpd,
                    "sample covariance is not positive definite: asset '" + name +
                        "' has zero variance or is collinear with earlier assets (pivot " +
                        std::to_string(diag.pivot_index) + ")");
    }
    return AssetMoments(std::move(sample.mu), std::move(sample.omega));
}

Vec min_variance_weights(const SymMatrix& omega) {
    const Vec ones(omega.size(), 1.0);
    Vec x = solve(omega, ones);
    const double s = sum(x);
    if (!(std::abs(s) > 1e-12 * norm1(x))) {
        throw Error(ErrorCode::DegenerateNormalization,
                    "DegenerateNormalization: sum(Omega^-1 1) vanishes");
    }
    for (double& xi : x) xi /= s;
    return x;
}

} // namespace riskadj
