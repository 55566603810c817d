#pragma once

#include <cstdint>
#include <span>

#include "riskadj/linalg.hpp"
#include "riskadj/moments.hpp"

namespace riskadj {

/// First-order condition 2 f_i g - f g_i = 2 g^{3/2} lambda checked per
/// asset, with f_i = mu_i and g_i = 2 (Omega w)_i.
struct KktResidual {
    double lambda_hat = 0.0;  // mean over i of (2 f_i g - f g_i) / (2 g^{3/2})
    Vec residuals;            // 2 f_i g - f g_i - 2 g^{3/2} lambda_hat
    double norm = 0.0;        // max |r_i| / (2 g^{3/2} |lambda_hat| + |f| * max |g_i|)
};

KktResidual kkt_residual(std::span<const double> w, const AssetMoments& moments);

/// max_k |(g_{k+1} - g_k) / (f_{k+1} - f_k) - 2g/f| / |2g/f| over assets
/// taken in descending-mean order. Throws DegenerateDenominator when two
/// consecutive means coincide or f(w) = 0.
double pairwise_ratio_check(std::span<const double> w, const AssetMoments& moments);

/// Omega^{-1} mu / sum(Omega^{-1} mu), with Omega^{-1} mu iteratively refined.
Vec tangency_weights(const AssetMoments& moments);

/// ||B Omega w||_inf / (||B||_inf ||Omega||_inf ||w||_inf), B built from mu
/// in the given asset order. Requires n >= 3.
double null_space_residual(std::span<const double> w, const AssetMoments& moments);

/// Largest |dQ/dd| / |Q(w)| over `directions` random budget-neutral unit
/// (inf-norm) directions d, by central differences with step
/// 1e-6 * ||w||_inf.
double directional_derivative_check(std::span<const double> w, const AssetMoments& moments,
                                    int directions, std::uint64_t seed);

struct GridResult {
    Vec weights;
    double q_best = 0.0;
    double step = 0.0;
};

/// Exhaustive search over w_1..w_{n-1} in [lower, upper]^{n-1} with
/// `resolution` points per axis and w_n = 1 - sum. n must be 2 or 3.
/// Ties keep the first point in lexicographic grid order.
GridResult grid_search_box(const AssetMoments& moments, double lower, double upper,
                           int resolution);

/// Runs the box centered on `center` (+/- half_width per free coordinate)
/// and the fixed box [-2, 3]^{n-1}; returns the better result (the
/// centered box wins ties).
GridResult grid_search_max(const AssetMoments& moments, std::span<const double> center,
                           double half_width, int resolution);

} // namespace riskadj
