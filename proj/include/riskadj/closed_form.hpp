#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "riskadj/linalg.hpp"
#include "riskadj/moments.hpp"

namespace riskadj {

/// a_i = (mu_{i+2} - mu_i) / (mu_{i+2} - mu_{i+1}),
/// b_i = (mu_i - mu_{i+1}) / (mu_{i+2} - mu_{i+1}), for i = 0 .. n-3.
struct RecursionCoeffs {
    Vec a;
    Vec b;
};

/// Two vectors spanning the null space of B, fixed by
/// u[n-2] = 1, u[n-1] = 0 and v[n-2] = 0, v[n-1] = 1.
struct NullSpaceBasis {
    Vec u;
    Vec v;
};

/// alpha is budget-feasible (sums to 1), beta is budget-neutral (sums to 0).
struct AlphaBeta {
    Vec alpha;
    Vec beta;
};

/// Every intermediate of the closed-form solve. Vectors are stored in the
/// solver's internal asset order: internal position k holds original asset
/// `permutation[k]`. `weights == alpha + t_star * beta` in that order.
///
/// When `all_means_equal` is set the closed form does not apply; u, v,
/// alpha, beta and the coefficients are empty, t_star is 0 and `weights`
/// holds the minimum-variance portfolio.
struct ClosedFormTrace {
    RecursionCoeffs coeffs;
    Vec u;
    Vec v;
    Vec alpha;
    Vec beta;
    double t_star = 0.0;
    Vec weights;
    std::vector<std::size_t> permutation;
    bool all_means_equal = false;
};

struct Solution {
    Vec weights;  // original asset order
    ClosedFormTrace trace;
};

/// Requires mu.size() >= 3. Throws EqualConsecutiveMeansError(i) when
/// |mu[i+2] - mu[i+1]| <= 1e-12 * max|mu|.
RecursionCoeffs recursion_coefficients(std::span<const double> mu);

/// Backward recursion u_i = a_i u_{i+1} + b_i u_{i+2} (same for v).
NullSpaceBasis build_uv(std::span<const double> mu);

/// (n-2) x n tridiagonal matrix whose rows encode the consecutive-ratio
/// stationarity conditions. Defined for any mu with n >= 3.
Matrix build_b(std::span<const double> mu);

AlphaBeta compute_alpha_beta(const SymMatrix& omega, std::span<const double> u,
                             std::span<const double> v);
AlphaBeta compute_alpha_beta(const Cholesky& factor, std::span<const double> u,
                             std::span<const double> v);

/// Stationary t of Q(alpha + t beta). Throws DegenerateDenominator when Q
/// is monotone along beta.
double compute_t_star(std::span<const double> mu, const SymMatrix& omega,
                      std::span<const double> alpha, std::span<const double> beta);

/// Asset indices by descending mean, ties broken by original index.
std::vector<std::size_t> descending_order(std::span<const double> mu);

/// Internal order used by the closed form: the remaining assets by
/// descending mean, then the two extreme-mean assets. Of those two, the one
/// whose mean lies farther from the minimum-variance portfolio's expected
/// return goes last. Keeps u and v within [0, 1] and sum(Omega^-1 u) away
/// from zero.
std::vector<std::size_t> solver_ordering(std::span<const double> mu, const Cholesky& factor);

Vec to_original_order(std::span<const double> internal, std::span<const std::size_t> permutation);

/// Budget-normalized stationary point of Q without the maximality check.
/// Use solve_weights unless the stationary point itself is wanted.
ClosedFormTrace stationary_point(const AssetMoments& moments);

/// Optimal weights maximizing Q under sum(w) = 1. Throws
/// StationaryPointNotMaxError when the stationary point loses to alpha or
/// to the minimum-variance portfolio.
Solution solve_weights(const AssetMoments& moments);

/// Explicit n = 2 formulas.
Vec two_asset_weights(const AssetMoments& moments);

/// Explicit n = 3 formulas with the common denominator Delta.
Vec three_asset_weights(const AssetMoments& moments);

} // namespace riskadj
