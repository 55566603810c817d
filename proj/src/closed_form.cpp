#include "riskadj/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "riskadj/compensated.hpp"
#include "riskadj/errors.hpp"
#include "riskadj/estimation.hpp"

namespace riskadj {

namespace {

constexpr double kRelTol = 1e-12;

double mean_tolerance(std::span<const double> mu) { return kRelTol * norm_inf(mu); }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

RecursionCoeffs recursion_coefficients(std::span<const double> mu) {
    const std::size_t n = mu.size();
    if (n < 3) {
        throw Error(ErrorCode::InvalidInput,
                    "recursion coefficients need at least 3 assets, got " + std::to_string(n));
    }
    const double eps = mean_tolerance(mu);
    RecursionCoeffs c;
    c.a.resize(n - 2);
    c.b.resize(n - 2);
    for (std::size_t i = 0; i + 2 < n; ++i) {
        const double denom = mu[i + 2] - mu[i + 1];
        if (!(std::abs(denom) > eps)) {
            throw EqualConsecutiveMeansError(
                i, i + 1, i + 2,
                "EqualConsecutiveMeans: means of assets " + std::to_string(i + 1) + " and " +
                    std::to_string(i + 2) + " coincide (recursion step " + std::to_string(i) + ")");
        }
        c.a[i] = (mu[i + 2] - mu[i]) / denom;
        c.b[i] = (mu[i] - mu[i + 1]) / denom;
    }
    return c;
}

NullSpaceBasis build_uv(std::span<const double> mu) {
    const std::size_t n = mu.size();
    if (n < 2) {
        throw Error(ErrorCode::InvalidInput, "need at least 2 assets, got " + std::to_string(n));
    }
    NullSpaceBasis basis{Vec(n, 0.0), Vec(n, 0.0)};
    basis.u[n - 2] = 1.0;
    basis.v[n - 1] = 1.0;
    if (n == 2) return basis;

    const RecursionCoeffs c = recursion_coefficients(mu);
    for (std::size_t i = n - 2; i-- > 0;) {
        basis.u[i] = c.a[i] * basis.u[i + 1] + c.b[i] * basis.u[i + 2];
        basis.v[i] = c.a[i] * basis.v[i + 1] + c.b[i] * basis.v[i + 2];
    }
    return basis;
}

Matrix build_b(std::span<const double> mu) {
    const std::size_t n = mu.size();
    if (n < 3) {
        throw Error(ErrorCode::InvalidInput,
                    "B matrix needs at least 3 assets, got " + std::to_string(n));
    }
    Matrix b(n - 2, n);
    for (std::size_t i = 0; i + 2 < n; ++i) {
        b(i, i) = mu[i + 2] - mu[i + 1];
        b(i, i + 1) = mu[i] - mu[i + 2];
        b(i, i + 2) = mu[i + 1] - mu[i];
    }
    return b;
}

AlphaBeta compute_alpha_beta(const Cholesky& factor, std::span<const double> u,
                             std::span<const double> v) {
    const Vec omega_inv_u = factor.solve(u);
    const Vec omega_inv_v = factor.solve(v);
    const double su = sum(omega_inv_u);
    if (!(std::abs(su) > kRelTol * norm1(omega_inv_u))) {
        throw Error(ErrorCode::DegenerateNormalization,
                    "DegenerateNormalization: sum(Omega^-1 u) = " + fmt(su) + " vanishes");
    }
    const double sv = sum(omega_inv_v);
    AlphaBeta ab{Vec(u.size()), Vec(u.size())};
    for (std::size_t i = 0; i < u.size(); ++i) {
        ab.alpha[i] = omega_inv_u[i] / su;
        ab.beta[i] = omega_inv_v[i] - sv * ab.alpha[i];
    }
    return ab;
}

AlphaBeta compute_alpha_beta(const SymMatrix& omega, std::span<const double> u,
                             std::span<const double> v) {
    return compute_alpha_beta(Cholesky(omega), u, v);
}

double compute_t_star(std::span<const double> mu, const SymMatrix& omega,
                      std::span<const double> alpha, std::span<const double> beta) {
    namespace cp = compensated;
    // Both numerator and denominator are differences of nearly equal
    // products when sum(Omega^-1 mu) is small; carry them in double-double.
    const cp::DoubleDouble mu_alpha = cp::dot(mu, alpha);
    const cp::DoubleDouble mu_beta = cp::dot(mu, beta);
    const cp::DoubleDouble aa = cp::quad_form(alpha, omega, alpha);
    const cp::DoubleDouble ab = cp::quad_form(alpha, omega, beta);
    const cp::DoubleDouble bb = cp::quad_form(beta, omega, beta);

    const double numer = (mu_beta * aa - mu_alpha * ab).value();
    const double denom = (mu_beta * ab - mu_alpha * bb).value();
    if (!(std::abs(denom) > kRelTol * std::abs(mu_alpha.value()) * bb.value())) {
        throw Error(ErrorCode::DegenerateDenominator,
                    "DegenerateDenominator: t* denominator " + fmt(denom) +
                        " vanishes; Q is monotone along beta");
    }
    return -numer / denom;
}

std::vector<std::size_t> descending_order(std::span<const double> mu) {
    std::vector<std::size_t> order(mu.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return mu[l] > mu[r]; });
    return order;
}

std::vector<std::size_t> solver_ordering(std::span<const double> mu, const Cholesky& factor) {
    std::vector<std::size_t> sorted = descending_order(mu);
    const std::size_t n = sorted.size();
    const std::size_t top = sorted.front();
    const std::size_t bottom = sorted.back();

    // Expected return of the minimum-variance portfolio. Placing the extreme
    // mean farthest from it last keeps sum(Omega^-1 u) away from zero.
    const Vec x = factor.solve(Vec(n, 1.0));
    const double mu_minvar = dot(x, mu) / sum(x);
    const bool top_last = std::abs(mu[top] - mu_minvar) >= std::abs(mu[bottom] - mu_minvar);

    std::vector<std::size_t> order(sorted.begin() + 1, sorted.end() - 1);
    order.push_back(top_last ? bottom : top);
    order.push_back(top_last ? top : bottom);
    return order;
}

Vec to_original_order(std::span<const double> internal, std::span<const std::size_t> permutation) {
    Vec out(internal.size());
    for (std::size_t k = 0; k < internal.size(); ++k) out[permutation[k]] = internal[k];
    return out;
}

ClosedFormTrace stationary_point(const AssetMoments& moments) {
    const std::size_t n = moments.size();
    const Vec& mu = moments.mu();
    ClosedFormTrace trace;

    const double eps = mean_tolerance(mu);
    const auto [lo, hi] = std::minmax_element(mu.begin(), mu.end());
    if (!(*hi - *lo > eps)) {
        // Q = mu / sqrt(g) on the budget hyperplane: the closed form
        // degenerates and the answer is the minimum-variance portfolio.
        trace.all_means_equal = true;
        trace.permutation.resize(n);
        std::iota(trace.permutation.begin(), trace.permutation.end(), std::size_t{0});
        trace.weights = min_variance_weights(moments.omega());
        return trace;
    }

    const std::vector<std::size_t> sorted = descending_order(mu);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (!(mu[sorted[k]] - mu[sorted[k + 1]] > eps)) {
            const std::size_t first = std::min(sorted[k], sorted[k + 1]);
            const std::size_t second = std::max(sorted[k], sorted[k + 1]);
            throw EqualConsecutiveMeansError(
                k, first, second,
                "EqualConsecutiveMeans: assets " + std::to_string(first) + " and " +
                    std::to_string(second) + " share the mean " + fmt(mu[first]) +
                    "; the closed form needs distinct means");
        }
    }

    trace.permutation = solver_ordering(mu, Cholesky(moments.omega()));
    Vec mu_internal(n);
    SymMatrix omega_internal(n);
    for (std::size_t i = 0; i < n; ++i) {
        mu_internal[i] = mu[trace.permutation[i]];
        for (std::size_t j = i; j < n; ++j) {
            omega_internal.set(i, j,
                               moments.omega()(trace.permutation[i], trace.permutation[j]));
        }
    }

    if (n >= 3) trace.coeffs = recursion_coefficients(mu_internal);
    NullSpaceBasis basis = build_uv(mu_internal);
    trace.u = std::move(basis.u);
    trace.v = std::move(basis.v);

    const Cholesky factor(omega_internal);
    AlphaBeta ab = compute_alpha_beta(factor, trace.u, trace.v);
    trace.alpha = std::move(ab.alpha);
    trace.beta = std::move(ab.beta);
    trace.t_star = compute_t_star(mu_internal, omega_internal, trace.alpha, trace.beta);

    trace.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        trace.weights[i] = trace.alpha[i] + trace.t_star * trace.beta[i];
    }
    return trace;
}

Solution solve_weights(const AssetMoments& moments) {
    ClosedFormTrace trace = stationary_point(moments);
    Vec weights = to_original_order(trace.weights, trace.permutation);

    if (trace.all_means_equal) {
        if (norm_inf(moments.mu()) > 0.0 && moments.mu()[0] < 0.0) {
            // Q < 0 shrinks toward 0 as variance grows; no maximizer exists.
            const double q = risk_adjusted_return(weights, moments);
            throw StationaryPointNotMaxError(
                weights, q, {}, 0.0,
                "StationaryPointNotMax: all means are equal and negative; the minimum-variance "
                "portfolio minimizes Q and the supremum 0 is not attained");
        }
        return {std::move(weights), std::move(trace)};
    }

    const double q_star = risk_adjusted_return(weights, moments);
    const Vec alpha = to_original_order(trace.alpha, trace.permutation);
    const Vec minvar = min_variance_weights(moments.omega());
    const double q_alpha = risk_adjusted_return(alpha, moments);
    const double q_minvar = risk_adjusted_return(minvar, moments);
    const bool alpha_wins = q_alpha > q_minvar;
    const double q_rival = alpha_wins ? q_alpha : q_minvar;
    const double slack = kRelTol * std::max(1.0, std::abs(q_rival));
    if (q_star < q_rival - slack) {
        throw StationaryPointNotMaxError(
            weights, q_star, alpha_wins ? alpha : minvar, q_rival,
            "StationaryPointNotMax: stationary point has Q = " + fmt(q_star) + " but the " +
                (alpha_wins ? std::string("alpha") : std::string("minimum-variance")) +
                " portfolio reaches Q = " + fmt(q_rival));
    }
    return {std::move(weights), std::move(trace)};
}

Vec two_asset_weights(const AssetMoments& moments) {
    if (moments.size() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "two_asset_weights needs exactly 2 assets");
    }
    const double m1 = moments.mu()[0];
    const double m2 = moments.mu()[1];
    const SymMatrix& s = moments.omega();
    const double s11 = s(0, 0), s12 = s(0, 1), s22 = s(1, 1);

    const double denom = m1 * (s22 - s12) + m2 * (s11 - s12);
    const double scale = std::max(std::abs(m1), std::abs(m2)) *
                         std::max({std::abs(s11), std::abs(s12), std::abs(s22)});
    if (!(std::abs(denom) > kRelTol * scale)) {
        throw Error(ErrorCode::DegenerateDenominator,
                    "DegenerateDenominator: two-asset denominator " + fmt(denom) + " vanishes");
    }
    return {(m1 * s22 - m2 * s12) / denom, (m2 * s11 - m1 * s12) / denom};
}

Vec three_asset_weights(const AssetMoments& moments) {
    if (moments.size() != 3) {
        throw Error(ErrorCode::DimensionMismatch, "three_asset_weights needs exactly 3 assets");
    }
    const double m1 = moments.mu()[0];
    const double m2 = moments.mu()[1];
    const double m3 = moments.mu()[2];
    const SymMatrix& s = moments.omega();
    const double s11 = s(0, 0), s12 = s(0, 1), s13 = s(0, 2);
    const double s22 = s(1, 1), s23 = s(1, 2), s33 = s(2, 2);

    const double delta =
        m3 * (s12 * s12 - (s13 + s23) * s12 + (s13 - s11) * s22 + s11 * s23) +
        m2 * (-s13 * (s12 - s13 + s23) + s11 * (s23 - s33) + s12 * s33) +
        m1 * (s13 * (s22 - s23) + s23 * (s23 - s12) + (s12 - s22) * s33);

    double max_sigma = 0.0;
    for (double x : {s11, s12, s13, s22, s23, s33}) max_sigma = std::max(max_sigma, std::abs(x));
    const double scale = std::max({std::abs(m1), std::abs(m2), std::abs(m3)}) * max_sigma * max_sigma;
    if (!(std::abs(delta) > kRelTol * scale)) {
        throw Error(ErrorCode::DegenerateDenominator,
                    "DegenerateDenominator: three-asset denominator " + fmt(delta) + " vanishes");
    }

    const double w1 = m3 * (s13 * s22 - s12 * s23) + m2 * (s12 * s33 - s13 * s23) +
                      m1 * (s23 * s23 - s22 * s33);
    const double w2 = m3 * (s11 * s23 - s12 * s13) + m2 * (s13 * s13 - s11 * s33) +
                      m1 * (s12 * s33 - s13 * s23);
    const double w3 = m3 * (s12 * s12 - s11 * s22) + m2 * (s11 * s23 - s12 * s13) +
                      m1 * (s13 * s22 - s12 * s23);
    return {w1 / delta, w2 / delta, w3 / delta};
}

} // namespace riskadj
