#include "riskadj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "riskadj/closed_form.hpp"
#include "riskadj/compensated.hpp"
#include "riskadj/errors.hpp"

namespace riskadj {

KktResidual kkt_residual(std::span<const double> w, const AssetMoments& moments) {
    const std::size_t n = moments.size();
    const Vec omega_w = moments.omega().multiply(w);
    const double f = dot(moments.mu(), w);
    const double g = dot(w, omega_w);
    const double g32 = g * std::sqrt(g);

    Vec lhs(n);
    Vec grad_g(n);
    for (std::size_t i = 0; i < n; ++i) {
        grad_g[i] = 2.0 * omega_w[i];
        lhs[i] = 2.0 * moments.mu()[i] * g - f * grad_g[i];
    }

    KktResidual out;
    double acc = 0.0;
    for (double x : lhs) acc += x / (2.0 * g32);
    out.lambda_hat = acc / static_cast<double>(n);

    out.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.residuals[i] = lhs[i] - 2.0 * g32 * out.lambda_hat;

    const double scale = 2.0 * g32 * std::abs(out.lambda_hat) + std::abs(f) * norm_inf(grad_g);
    const double worst = norm_inf(out.residuals);
    out.norm = scale > 0.0 ? worst / scale : worst;
    return out;
}

double pairwise_ratio_check(std::span<const double> w, const AssetMoments& moments) {
    const Vec& mu = moments.mu();
    const Vec omega_w = moments.omega().multiply(w);
    const double f = dot(mu, w);
    const double g = dot(w, omega_w);
    if (f == 0.0) {
        throw Error(ErrorCode::DegenerateDenominator,
                    "DegenerateDenominator: expected return f(w) is zero");
    }
    const double target = 2.0 * g / f;
    const double eps = 1e-12 * norm_inf(mu);
    const auto order = descending_order(mu);

    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const std::size_t i = order[k];
        const std::size_t j = order[k + 1];
        const double df = mu[j] - mu[i];
        if (!(std::abs(df) > eps)) {
            throw Error(ErrorCode::DegenerateDenominator,
                        "DegenerateDenominator: assets " + std::to_string(i) + " and " +
                            std::to_string(j) + " share a mean");
        }
        const double ratio = (2.0 * omega_w[j] - 2.0 * omega_w[i]) / df;
        worst = std::max(worst, std::abs(ratio - target));
    }
    return worst / std::abs(target);
}

Vec tangency_weights(const AssetMoments& moments) {
    const SymMatrix& omega = moments.omega();
    const Cholesky chol(omega);
    Vec x = chol.solve(moments.mu());
    // Iterative refinement with a compensated residual: the budget sum below
    // cancels heavily when Omega^-1 mu is nearly budget-neutral.
    for (int step = 0; step < 2; ++step) {
        Vec r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            compensated::DoubleDouble acc{moments.mu()[i], 0.0};
            for (std::size_t j = 0; j < x.size(); ++j) acc = acc - compensated::two_prod(omega(i, j), x[j]);
            r[i] = acc.value();
        }
        const Vec dx = chol.solve(r);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
    }
    const double s = sum(x);
    if (!(std::abs(s) > 1e-12 * norm1(x))) {
        throw Error(ErrorCode::DegenerateNormalization,
                    "DegenerateNormalization: sum(Omega^-1 mu) vanishes");
    }
    for (double& xi : x) xi /= s;
    return x;
}

double null_space_residual(std::span<const double> w, const AssetMoments& moments) {
    const Matrix b = build_b(moments.mu());
    const Vec r = b.multiply(moments.omega().multiply(w));
    const double scale = b.norm_inf() * moments.omega().norm_inf() * norm_inf(w);
    return scale > 0.0 ? norm_inf(r) / scale : norm_inf(r);
}

double directional_derivative_check(std::span<const double> w, const AssetMoments& moments,
                                    int directions, std::uint64_t seed) {
    const std::size_t n = moments.size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double q0 = std::abs(risk_adjusted_return(w, moments));
    const double h = 1e-6 * norm_inf(w);

    double worst = 0.0;
    Vec d(n), plus(n), minus(n);
    for (int k = 0; k < directions; ++k) {
        for (double& di : d) di = normal(rng);
        const double mean = sum(d) / static_cast<double>(n);
        for (double& di : d) di -= mean;
        const double scale = norm_inf(d);
        if (scale == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            d[i] /= scale;
            plus[i] = w[i] + h * d[i];
            minus[i] = w[i] - h * d[i];
        }
        const double deriv =
            (risk_adjusted_return(plus, moments) - risk_adjusted_return(minus, moments)) / (2.0 * h);
        worst = std::max(worst, q0 > 0.0 ? std::abs(deriv) / q0 : std::abs(deriv));
    }
    return worst;
}

namespace {

void require_grid_dims(const AssetMoments& moments, int resolution) {
    if (moments.size() != 2 && moments.size() != 3) {
        throw Error(ErrorCode::InvalidInput, "grid search supports 2 or 3 assets only");
    }
    if (resolution < 2) {
        throw Error(ErrorCode::InvalidInput, "grid resolution must be at least 2");
    }
}

// Free coordinate k takes values origin[k] + step * i, i in [0, resolution).
GridResult scan(const AssetMoments& moments, const double origin[2], double step, int resolution) {
    const Vec& mu = moments.mu();
    const SymMatrix& s = moments.omega();
    GridResult best;
    best.step = step;
    best.q_best = -std::numeric_limits<double>::infinity();

    if (moments.size() == 2) {
        for (int i = 0; i < resolution; ++i) {
            const double w1 = origin[0] + step * i;
            const double w2 = 1.0 - w1;
            const double f = mu[0] * w1 + mu[1] * w2;
            const double g = s(0, 0) * w1 * w1 + 2.0 * s(0, 1) * w1 * w2 + s(1, 1) * w2 * w2;
            const double q = f / std::sqrt(g);
            if (q > best.q_best) {
                best.q_best = q;
                best.weights = {w1, w2};
            }
        }
        return best;
    }

    for (int i = 0; i < resolution; ++i) {
        const double w1 = origin[0] + step * i;
        for (int j = 0; j < resolution; ++j) {
            const double w2 = origin[1] + step * j;
            const double w3 = 1.0 - w1 - w2;
            const double f = mu[0] * w1 + mu[1] * w2 + mu[2] * w3;
            const double g = s(0, 0) * w1 * w1 + s(1, 1) * w2 * w2 + s(2, 2) * w3 * w3 +
                             2.0 * (s(0, 1) * w1 * w2 + s(0, 2) * w1 * w3 + s(1, 2) * w2 * w3);
            const double q = f / std::sqrt(g);
            if (q > best.q_best) {
                best.q_best = q;
                best.weights = {w1, w2, w3};
            }
        }
    }
    return best;
}

} // namespace

GridResult grid_search_box(const AssetMoments& moments, double lower, double upper,
                           int resolution) {
    require_grid_dims(moments, resolution);
    const double origin[2] = {lower, lower};
    return scan(moments, origin, (upper - lower) / static_cast<double>(resolution - 1), resolution);
}

GridResult grid_search_max(const AssetMoments& moments, std::span<const double> center,
                           double half_width, int resolution) {
    require_grid_dims(moments, resolution);
    if (center.size() != moments.size()) {
        throw Error(ErrorCode::DimensionMismatch, "grid center has the wrong length");
    }
    const double origin[2] = {center[0] - half_width,
                              moments.size() == 3 ? center[1] - half_width : 0.0};
    GridResult centered =
        scan(moments, origin, 2.0 * half_width / static_cast<double>(resolution - 1), resolution);
    GridResult fixed = grid_search_box(moments, -2.0, 3.0, resolution);
    return fixed.q_best > centered.q_best ? fixed : centered;
}

} // namespace riskadj
