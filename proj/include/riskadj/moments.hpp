#pragma once

#include "riskadj/linalg.hpp"

namespace riskadj {

/// Expected returns and return covariance for n >= 2 assets. Construction
/// validates dimensions and that omega is SPD (throws NotSpd otherwise).
class AssetMoments {
public:
    AssetMoments(Vec mu, SymMatrix omega);

    std::size_t size() const noexcept { return mu_.size(); }
    const Vec& mu() const noexcept { return mu_; }
    const SymMatrix& omega() const noexcept { return omega_; }

private:
    Vec mu_;
    SymMatrix omega_;
};

/// f, g and Q = f / sqrt(g) for one portfolio.
struct PortfolioReport {
    double f = 0.0;  // expected return per period
    double g = 0.0;  // variance per period^2
    double q = 0.0;  // risk-adjusted return
};

PortfolioReport portfolio_metrics(std::span<const double> w, const AssetMoments& moments);

/// Risk-adjusted return of w, f(w) / sqrt(g(w)).
double risk_adjusted_return(std::span<const double> w, const AssetMoments& moments);

} // namespace riskadj
