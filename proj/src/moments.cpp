#include "riskadj/moments.hpp"

#include <cmath>
#include <string>

#include "riskadj/errors.hpp"

namespace riskadj {

AssetMoments::AssetMoments(Vec mu, SymMatrix omega) : mu_(std::move(mu)), omega_(std::move(omega)) {
    if (mu_.size() != omega_.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "mu has " + std::to_string(mu_.size()) + " entries but omega is " +
                        std::to_string(omega_.size()) + "x" + std::to_string(omega_.size()));
    }
    for (double m : mu_) {
        if (!std::isfinite(m)) throw Error(ErrorCode::InvalidInput, "mu contains a non-finite value");
    }
    for (std::size_t i = 0; i < omega_.size(); ++i) {
        for (std::size_t j = 0; j < omega_.size(); ++j) {
            if (!std::isfinite(omega_(i, j))) {
                throw Error(ErrorCode::InvalidInput, "omega contains a non-finite value");
            }
        }
    }
    // Cholesky's constructor throws NotSpd with the failing pivot.
    Cholesky check(omega_);
}

PortfolioReport portfolio_metrics(std::span<const double> w, const AssetMoments& moments) {
    PortfolioReport r;
    r.f = dot(w, moments.mu());
    r.g = quad_form(w, moments.omega(), w);
    r.q = r.f / std::sqrt(r.g);
    return r;
}

double risk_adjusted_return(std::span<const double> w, const AssetMoments& moments) {
    return portfolio_metrics(w, moments).q;
}

} // namespace riskadj
