#include "riskadj/random_instance.hpp"

#include <algorithm>

namespace riskadj {

namespace {

constexpr double kRidge = 1e-3;
constexpr double kMinGap = 1e-6;

bool gaps_ok(Vec sorted) {
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (!(sorted[i + 1] - sorted[i] > kMinGap)) return false;
    }
    return true;
}

} // namespace

AssetMoments random_instance(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<Vec> a(n, Vec(n));
    for (auto& row : a) {
        for (double& x : row) x = normal(rng);
    }
    SymMatrix omega(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += a[k][i] * a[k][j];
            if (i == j) acc += static_cast<double>(n) * kRidge;
            omega.set(i, j, acc);
        }
    }

    Vec mu(n);
    do {
        for (double& m : mu) m = normal(rng);
    } while (!gaps_ok(mu));

    return AssetMoments(std::move(mu), std::move(omega));
}

} // namespace riskadj
