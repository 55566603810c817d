#include "riskadj/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "riskadj/errors.hpp"
#include "riskadj/estimation.hpp"
#include "riskadj/oracle.hpp"
#include "riskadj/random_instance.hpp"

namespace riskadj {

namespace {

CheckResult make_check(std::string name, double value, double tol) {
    const bool ok = std::isfinite(value) && value <= tol;
    return {std::move(name), value, tol, ok};
}

bool distinct_means(const Vec& mu) {
    const auto order = descending_order(mu);
    const double eps = 1e-12 * norm_inf(mu);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        if (!(mu[order[k]] - mu[order[k + 1]] > eps)) return false;
    }
    return true;
}

double basis_residual(const Matrix& b, const Vec& x) {
    const double scale = b.norm_inf() * norm_inf(x);
    const double r = norm_inf(b.multiply(x));
    return scale > 0.0 ? r / scale : r;
}

} // namespace

bool all_passed(const std::vector<CheckResult>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool RandomVerifyReport::passed() const { return all_passed(checks); }

std::vector<CheckResult> verify_weights(const AssetMoments& moments, std::span<const double> w,
                                        const ClosedFormTrace* trace,
                                        const VerifyOptions& options) {
    const std::size_t n = moments.size();
    const bool distinct = distinct_means(moments.mu());
    std::vector<CheckResult> checks;

    checks.push_back(make_check("budget", std::abs(sum(w) - 1.0), tolerance::kBudget));

    if (trace != nullptr && !trace->all_means_equal) {
        checks.push_back(
            make_check("alpha_sum", std::abs(sum(trace->alpha) - 1.0), tolerance::kStructural));
        checks.push_back(make_check("beta_sum", std::abs(sum(trace->beta)), tolerance::kStructural));
        double ab = 0.0;
        for (std::size_t i = 0; i < trace->coeffs.a.size(); ++i) {
            ab = std::max(ab, std::abs(trace->coeffs.a[i] + trace->coeffs.b[i] - 1.0));
        }
        checks.push_back(make_check("recursion_a_plus_b", ab, tolerance::kStructural));
        if (n >= 3) {
            Vec mu_internal(n);
            for (std::size_t k = 0; k < n; ++k) mu_internal[k] = moments.mu()[trace->permutation[k]];
            const Matrix b = build_b(mu_internal);
            checks.push_back(make_check(
                "null_space_basis",
                std::max(basis_residual(b, trace->u), basis_residual(b, trace->v)),
                tolerance::kNullSpaceBasis));
        }
    }

    checks.push_back(make_check("kkt", kkt_residual(w, moments).norm, tolerance::kKkt));

    if (distinct && dot(moments.mu(), w) != 0.0) {
        checks.push_back(
            make_check("pairwise_ratio", pairwise_ratio_check(w, moments), tolerance::kPairwise));
    }
    if (n >= 3) {
        checks.push_back(
            make_check("null_space", null_space_residual(w, moments), tolerance::kNullSpace));
    }
    if (distinct) {
        try {
            const Vec tangent = tangency_weights(moments);
            double diff = 0.0;
            for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(tangent[i] - w[i]));
            checks.push_back(make_check("tangency", diff, tolerance::kTangency));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateNormalization) throw;
        }
    }

    checks.push_back(make_check(
        "finite_difference",
        directional_derivative_check(w, moments, options.fd_directions, options.seed),
        tolerance::kFiniteDifference));
    return checks;
}

namespace {

// Checks that only make sense for a claimed maximizer.
void add_optimality_checks(const AssetMoments& moments, std::span<const double> w,
                           const VerifyOptions& options, std::vector<CheckResult>& checks) {
    const double q = risk_adjusted_return(w, moments);
    const Vec minvar = min_variance_weights(moments.omega());
    checks.push_back(make_check("dominance", risk_adjusted_return(minvar, moments) - q,
                                tolerance::kDominance));
    if (moments.size() <= 3) {
        const GridResult grid =
            grid_search_max(moments, w, options.grid_half_width, options.grid_resolution);
        checks.push_back(make_check("grid_search", grid.q_best - q, tolerance::kGrid));
    }
}

} // namespace

std::vector<CheckResult> verify_optimum(const AssetMoments& moments, std::span<const double> w,
                                        const ClosedFormTrace* trace,
                                        const VerifyOptions& options) {
    auto checks = verify_weights(moments, w, trace, options);
    add_optimality_checks(moments, w, options, checks);
    return checks;
}

RandomVerifyReport verify_random(const std::vector<std::size_t>& dims, int instances,
                                 const VerifyOptions& options) {
    if (dims.empty()) throw Error(ErrorCode::InvalidInput, "no dimensions given");
    for (std::size_t n : dims) {
        if (n < 2) throw Error(ErrorCode::InvalidInput, "dimensions must be at least 2");
    }
    RandomVerifyReport report;
    report.dims = dims;
    report.instances = instances;
    report.seed = options.seed;

    std::mt19937_64 rng(options.seed);
    std::vector<std::string> order;
    std::map<std::string, CheckResult> worst;
    auto absorb = [&](const std::vector<CheckResult>& checks) {
        for (const auto& c : checks) {
            auto it = worst.find(c.name);
            if (it == worst.end()) {
                order.push_back(c.name);
                worst.emplace(c.name, c);
                continue;
            }
            CheckResult& w = it->second;
            w.value = std::max(w.value, c.value);
            w.passed = w.passed && c.passed;
        }
    };

    int guard_mismatches = 0;
    for (int k = 0; k < instances; ++k) {
        const std::size_t n = dims[static_cast<std::size_t>(k) % dims.size()];
        const AssetMoments moments = random_instance(n, rng);
        VerifyOptions per_instance = options;
        per_instance.seed = options.seed + static_cast<std::uint64_t>(k) + 1;

        const ClosedFormTrace trace = stationary_point(moments);
        const Vec w = to_original_order(trace.weights, trace.permutation);
        absorb(verify_weights(moments, w, &trace, per_instance));

        const bool maximum_expected = sum(solve(moments.omega(), moments.mu())) > 0.0;
        bool rejected = false;
        try {
            const Solution sol = solve_weights(moments);
            std::vector<CheckResult> opt;
            add_optimality_checks(moments, sol.weights, per_instance, opt);
            absorb(opt);
        } catch (const StationaryPointNotMaxError&) {
            rejected = true;
            ++report.rejected_not_max;
        }
        if (rejected == maximum_expected) ++guard_mismatches;
    }
    absorb({make_check("guard_consistency", static_cast<double>(guard_mismatches), 0.0)});

    for (const auto& name : order) report.checks.push_back(worst.at(name));
    return report;
}

} // namespace riskadj
