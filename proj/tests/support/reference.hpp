#pragma once

// Test-only reference computations. Nothing here calls into the library's
// factorization or closed-form code, so results can be used as independent
// oracles.

#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace reference {

using Vec = std::vector<double>;
using Rows = std::vector<Vec>;

/// Gauss-Jordan elimination with partial pivoting.
inline Vec gauss_solve(Rows a, Vec b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

/// Determinant by elimination with partial pivoting.
inline double determinant(Rows a) {
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(a[col], a[pivot]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

/// Sylvester's criterion, with a relative margin so that rounding noise on
/// a singular matrix does not read as positive.
inline bool leading_minors_positive(const Rows& a, double rel_margin = 1e-9) {
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) scale = std::max(scale, std::abs(a[i][i]));
    for (std::size_t k = 1; k <= a.size(); ++k) {
        Rows minor(k, Vec(k));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) minor[i][j] = a[i][j];
        }
        if (!(determinant(minor) > rel_margin * std::pow(scale, static_cast<double>(k)))) {
            return false;
        }
    }
    return true;
}

inline Vec tangency(const Vec& mu, const Rows& omega) {
    Vec x = gauss_solve(omega, mu);
    double s = 0.0;
    for (double v : x) s += v;
    for (double& v : x) v /= s;
    return x;
}

inline Vec matvec(const Rows& a, const Vec& x) {
    Vec y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    }
    return y;
}

inline double q_ratio(const Vec& w, const Vec& mu, const Rows& omega) {
    double f = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) f += w[i] * mu[i];
    const Vec ow = matvec(omega, w);
    double g = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) g += w[i] * ow[i];
    return f / std::sqrt(g);
}

/// 3x3 inverse by the adjugate.
inline Rows inverse3(const Rows& m) {
    const double a = m[0][0], b = m[0][1], c = m[0][2];
    const double d = m[1][0], e = m[1][1], f = m[1][2];
    const double g = m[2][0], h = m[2][1], i = m[2][2];
    const double det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    return {{(e * i - f * h) / det, (c * h - b * i) / det, (b * f - c * e) / det},
            {(f * g - d * i) / det, (a * i - c * g) / det, (c * d - a * f) / det},
            {(d * h - e * g) / det, (b * g - a * h) / det, (a * e - b * d) / det}};
}

/// SPD matrix with controllable conditioning: Q diag(eig) Q^t where Q comes
/// from Gram-Schmidt on a Gaussian matrix and eig spans [1, cond] * scale.
inline Rows random_spd(std::size_t n, double cond, double scale, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Rows q(n, Vec(n));
    for (auto& row : q) {
        for (double& x : row) x = normal(rng);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            double proj = 0.0;
            for (std::size_t j = 0; j < n; ++j) proj += q[i][j] * q[k][j];
            for (std::size_t j = 0; j < n; ++j) q[i][j] -= proj * q[k][j];
        }
        double norm = 0.0;
        for (double x : q[i]) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : q[i]) x /= norm;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vec eig(n);
    for (std::size_t k = 0; k < n; ++k) eig[k] = scale * std::pow(cond, unit(rng));
    Rows out(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += q[k][i] * eig[k] * q[k][j];
            out[i][j] = acc;
            out[j][i] = acc;
        }
    }
    return out;
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace reference
