#include "riskadj/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "riskadj/errors.hpp"

namespace riskadj {

namespace {

constexpr double kPivotRelTol = 1e-12;

void require_square(const std::vector<Vec>& rows) {
    const std::size_t n = rows.size();
    if (n < 2) {
        throw Error(ErrorCode::InvalidInput,
                    "covariance matrix needs at least 2 rows, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw Error(ErrorCode::DimensionMismatch,
                        "covariance row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(n));
        }
    }
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void require_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + ": length " + std::to_string(got) +
                        " does not match dimension " + std::to_string(want));
    }
}

} // namespace

SymMatrix::SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidInput,
                    "matrix dimension must be at least 2, got " + std::to_string(n));
    }
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
    return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
    SymMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.data_[i * m.n_ + i] = diag[i];
    return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<Vec>& rows) {
    require_square(rows);
    const std::size_t n = rows.size();
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (rows[i][j] != rows[j][i]) {
                throw Error(ErrorCode::InvalidInput,
                            "covariance matrix is not symmetric at (" + std::to_string(i) +
                                ", " + std::to_string(j) + ")");
            }
            m.data_[i * n + j] = rows[i][j];
        }
    }
    return m;
}

SymMatrix SymMatrix::symmetrized(const std::vector<Vec>& rows) {
    require_square(rows);
    const std::size_t n = rows.size();
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            m.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
        }
    }
    return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
}

Vec SymMatrix::multiply(std::span<const double> x) const {
    require_size(x.size(), n_, "matrix-vector product");
    Vec y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j) acc += data_[i * n_ + j] * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<Vec> SymMatrix::rows() const {
    std::vector<Vec> out(n_, Vec(n_));
    for (std::size_t i = 0; i < n_; ++i) {
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(i * n_), n_, out[i].begin());
    }
    return out;
}

double SymMatrix::max_diagonal() const {
    double best = data_[0];
    for (std::size_t i = 1; i < n_; ++i) best = std::max(best, data_[i * n_ + i]);
    return best;
}

double SymMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n_; ++j) row += std::abs(data_[i * n_ + j]);
        best = std::max(best, row);
    }
    return best;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Vec Matrix::multiply(std::span<const double> x) const {
    require_size(x.size(), cols_, "matrix-vector product");
    Vec y(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) acc += data_[r * cols_ + c] * x[c];
        y[r] = acc;
    }
    return y;
}

double Matrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) row += std::abs(data_[r * cols_ + c]);
        best = std::max(best, row);
    }
    return best;
}

namespace {

// Column-by-column LL^t. Fills `lower` (row-major, n x n) and reports the
// first pivot that does not clear the threshold.
SpdDiagnostic factorize(const SymMatrix& a, std::vector<double>& lower) {
    const std::size_t n = a.size();
    lower.assign(n * n, 0.0);
    SpdDiagnostic diag;
    diag.threshold = kPivotRelTol * a.max_diagonal();
    if (!(a.max_diagonal() > 0.0)) {
        diag.pivot = a(0, 0);
        return diag;
    }
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= lower[j * n + k] * lower[j * n + k];
        if (!(d > diag.threshold)) {
            diag.pivot_index = j;
            diag.pivot = d;
            return diag;
        }
        const double ljj = std::sqrt(d);
        lower[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= lower[i * n + k] * lower[j * n + k];
            lower[i * n + j] = s / ljj;
        }
    }
    diag.ok = true;
    return diag;
}

} // namespace

SpdDiagnostic spd_diagnostic(const SymMatrix& omega) {
    std::vector<double> scratch;
    return factorize(omega, scratch);
}

bool check_spd(const SymMatrix& omega) { return spd_diagnostic(omega).ok; }

Cholesky::Cholesky(const SymMatrix& omega) : n_(omega.size()) {
    const SpdDiagnostic diag = factorize(omega, lower_);
    if (!diag.ok) {
        throw Error(ErrorCode::NotSpd,
                    "covariance matrix is not positive definite: pivot " +
                        std::to_string(diag.pivot_index) + " = " + fmt(diag.pivot) + " (threshold " +
                        fmt(diag.threshold) + ")");
    }
}

Vec Cholesky::solve(std::span<const double> b) const {
    require_size(b.size(), n_, "linear solve");
    Vec y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= lower_[i * n_ + k] * y[k];
        y[i] = s / lower_[i * n_ + i];
    }
    Vec x(n_);
    for (std::size_t i = n_; i-- > 0;) {
        double s = y[i];
        for (std::size_t k = i + 1; k < n_; ++k) s -= lower_[k * n_ + i] * x[k];
        x[i] = s / lower_[i * n_ + i];
    }
    return x;
}

Vec solve(const SymMatrix& omega, std::span<const double> b) {
    require_size(b.size(), omega.size(), "linear solve");
    return Cholesky(omega).solve(b);
}

double quad_form(std::span<const double> x, const SymMatrix& omega, std::span<const double> y) {
    require_size(x.size(), omega.size(), "quadratic form (left)");
    require_size(y.size(), omega.size(), "quadratic form (right)");
    return dot(x, omega.multiply(y));
}

double dot(std::span<const double> x, std::span<const double> y) {
    require_size(y.size(), x.size(), "dot product");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

// Neumaier-compensated; budget checks compare sums against 1 at 1e-12.
double sum(std::span<const double> x) {
    double s = 0.0;
    double c = 0.0;
    for (double v : x) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v)) {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    return s + c;
}

double norm_inf(std::span<const double> x) {
    double best = 0.0;
    for (double v : x) best = std::max(best, std::abs(v));
    return best;
}

double norm1(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += std::abs(v);
    return acc;
}

} // namespace riskadj
