#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace riskadj {

using Vec = std::vector<double>;

/// Dense symmetric n x n matrix, n >= 2. Symmetry holds exactly: every
/// write goes to both (i, j) and (j, i).
class SymMatrix {
public:
    explicit SymMatrix(std::size_t n);

    static SymMatrix identity(std::size_t n);
    static SymMatrix diagonal(std::span<const double> diag);

    /// Rejects rows that are not square or not exactly symmetric.
    static SymMatrix from_rows(const std::vector<Vec>& rows);
    /// Builds (A + A^t) / 2 from square rows.
    static SymMatrix symmetrized(const std::vector<Vec>& rows);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double value);

    Vec multiply(std::span<const double> x) const;
    std::vector<Vec> rows() const;

    double max_diagonal() const;
    double norm_inf() const;

private:
    std::size_t n_;
    std::vector<double> data_;
};

/// Row-major rectangular matrix.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec multiply(std::span<const double> x) const;
    double norm_inf() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// Outcome of attempting an LL^t factorization with the relative pivot
/// threshold 1e-12 * max diagonal entry.
struct SpdDiagnostic {
    bool ok = false;
    std::size_t pivot_index = 0;  // first failing pivot when !ok
    double pivot = 0.0;
    double threshold = 0.0;
};

SpdDiagnostic spd_diagnostic(const SymMatrix& omega);
bool check_spd(const SymMatrix& omega);

class Cholesky {
public:
    /// Throws Error(NotSpd) if any pivot is at or below the threshold.
    explicit Cholesky(const SymMatrix& omega);

    std::size_t size() const noexcept { return n_; }
    Vec solve(std::span<const double> b) const;

private:
    std::size_t n_;
    std::vector<double> lower_;
};

Vec solve(const SymMatrix& omega, std::span<const double> b);
double quad_form(std::span<const double> x, const SymMatrix& omega, std::span<const double> y);

double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
double norm_inf(std::span<const double> x);
double norm1(std::span<const double> x);

} // namespace riskadj
