#pragma once

#include "npspec/series.hpp"

#include <vector>

namespace npspec {

/// Dense row-major real matrix. Just enough surface for the spectral code.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const std::vector<double>& data() const { return a_; }

    static Mat identity(int n);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

/// Dense row-major complex matrix.
class CMat {
public:
    CMat() = default;
    CMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, cplx{0.0, 0.0}) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    cplx operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

double max_abs(const Mat& a);
double max_imag_abs(const CMat& a);
double max_asymmetry(const Mat& a);
Mat real_part(const CMat& a);

struct JacobiResult {
    std::vector<double> eigenvalues; // sorted: descending |lambda|, ties by descending value
    Mat rotation;                    // accumulated orthogonal Q with A = Q D Q^t
    int sweeps = 0;
};

/// Cyclic Jacobi for symmetric A. Stops when the off-diagonal Frobenius norm
/// drops below tol * ||A||_F; throws convergence_error after 100 sweeps.
/// Single-threaded by design so results are reproducible.
JacobiResult jacobi_eigen(const Mat& a, double tol = 1e-14);

/// Eigenvalues only, sorted by the rule above.
std::vector<double> sym_eigenvalues(const Mat& a, double tol = 1e-14);

} // namespace npspec
