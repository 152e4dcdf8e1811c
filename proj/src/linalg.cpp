#include "npspec/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace npspec {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double max_abs(const Mat& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

double max_imag_abs(const CMat& a) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j).imag()));
    return m;
}

double max_asymmetry(const Mat& a) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - a(j, i)));
    return m;
}

Mat real_part(const CMat& a) {
    Mat out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).real();
    return out;
}

namespace {

double frobenius(const Mat& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

double offdiag_frobenius(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

void sort_by_rule(std::vector<double>& v) {
    std::sort(v.begin(), v.end(), [](double x, double y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax > ay;
        return x > y;
    });
}

} // namespace

JacobiResult jacobi_eigen(const Mat& a_in, double tol) {
    const int n = a_in.rows();
    if (n == 0 || a_in.cols() != n) throw validation_error("jacobi_eigen: matrix must be square and nonempty");
    for (double v : a_in.data())
        if (!std::isfinite(v)) throw validation_error("jacobi_eigen: non-finite entry");
    if (max_asymmetry(a_in) > 1e-12) throw validation_error("jacobi_eigen: matrix is not symmetric within 1e-12");

    Mat a = a_in;
    // Symmetrize exactly so both triangles see identical values.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }

    JacobiResult res;
    res.rotation = Mat::identity(n);
    const double norm = frobenius(a);
    const double target = tol * norm;

    if (n == 1 || norm == 0.0) {
        res.eigenvalues.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) res.eigenvalues[static_cast<size_t>(i)] = a(i, i);
        sort_by_rule(res.eigenvalues);
        return res;
    }

    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
        if (offdiag_frobenius(a) <= target) {
            converged = true;
            res.sweeps = sweep - 1;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // A <- J^t A J with the rotation J in the (p, q) plane.
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double qkp = res.rotation(k, p), qkq = res.rotation(k, q);
                    res.rotation(k, p) = c * qkp - s * qkq;
                    res.rotation(k, q) = s * qkp + c * qkq;
                }
            }
        }
    }
    if (!converged) {
        if (offdiag_frobenius(a) > target)
            throw convergence_error("jacobi_eigen: no convergence after 100 sweeps");
        res.sweeps = kMaxSweeps;
    }

    res.eigenvalues.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) res.eigenvalues[static_cast<size_t>(i)] = a(i, i);
    sort_by_rule(res.eigenvalues);
    return res;
}

std::vector<double> sym_eigenvalues(const Mat& a, double tol) { return jacobi_eigen(a, tol).eigenvalues; }

} // namespace npspec
