#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace npspec {

using cplx = std::complex<double>;

/// Thrown on precondition violations (bad parameters, malformed input).
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative scheme fails to converge.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact rational exponent, normalized so den > 0 and gcd(num, den) == 1.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integer() const { return den == 1; }
    Rational times(long long k) const { return Rational(num * k, den); }
    Rational over(long long k) const { return Rational(num, den * k); }
    Rational reciprocal() const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

/// Truncated Laurent series at infinity.
///
/// Stores the `trunc_order()` leading coefficients, descending by exponent
/// from `top_degree()`. Indexing by exponent is total on
/// [bottom_degree(), top_degree()]; `coeff` returns 0 outside that window.
/// Operations never extrapolate: results carry the shortest honest window.
class LaurentTail {
public:
    LaurentTail() = default;
    LaurentTail(int top_degree, std::vector<cplx> coeffs);

    int top_degree() const { return top_degree_; }
    int trunc_order() const { return static_cast<int>(coeffs_.size()); }
    int bottom_degree() const { return top_degree_ - trunc_order() + 1; }

    cplx coeff(int exponent) const;
    void set_coeff(int exponent, cplx value);
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    /// Same series viewed with exponents shifted by `delta` (multiply by z^delta).
    LaurentTail shifted(int delta) const;
    /// Restriction to the first `n` coefficients.
    LaurentTail truncated(int n) const;

    bool empty() const { return coeffs_.empty(); }

private:
    int top_degree_ = 0;
    std::vector<cplx> coeffs_;
};

/// The monomial z^degree with a window of `order` coefficients.
LaurentTail monomial_tail(int degree, int order);

/// Cauchy product truncated to the shortest honest window
/// (top degrees add, tail length = min of the operands').
LaurentTail mul(const LaurentTail& s, const LaurentTail& t);

/// s^alpha for s = z^d (1 + sum_{j>=1} b_j z^-j).
///
/// The unit factor is raised with the power-series recurrence
///   n f_n = sum_{k=1}^{n} ((alpha+1) k - n) g_k f_{n-k},  f_0 = 1,
/// principal branch. Requires alpha*d integral and the unit factor's
/// constant term equal to 1.
LaurentTail fractional_pow(const LaurentTail& s, Rational alpha);

/// z -> z^m reindexing. Inserted coefficients are exactly zero and the
/// truncation window scales by m.
LaurentTail substitute_power(const LaurentTail& s, int m);

/// Compositional inverse of a normalized map tail s = z + b_0 + b_1/z + ...
/// Returns t with t(s(z)) = z + O(z^{-N}); one coefficient per order.
LaurentTail revert(const LaurentTail& s);

/// Term-by-term derivative.
LaurentTail derivative(const LaurentTail& s);

/// Evaluate at r e^{i theta}.
cplx eval_on_circle(const LaurentTail& s, double r, double theta);

/// Generalized binomial coefficient binom(alpha, j) by the multiplicative
/// recurrence binom(alpha, j+1) = binom(alpha, j) (alpha - j) / (j + 1).
double real_binomial(double alpha, int j);

} // namespace npspec
