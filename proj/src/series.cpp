#include "npspec/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace npspec {

namespace {

long long checked_gcd(long long a, long long b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

cplx integer_pow(cplx w, int n) {
    if (n < 0) return 1.0 / integer_pow(w, -n);
    cplx out{1.0, 0.0};
    while (n > 0) {
        if (n & 1) out *= w;
        w *= w;
        n >>= 1;
    }
    return out;
}

} // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw validation_error("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) {
        den = 1;
        return;
    }
    const long long g = checked_gcd(num, den);
    num /= g;
    den /= g;
}

Rational Rational::reciprocal() const {
    if (num == 0) throw validation_error("Rational: reciprocal of zero");
    return Rational(den, num);
}

LaurentTail::LaurentTail(int top_degree, std::vector<cplx> coeffs)
    : top_degree_(top_degree), coeffs_(std::move(coeffs)) {}

cplx LaurentTail::coeff(int exponent) const {
    const int idx = top_degree_ - exponent;
    if (idx < 0 || idx >= trunc_order()) return {0.0, 0.0};
    return coeffs_[static_cast<size_t>(idx)];
}

void LaurentTail::set_coeff(int exponent, cplx value) {
    const int idx = top_degree_ - exponent;
    if (idx < 0 || idx >= trunc_order())
        throw validation_error("LaurentTail::set_coeff: exponent outside window");
    coeffs_[static_cast<size_t>(idx)] = value;
}

LaurentTail LaurentTail::shifted(int delta) const {
    return LaurentTail(top_degree_ + delta, coeffs_);
}

LaurentTail LaurentTail::truncated(int n) const {
    if (n <= 0) throw validation_error("LaurentTail::truncated: window must be positive");
    std::vector<cplx> c(coeffs_.begin(),
                        coeffs_.begin() + std::min<size_t>(coeffs_.size(), static_cast<size_t>(n)));
    return LaurentTail(top_degree_, std::move(c));
}

LaurentTail monomial_tail(int degree, int order) {
    if (order < 1) throw validation_error("monomial_tail: order must be >= 1");
    std::vector<cplx> c(static_cast<size_t>(order), cplx{0.0, 0.0});
    c[0] = cplx{1.0, 0.0};
    return LaurentTail(degree, std::move(c));
}

LaurentTail mul(const LaurentTail& s, const LaurentTail& t) {
    if (s.empty() || t.empty()) throw validation_error("mul: empty operand");
    const int len = std::min(s.trunc_order(), t.trunc_order());
    const int top = s.top_degree() + t.top_degree();
    std::vector<cplx> out(static_cast<size_t>(len), cplx{0.0, 0.0});
    // out[i] is the coefficient of z^(top - i); only pairs inside both
    // windows can contribute, and for i < len they all do.
    const auto& a = s.coeffs();
    const auto& b = t.coeffs();
    for (int i = 0; i < len; ++i) {
        cplx acc{0.0, 0.0};
        // a index j pairs with b index i - j
        const int j_lo = std::max(0, i - (t.trunc_order() - 1));
        const int j_hi = std::min(i, s.trunc_order() - 1);
        for (int j = j_lo; j <= j_hi; ++j) acc += a[static_cast<size_t>(j)] * b[static_cast<size_t>(i - j)];
        out[static_cast<size_t>(i)] = acc;
    }
    return LaurentTail(top, std::move(out));
}

LaurentTail fractional_pow(const LaurentTail& s, Rational alpha) {
    if (s.empty()) throw validation_error("fractional_pow: empty operand");
    const int d = s.top_degree();
    const cplx lead = s.coeffs().front();
    if (std::abs(lead - cplx{1.0, 0.0}) > 1e-12)
        throw validation_error("fractional_pow: leading coefficient of the unit factor must be 1");
    if ((static_cast<long long>(d) * alpha.num) % alpha.den != 0)
        throw validation_error("fractional_pow: result degree alpha*d is not an integer");
    const int out_degree = static_cast<int>(static_cast<long long>(d) * alpha.num / alpha.den);

    const int n = s.trunc_order();
    const double a = alpha.value();
    const auto& g = s.coeffs(); // g[k] is the z^{-k} coefficient of the unit factor, g[0] == lead
    std::vector<cplx> f(static_cast<size_t>(n), cplx{0.0, 0.0});
    f[0] = cplx{1.0, 0.0};
    for (int m = 1; m < n; ++m) {
        cplx acc{0.0, 0.0};
        for (int k = 1; k <= m; ++k) {
            const double w = (a + 1.0) * static_cast<double>(k) - static_cast<double>(m);
            if (w != 0.0) acc += w * g[static_cast<size_t>(k)] * f[static_cast<size_t>(m - k)];
        }
        f[static_cast<size_t>(m)] = acc / static_cast<double>(m);
    }
    return LaurentTail(out_degree, std::move(f));
}

LaurentTail substitute_power(const LaurentTail& s, int m) {
    if (s.empty()) throw validation_error("substitute_power: empty operand");
    if (m < 1) throw validation_error("substitute_power: m must be >= 1");
    if (m == 1) return s;
    const int n = s.trunc_order();
    const int out_len = m * (n - 1) + 1;
    std::vector<cplx> out(static_cast<size_t>(out_len), cplx{0.0, 0.0});
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(m * i)] = s.coeffs()[static_cast<size_t>(i)];
    return LaurentTail(m * s.top_degree(), std::move(out));
}

LaurentTail revert(const LaurentTail& s) {
    if (s.empty()) throw validation_error("revert: empty operand");
    if (s.top_degree() != 1 || std::abs(s.coeff(1) - cplx{1.0, 0.0}) > 1e-12)
        throw validation_error("revert: tail is not a normalized map (z + b_0 + b_1/z + ...)");
    const int n = s.trunc_order();
    std::vector<cplx> c(static_cast<size_t>(n), cplx{0.0, 0.0});
    c[0] = cplx{1.0, 0.0};
    if (n >= 2) c[1] = -s.coeff(0);
    // One coefficient per order: c_m kills the z^{-m} term of t(s(z)).
    // Powers s^{-k} are built incrementally; [z^{-m}] s^{-m} = 1.
    std::vector<LaurentTail> neg_pow; // neg_pow[k-1] = s^{-k}
    if (n >= 3) {
        neg_pow.reserve(static_cast<size_t>(n - 2));
        const LaurentTail inv = fractional_pow(s, Rational(-1, 1));
        neg_pow.push_back(inv);
        for (int k = 2; k <= n - 2; ++k) neg_pow.push_back(mul(neg_pow.back(), inv));
    }
    for (int m = 1; m <= n - 2; ++m) {
        cplx acc = s.coeff(-m);
        for (int k = 1; k < m; ++k) acc += c[static_cast<size_t>(k + 1)] * neg_pow[static_cast<size_t>(k - 1)].coeff(-m);
        c[static_cast<size_t>(m + 1)] = -acc;
    }
    return LaurentTail(1, std::move(c));
}

LaurentTail derivative(const LaurentTail& s) {
    if (s.empty()) throw validation_error("derivative: empty operand");
    const int n = s.trunc_order();
    std::vector<cplx> out(static_cast<size_t>(n), cplx{0.0, 0.0});
    for (int i = 0; i < n; ++i) {
        const int k = s.top_degree() - i;
        out[static_cast<size_t>(i)] = static_cast<double>(k) * s.coeffs()[static_cast<size_t>(i)];
    }
    return LaurentTail(s.top_degree() - 1, std::move(out));
}

cplx eval_on_circle(const LaurentTail& s, double r, double theta) {
    if (s.empty()) throw validation_error("eval_on_circle: empty operand");
    if (r <= 0.0) throw validation_error("eval_on_circle: radius must be positive");
    const cplx w = std::polar(r, theta);
    const cplx v = 1.0 / w;
    // sum_i c_i w^{top-i} = w^top * P(v) with P(v) = sum_i c_i v^i; Horner in v
    // keeps partial sums bounded for decaying tails.
    cplx acc{0.0, 0.0};
    for (size_t i = s.coeffs().size(); i-- > 0;) acc = acc * v + s.coeffs()[i];
    return acc * integer_pow(w, s.top_degree());
}

double real_binomial(double alpha, int j) {
    if (j < 0) throw validation_error("real_binomial: j must be >= 0");
    double b = 1.0;
    for (int i = 0; i < j; ++i) b *= (alpha - static_cast<double>(i)) / static_cast<double>(i + 1);
    return b;
}

} // namespace npspec
