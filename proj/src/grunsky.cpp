#include "npspec/grunsky.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace npspec {

namespace {

/// z^n * u(x)^{n*alpha} as a tail of `window` coefficients.
LaurentTail power_tail(const PowerForm& p, long long n, int window) {
    std::vector<cplx> u(static_cast<size_t>(std::max(window, p.degree() + 1)), cplx{0.0, 0.0});
    for (size_t i = 0; i < p.unit.size(); ++i) u[i] = p.unit[i];
    return fractional_pow(LaurentTail(0, std::move(u)), p.alpha.times(n)).truncated(window).shifted(static_cast<int>(n));
}

/// Forward-map coefficients a_0 ... a_jmax (tail = z + a_0 + a_1/z + ...).
std::vector<cplx> forward_coefficients(const ExteriorMap& map, int jmax) {
    const LaurentTail tail = map.tail_at(jmax + 2);
    std::vector<cplx> a(static_cast<size_t>(jmax) + 1);
    for (int j = 0; j <= jmax; ++j) a[static_cast<size_t>(j)] = tail.coeff(-j);
    return a;
}

void require_order(int order) {
    if (order < 1) throw validation_error("grunsky: order must be >= 1");
}

} // namespace

FaberSet faber_set(const ExteriorMap& map, int order) {
    require_order(order);
    if (map.direction != Direction::forward) throw validation_error("faber_set: map must be forward");
    const int window = order + 1;
    // Powers Psi^j restricted to exponents [0, j]; the construction only ever
    // reads the polynomial range.
    std::vector<LaurentTail> powers;
    powers.reserve(static_cast<size_t>(order) + 1);
    powers.push_back(monomial_tail(0, window));
    if (map.power) {
        for (int j = 1; j <= order; ++j) powers.push_back(power_tail(*map.power, j, window));
    } else {
        const LaurentTail base = map.tail_at(window);
        for (int j = 1; j <= order; ++j) powers.push_back(mul(powers.back(), base));
    }

    FaberSet set;
    set.polys.resize(static_cast<size_t>(order));
    for (int n = 1; n <= order; ++n) {
        std::vector<cplx> rem(static_cast<size_t>(n) + 1, cplx{0.0, 0.0}); // coefficients of z^0 .. z^n
        rem[static_cast<size_t>(n)] = cplx{1.0, 0.0};
        std::vector<cplx> f(static_cast<size_t>(n) + 1, cplx{0.0, 0.0});
        for (int j = n; j >= 0; --j) {
            const cplx fj = rem[static_cast<size_t>(j)];
            f[static_cast<size_t>(j)] = fj;
            if (fj == cplx{0.0, 0.0}) continue;
            rem[static_cast<size_t>(j)] = cplx{0.0, 0.0};
            for (int e = 0; e < j; ++e) rem[static_cast<size_t>(e)] -= fj * powers[static_cast<size_t>(j)].coeff(e);
        }
        set.polys[static_cast<size_t>(n) - 1] = std::move(f);
    }
    return set;
}

GrunskyTable grunsky_from_forward(const ExteriorMap& map, int order) {
    require_order(order);
    if (map.direction != Direction::forward) throw validation_error("grunsky_from_forward: map must be forward");
    const int jmax = 2 * order - 1;
    const std::vector<cplx> a = forward_coefficients(map, jmax);
    std::vector<int> nz; // indices with a_j != 0, j >= 1 (structural sparsity carries through)
    for (int j = 1; j <= jmax; ++j)
        if (a[static_cast<size_t>(j)] != cplx{0.0, 0.0}) nz.push_back(j);

    // March the rows r_p(zeta) = sum_k c_{p,k} zeta^{-k} of the generating
    // identity: r_{p+1} = (zeta + A) r_p - sum_{j<p} a_j r_{p-j} + S_p with
    // A = sum a_j zeta^{-j}, S_p = sum_t a_{p+t} zeta^{-t}. The zeta^0 term
    // cancels identically (it is the k=1 symmetry relation) and is dropped.
    //
    // The zeta shift consumes one column per row, so row p is honest only up
    // to column width - (p - 1); a working width of 2*order - 1 leaves the
    // returned square fully covered. Extended precision keeps the relative
    // accuracy of small entries through the row march.
    using lcplx = std::complex<long double>;
    GrunskyTable table;
    table.order = order;
    table.c = CMat(order, order);
    const int width = 2 * order - 1;
    std::vector<lcplx> la(a.size());
    for (size_t i = 0; i < a.size(); ++i) la[i] = lcplx{a[i].real(), a[i].imag()};
    std::vector<std::vector<lcplx>> rows(static_cast<size_t>(order) + 1,
                                         std::vector<lcplx>(static_cast<size_t>(width) + 1, lcplx{0.0L, 0.0L}));
    for (int k = 1; k <= width; ++k) rows[1][static_cast<size_t>(k)] = la[static_cast<size_t>(k)];
    for (int p = 1; p < order; ++p) {
        auto& next = rows[static_cast<size_t>(p) + 1];
        const auto& cur = rows[static_cast<size_t>(p)];
        const int w = width - p; // honest columns of row p+1
        for (int k = 1; k <= w; ++k) next[static_cast<size_t>(k)] = cur[static_cast<size_t>(k) + 1];
        for (int k = w + 1; k <= width; ++k) next[static_cast<size_t>(k)] = lcplx{0.0L, 0.0L};
        for (int j : nz) {
            if (j >= w) break;
            const lcplx aj = la[static_cast<size_t>(j)];
            for (int k = j + 1; k <= w; ++k) next[static_cast<size_t>(k)] += aj * cur[static_cast<size_t>(k - j)];
        }
        for (int j : nz) {
            if (j > p - 1) break;
            const lcplx aj = la[static_cast<size_t>(j)];
            const auto& prev = rows[static_cast<size_t>(p - j)];
            for (int k = 1; k <= w; ++k) next[static_cast<size_t>(k)] -= aj * prev[static_cast<size_t>(k)];
        }
        for (int k = 1; k <= w && p + k <= jmax; ++k) next[static_cast<size_t>(k)] += la[static_cast<size_t>(p + k)];
    }
    for (int n = 1; n <= order; ++n)
        for (int k = 1; k <= order; ++k) {
            const lcplx v = rows[static_cast<size_t>(n)][static_cast<size_t>(k)];
            table.c(n - 1, k - 1) = cplx{static_cast<double>(v.real()), static_cast<double>(v.imag())};
        }
    return table;
}

GrunskyTable grunsky_from_inverse(const ExteriorMap& map, int order) {
    require_order(order);
    if (map.direction != Direction::inverse) throw validation_error("grunsky_from_inverse: map must be inverse");

    using lcplx = std::complex<long double>;

    // Basis tails phi^{-k}, stored as coefficients of w^{-k-t}, t = 0 ... order-k.
    std::vector<std::vector<lcplx>> basis(static_cast<size_t>(order) + 1);
    const bool closed = map.power.has_value();
    LaurentTail running_inv;
    LaurentTail phi_inv;
    if (!closed) {
        const LaurentTail phi = map.tail_at(2 * order + 1);
        phi_inv = fractional_pow(phi, Rational(-1, 1));
    }
    for (int k = 1; k <= order; ++k) {
        const int len = order - k + 1;
        LaurentTail t;
        if (closed) {
            t = power_tail(*map.power, -k, len);
        } else {
            running_inv = (k == 1) ? phi_inv : mul(running_inv, phi_inv);
            t = running_inv;
        }
        auto& b = basis[static_cast<size_t>(k)];
        b.resize(static_cast<size_t>(len));
        for (int i = 0; i < len; ++i) {
            const cplx v = t.coeff(-k - i);
            b[static_cast<size_t>(i)] = lcplx{v.real(), v.imag()};
        }
    }

    GrunskyTable table;
    table.order = order;
    table.c = CMat(order, order);
    LaurentTail running_pow;
    LaurentTail phi_full;
    if (!closed) phi_full = map.tail_at(2 * order + 1);
    for (int n = 1; n <= order; ++n) {
        LaurentTail pn;
        if (closed) {
            pn = power_tail(*map.power, n, n + order + 1);
        } else {
            running_pow = (n == 1) ? phi_full : mul(running_pow, phi_full);
            pn = running_pow;
        }
        // The basis columns carry combinatorially growing entries that cancel
        // against each other, so the elimination runs in extended precision.
        std::vector<lcplx> d(static_cast<size_t>(order) + 1, lcplx{0.0L, 0.0L});
        for (int k = 1; k <= order; ++k) {
            const cplx v = pn.coeff(-k);
            d[static_cast<size_t>(k)] = lcplx{v.real(), v.imag()};
        }
        for (int k = 1; k <= order; ++k) {
            const lcplx e = d[static_cast<size_t>(k)];
            table.c(n - 1, k - 1) = cplx{static_cast<double>(-e.real()), static_cast<double>(-e.imag())};
            if (e == lcplx{0.0L, 0.0L}) continue;
            const auto& b = basis[static_cast<size_t>(k)];
            for (int l = k + 1; l <= order; ++l) d[static_cast<size_t>(l)] -= e * b[static_cast<size_t>(l - k)];
        }
    }
    return table;
}

double closed_form_cassini(int n, int k) {
    if (n < 1 || k < 1) throw validation_error("closed_form_cassini: indices must be >= 1");
    if (n % 2 == 0 || k % 2 == 0) return 0.0;
    const int np = (n - 1) / 2;
    const int kp = (k - 1) / 2;
    double sum = 0.0;
    for (int j = 0; j <= np; ++j) {
        const double sign = ((np - j) % 2 == 0) ? 1.0 : -1.0;
        const double t = real_binomial(0.5 * n, np - j) * real_binomial(j + 0.5, kp + j + 1);
        sum += sign * t;
    }
    return sum;
}

MuMatrix modified_grunsky(const GrunskyTable& table, double R) {
    if (R <= 0.0) throw validation_error("modified_grunsky: R must be positive");
    MuMatrix m;
    m.order = table.order;
    m.radius = R;
    m.mu = CMat(table.order, table.order);
    for (int n = 1; n <= table.order; ++n) {
        for (int k = 1; k <= table.order; ++k) {
            const double scale = std::sqrt(static_cast<double>(k)) /
                                 (2.0 * std::sqrt(static_cast<double>(n)) * std::pow(R, n + k));
            cplx v = table.at(n, k) * scale;
            if (std::abs(v) < 1e-300) v = cplx{0.0, 0.0}; // documented underflow to exact zero
            m.mu(n - 1, k - 1) = v;
        }
    }
    return m;
}

double grunsky_symmetry_violation(const GrunskyTable& table, double floor) {
    double worst = 0.0;
    for (int n = 1; n <= table.order; ++n) {
        for (int k = n; k <= table.order; ++k) {
            if (std::max(std::abs(table.at(n, k)), std::abs(table.at(k, n))) <= floor) continue;
            const cplx lhs = static_cast<double>(k) * table.at(n, k);
            const cplx rhs = static_cast<double>(n) * table.at(k, n);
            const double scale = std::max(std::abs(lhs), std::abs(rhs));
            if (scale == 0.0) continue;
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
    }
    return worst;
}

namespace {

void table_csv(int order, std::ostream& os, const CMat& t) {
    os << "n,k,re,im\n";
    char buf[128];
    for (int n = 1; n <= order; ++n) {
        for (int k = 1; k <= order; ++k) {
            const cplx v = t(n - 1, k - 1);
            std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g\n", n, k, v.real(), v.imag());
            os << buf;
        }
    }
}

} // namespace

void grunsky_to_csv(const GrunskyTable& table, std::ostream& os) { table_csv(table.order, os, table.c); }
void mu_to_csv(const MuMatrix& mu, std::ostream& os) { table_csv(mu.order, os, mu.mu); }

} // namespace npspec
