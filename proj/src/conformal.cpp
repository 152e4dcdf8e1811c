#include "npspec/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace npspec {

namespace {

constexpr double kPi = std::numbers::pi;

cplx horner(const std::vector<cplx>& poly, cplx x) {
    cplx acc{0.0, 0.0};
    for (size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
    return acc;
}

std::vector<cplx> poly_derivative(const std::vector<cplx>& poly) {
    std::vector<cplx> out;
    for (size_t i = 1; i < poly.size(); ++i) out.push_back(static_cast<double>(i) * poly[i]);
    if (out.empty()) out.push_back(cplx{0.0, 0.0});
    return out;
}

/// Binomial lemniscate u = 1 + a x^d has a closed-form forward map
/// z (1 - a x^d)^{1/d}; multi-term units have no such form.
std::optional<PowerForm> binomial_forward(const PowerForm& inv) {
    if (inv.alpha != Rational(1, inv.degree())) return std::nullopt;
    for (int j = 1; j < inv.degree(); ++j)
        if (inv.unit[static_cast<size_t>(j)] != cplx{0.0, 0.0}) return std::nullopt;
    PowerForm fwd = inv;
    fwd.unit.back() = -fwd.unit.back();
    return fwd;
}

} // namespace

LaurentTail power_form_tail(const PowerForm& p, int order) {
    std::vector<cplx> u(static_cast<size_t>(std::max(order, p.degree() + 1)), cplx{0.0, 0.0});
    for (size_t i = 0; i < p.unit.size(); ++i) u[i] = p.unit[i];
    const LaurentTail unit(0, std::move(u));
    return fractional_pow(unit, p.alpha).truncated(order).shifted(1);
}

LaurentTail ExteriorMap::tail_at(int window) const {
    if (window <= tail.trunc_order()) return tail.truncated(window);
    if (power) return power_form_tail(*power, window);
    throw validation_error("ExteriorMap: truncation window too short and no closed form to extend it");
}

ExteriorMap ExteriorMap::forward_form(int window) const {
    if (direction == Direction::forward) {
        ExteriorMap out = *this;
        out.tail = tail_at(window);
        return out;
    }
    ExteriorMap out = *this;
    out.direction = Direction::forward;
    if (power) {
        if (auto fwd = binomial_forward(*power)) {
            out.power = fwd;
            out.tail = power_form_tail(*fwd, window);
            return out;
        }
    }
    out.power.reset();
    out.tail = revert(tail_at(window));
    return out;
}

ExteriorMap make_translated_disk(cplx c, double R, int order) {
    if (R <= 0.0) throw validation_error("make_translated_disk: R must be positive");
    if (std::abs(c) >= R) throw validation_error("make_translated_disk: |c| must be < R (origin not interior)");
    ExteriorMap map;
    map.direction = Direction::forward;
    map.radius = R;
    map.label = "disk";
    map.power = PowerForm{{cplx{1.0, 0.0}, c}, Rational(1, 1)};
    map.tail = power_form_tail(*map.power, order);
    return map;
}

ExteriorMap make_joukowski(double q, double R, int order) {
    if (R <= 0.0) throw validation_error("make_joukowski: R must be positive");
    if (std::abs(q) >= R * R) throw validation_error("make_joukowski: need |q| < R^2 for univalence");
    ExteriorMap map;
    map.direction = Direction::forward;
    map.radius = R;
    map.label = "joukowski";
    map.power = PowerForm{{cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{q, 0.0}}, Rational(1, 1)};
    map.tail = power_form_tail(*map.power, order);
    return map;
}

ExteriorMap make_mstar(int m, double R, int order) {
    if (m < 1) throw validation_error("make_mstar: m must be >= 1");
    if (R <= 1.0) throw validation_error("make_mstar: R must be > 1 (boundary touches the star tips at R = 1)");
    // m-th root transform of z (1 + 1/z)^2, evaluated on |z| = R^{1/m}.
    ExteriorMap base;
    base.direction = Direction::forward;
    base.radius = R;
    base.label = "mstar";
    base.power = PowerForm{{cplx{1.0, 0.0}, cplx{1.0, 0.0}}, Rational(2, 1)};
    base.tail = power_form_tail(*base.power, order);
    ExteriorMap map = mth_root_transform(base, m);
    map.label = "mstar";
    return map;
}

ExteriorMap make_lemniscate(const std::vector<cplx>& poly, double R, int order) {
    if (poly.empty()) throw validation_error("make_lemniscate: empty polynomial");
    if (poly.back() != cplx{1.0, 0.0}) throw validation_error("make_lemniscate: polynomial must be monic");
    if (R <= 0.0) throw validation_error("make_lemniscate: R must be positive");
    const int degree = static_cast<int>(poly.size()) - 1;

    ExteriorMap map;
    map.direction = Direction::inverse;
    map.radius = R;
    map.label = "lemniscate";
    if (degree == 0) throw validation_error("make_lemniscate: degree must be >= 1");

    // Psi^{-1}(w) = w (1 + a_{n-1}/w + ... + a_0/w^n)^{1/n}
    PowerForm inv;
    inv.alpha = Rational(1, degree);
    inv.unit.resize(static_cast<size_t>(degree) + 1);
    inv.unit[0] = cplx{1.0, 0.0};
    for (int j = 1; j <= degree; ++j) inv.unit[static_cast<size_t>(j)] = poly[static_cast<size_t>(degree - j)];
    map.power = inv;
    map.tail = power_form_tail(inv, order);

    if (degree == 1 && poly[0] == cplx{0.0, 0.0}) {
        map.label = "circle";
        return map; // P(z) = z: identity map
    }

    // All roots of P must lie strictly inside the level curve. Count them
    // with the argument principle along the sampled boundary.
    const ExteriorMap fwd = map.forward_form(std::max(64, order));
    const int n_check = 512;
    std::vector<cplx> values(static_cast<size_t>(n_check));
    for (int i = 0; i < n_check; ++i) {
        const double theta = 2.0 * kPi * i / n_check;
        const cplx w = eval_on_circle(fwd.tail, R, theta);
        const cplx pw = horner(poly, w);
        if (std::abs(pw) < 1e-9)
            throw validation_error("make_lemniscate: a root of P lies on or too close to the boundary");
        values[static_cast<size_t>(i)] = pw;
    }
    if (winding_number(values) != degree)
        throw validation_error("make_lemniscate: boundary does not enclose all roots of P (R too small)");
    return map;
}

ExteriorMap mth_root_transform(const ExteriorMap& map, int m) {
    if (m < 1) throw validation_error("mth_root_transform: m must be >= 1");
    if (map.direction != Direction::forward)
        throw validation_error("mth_root_transform: map must be in forward direction (revert first)");
    if (m == 1) return map;
    ExteriorMap out;
    out.direction = Direction::forward;
    out.radius = std::pow(map.radius, 1.0 / m);
    out.label = map.label.empty() ? "" : map.label + "_root" + std::to_string(m);
    out.tail = fractional_pow(substitute_power(map.tail, m), Rational(1, m));
    if (map.power) {
        PowerForm p;
        p.alpha = map.power->alpha.over(m);
        p.unit.assign(static_cast<size_t>(map.power->degree()) * m + 1, cplx{0.0, 0.0});
        for (int j = 0; j <= map.power->degree(); ++j)
            p.unit[static_cast<size_t>(j) * m] = map.power->unit[static_cast<size_t>(j)];
        out.power = p;
    }
    return out;
}

int winding_number(const std::vector<cplx>& points) {
    double total = 0.0;
    const size_t n = points.size();
    for (size_t i = 0; i < n; ++i) {
        const cplx a = points[i];
        const cplx b = points[(i + 1) % n];
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

namespace {

struct MapJets {
    std::vector<cplx> value, d1, d2; // Psi, Psi', Psi'' at the grid points
};

/// Evaluate Psi and two derivatives on |z| = R. Closed form when available,
/// otherwise truncated tails (the first and second derivative tails).
MapJets evaluate_jets(const ExteriorMap& fwd, double R, const std::vector<cplx>& zs) {
    MapJets jets;
    const size_t n = zs.size();
    jets.value.resize(n);
    jets.d1.resize(n);
    jets.d2.resize(n);
    if (fwd.power) {
        const auto& u = fwd.power->unit;
        const auto du = poly_derivative(u);
        const auto ddu = poly_derivative(du);
        const double alpha = fwd.power->alpha.value();
        for (size_t i = 0; i < n; ++i) {
            const cplx z = zs[i];
            const cplx x = 1.0 / z;
            const cplx uv = horner(u, x);
            const cplx u1 = horner(du, x);
            const cplx u2 = horner(ddu, x);
            const cplx pw = std::exp(alpha * std::log(uv)); // principal branch, u near 1
            jets.value[i] = z * pw;
            jets.d1[i] = pw / uv * (uv - alpha * x * u1);
            jets.d2[i] = alpha * x * x * x * pw / (uv * uv) * ((alpha - 1.0) * u1 * u1 + uv * u2);
        }
        return jets;
    }
    const LaurentTail t1 = derivative(fwd.tail);
    const LaurentTail t2 = derivative(t1);
    for (size_t i = 0; i < n; ++i) {
        const double theta = std::arg(zs[i]);
        jets.value[i] = eval_on_circle(fwd.tail, R, theta);
        jets.d1[i] = eval_on_circle(t1, R, theta);
        jets.d2[i] = eval_on_circle(t2, R, theta);
    }
    return jets;
}

} // namespace

BoundaryCurve sample_boundary(const ExteriorMap& map, int n_q) {
    if (n_q < 16 || n_q % 2 != 0) throw validation_error("sample_boundary: N_q must be even and >= 16");
    const ExteriorMap fwd = map.forward_form(std::max(map.tail.trunc_order(), 64));
    const double R = fwd.radius;

    BoundaryCurve curve;
    curve.radius = R;
    curve.thetas.resize(static_cast<size_t>(n_q));
    std::vector<cplx> zs(static_cast<size_t>(n_q));
    for (int i = 0; i < n_q; ++i) {
        curve.thetas[static_cast<size_t>(i)] = 2.0 * kPi * i / n_q;
        zs[static_cast<size_t>(i)] = std::polar(R, curve.thetas[static_cast<size_t>(i)]);
    }
    const MapJets jets = evaluate_jets(fwd, R, zs);

    curve.points = jets.value;
    curve.normals.resize(static_cast<size_t>(n_q));
    curve.speeds.resize(static_cast<size_t>(n_q));
    curve.curvatures.resize(static_cast<size_t>(n_q));
    for (int i = 0; i < n_q; ++i) {
        const cplx z = zs[static_cast<size_t>(i)];
        const cplx xp = cplx{0.0, 1.0} * z * jets.d1[static_cast<size_t>(i)];             // d/dtheta
        const cplx xpp = -z * jets.d1[static_cast<size_t>(i)] - z * z * jets.d2[static_cast<size_t>(i)];
        const double speed = std::abs(xp);
        if (speed < 1e-12)
            throw validation_error("sample_boundary: vanishing derivative on the grid (boundary not smooth at this resolution)");
        curve.speeds[static_cast<size_t>(i)] = speed;
        curve.normals[static_cast<size_t>(i)] = cplx{0.0, -1.0} * xp / speed;
        curve.curvatures[static_cast<size_t>(i)] = (std::conj(xp) * xpp).imag() / (speed * speed * speed);
    }

    curve.winding = winding_number(curve.points);
    if (curve.winding != 1)
        throw validation_error("sample_boundary: boundary winding number is not 1 (orientation or origin violation)");
    return curve;
}

} // namespace npspec
