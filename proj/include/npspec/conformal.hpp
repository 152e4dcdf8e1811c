#pragma once

#include "npspec/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace npspec {

enum class Direction { forward, inverse };

/// Closed form of a map tail: z * u(1/z)^alpha with u a polynomial, u(0) = 1.
///
/// Every preset in the catalog has this shape, and it is closed under the
/// root transform (u(x) -> u(x^m), alpha -> alpha/m). Keeping it alongside
/// the expanded tail lets deep-order coefficient generation and boundary
/// evaluation stay exact instead of going through truncated arithmetic.
struct PowerForm {
    std::vector<cplx> unit; // ascending, unit[0] == 1
    Rational alpha;

    int degree() const { return static_cast<int>(unit.size()) - 1; }
};

/// Exterior Riemann map, normalized as z + a_0 + a_1/z + ... on |z| > radius.
/// Forward tails represent the map itself, inverse tails its inverse.
struct ExteriorMap {
    Direction direction = Direction::forward;
    double radius = 1.0;
    std::string label;
    LaurentTail tail;
    std::optional<PowerForm> power;

    /// The stored tail, regenerated from the closed form when a longer
    /// window than stored is requested. Throws if that is impossible.
    LaurentTail tail_at(int window) const;

    /// This map in forward representation (inverse tails are reverted, or
    /// rebuilt from the closed form when one is known).
    ExteriorMap forward_form(int window) const;
};

/// Default truncation window for preset construction.
inline constexpr int kDefaultOrder = 256;

ExteriorMap make_translated_disk(cplx c, double R, int order = kDefaultOrder);
ExteriorMap make_joukowski(double q, double R, int order = kDefaultOrder);
ExteriorMap make_mstar(int m, double R, int order = kDefaultOrder);

/// Lemniscate {z : |P(z)| = R^n} for monic P given by ascending coefficients
/// (poly.back() == 1). Builds the inverse tail; the boundary must enclose
/// every root of P, which is checked by the argument principle.
ExteriorMap make_lemniscate(const std::vector<cplx>& poly, double R, int order = kDefaultOrder);

ExteriorMap mth_root_transform(const ExteriorMap& map, int m);

/// Expand z * u(1/z)^alpha into a tail of `order` coefficients.
LaurentTail power_form_tail(const PowerForm& p, int order);

struct BoundaryCurve {
    std::vector<double> thetas;
    std::vector<cplx> points;
    std::vector<cplx> normals; // outward unit normals
    std::vector<double> speeds;
    std::vector<double> curvatures;
    double radius = 1.0;
    int winding = 0;
};

/// Sample x(theta) = Psi(R e^{i theta}) on a uniform grid, with analytic
/// normals, speeds and curvature. N_q must be even and >= 16.
BoundaryCurve sample_boundary(const ExteriorMap& map, int n_q);

/// Winding number of a closed point sequence around the origin.
int winding_number(const std::vector<cplx>& points);

} // namespace npspec
