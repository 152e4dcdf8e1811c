#pragma once

#include "npspec/conformal.hpp"
#include "npspec/linalg.hpp"
#include "npspec/series.hpp"

#include <iosfwd>
#include <vector>

namespace npspec {

/// Faber polynomials F_1 ... F_N generated by the map; F_n is monic of
/// degree n. polys[n-1] holds ascending coefficients of F_n.
struct FaberSet {
    std::vector<std::vector<cplx>> polys;

    int order() const { return static_cast<int>(polys.size()); }
};

/// Dense table of the expansion coefficients c_{n,k}, 1 <= n,k <= order:
/// F_n(Psi(z)) = z^n + sum_k c_{n,k} z^{-k}. Satisfies k c_{n,k} = n c_{k,n}.
struct GrunskyTable {
    int order = 0;
    CMat c; // c(n-1, k-1) = c_{n,k}

    cplx at(int n, int k) const { return c(n - 1, k - 1); }
};

/// Scaled table mu_{n,k} = sqrt(k) / (2 sqrt(n)) * c_{n,k} / R^{n+k}; the
/// entries of the operator matrix in the scaled basis. Symmetric.
struct MuMatrix {
    int order = 0;
    double radius = 1.0;
    CMat mu;

    cplx at(int n, int k) const { return mu(n - 1, k - 1); }
};

FaberSet faber_set(const ExteriorMap& map, int order);

/// Table from a forward map. Computed row by row from the generating
/// identity sum c_{n,k} z^{-n} zeta^{-k} = z Psi'(z)/(Psi(z)-Psi(zeta)) -
/// z/(z-zeta), which keeps every intermediate on the scale of the
/// coefficients themselves (explicit Faber expansions blow up combinatorially
/// at deep orders).
GrunskyTable grunsky_from_forward(const ExteriorMap& map, int order);

/// Table from an inverse map: F_n is the polynomial part of (Psi^{-1})^n and
/// the decaying remainder is expanded in the basis (Psi^{-1})^{-k} by a
/// triangular change of basis. No series reversion involved.
GrunskyTable grunsky_from_inverse(const ExteriorMap& map, int order);

/// Closed-form Cassini-oval coefficient (boundary |z^2-1| = R^2); zero for
/// even n or k, a short alternating binomial sum otherwise. Real.
double closed_form_cassini(int n, int k);

MuMatrix modified_grunsky(const GrunskyTable& table, double R);

/// Worst relative violation of k c_{n,k} = n c_{k,n} over entries with
/// |c| > floor.
double grunsky_symmetry_violation(const GrunskyTable& table, double floor = 1e-14);

void grunsky_to_csv(const GrunskyTable& table, std::ostream& os);
void mu_to_csv(const MuMatrix& mu, std::ostream& os);

} // namespace npspec
