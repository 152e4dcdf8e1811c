#pragma once

#include "npspec/conformal.hpp"
#include "npspec/grunsky.hpp"
#include "npspec/linalg.hpp"

#include <vector>

namespace npspec {

/// Nystrom discretization of the double-layer boundary operator on a sampled
/// curve: kernel(i, j) = d/dnu_y Gamma(x_i - y_j) * weight_j with the smooth
/// diagonal limit kappa_i / (4 pi), trapezoidal weights. Applying it to the
/// constant 1 gives 1/2 at every node; that identity fixes the orientation
/// and is checked at build time.
struct NystromOperator {
    BoundaryCurve curve;
    Mat kernel;                  // weights folded in
    double row_sum_error = 0.0;  // max |K[1] - 1/2| over nodes; pure quadrature error

    std::vector<cplx> apply(const std::vector<cplx>& values) const;
};

NystromOperator build_nystrom(const BoundaryCurve& curve);

/// Samples of the scaled monomial basis pulled to the boundary; on the
/// parameter grid these are e^{i n theta} / sqrt(|n|). n != 0.
std::vector<cplx> basis_samples(const BoundaryCurve& curve, int n);

/// Operator action on basis element n (matrix-vector product).
std::vector<cplx> apply_to_basis(const NystromOperator& op, int n);

struct OracleRow {
    int n = 0;
    double residual_plus = 0.0;  // action on g_n vs the coefficient sum
    double residual_minus = 0.0; // action on g_{-n} vs the conjugate sum
    int k_used = 0;              // largest k whose term exceeded the drop threshold
};

struct OracleReport {
    int n_max = 0;
    int n_q = 0;
    int table_order = 0;
    double worst_residual = 0.0;
    std::vector<OracleRow> rows;
    double wall_seconds = 0.0;
};

/// Ground-truth check that the quadrature action of the boundary operator on
/// g_{+-n} matches the coefficient expansion sum_k mu_{n,k} g_{-k} (and its
/// conjugate relation). Sup norm over nodes, for n = 1 ... n_max. Terms with
/// |mu_{n,k}| / sqrt(k) below 1e-14 stop counting toward k_used.
OracleReport verify_theorem22(const ExteriorMap& map, const MuMatrix& mu, int n_max, int n_q);

} // namespace npspec
