#include "npspec/oracle.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

namespace npspec {

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

std::vector<cplx> NystromOperator::apply(const std::vector<cplx>& values) const {
    const int n = kernel.rows();
    if (static_cast<int>(values.size()) != n)
        throw validation_error("NystromOperator::apply: size mismatch");
    std::vector<cplx> out(static_cast<size_t>(n), cplx{0.0, 0.0});
    for (int i = 0; i < n; ++i) {
        cplx acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) acc += kernel(i, j) * values[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

NystromOperator build_nystrom(const BoundaryCurve& curve) {
    const int n = static_cast<int>(curve.points.size());
    if (n < 16 || n % 2 != 0) throw validation_error("build_nystrom: need an even grid of at least 16 nodes");

    NystromOperator op;
    op.curve = curve;
    op.kernel = Mat(n, n);
    const double dtheta = 2.0 * kPi / n;
    for (int i = 0; i < n; ++i) {
        const cplx x = curve.points[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const double w = curve.speeds[static_cast<size_t>(j)] * dtheta;
            if (i == j) {
                op.kernel(i, j) = curve.curvatures[static_cast<size_t>(j)] / (4.0 * kPi) * w;
                continue;
            }
            const cplx r = curve.points[static_cast<size_t>(j)] - x;
            const double dist2 = std::norm(r);
            if (dist2 < 1e-28) throw validation_error("build_nystrom: coincident nodes");
            const cplx nu = curve.normals[static_cast<size_t>(j)];
            const double dot = r.real() * nu.real() + r.imag() * nu.imag();
            op.kernel(i, j) = dot / (2.0 * kPi * dist2) * w;
        }
    }

    // K[1] = 1/2 on any closed curve. The discrete row sums carry the
    // quadrature error, so only gross violations abort; a value near -1/2
    // means the orientation flipped.
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += op.kernel(i, j);
        if (std::abs(row + 0.5) < 0.01)
            throw validation_error("build_nystrom: orientation error (operator maps 1 to -1/2)");
        op.row_sum_error = std::max(op.row_sum_error, std::abs(row - 0.5));
    }
    if (op.row_sum_error > 1e-3)
        throw convergence_error("build_nystrom: constant test K[1] = 1/2 not resolved at this node count");
    return op;
}

std::vector<cplx> basis_samples(const BoundaryCurve& curve, int n) {
    if (n == 0) throw validation_error("basis_samples: n must be nonzero");
    const double scale = 1.0 / std::sqrt(static_cast<double>(std::abs(n)));
    std::vector<cplx> out(curve.thetas.size());
    for (size_t i = 0; i < curve.thetas.size(); ++i)
        out[i] = std::polar(scale, n * curve.thetas[i]);
    return out;
}

std::vector<cplx> apply_to_basis(const NystromOperator& op, int n) {
    return op.apply(basis_samples(op.curve, n));
}

OracleReport verify_theorem22(const ExteriorMap& map, const MuMatrix& mu, int n_max, int n_q) {
    if (n_max < 1) throw validation_error("verify_theorem22: n_max must be >= 1");
    if (n_max > mu.order) throw validation_error("verify_theorem22: n_max exceeds the table order");
    const auto t0 = std::chrono::steady_clock::now();

    const BoundaryCurve curve = sample_boundary(map, n_q);
    if (std::abs(curve.radius - mu.radius) > 1e-12 * std::max(1.0, mu.radius))
        throw validation_error("verify_theorem22: table and map radii disagree");
    const NystromOperator op = build_nystrom(curve);

    OracleReport rep;
    rep.n_max = n_max;
    rep.n_q = n_q;
    rep.table_order = mu.order;

    constexpr double kDrop = 1e-14; // |mu_{n,k}| * ||g_{-k}||_inf threshold
    for (int n = 1; n <= n_max; ++n) {
        const std::vector<cplx> lhs_plus = apply_to_basis(op, n);
        const std::vector<cplx> lhs_minus = apply_to_basis(op, -n);

        std::vector<cplx> sum_plus(curve.points.size(), cplx{0.0, 0.0});
        std::vector<cplx> sum_minus(curve.points.size(), cplx{0.0, 0.0});
        int k_used = 0;
        for (int k = 1; k <= mu.order; ++k) {
            const cplx m_nk = mu.at(n, k);
            if (m_nk == cplx{0.0, 0.0}) continue;
            const double term = std::abs(m_nk) / std::sqrt(static_cast<double>(k));
            if (term >= kDrop) k_used = k;
            const std::vector<cplx> gm = basis_samples(curve, -k);
            for (size_t i = 0; i < gm.size(); ++i) {
                sum_plus[i] += m_nk * gm[i];
                sum_minus[i] += std::conj(m_nk * gm[i]); // conj(mu) g_k
            }
        }

        OracleRow row;
        row.n = n;
        row.k_used = k_used;
        for (size_t i = 0; i < lhs_plus.size(); ++i) {
            row.residual_plus = std::max(row.residual_plus, std::abs(lhs_plus[i] - sum_plus[i]));
            row.residual_minus = std::max(row.residual_minus, std::abs(lhs_minus[i] - sum_minus[i]));
        }
        rep.worst_residual = std::max({rep.worst_residual, row.residual_plus, row.residual_minus});
        rep.rows.push_back(row);
    }

    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace npspec
