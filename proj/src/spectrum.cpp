#include "npspec/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace npspec {

int block_count_limit(int m) {
    if (m < 1) throw validation_error("block_count_limit: m must be >= 1");
    return (m % 2 == 0) ? m / 2 : (m - 1) / 2;
}

std::vector<int> block_indices(int m, int j, int size) {
    if (m < 1) throw validation_error("block_indices: m must be >= 1");
    if (j < 0 || j > block_count_limit(m)) throw validation_error("block_indices: block label out of range");
    if (size < 1) throw validation_error("block_indices: size must be >= 1");
    std::vector<int> idx(static_cast<size_t>(size));
    if (j == 0 || (m % 2 == 0 && j == m / 2)) {
        for (int p = 0; p < size; ++p) idx[static_cast<size_t>(p)] = (p + 1) * m - j;
    } else {
        for (int p = 0; p < size; ++p) {
            const int t = p / 2;
            idx[static_cast<size_t>(p)] = (p % 2 == 0) ? t * m + j : (t + 1) * m - j;
        }
    }
    return idx;
}

CMat block_matrix(const MuMatrix& mu, int m, int j, int size) {
    const std::vector<int> idx = block_indices(m, j, size);
    if (idx.back() > mu.order)
        throw validation_error("block_matrix: requested block exceeds the table order");
    CMat out(size, size);
    for (int p = 0; p < size; ++p)
        for (int q = 0; q < size; ++q)
            out(p, q) = mu.at(idx[static_cast<size_t>(p)], idx[static_cast<size_t>(q)]);
    return out;
}

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kRealTol = 1e-13;

void sort_entries(std::vector<SpectrumEntry>& v) {
    std::sort(v.begin(), v.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        const double aa = std::abs(a.value), ab = std::abs(b.value);
        if (aa != ab) return aa > ab;
        if (a.value != b.value) return a.value > b.value;
        return a.block_j < b.block_j;
    });
}

/// Merge equal (value, block) pairs within kMergeTol, assuming sorted input.
std::vector<SpectrumEntry> merge_entries(std::vector<SpectrumEntry> v) {
    sort_entries(v);
    std::vector<SpectrumEntry> out;
    for (const auto& e : v) {
        if (!out.empty() && out.back().block_j == e.block_j && !e.constant_space &&
            !out.back().constant_space && std::abs(out.back().value - e.value) <= kMergeTol) {
            out.back().multiplicity += e.multiplicity;
        } else {
            out.push_back(e);
        }
    }
    return out;
}

/// Eigenvalues of a Hermitian complex matrix through the real embedding
/// [[X, -Y], [Y, X]]; each eigenvalue of H appears twice in the embedding.
std::vector<double> hermitian_eigenvalues(const CMat& h) {
    const int n = h.rows();
    Mat e(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = h(i, j).real();
            const double y = h(i, j).imag();
            e(i, j) = x;
            e(i, j + n) = -y;
            e(i + n, j) = y;
            e(i + n, j + n) = x;
        }
    }
    std::vector<double> doubled = sym_eigenvalues(e);
    std::sort(doubled.begin(), doubled.end());
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(0.5 * (doubled[static_cast<size_t>(2 * i)] + doubled[static_cast<size_t>(2 * i + 1)]));
    return out;
}

} // namespace

SpectrumResult block_spectrum(const MuMatrix& mu, int m, int j, int size) {
    const CMat block = block_matrix(mu, m, j, size);
    std::vector<double> magnitudes;
    if (max_imag_abs(block) <= kRealTol) {
        const std::vector<double> ev = sym_eigenvalues(real_part(block));
        magnitudes.reserve(ev.size());
        for (double v : ev) magnitudes.push_back(std::abs(v));
    } else {
        // Complex block: the restricted operator squares to M* M, so the
        // spectrum is the symmetric pair of singular values.
        CMat h(size, size);
        for (int p = 0; p < size; ++p)
            for (int q = 0; q < size; ++q) {
                cplx acc{0.0, 0.0};
                for (int r = 0; r < size; ++r) acc += std::conj(block(r, p)) * block(r, q);
                h(p, q) = acc;
            }
        for (double v : hermitian_eigenvalues(h)) magnitudes.push_back(std::sqrt(std::max(v, 0.0)));
    }

    SpectrumResult res;
    res.m = m;
    res.truncation = size;
    for (double v : magnitudes) {
        res.eigenvalues.push_back({v, j, 1, false});
        res.eigenvalues.push_back({-v, j, 1, false});
    }
    for (auto& e : res.eigenvalues)
        if (e.value == 0.0) e.value = 0.0; // normalize -0

    res.eigenvalues = merge_entries(std::move(res.eigenvalues));
    return res;
}

SpectrumResult full_spectrum(const MuMatrix& mu, int m, int size_per_block) {
    SpectrumResult res;
    res.m = m;
    res.truncation = size_per_block;
    for (int j = 0; j <= block_count_limit(m); ++j) {
        SpectrumResult b = block_spectrum(mu, m, j, size_per_block);
        res.eigenvalues.insert(res.eigenvalues.end(), b.eigenvalues.begin(), b.eigenvalues.end());
    }
    res.eigenvalues.push_back({0.5, -1, 1, true}); // constant functions
    sort_entries(res.eigenvalues);
    return res;
}

EmbeddingReport verify_embedding(const MuMatrix& mu_d, const MuMatrix& mu_omega, int m, int spectrum_size) {
    if (m < 1) throw validation_error("verify_embedding: m must be >= 1");
    const int compared = std::min(mu_omega.order, mu_d.order / m);
    if (compared < 1) throw validation_error("verify_embedding: incompatible orders (need mu_d.order >= m)");

    EmbeddingReport rep;
    rep.compared_order = compared;
    for (int n = 1; n <= compared; ++n)
        for (int k = 1; k <= compared; ++k)
            rep.mu_residual = std::max(rep.mu_residual, std::abs(mu_d.at(m * n, m * k) - mu_omega.at(n, k)));

    rep.spectrum_size = (spectrum_size > 0) ? spectrum_size : compared;
    if (rep.spectrum_size > compared)
        throw validation_error("verify_embedding: spectrum size exceeds the comparable order");
    const CMat b0 = block_matrix(mu_d, m, 0, rep.spectrum_size);
    const CMat full = block_matrix(mu_omega, 1, 0, rep.spectrum_size);
    if (max_imag_abs(b0) > kRealTol || max_imag_abs(full) > kRealTol)
        throw validation_error("verify_embedding: spectrum comparison requires real tables");
    const std::vector<double> ev_d = sym_eigenvalues(real_part(b0));
    const std::vector<double> ev_o = sym_eigenvalues(real_part(full));
    for (size_t i = 0; i < ev_d.size(); ++i)
        rep.spectrum_residual = std::max(rep.spectrum_residual, std::abs(ev_d[i] - ev_o[i]));
    return rep;
}

} // namespace npspec
