#pragma once

#include "npspec/grunsky.hpp"
#include "npspec/linalg.hpp"

#include <vector>

namespace npspec {

/// Label of an invariant block: fold count m and j in 0 ... m_*.
struct BlockIndex {
    int m = 1;
    int j = 0;
};

/// Number of blocks minus one: m/2 for even m, (m-1)/2 for odd m.
int block_count_limit(int m);

/// Row/column index set of block j inside the full table: p-th index for
/// j = 0 or j = m/2 is (p+1)m - j; otherwise the interleaved sequence
/// j, m-j, m+j, 2m-j, ...
std::vector<int> block_indices(int m, int j, int size);

/// Dense block submatrix; entries mu_{idx_p, idx_q}. Symmetric.
CMat block_matrix(const MuMatrix& mu, int m, int j, int size);

struct SpectrumEntry {
    double value = 0.0;
    int block_j = 0;        // -1 for the constant-subspace entry
    int multiplicity = 1;
    bool constant_space = false;
};

struct SpectrumResult {
    std::vector<SpectrumEntry> eigenvalues; // descending |value|, ties by descending value
    int truncation = 0;                     // block matrix size used
    int m = 1;
};

/// Operator spectrum restricted to block j at truncation `size`: the pair
/// +-|lambda_i| for each eigenvalue of the (real) block, or +-singular
/// values when the block is genuinely complex. Values coinciding within
/// 1e-12 are merged with summed multiplicity.
SpectrumResult block_spectrum(const MuMatrix& mu, int m, int j, int size);

/// Union over blocks j = 0 ... m_*, re-sorted, plus the constant-function
/// eigenvalue 1/2 as a flagged extra entry.
SpectrumResult full_spectrum(const MuMatrix& mu, int m, int size_per_block);

struct EmbeddingReport {
    double mu_residual = 0.0;       // max |mu^D_{mn,mk} - mu^Omega_{n,k}|
    double spectrum_residual = 0.0; // max sorted-eigenvalue distance, block 0 vs full
    int compared_order = 0;
    int spectrum_size = 0;
};

/// Coefficient-level check that block 0 of the transformed domain carries an
/// exact copy of the base domain's operator.
EmbeddingReport verify_embedding(const MuMatrix& mu_d, const MuMatrix& mu_omega, int m, int spectrum_size = 0);

} // namespace npspec
