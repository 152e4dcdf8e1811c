#include "npspec/spectrum.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace npspec;
using namespace npspec::testing;

namespace {

MuMatrix synthetic_mu(const std::vector<std::vector<double>>& rows) {
    MuMatrix mu;
    mu.order = static_cast<int>(rows.size());
    mu.radius = 1.0;
    mu.mu = CMat(mu.order, mu.order);
    for (int n = 0; n < mu.order; ++n)
        for (int k = 0; k < mu.order; ++k) mu.mu(n, k) = rows[static_cast<size_t>(n)][static_cast<size_t>(k)];
    return mu;
}

Mat random_symmetric(std::mt19937& rng, int n, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = u(rng);
            a(i, j) = v;
            a(j, i) = v;
        }
    return a;
}

/// Determinant by Gaussian elimination with partial pivoting; independent of
/// the eigensolver.
double det_oracle(Mat a) {
    const int n = a.rows();
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (a(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
            det = -det;
        }
        det *= a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
        }
    }
    return det;
}

std::vector<double> expand_by_multiplicity(const SpectrumResult& s) {
    std::vector<double> out;
    for (const auto& e : s.eigenvalues)
        if (!e.constant_space)
            for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.value);
    return out;
}

} // namespace

TEST_CASE("block index sets") {
    CHECK(block_count_limit(1) == 0);
    CHECK(block_count_limit(2) == 1);
    CHECK(block_count_limit(5) == 2);
    CHECK(block_count_limit(6) == 3);

    CHECK(block_indices(2, 0, 3) == std::vector<int>{2, 4, 6});
    CHECK(block_indices(2, 1, 3) == std::vector<int>{1, 3, 5});
    CHECK(block_indices(5, 2, 5) == std::vector<int>{2, 3, 7, 8, 12});
    CHECK(block_indices(4, 2, 4) == std::vector<int>{2, 6, 10, 14});
    CHECK_THROWS_AS(block_indices(5, 3, 4), validation_error);
}

TEST_CASE("jacobi eigensolver basics") {
    Mat d(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 1.0;
    CHECK(sym_eigenvalues(d) == std::vector<double>{2.0, 1.0});

    Mat o(2, 2);
    o(0, 1) = 1.0;
    o(1, 0) = 1.0;
    const auto ev = sym_eigenvalues(o);
    CHECK(close(ev[0], 1.0, 1e-15));
    CHECK(close(ev[1], -1.0, 1e-15));

    Mat bad(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(sym_eigenvalues(bad), validation_error);
    bad(1, 0) = std::nan("");
    CHECK_THROWS_AS(sym_eigenvalues(bad), validation_error);
}

TEST_CASE("jacobi eigensolver: trace, determinant, rotations") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        const Mat a = random_symmetric(rng, 8, 1.0);
        const JacobiResult res = jacobi_eigen(a);
        double trace = 0.0;
        for (int i = 0; i < 8; ++i) trace += a(i, i);
        double sum = 0.0, prod = 1.0;
        for (double v : res.eigenvalues) {
            sum += v;
            prod *= v;
        }
        CHECK(close(sum, trace, 1e-12));
        const double det = det_oracle(a);
        CHECK(std::abs(prod - det) <= 1e-10 * std::max(1.0, std::abs(det)));

        // Q^t Q = I
        double worst = 0.0;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                double dot = 0.0;
                for (int k = 0; k < 8; ++k) dot += res.rotation(k, i) * res.rotation(k, j);
                worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
            }
        CHECK(worst < 1e-12);

        // A Q = Q D
        double residual = 0.0;
        std::vector<double> diag(8);
        // recover the diagonal in rotation order by applying A to each column
        for (int j = 0; j < 8; ++j) {
            double rayleigh = 0.0;
            for (int i = 0; i < 8; ++i) {
                double av = 0.0;
                for (int k = 0; k < 8; ++k) av += a(i, k) * res.rotation(k, j);
                rayleigh += res.rotation(i, j) * av;
            }
            diag[static_cast<size_t>(j)] = rayleigh;
        }
        std::vector<double> sorted = diag;
        std::sort(sorted.begin(), sorted.end(), [](double x, double y) {
            if (std::abs(x) != std::abs(y)) return std::abs(x) > std::abs(y);
            return x > y;
        });
        for (size_t i = 0; i < sorted.size(); ++i) residual = std::max(residual, std::abs(sorted[i] - res.eigenvalues[i]));
        CHECK(residual < 1e-11);
    }
}

TEST_CASE("block matrices of the Cassini oval") {
    const double R = 1.1;
    const auto cass = make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, R, 32);
    const auto mu = modified_grunsky(grunsky_from_forward(cass.forward_form(64), 10), R);

    const CMat m1 = block_matrix(mu, 2, 1, 3);
    CHECK(close(m1(0, 0), 1.0 / (4.0 * R * R), 1e-15));
    CHECK(close(m1(1, 1), 1.0 / (16.0 * std::pow(R, 6)), 1e-15));
    CHECK(close(m1(2, 2), closed_form_cassini(5, 5) * 0.5 / std::pow(R, 10), 1e-15));
    CHECK(close(m1(0, 1), -std::sqrt(3.0) / 16.0 / std::pow(R, 4), 1e-15));
    CHECK(close(m1(0, 2), std::sqrt(5.0) / 32.0 / std::pow(R, 6), 1e-15));
    CHECK(close(m1(0, 1), m1(1, 0), 1e-16));

    // block 0 is the zero operator of the underlying disk
    const CMat m0 = block_matrix(mu, 2, 0, 4);
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) CHECK(m0(p, q) == cplx{0.0, 0.0});

    CHECK_THROWS_AS(block_matrix(mu, 2, 1, 6), validation_error); // index 11 > order 10
}

TEST_CASE("block spectrum: sign pairing") {
    const auto mu = synthetic_mu({{0.3}});
    const auto s = block_spectrum(mu, 1, 0, 1);
    REQUIRE(s.eigenvalues.size() == 2);
    CHECK(close(s.eigenvalues[0].value, 0.3, 1e-16));
    CHECK(close(s.eigenvalues[1].value, -0.3, 1e-16));

    // zero block: single merged entry of multiplicity 2n
    const auto zero = synthetic_mu({{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    const auto zs = block_spectrum(zero, 1, 0, 3);
    REQUIRE(zs.eigenvalues.size() == 1);
    CHECK(zs.eigenvalues[0].value == 0.0);
    CHECK(zs.eigenvalues[0].multiplicity == 6);
}

TEST_CASE("block spectrum: ellipse ladder") {
    const double R = std::sqrt(1.1);
    const auto jk = make_joukowski(1.0, R, 64);
    const auto mu = modified_grunsky(grunsky_from_forward(jk, 20), R);
    const auto s = block_spectrum(mu, 1, 0, 15);
    // +-(a-b)^n / (2 (a+b)^n) collapses to +-1.1^{-n}/2 here
    std::vector<double> expected;
    for (int n = 1; n <= 15; ++n) {
        expected.push_back(std::pow(1.1, -n) / 2.0);
        expected.push_back(-std::pow(1.1, -n) / 2.0);
    }
    std::sort(expected.begin(), expected.end(), [](double x, double y) {
        if (std::abs(x) != std::abs(y)) return std::abs(x) > std::abs(y);
        return x > y;
    });
    const auto got = expand_by_multiplicity(s);
    REQUIRE(got.size() == expected.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(close(got[i], expected[i], 1e-9));
}

TEST_CASE("complex blocks go through the singular-value route") {
    MuMatrix mu;
    mu.order = 2;
    mu.radius = 1.0;
    mu.mu = CMat(2, 2);
    mu.mu(0, 1) = cplx{0.0, 1.0};
    mu.mu(1, 0) = cplx{0.0, 1.0};
    const auto s = block_spectrum(mu, 1, 0, 2);
    // M* M = I: singular values {1, 1}
    REQUIRE(s.eigenvalues.size() == 2);
    CHECK(close(s.eigenvalues[0].value, 1.0, 1e-12));
    CHECK(s.eigenvalues[0].multiplicity == 2);
    CHECK(close(s.eigenvalues[1].value, -1.0, 1e-12));
    CHECK(s.eigenvalues[1].multiplicity == 2);
}

TEST_CASE("full spectrum") {
    const double R = 1.1;
    const auto cass = make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, R, 64);
    const auto mu = modified_grunsky(grunsky_from_forward(cass.forward_form(2 * 42 + 2), 42), R);

    const auto full = full_spectrum(mu, 2, 20);

    // constant-space entry 1/2 leads the ordering
    REQUIRE(!full.eigenvalues.empty());
    CHECK(full.eigenvalues[0].constant_space);
    CHECK(full.eigenvalues[0].value == 0.5);
    CHECK(full.eigenvalues[0].block_j == -1);

    // block 0 contributes only the zero eigenvalue at finite truncation
    // (numerically: round-off of exactly cancelling coefficients)
    for (const auto& e : full.eigenvalues)
        if (e.block_j == 0) CHECK(std::abs(e.value) < 1e-15);

    // union property: multiset equality against per-block runs
    std::vector<double> from_blocks;
    for (int j = 0; j <= 1; ++j) {
        const auto b = block_spectrum(mu, 2, j, 20);
        const auto v = expand_by_multiplicity(b);
        from_blocks.insert(from_blocks.end(), v.begin(), v.end());
    }
    auto from_full = expand_by_multiplicity(full);
    std::sort(from_blocks.begin(), from_blocks.end());
    std::sort(from_full.begin(), from_full.end());
    REQUIRE(from_blocks.size() == from_full.size());
    for (size_t i = 0; i < from_full.size(); ++i) CHECK(close(from_full[i], from_blocks[i], 1e-15));

    // m = 1: full equals block 0 plus the constant entry
    const auto jmu = modified_grunsky(grunsky_from_forward(make_joukowski(0.5, 1.2, 64), 12), 1.2);
    const auto f1 = full_spectrum(jmu, 1, 10);
    const auto b0 = block_spectrum(jmu, 1, 0, 10);
    CHECK(f1.eigenvalues.size() == b0.eigenvalues.size() + 1);
}

TEST_CASE("negation symmetry of real block spectra") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> size_d(1, 6);
        const int n = size_d(rng);
        const Mat a = random_symmetric(rng, n, 0.4);
        std::vector<std::vector<double>> rows(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = a(i, j);
        const auto s = block_spectrum(synthetic_mu(rows), 1, 0, n);
        auto values = expand_by_multiplicity(s);
        std::vector<double> negated;
        for (double v : values) negated.push_back(-v);
        std::sort(values.begin(), values.end());
        std::sort(negated.begin(), negated.end());
        for (size_t i = 0; i < values.size(); ++i) CHECK(close(values[i], negated[i], 1e-15));
    }
}

TEST_CASE("spectra of smooth presets stay inside (-1/2, 1/2)") {
    const double R = 1.1;
    const ExteriorMap presets[] = {
        make_joukowski(1.0, R, 128),
        make_mstar(4, R, 128),
        make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, R, 128).forward_form(130),
    };
    for (const auto& map : presets) {
        const int order = 60;
        const auto mu = modified_grunsky(grunsky_from_forward(map.forward_form(2 * order + 2), order), map.radius);
        const int m = 1; // full matrix view
        const auto s = block_spectrum(mu, m, 0, order);
        for (const auto& e : s.eigenvalues) CHECK(std::abs(e.value) < 0.5 + 1e-9);
    }
}

TEST_CASE("verify_embedding") {
    // both tables are identically zero: disk vs its Cassini transform
    const auto disk = make_translated_disk(cplx{1.0, 0.0}, 1.21, 80);
    const auto cass = mth_root_transform(disk, 2);
    const auto mu_o = modified_grunsky(grunsky_from_forward(disk, 18), disk.radius);
    const auto mu_d = modified_grunsky(grunsky_from_forward(cass.forward_form(80), 36), cass.radius);
    const auto rep = verify_embedding(mu_d, mu_o, 2);
    CHECK(rep.mu_residual < 1e-12);
    CHECK(rep.spectrum_residual < 1e-12);

    const auto omega = make_joukowski(1.0, 1.1, 90);
    const auto d = mth_root_transform(omega, 2);
    const auto mu_o2 = modified_grunsky(grunsky_from_forward(omega, 20), omega.radius);
    const auto mu_d2 = modified_grunsky(grunsky_from_forward(d.forward_form(90), 40), d.radius);
    const auto rep2 = verify_embedding(mu_d2, mu_o2, 2);
    CHECK(rep2.mu_residual < 1e-11);
    CHECK(rep2.spectrum_residual < 1e-10);

    MuMatrix tiny;
    tiny.order = 1;
    tiny.radius = 1.0;
    tiny.mu = CMat(1, 1);
    CHECK_THROWS_AS(verify_embedding(tiny, mu_o, 2), validation_error);
}
