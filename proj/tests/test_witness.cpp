// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"

#include "gvar/divergence_witness.hpp"
#include "gvar/fourier.hpp"

using namespace gvar;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("witness values at cell centers, boundaries, and near zero") {
    const int N = 8;
    const FunctionSource g = witness_g(2, N);
    const CellGrid cells{2, N};

    // |g| = 1 at interior cell centers.
    for (int i = 1; i <= N - 1; ++i) {
        const double cx = kPi * (2 * i + 1) / (2 * N + 1);
        const std::vector<double> x = {cx, cx};
        CHECK(std::abs(g.eval(x)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // Zero on every cell boundary (continuity across cells).
    for (int i = 1; i <= N; ++i) {
        const double bx = 2.0 * kPi * i / (2 * N + 1);
        const std::vector<double> x = {bx, kPi * 3 / (2 * N + 1)};
        CHECK(std::abs(g.eval(x)) <= 1e-12);
    }
    // Zero near the origin: the first cell (index 0) is excluded.
    const double tiny = 0.9 * cells.cell_width();
    const std::vector<double> near0 = {tiny * 0.5, tiny * 0.7};
    CHECK(g.eval(near0) == 0.0);
    // Periodic extension.
    const double cx = kPi * 3 / (2 * N + 1);
    const std::vector<double> x = {cx, cx};
    const std::vector<double> xp = {cx + 2.0 * kPi, cx - 2.0 * kPi};
    CHECK(g.eval(x) == doctest::Approx(g.eval(xp)).epsilon(1e-10));
}

TEST_CASE("smallest witness lives on a single cell per axis") {
    // N = 2 keeps only interior cell index 1 on each axis.
    const int N = 2;
    const FunctionSource g = witness_g(2, N);
    const CellGrid cells{2, N};
    const auto mid = [&](int i) {
        const auto [lo, hi] = cells.cell(i);
        return 0.5 * (lo + hi);
    };
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) {
            const std::vector<double> x = {mid(i), mid(j)};
            if (i == 1 && j == 1) {
                CHECK(std::abs(g.eval(x)) == doctest::Approx(1.0).epsilon(1e-12));
            } else {
                CHECK(g.eval(x) == 0.0);
            }
        }
    }
    // The 1D coefficient factor reduces to the single-cell integral.
    const std::vector<std::complex<double>> u = witness_coeffs_1d(N);
    const auto [t1, t2] = cells.cell(1);
    const GaussRule r = gauss_legendre(33, t1, t2);
    for (int n = -N; n <= N; ++n) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t k = 0; k < r.nodes.size(); ++k) {
            acc += r.weights[k] * std::sin((N + 0.5) * r.nodes[k]) *
                   std::complex<double>(std::cos(n * r.nodes[k]), -std::sin(n * r.nodes[k]));
        }
        CHECK(std::abs(acc / (2.0 * kPi) - u[static_cast<std::size_t>(n + N)]) <= 1e-14);
    }
}

TEST_CASE("witness continuity: values shrink near the cell boundaries") {
    const int N = 6;
    const FunctionSource g = witness_g(2, N);
    const double boundary = 2.0 * kPi * 3 / (2 * N + 1);
    const double center = kPi * 5 / (2 * N + 1);
    double prev = 2.0;
    for (const double h : {1e-2, 1e-3, 1e-4}) {
        double m = 0.0;
        for (int k = -4; k <= 4; ++k) {
            const std::vector<double> x = {boundary + h * k / 4.0, center};
            m = std::max(m, std::abs(g.eval(x)));
        }
        CHECK(m <= (N + 0.5) * h * 1.01);
        CHECK(m < prev);
        prev = m;
    }
}

TEST_CASE("sampled witness grid matches the pointwise formula") {
    const int N = 6;
    const GridFunction g = witness_g_grid(2, N);
    const std::vector<double> axis = canonical_axis(N);
    const auto inside = [&](double t) {
        const int i = static_cast<int>(std::floor(t * (2 * N + 1) / (2.0 * kPi)));
        return i >= 1 && i <= N - 1;
    };
    for (int i = 0; i <= 2 * N; ++i) {
        for (int j = 0; j <= 2 * N; ++j) {
            const double x = axis[static_cast<std::size_t>(i)];
            const double y = axis[static_cast<std::size_t>(j)];
            const double want = (inside(x) && inside(y))
                                    ? std::sin((N + 0.5) * x) * std::sin((N + 0.5) * y)
                                    : 0.0;
            const std::vector<int> idx = {i, j};
            CHECK(g.at(idx) == doctest::Approx(want).epsilon(1e-14));
        }
    }
}

TEST_CASE("canonical axis holds boundaries at even and centers at odd indices") {
    const int N = 5;
    const std::vector<double> axis = canonical_axis(N);
    REQUIRE(static_cast<int>(axis.size()) == 2 * N + 1);
    const CellGrid cells{1, N};
    for (int i = 0; i <= N; ++i) {
        CHECK(axis[static_cast<std::size_t>(2 * i)] == doctest::Approx(cells.cell(i).first).epsilon(1e-15));
    }
    for (int i = 0; i < N; ++i) {
        CHECK(axis[static_cast<std::size_t>(2 * i + 1)] ==
              doctest::Approx(0.5 * (cells.cell(i).first + cells.cell(i).second)).epsilon(1e-15));
    }
}

TEST_CASE("closed-form coefficients match independent quadrature and are hermitian") {
    const int N = 4;
    const std::vector<std::complex<double>> u = witness_coeffs_1d(N);
    // Hermitian symmetry of the 1D factor (real integrand).
    for (int n = 1; n <= N; ++n) {
        const std::complex<double> a = u[static_cast<std::size_t>(N + n)];
        const std::complex<double> b = std::conj(u[static_cast<std::size_t>(N - n)]);
        CHECK(std::abs(a - b) <= 1e-15);
    }

    // Cross-validation against per-cell Gauss integration of the
    // coefficient integrals: agreement at rounding level.
    const CellGrid cells{1, N};
    for (int n = -N; n <= N; ++n) {
        std::complex<double> acc{0.0, 0.0};
        for (int i = 1; i <= N - 1; ++i) {
            const auto [t1, t2] = cells.cell(i);
            const GaussRule r = gauss_legendre(33, t1, t2);
            for (std::size_t k = 0; k < r.nodes.size(); ++k) {
                const double t = r.nodes[k];
                acc += r.weights[k] * std::sin((N + 0.5) * t) *
                       std::complex<double>(std::cos(n * t), -std::sin(n * t));
            }
        }
        acc /= 2.0 * kPi;
        CHECK(std::abs(acc - u[static_cast<std::size_t>(n + N)]) <= 1e-12);
    }
}

TEST_CASE("sampled-transform coefficients approach the closed form at the aliasing rate") {
    // The witness has derivative kinks, so the uniform-grid transform
    // carries O(M^-2) aliasing; the closed form measures it.
    const int N = 4;
    const std::vector<std::complex<double>> u = witness_coeffs_1d(N);
    const FunctionSource g1 = witness_g(1, N);
    double prev = 0.0;
    double mag = 0.0;
    for (const auto& z : u) mag = std::max(mag, std::abs(z));
    for (int pass = 0; pass < 3; ++pass) {
        const int factor = 16 << pass;
        const std::vector<int> bounds = {N};
        const CoeffTensor q = fourier_coefficients(g1, bounds, factor);
        double err = 0.0;
        for (int n = -N; n <= N; ++n) {
            err = std::max(err, std::abs(q.c[static_cast<std::size_t>(n + N)] -
                                         u[static_cast<std::size_t>(n + N)]));
        }
        if (pass == 0) {
            CHECK(err <= 5e-3 * mag);
        } else {
            CHECK(err <= 0.35 * prev);  // better than halving per doubling
        }
        prev = err;
    }

    // Same agreement level for the 2D tensor at 16x oversampling.
    const CoeffTensor exact = witness_coefficients(2, N);
    const std::vector<int> bounds2 = {N, N};
    const CoeffTensor quad = fourier_coefficients(witness_g(2, N), bounds2, 16);
    double max_err = 0.0;
    double max_mag = 0.0;
    for (std::size_t i = 0; i < exact.c.size(); ++i) {
        max_err = std::max(max_err, std::abs(exact.c[i] - quad.c[i]));
        max_mag = std::max(max_mag, std::abs(exact.c[i]));
    }
    CHECK(max_err <= 5e-3 * max_mag);
}

TEST_CASE("witness norm: sup norm, growth floor, reference ratio") {
    const VariationParams params;
    double prev_lower = 0.0;
    for (const int N : {8, 16, 32}) {
        const WitnessNorm wn = witness_norm(2, N, XiKind::LogLog, params);
        CHECK(wn.sup_norm == 1.0);
        CHECK(witness_g_grid(2, N).max_abs() == doctest::Approx(1.0).epsilon(1e-12));

        // Per-axis floor: the N-1 interior boundary-to-center unit
        // intervals each carry weight 1.
        const LambdaSeq lam = LambdaSeq::xi(2, XiKind::LogLog);
        double floor = 0.0;
        for (int i = 1; i <= N - 1; ++i) floor += 1.0 / lam(i);
        for (const auto& axis : wn.sharp.axes) {
            CHECK(axis.bracket.lower >= floor - 1e-10);
        }

        CHECK(wn.sharp.total.lower > prev_lower);  // grows with N
        prev_lower = wn.sharp.total.lower;

        CHECK(wn.ratio_lower > 0.0);
        CHECK(std::isfinite(wn.ratio_upper));
        CHECK(wn.ratio_upper < 10.0);  // bounded across the sweep
        CHECK(wn.eta > 0.0);
    }
}

TEST_CASE("scaled witness is normalized by construction") {
    for (const int N : {8, 16, 32, 64}) {
        const ScaledWitness f = witness_f(2, N, XiKind::LogLog);
        // Norm lower bound = (sup + variation lower) * scale = 1 exactly,
        // up to rounding; comfortably inside the factor-4 band.
        const double norm_lower = f.sup_norm + f.sharp_scaled.lower;
        CHECK(norm_lower == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.sharp_scaled.lower == f.base.sharp.total.lower * f.scale);  // homogeneity
        const std::vector<double> center = {kPi * 3 / (2 * N + 1), kPi * 3 / (2 * N + 1)};
        CHECK(std::abs(f.source.eval(center)) == doctest::Approx(f.scale).epsilon(1e-12));
    }
}

TEST_CASE("divergence values: dual routes agree and diverge in N") {
    double prev_f = 0.0;
    for (const int N : {8, 16}) {
        const DivergenceValues v = divergence_values(2, N, XiKind::LogLog);
        CHECK(v.discrepancy <= 1e-4);
        CHECK(v.S_g_coeff > 0.0);
        CHECK(v.S_f_coeff > prev_f);
        prev_f = v.S_f_coeff;
        CHECK(v.S_f_coeff == doctest::Approx(v.S_g_coeff / (v.eta * std::pow(std::log(N), 2)))
                                 .epsilon(1e-12));
    }
    CHECK_THROWS_AS(divergence_values(2, 1, XiKind::LogLog), std::invalid_argument);
}
