// SPDX-License-Identifier: Apache-2.0
//
// Fourier coefficients on the torus, Dirichlet kernels, rectangular
// partial sums, directional limits, and regular-point values.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "gvar/grid_function.hpp"

namespace gvar {

/// Complex Fourier coefficients on the lattice [-N_1,N_1] x ... x [-N_d,N_d],
/// row-major with index n_s at offset n_s + N_s. For real sources the
/// tensor is Hermitian: coeff(-n) = conj(coeff(n)).
struct CoeffTensor {
    int d = 1;
    std::vector<int> N;                     // per-axis bound
    std::vector<int> M;                     // sample counts used (empty for closed forms)
    std::vector<std::complex<double>> c;    // row-major over (2N_s+1) per axis

    std::int64_t flat(std::span<const int> n) const;
    std::complex<double> at(std::span<const int> n) const { return c[static_cast<std::size_t>(flat(n))]; }
    std::int64_t lattice_size() const;
};

/// Coefficients of a 2pi-periodic source by the uniform-grid discrete
/// transform (trapezoid rule on the torus; FFT-backed). Requires
/// M_s >= 2(2N_s + 1) per axis.
CoeffTensor fourier_coefficients(const FunctionSource& src, std::span<const int> N,
                                 std::span<const int> M);

/// Same with M_s = oversample * (2N_s + 1) on every axis (default 8).
CoeffTensor fourier_coefficients(const FunctionSource& src, std::span<const int> N,
                                 int oversample = 8);

/// sin((N + 1/2) u) / (2 sin(u/2)) with the removable singularity at
/// u = 0 (mod 2pi) patched to N + 1/2.
double dirichlet_kernel(int N, double u);

/// Partial sum over the sublattice |n_s| <= Nsub_s, evaluated at x.
/// Terms accumulate in lexicographic lattice order; the real part is
/// returned (sources are real).
double rectangular_partial_sum(const CoeffTensor& c, std::span<const int> Nsub,
                               std::span<const double> x);

/// Rectangular partial sum with equal bounds N on every axis.
double cubical_partial_sum(const CoeffTensor& c, int N, std::span<const double> x);

/// Geometric probe schedule for directional limits.
struct LimitSchedule {
    double eps0 = 0.5;
    double ratio = 0.5;
    int steps = 24;
    double tol = 1e-6;
};

struct DirectionalLimit {
    double value = 0.0;
    bool converged = false;
};

/// Limit of src approaching x through the open box with corner direction
/// delta (entries +-1), probed along the box diagonal at x + eps_j*delta/2.
/// Converged once three consecutive probes agree pairwise within tol.
DirectionalLimit directional_limit(const FunctionSource& src, std::span<const double> x,
                                   std::span<const int> delta, const LimitSchedule& s = {});

/// All 2^d directional limits at x (index = sign mask, bit s set means
/// delta_s = +1), their average, and whether every limit converged.
struct RegularPointReport {
    std::vector<double> point;
    std::vector<DirectionalLimit> limits;
    double f_star = 0.0;
    bool regular = false;
};

RegularPointReport regular_point(const FunctionSource& src, std::span<const double> x,
                                 const LimitSchedule& s = {});

nlohmann::json to_json(const CoeffTensor& c);
CoeffTensor coeff_tensor_from_json(const nlohmann::json& j);

/// Gauss-Legendre nodes and weights on [a, b].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n, double a, double b);

}  // namespace gvar
