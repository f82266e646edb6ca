// SPDX-License-Identifier: Apache-2.0
//
// The divergence witness pair (g, f): a cell-supported oscillation whose
// #-variation grows slowly while its cubical partial sums at the origin
// grow like log^d N, and its normalized companion with uniformly bounded
// norm whose partial sums at the origin are unbounded in N.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gvar/fourier.hpp"
#include "gvar/grid_function.hpp"
#include "gvar/lambda_seq.hpp"
#include "gvar/variation.hpp"

namespace gvar {

/// Cell geometry: axis cell i spans [2*pi*i/(2N+1), 2*pi*(i+1)/(2N+1));
/// the witness lives on the product of interior cells i in {1, ..., N-1},
/// which keeps it away from 0 and 2*pi on every axis.
struct CellGrid {
    int d = 2;
    int N = 2;

    double cell_width() const;
    std::pair<double, double> cell(int i) const;
    bool interior_index(int i) const { return i >= 1 && i <= N - 1; }
    /// Axis cell index of a wrapped coordinate t in [0, 2*pi).
    int cell_index(double t) const;
};

/// g(x) = prod_s sin((N+1/2) x_s) inside the interior product cells, 0
/// elsewhere; extended 2*pi-periodically. Continuous (it vanishes on every
/// cell boundary), sup norm 1 (attained at cell centers).
FunctionSource witness_g(int d, int N);

/// The canonical sampling axis for the witness: the 2N+1 points
/// k*pi/(2N+1), k = 0..2N: every cell boundary and every cell center,
/// where the witness's zeros and extrema sit exactly.
std::vector<double> canonical_axis(int N);

/// witness_g sampled on the canonical product grid.
GridFunction witness_g_grid(int d, int N);

/// Closed-form 1D coefficient factor of the witness, n = -N..N: the
/// per-cell antiderivative of sin((N+1/2)t) e^{-int} summed over interior
/// cells (each integrand splits into two complex exponentials; the
/// frequencies (N+1/2) -+ n are half-integers, never zero).
std::vector<std::complex<double>> witness_coeffs_1d(int N);

/// Full coefficient tensor: the witness is a product across axes, so the
/// tensor is the outer product of the 1D factors. Exact up to rounding.
CoeffTensor witness_coefficients(int d, int N);

/// #-variation bracket of the witness on the canonical grid, its sup norm,
/// and the comparison against the slow-growth reference sum
/// sum_{i=1}^{N-1} ln^{d-1}(i+1) / (i * xi_i).
struct WitnessNorm {
    int d = 0;
    int N = 0;
    PerAxisVariation sharp;
    double sup_norm = 0.0;
    double reference_sum = 0.0;
    double ratio_lower = 0.0;  // sharp.total.lower / reference_sum
    double ratio_upper = 0.0;  // sharp.total.upper / reference_sum (inf if uncertified)
    double eta = 0.0;          // (sup_norm + sharp.total.lower) / ln^d N
};
WitnessNorm witness_norm(int d, int N, XiKind xi, const VariationParams& p = {});

/// f = g / (eta * ln^d N). eta is defined operationally from the computed
/// norm lower bound, which pins the norm bracket of f at 1 + variation
/// scaled by construction.
struct ScaledWitness {
    FunctionSource source;
    double scale = 0.0;            // 1 / (eta * ln^d N)
    WitnessNorm base;              // the witness_norm used for eta
    VariationBracket sharp_scaled; // base.sharp.total * scale (positive homogeneity)
    double sup_norm = 0.0;         // = scale
};
ScaledWitness witness_f(int d, int N, XiKind xi, const VariationParams& p = {});

/// Cubical partial sums S_{N,..,N} of g and f at the origin, computed two
/// independent ways: summation of the closed-form coefficients, and
/// per-cell Gauss quadrature (33 nodes per cell per axis) of the
/// kernel-product integral sum_cells int prod_s sin((N+1/2)x_s) D_N(x_s) dx
/// divided by pi^d. A relative discrepancy above 1e-4 throws.
struct DivergenceValues {
    int d = 0;
    int N = 0;
    double S_g_coeff = 0.0;
    double S_g_quad = 0.0;
    double S_f_coeff = 0.0;
    double S_f_quad = 0.0;
    double discrepancy = 0.0;  // relative, between the two g routes
    double eta = 0.0;
    WitnessNorm norm;
};
DivergenceValues divergence_values(int d, int N, XiKind xi, const VariationParams& p = {});

}  // namespace gvar
