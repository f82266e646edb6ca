// SPDX-License-Identifier: Apache-2.0

#include "gvar/divergence_witness.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gvar {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_witness_args(int d, int N) {
    if (d < 1) throw std::invalid_argument("witness: d must be >= 1");
    if (N < 2) throw std::invalid_argument("witness: N must be >= 2");
}
}  // namespace

double CellGrid::cell_width() const { return kTwoPi / (2 * N + 1); }

std::pair<double, double> CellGrid::cell(int i) const {
    const double w = cell_width();
    return {i * w, (i + 1) * w};
}

int CellGrid::cell_index(double t) const {
    return static_cast<int>(std::floor(t * (2 * N + 1) / kTwoPi));
}

FunctionSource witness_g(int d, int N) {
    check_witness_args(d, N);
    const CellGrid cells{d, N};
    FunctionSource src;
    src.dim = d;
    src.periodic = true;
    src.eval = [cells, N](std::span<const double> x) {
        double prod = 1.0;
        for (double xs : x) {
            double t = std::fmod(xs, kTwoPi);
            if (t < 0.0) t += kTwoPi;
            if (!cells.interior_index(cells.cell_index(t))) return 0.0;
            prod *= std::sin((N + 0.5) * t);
        }
        return prod;
    };
    return src;
}

std::vector<double> canonical_axis(int N) {
    if (N < 2) throw std::invalid_argument("canonical_axis: N must be >= 2");
    std::vector<double> axis(static_cast<std::size_t>(2 * N + 1));
    for (int k = 0; k <= 2 * N; ++k) {
        axis[static_cast<std::size_t>(k)] = kPi * k / (2 * N + 1);
    }
    return axis;
}

GridFunction witness_g_grid(int d, int N) {
    check_witness_args(d, N);
    std::vector<std::vector<double>> axes(static_cast<std::size_t>(d), canonical_axis(N));
    return sample(witness_g(d, N), std::move(axes));
}

std::vector<std::complex<double>> witness_coeffs_1d(int N) {
    if (N < 2) throw std::invalid_argument("witness_coeffs_1d: N must be >= 2");
    const CellGrid cells{1, N};
    std::vector<std::complex<double>> out(static_cast<std::size_t>(2 * N + 1));
    const std::complex<double> i_unit{0.0, 1.0};
    for (int n = -N; n <= N; ++n) {
        std::complex<double> acc{0.0, 0.0};
        const double a_plus = (N + 0.5) - n;
        const double a_minus = -(N + 0.5) - n;
        for (int i = 1; i <= N - 1; ++i) {
            const auto [t1, t2] = cells.cell(i);
            const auto seg = [&](double a) {
                return (std::complex<double>{std::cos(a * t2), std::sin(a * t2)} -
                        std::complex<double>{std::cos(a * t1), std::sin(a * t1)}) /
                       (i_unit * a);
            };
            acc += (seg(a_plus) - seg(a_minus)) / (2.0 * i_unit);
        }
        out[static_cast<std::size_t>(n + N)] = acc / kTwoPi;
    }
    return out;
}

CoeffTensor witness_coefficients(int d, int N) {
    check_witness_args(d, N);
    const std::vector<std::complex<double>> u = witness_coeffs_1d(N);
    CoeffTensor out;
    out.d = d;
    out.N.assign(static_cast<std::size_t>(d), N);
    out.c.resize(static_cast<std::size_t>(out.lattice_size()));
    const std::vector<int> sizes(static_cast<std::size_t>(d), 2 * N + 1);
    std::vector<int> off(static_cast<std::size_t>(d), 0);
    std::int64_t flat = 0;
    do {
        std::complex<double> prod{1.0, 0.0};
        for (int k = 0; k < d; ++k) prod *= u[static_cast<std::size_t>(off[static_cast<std::size_t>(k)])];
        out.c[static_cast<std::size_t>(flat++)] = prod;
    } while (advance_index(off, sizes));
    return out;
}

WitnessNorm witness_norm(int d, int N, XiKind xi, const VariationParams& p) {
    check_witness_args(d, N);
    WitnessNorm out;
    out.d = d;
    out.N = N;
    out.sharp = sharp_variation(witness_g_grid(d, N), LambdaSeq::xi(std::max(d, 2), xi), p);
    out.sup_norm = 1.0;  // attained at every interior cell center

    double ref = 0.0;
    for (int i = 1; i <= N - 1; ++i) {
        ref += std::pow(std::log(i + 1.0), d - 1) / (i * xi_value(xi, i));
    }
    out.reference_sum = ref;
    out.ratio_lower = out.sharp.total.lower / ref;
    out.ratio_upper = out.sharp.total.upper / ref;
    out.eta = (out.sup_norm + out.sharp.total.lower) / std::pow(std::log(N), d);
    return out;
}

ScaledWitness witness_f(int d, int N, XiKind xi, const VariationParams& p) {
    ScaledWitness out;
    out.base = witness_norm(d, N, xi, p);
    if (!(out.base.eta > 0.0)) throw std::runtime_error("witness_f: nonpositive eta");
    out.scale = 1.0 / (out.base.eta * std::pow(std::log(N), d));
    const FunctionSource g = witness_g(d, N);
    const double scale = out.scale;
    out.source.dim = d;
    out.source.periodic = true;
    out.source.eval = [g, scale](std::span<const double> x) { return scale * g.eval(x); };
    out.sharp_scaled = VariationBracket{out.base.sharp.total.lower * scale,
                                        out.base.sharp.total.upper * scale,
                                        out.base.sharp.total.exact};
    out.sup_norm = scale;
    return out;
}

DivergenceValues divergence_values(int d, int N, XiKind xi, const VariationParams& p) {
    check_witness_args(d, N);
    DivergenceValues out;
    out.d = d;
    out.N = N;

    // Route 1: closed-form coefficients summed over the cubical lattice.
    const CoeffTensor coeffs = witness_coefficients(d, N);
    const std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
    out.S_g_coeff = cubical_partial_sum(coeffs, N, origin);

    // Route 2: per-cell quadrature of the kernel-product integral. The
    // integrand is separable, so the d-dimensional cell sum collapses to
    // the d-th power of one axis sum.
    const CellGrid cells{d, N};
    double axis_sum = 0.0;
    for (int i = 1; i <= N - 1; ++i) {
        const auto [t1, t2] = cells.cell(i);
        const GaussRule rule = gauss_legendre(33, t1, t2);
        double q = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double u = rule.nodes[k];
            q += rule.weights[k] * std::sin((N + 0.5) * u) * dirichlet_kernel(N, u);
        }
        axis_sum += q;
    }
    out.S_g_quad = std::pow(axis_sum / kPi, d);

    const double denom = std::max(std::abs(out.S_g_coeff), std::abs(out.S_g_quad));
    out.discrepancy = denom > 0.0 ? std::abs(out.S_g_coeff - out.S_g_quad) / denom : 0.0;
    if (out.discrepancy > 1e-4) {
        throw std::runtime_error("divergence_values: coefficient and quadrature routes disagree");
    }

    out.norm = witness_norm(d, N, xi, p);
    out.eta = out.norm.eta;
    const double scale = 1.0 / (out.eta * std::pow(std::log(N), d));
    out.S_f_coeff = out.S_g_coeff * scale;
    out.S_f_quad = out.S_g_quad * scale;
    return out;
}

}  // namespace gvar
