// SPDX-License-Identifier: Apache-2.0

#include "gvar/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace gvar {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::int64_t CoeffTensor::flat(std::span<const int> n) const {
    if (static_cast<int>(n.size()) != d) {
        throw std::invalid_argument("CoeffTensor: index rank mismatch");
    }
    std::int64_t idx = 0;
    for (int k = 0; k < d; ++k) {
        const int bound = N[static_cast<std::size_t>(k)];
        if (n[static_cast<std::size_t>(k)] < -bound || n[static_cast<std::size_t>(k)] > bound) {
            throw std::invalid_argument("CoeffTensor: index outside the lattice");
        }
        idx = idx * (2 * bound + 1) + (n[static_cast<std::size_t>(k)] + bound);
    }
    return idx;
}

std::int64_t CoeffTensor::lattice_size() const {
    std::int64_t total = 1;
    for (int k = 0; k < d; ++k) total *= 2 * N[static_cast<std::size_t>(k)] + 1;
    return total;
}

CoeffTensor fourier_coefficients(const FunctionSource& src, std::span<const int> N,
                                 std::span<const int> M) {
    const int d = src.dim;
    if (static_cast<int>(N.size()) != d || static_cast<int>(M.size()) != d) {
        throw std::invalid_argument("fourier_coefficients: bound rank mismatch");
    }
    std::int64_t total = 1;
    for (int k = 0; k < d; ++k) {
        if (N[static_cast<std::size_t>(k)] < 0) {
            throw std::invalid_argument("fourier_coefficients: negative bound");
        }
        if (M[static_cast<std::size_t>(k)] < 2 * (2 * N[static_cast<std::size_t>(k)] + 1)) {
            throw std::invalid_argument("fourier_coefficients: undersampled, need M >= 2(2N+1)");
        }
        total *= M[static_cast<std::size_t>(k)];
    }

    fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(total));
    if (!buf) throw std::runtime_error("fourier_coefficients: allocation failed");

    std::vector<int> m_int(M.begin(), M.end());
    fftw_plan plan = fftw_plan_dft(d, m_int.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    if (!plan) {
        fftw_free(buf);
        throw std::runtime_error("fourier_coefficients: planning failed");
    }

    std::vector<int> j(static_cast<std::size_t>(d), 0);
    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    std::int64_t flat = 0;
    do {
        for (int k = 0; k < d; ++k) {
            x[static_cast<std::size_t>(k)] =
                kTwoPi * j[static_cast<std::size_t>(k)] / M[static_cast<std::size_t>(k)];
        }
        buf[flat][0] = src.eval(x);
        buf[flat][1] = 0.0;
        ++flat;
    } while (advance_index(j, m_int));

    fftw_execute(plan);
    fftw_destroy_plan(plan);

    CoeffTensor out;
    out.d = d;
    out.N.assign(N.begin(), N.end());
    out.M.assign(M.begin(), M.end());
    out.c.resize(static_cast<std::size_t>(out.lattice_size()));

    std::vector<int> lattice_sizes(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) lattice_sizes[static_cast<std::size_t>(k)] = 2 * N[static_cast<std::size_t>(k)] + 1;
    std::vector<int> off(static_cast<std::size_t>(d), 0);
    std::int64_t out_flat = 0;
    const double scale = 1.0 / static_cast<double>(total);
    do {
        std::int64_t in_flat = 0;
        for (int k = 0; k < d; ++k) {
            const int n = off[static_cast<std::size_t>(k)] - N[static_cast<std::size_t>(k)];
            const int m = M[static_cast<std::size_t>(k)];
            in_flat = in_flat * m + (n >= 0 ? n : m + n);
        }
        out.c[static_cast<std::size_t>(out_flat++)] =
            std::complex<double>(buf[in_flat][0], buf[in_flat][1]) * scale;
    } while (advance_index(off, lattice_sizes));

    fftw_free(buf);
    return out;
}

CoeffTensor fourier_coefficients(const FunctionSource& src, std::span<const int> N,
                                 int oversample) {
    if (oversample < 2) throw std::invalid_argument("fourier_coefficients: oversample must be >= 2");
    std::vector<int> M(N.size());
    for (std::size_t k = 0; k < N.size(); ++k) M[k] = oversample * (2 * N[k] + 1);
    return fourier_coefficients(src, N, M);
}

double dirichlet_kernel(int N, double u) {
    const double s = std::sin(0.5 * u);
    if (s == 0.0) return N + 0.5;
    return std::sin((N + 0.5) * u) / (2.0 * s);
}

double rectangular_partial_sum(const CoeffTensor& c, std::span<const int> Nsub,
                               std::span<const double> x) {
    if (static_cast<int>(Nsub.size()) != c.d || static_cast<int>(x.size()) != c.d) {
        throw std::invalid_argument("rectangular_partial_sum: rank mismatch");
    }
    for (int k = 0; k < c.d; ++k) {
        if (Nsub[static_cast<std::size_t>(k)] < 0 ||
            Nsub[static_cast<std::size_t>(k)] > c.N[static_cast<std::size_t>(k)]) {
            throw std::invalid_argument("rectangular_partial_sum: bounds exceed the stored lattice");
        }
    }

    // Per-axis phase tables e^{i n x} for n = -Nsub..Nsub.
    std::vector<std::vector<std::complex<double>>> phase(static_cast<std::size_t>(c.d));
    std::vector<int> sizes(static_cast<std::size_t>(c.d));
    for (int k = 0; k < c.d; ++k) {
        const int b = Nsub[static_cast<std::size_t>(k)];
        sizes[static_cast<std::size_t>(k)] = 2 * b + 1;
        auto& tab = phase[static_cast<std::size_t>(k)];
        tab.resize(static_cast<std::size_t>(2 * b + 1));
        for (int n = -b; n <= b; ++n) {
            const double a = n * x[static_cast<std::size_t>(k)];
            tab[static_cast<std::size_t>(n + b)] = {std::cos(a), std::sin(a)};
        }
    }

    std::complex<double> acc{0.0, 0.0};
    std::vector<int> off(static_cast<std::size_t>(c.d), 0);
    std::vector<int> n(static_cast<std::size_t>(c.d), 0);
    do {
        std::complex<double> term{1.0, 0.0};
        for (int k = 0; k < c.d; ++k) {
            n[static_cast<std::size_t>(k)] = off[static_cast<std::size_t>(k)] - Nsub[static_cast<std::size_t>(k)];
            term *= phase[static_cast<std::size_t>(k)][static_cast<std::size_t>(off[static_cast<std::size_t>(k)])];
        }
        acc += c.at(n) * term;
    } while (advance_index(off, sizes));
    return acc.real();
}

double cubical_partial_sum(const CoeffTensor& c, int N, std::span<const double> x) {
    const std::vector<int> bounds(static_cast<std::size_t>(c.d), N);
    return rectangular_partial_sum(c, bounds, x);
}

DirectionalLimit directional_limit(const FunctionSource& src, std::span<const double> x,
                                   std::span<const int> delta, const LimitSchedule& s) {
    if (static_cast<int>(x.size()) != src.dim || x.size() != delta.size()) {
        throw std::invalid_argument("directional_limit: dimension mismatch");
    }
    for (int d : delta) {
        if (d != 1 && d != -1) {
            throw std::invalid_argument("directional_limit: delta entries must be +-1");
        }
    }

    std::vector<double> probe(x.size());
    std::vector<double> history;
    double eps = s.eps0;
    for (int j = 0; j <= s.steps; ++j) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            probe[k] = x[k] + 0.5 * eps * delta[k];
        }
        history.push_back(src.eval(probe));
        const std::size_t h = history.size();
        if (h >= 3) {
            const double a = history[h - 3];
            const double b = history[h - 2];
            const double c = history[h - 1];
            if (std::abs(a - b) <= s.tol && std::abs(b - c) <= s.tol && std::abs(a - c) <= s.tol) {
                return {c, true};
            }
        }
        eps *= s.ratio;
    }
    return {history.back(), false};
}

RegularPointReport regular_point(const FunctionSource& src, std::span<const double> x,
                                 const LimitSchedule& s) {
    RegularPointReport out;
    out.point.assign(x.begin(), x.end());
    const int d = src.dim;
    double sum = 0.0;
    bool all = true;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::vector<int> delta(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) delta[static_cast<std::size_t>(k)] = (mask & (1u << k)) ? 1 : -1;
        const DirectionalLimit lim = directional_limit(src, x, delta, s);
        sum += lim.value;
        all = all && lim.converged;
        out.limits.push_back(lim);
    }
    out.f_star = sum / static_cast<double>(1u << d);
    out.regular = all;
    return out;
}

nlohmann::json to_json(const CoeffTensor& c) {
    nlohmann::json j;
    j["d"] = c.d;
    j["N"] = c.N;
    if (!c.M.empty()) j["M"] = c.M;
    std::vector<double> re(c.c.size()), im(c.c.size());
    for (std::size_t i = 0; i < c.c.size(); ++i) {
        re[i] = c.c[i].real();
        im[i] = c.c[i].imag();
    }
    j["re"] = re;
    j["im"] = im;
    j["layout"] = "row-major lattice, n from -N to N";
    return j;
}

CoeffTensor coeff_tensor_from_json(const nlohmann::json& j) {
    CoeffTensor out;
    out.d = j.at("d").get<int>();
    out.N = j.at("N").get<std::vector<int>>();
    if (j.contains("M")) out.M = j["M"].get<std::vector<int>>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (static_cast<int>(out.N.size()) != out.d || re.size() != im.size() ||
        static_cast<std::int64_t>(re.size()) != out.lattice_size()) {
        throw std::invalid_argument("coeff_tensor_from_json: inconsistent shape");
    }
    out.c.resize(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) out.c[i] = {re[i], im[i]};
    return out;
}

GaussRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));

    // Newton iteration on P_n from the Chebyshev-angle initial guess.
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (b - a) * x + 0.5 * (a + b);
        rule.weights[static_cast<std::size_t>(i)] =
            (b - a) / ((1.0 - x * x) * dp * dp);
    }
    std::reverse(rule.nodes.begin(), rule.nodes.end());
    std::reverse(rule.weights.begin(), rule.weights.end());
    return rule;
}

}  // namespace gvar
