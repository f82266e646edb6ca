// SPDX-License-Identifier: Apache-2.0

#include "gvar/sources.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gvar/divergence_witness.hpp"

namespace gvar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double x) {
    double t = std::fmod(x, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

// +1 / -1 / 0 square profile with midpoint values at the jumps.
double square_1d(double x) {
    const double t = wrap(x);
    if (t == 0.0 || t == kPi) return 0.0;
    return t < kPi ? 1.0 : -1.0;
}

// Indicator of (0, pi) with midpoint values at the jumps.
double gate_1d(double x) {
    const double t = wrap(x);
    if (t == 0.0 || t == kPi) return 0.5;
    return t < kPi ? 1.0 : 0.0;
}

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double next_unit(std::uint64_t& s) {
    return static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;
}

double next_symmetric(std::uint64_t& s) { return 2.0 * next_unit(s) - 1.0; }

std::vector<std::vector<double>> uniform_axes(std::span<const int> sizes) {
    std::vector<std::vector<double>> axes(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (sizes[k] < 2) throw std::invalid_argument("random_grid_function: sizes must be >= 2");
        axes[k].resize(static_cast<std::size_t>(sizes[k]));
        for (int i = 0; i < sizes[k]; ++i) {
            axes[k][static_cast<std::size_t>(i)] = kTwoPi * i / sizes[k];
        }
    }
    return axes;
}

}  // namespace

FunctionSource constant_source(int d, double c) {
    FunctionSource src;
    src.dim = d;
    src.eval = [c](std::span<const double>) { return c; };
    return src;
}

FunctionSource square_wave_source() {
    FunctionSource src;
    src.dim = 1;
    src.eval = [](std::span<const double> x) { return square_1d(x[0]); };
    return src;
}

FunctionSource quadrant_source() {
    FunctionSource src;
    src.dim = 2;
    src.eval = [](std::span<const double> x) { return gate_1d(x[0]) * gate_1d(x[1]); };
    return src;
}

FunctionSource smooth_source_2d() {
    FunctionSource src;
    src.dim = 2;
    src.eval = [](std::span<const double> x) { return std::exp(std::cos(x[0]) + std::cos(x[1])); };
    return src;
}

FunctionSource quadrant_smooth_source() {
    FunctionSource src;
    src.dim = 2;
    src.eval = [](std::span<const double> x) {
        return gate_1d(x[0]) * gate_1d(x[1]) +
               0.25 * std::exp(std::cos(x[0]) + std::cos(x[1]));
    };
    return src;
}

FunctionSource parse_source(const std::string& name) {
    if (name == "constant") return constant_source(2, 1.0);
    if (name == "square_wave") return square_wave_source();
    if (name == "quadrant") return quadrant_source();
    if (name == "smooth") return smooth_source_2d();
    if (name == "quadrant_smooth") return quadrant_smooth_source();
    if (name.rfind("gn:", 0) == 0) {
        int d = 0;
        int N = 0;
        const std::string rest = name.substr(3);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            const std::size_t comma = rest.find(',', pos);
            const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("source spec: expected key=value");
            const std::string key = item.substr(0, eq);
            const int val = std::stoi(item.substr(eq + 1));
            if (key == "d") d = val;
            else if (key == "N") N = val;
            else throw std::invalid_argument("source spec: unknown key '" + key + "'");
            pos = comma == std::string::npos ? rest.size() : comma + 1;
        }
        if (d < 1 || N < 2) throw std::invalid_argument("source spec: gn requires d>=1, N>=2");
        return witness_g(d, N);
    }
    throw std::invalid_argument("unknown source '" + name + "'");
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t s = base ^ (0x9e3779b97f4a7c15ull * (salt + 1));
    return splitmix64(s);
}

GridFunction random_grid_function(const RandomFunctionSpec& spec, std::span<const int> sizes) {
    std::vector<std::vector<double>> axes = uniform_axes(sizes);
    std::int64_t total = 1;
    for (int n : sizes) total *= n;
    std::vector<double> values(static_cast<std::size_t>(total), 0.0);
    std::uint64_t state = spec.seed;

    switch (spec.kind) {
        case RandomFunctionSpec::Kind::CellwiseUniform: {
            for (auto& v : values) v = spec.amplitude * next_symmetric(state);
            break;
        }
        case RandomFunctionSpec::Kind::LowRankSeparable: {
            const int rank = std::max(1, spec.rank);
            std::vector<std::vector<std::vector<double>>> factors(
                static_cast<std::size_t>(rank));
            for (int r = 0; r < rank; ++r) {
                auto& per_axis = factors[static_cast<std::size_t>(r)];
                per_axis.resize(sizes.size());
                for (std::size_t k = 0; k < sizes.size(); ++k) {
                    per_axis[k].resize(static_cast<std::size_t>(sizes[k]));
                    for (auto& v : per_axis[k]) v = next_symmetric(state);
                }
            }
            std::vector<int> idx(sizes.size(), 0);
            std::vector<int> sz(sizes.begin(), sizes.end());
            std::size_t flat = 0;
            do {
                double acc = 0.0;
                for (int r = 0; r < rank; ++r) {
                    double prod = 1.0;
                    for (std::size_t k = 0; k < sizes.size(); ++k) {
                        prod *= factors[static_cast<std::size_t>(r)][k][static_cast<std::size_t>(idx[k])];
                    }
                    acc += prod;
                }
                values[flat++] = spec.amplitude * acc / rank;
            } while (advance_index(idx, sz));
            break;
        }
        case RandomFunctionSpec::Kind::JumpPlusSmooth: {
            // Low-frequency trigonometric background plus one axis-aligned step.
            std::vector<double> freq_amp(3);
            for (auto& a : freq_amp) a = next_symmetric(state);
            const int jump_axis = static_cast<int>(splitmix64(state) % sizes.size());
            const int cut = 1 + static_cast<int>(splitmix64(state) %
                                                 static_cast<std::uint64_t>(sizes[static_cast<std::size_t>(jump_axis)] - 1));
            const double height = next_symmetric(state);
            std::vector<int> idx(sizes.size(), 0);
            std::vector<int> sz(sizes.begin(), sizes.end());
            std::size_t flat = 0;
            do {
                double acc = 0.0;
                for (std::size_t k = 0; k < sizes.size(); ++k) {
                    const double xk = axes[k][static_cast<std::size_t>(idx[k])];
                    acc += freq_amp[0] * std::cos(xk) + freq_amp[1] * std::sin(xk) +
                           freq_amp[2] * std::cos(2.0 * xk);
                }
                if (idx[static_cast<std::size_t>(jump_axis)] >= cut) acc += height;
                values[flat++] = spec.amplitude * acc;
            } while (advance_index(idx, sz));
            break;
        }
    }
    return GridFunction(std::move(axes), std::move(values));
}

}  // namespace gvar
