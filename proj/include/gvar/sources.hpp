// SPDX-License-Identifier: Apache-2.0
//
// Built-in analytic test sources and seeded random grid functions.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gvar/grid_function.hpp"

namespace gvar {

/// Constant c in d variables.
FunctionSource constant_source(int d, double c);

/// 1D square wave: +1 on (0, pi), -1 on (pi, 2*pi). At the jump points 0
/// and pi the value is the midpoint 0, so grid quadrature sees the same
/// symmetric values the partial sums converge to.
FunctionSource square_wave_source();

/// 2D indicator of the open quadrant (0, pi) x (0, pi), with midpoint
/// values on the jump lines (1/2 on edges, 1/4 at corners).
FunctionSource quadrant_source();

/// Smooth 2D source exp(cos x + cos y) (entire, rapidly decaying spectrum).
FunctionSource smooth_source_2d();

/// Quadrant jump plus a scaled smooth background.
FunctionSource quadrant_smooth_source();

/// Registry lookup: "constant", "square_wave", "quadrant", "smooth",
/// "quadrant_smooth", or "gn:d=D,N=K" for the divergence witness.
FunctionSource parse_source(const std::string& name);

/// Seeded generators for random grid functions. The same spec yields the
/// same GridFunction on every platform (the generator uses its own integer
/// mixing, not distribution objects).
struct RandomFunctionSpec {
    enum class Kind { CellwiseUniform, LowRankSeparable, JumpPlusSmooth };
    Kind kind = Kind::CellwiseUniform;
    std::uint64_t seed = 0;
    double amplitude = 1.0;
    int rank = 2;  // LowRankSeparable only
};

/// Random values on a uniform [0, 2*pi) product grid of the given sizes.
GridFunction random_grid_function(const RandomFunctionSpec& spec, std::span<const int> sizes);

/// Deterministic 64-bit mix, used to derive per-instance seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

}  // namespace gvar
