// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "gvar/grid_function.hpp"
#include "gvar/sources.hpp"

using namespace gvar;

namespace {

GridFunction product_xy_grid(std::vector<double> xs, std::vector<double> ys) {
    std::vector<double> values;
    for (double x : xs) {
        for (double y : ys) values.push_back(x * y);
    }
    return GridFunction({std::move(xs), std::move(ys)}, std::move(values));
}

GridFunction random_grid(std::uint64_t seed, std::vector<int> sizes) {
    return random_grid_function(
        RandomFunctionSpec{RandomFunctionSpec::Kind::CellwiseUniform, seed, 1.0, 2}, sizes);
}

}  // namespace

TEST_CASE("grid function validates its invariants") {
    CHECK_THROWS_AS(GridFunction({{0.0}}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction({{0.0, 0.0}}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction({{0.0, 1.0}}, {1.0}), std::invalid_argument);
    const GridFunction f({{0.0, 1.0}, {0.0, 0.5, 1.0}}, {1, 2, 3, 4, 5, 6});
    CHECK(f.dim() == 2);
    CHECK(f.axis_size(1) == 3);
    const std::vector<int> idx = {1, 2};
    CHECK(f.at(idx) == 6.0);
}

TEST_CASE("mixed difference of a constant vanishes") {
    const GridFunction f({{0.0, 1.0, 2.0}, {0.0, 1.0}}, std::vector<double>(6, 7.0));
    Box box;
    box.axes = {BoxAxis::interval(0, 2), BoxAxis::interval(0, 1)};
    CHECK(mixed_difference(f, box) == 0.0);
    box.axes = {BoxAxis::interval(1, 2), BoxAxis::fixed(1)};
    CHECK(mixed_difference(f, box) == 0.0);
}

TEST_CASE("mixed difference of x*y over the unit square is 1") {
    const GridFunction f = product_xy_grid({0.0, 1.0}, {0.0, 1.0});
    Box box;
    box.axes = {BoxAxis::interval(0, 1), BoxAxis::interval(0, 1)};
    CHECK(mixed_difference(f, box) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mixed difference input errors") {
    const GridFunction f = product_xy_grid({0.0, 1.0}, {0.0, 1.0});
    Box box;
    box.axes = {BoxAxis::fixed(0), BoxAxis::fixed(1)};
    CHECK_THROWS_AS(mixed_difference(f, box), std::invalid_argument);  // no interval axis
    box.axes = {BoxAxis::interval(0, 0), BoxAxis::fixed(0)};
    CHECK_THROWS_AS(mixed_difference(f, box), std::invalid_argument);  // degenerate interval
    box.axes = {BoxAxis::interval(0, 3), BoxAxis::fixed(0)};
    CHECK_THROWS_AS(mixed_difference(f, box), std::invalid_argument);  // out of range
}

TEST_CASE("recursive mixed difference equals the folded corner sum exactly") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const GridFunction f = random_grid(rng(), {3, 3, 3});
        Box box;
        box.axes.resize(3);
        int intervals = 0;
        for (int k = 0; k < 3; ++k) {
            if (rng() % 2 == 0) {
                const int a = static_cast<int>(rng() % 2);
                box.axes[static_cast<std::size_t>(k)] = BoxAxis::interval(a, a + 1 + static_cast<int>(rng() % (2 - a)));
                ++intervals;
            } else {
                box.axes[static_cast<std::size_t>(k)] = BoxAxis::fixed(static_cast<int>(rng() % 3));
            }
        }
        if (intervals == 0) {
            box.axes[0] = BoxAxis::interval(0, 2);
        }
        CHECK(mixed_difference(f, box) == testing::oracle_corner_sum(f, box));
    }
}

TEST_CASE("mixed difference is additive under splitting an interval axis") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const GridFunction f = random_grid(rng(), {5, 4});
        Box whole;
        whole.axes = {BoxAxis::interval(0, 4), BoxAxis::interval(1, 3)};
        Box left = whole, right = whole;
        left.axes[0] = BoxAxis::interval(0, 2);
        right.axes[0] = BoxAxis::interval(2, 4);
        CHECK(mixed_difference(f, whole) ==
              doctest::Approx(mixed_difference(f, left) + mixed_difference(f, right)).epsilon(1e-12));
    }
}

TEST_CASE("mixed difference over an axis the function ignores is zero") {
    std::vector<double> values;
    const std::vector<double> xs = {0.0, 0.3, 0.7, 1.0};
    for (double x : xs) {
        for (int j = 0; j < 3; ++j) values.push_back(std::sin(x));
    }
    const GridFunction f({xs, {0.0, 0.5, 1.0}}, values);
    Box box;
    box.axes = {BoxAxis::interval(0, 3), BoxAxis::interval(0, 2)};
    CHECK(mixed_difference(f, box) == 0.0);
}

TEST_CASE("slice extracts columns and the identity") {
    const GridFunction f = product_xy_grid({0.0, 0.5, 1.0}, {0.0, 0.5, 1.0});

    const std::vector<int> fixed0 = {0};
    const GridFunction col = slice(f, IndexSet::of({0}), fixed0);
    CHECK(col.dim() == 1);
    for (int i = 0; i < 3; ++i) {
        const std::vector<int> idx = {i};
        const std::vector<int> idx2 = {i, 0};
        CHECK(col.at(idx) == f.at(idx2));
    }

    const GridFunction whole = slice(f, IndexSet::of({0, 1}), {});
    CHECK(whole.values() == f.values());

    CHECK_THROWS_AS(slice(f, IndexSet::of({0}), std::vector<int>{5}), std::invalid_argument);
}

TEST_CASE("slice then mixed difference matches the original box") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const GridFunction f = random_grid(rng(), {4, 3, 3});
        Box box;
        box.axes = {BoxAxis::interval(1, 3), BoxAxis::fixed(2), BoxAxis::interval(0, 2)};
        const std::vector<int> fixed = {2};
        const GridFunction g = slice(f, IndexSet::of({0, 2}), fixed);
        Box sub;
        sub.axes = {BoxAxis::interval(1, 3), BoxAxis::interval(0, 2)};
        CHECK(mixed_difference(f, box) == mixed_difference(g, sub));
    }
}

TEST_CASE("sample evaluates sources on product grids") {
    const GridFunction c = sample(constant_source(2, 3.5), {{0.0, 1.0}, {0.0, 1.0, 2.0}});
    for (double v : c.values()) CHECK(v == 3.5);

    FunctionSource sinsin;
    sinsin.dim = 2;
    sinsin.eval = [](std::span<const double> x) { return std::sin(x[0]) * std::sin(x[1]); };
    const double h = std::numbers::pi / 2;
    const GridFunction g = sample(sinsin, {{0.0, h}, {0.0, h}});
    const std::vector<int> idx = {1, 1};
    CHECK(g.at(idx) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("grid JSON round trip") {
    std::mt19937_64 rng(31);
    const GridFunction f = random_grid(rng(), {3, 4});
    const GridFunction g = grid_function_from_json(to_json(f));
    CHECK(g.dim() == f.dim());
    CHECK(g.values() == f.values());
    CHECK(g.axis(1) == f.axis(1));

    nlohmann::json bad = to_json(f);
    bad["values"][0].erase(0);
    CHECK_THROWS_AS(grid_function_from_json(bad), std::invalid_argument);
}
