// SPDX-License-Identifier: Apache-2.0
//
// Sampled multivariate functions on rectangular grids: storage, mixed
// differences over index boxes, and axis-subset slicing.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace gvar {

/// A d-dimensional function sampled on a product grid.
///
/// Axes hold strictly increasing coordinates (each with at least two
/// points); values are stored row-major with the last axis fastest.
/// Instances are immutable after construction and safe to share across
/// threads.
class GridFunction {
public:
    GridFunction(std::vector<std::vector<double>> axes, std::vector<double> values);

    int dim() const { return static_cast<int>(axes_.size()); }
    const std::vector<double>& axis(int k) const { return axes_.at(static_cast<std::size_t>(k)); }
    int axis_size(int k) const { return static_cast<int>(axes_.at(static_cast<std::size_t>(k)).size()); }
    std::vector<int> sizes() const;
    std::int64_t node_count() const { return static_cast<std::int64_t>(values_.size()); }

    const std::vector<double>& values() const { return values_; }

    std::int64_t stride(int k) const { return strides_[static_cast<std::size_t>(k)]; }
    std::int64_t flat_index(std::span<const int> idx) const;
    double at(std::span<const int> idx) const { return values_[static_cast<std::size_t>(flat_index(idx))]; }
    double at_flat(std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }

    double max_abs() const;

private:
    std::vector<std::vector<double>> axes_;
    std::vector<double> values_;
    std::vector<std::int64_t> strides_;
};

/// Pointwise evaluator backing analytic test functions. Evaluation must be
/// deterministic: the same point always yields the same value.
struct FunctionSource {
    int dim = 1;
    bool periodic = true;
    std::function<double(std::span<const double>)> eval;

    double operator()(std::span<const double> x) const { return eval(x); }
};

/// One axis of an index box: either a nondegenerate index interval
/// (lo < hi) or a single fixed index.
struct BoxAxis {
    int lo = 0;
    int hi = 0;
    bool is_interval = false;

    static BoxAxis interval(int a, int b) { return BoxAxis{a, b, true}; }
    static BoxAxis fixed(int i) { return BoxAxis{i, i, false}; }
};

/// Index box: per-axis intervals on a subset of axes, fixed indices on the
/// rest. Degenerate intervals (lo == hi) are rejected rather than treated
/// as zero.
struct Box {
    std::vector<BoxAxis> axes;

    std::vector<int> interval_axes() const;
};

/// Sorted subset of the axis indices {0, ..., d-1}.
struct IndexSet {
    std::vector<int> axes;

    static IndexSet of(std::initializer_list<int> a) { return IndexSet{std::vector<int>(a)}; }
    std::vector<int> complement(int d) const;
    int size() const { return static_cast<int>(axes.size()); }
};

/// Mixed difference of f over the box's interval axes, with the remaining
/// coordinates fixed. Generalizes f(b) - f(a): each added interval axis
/// takes a difference of the lower-dimensional value at its two endpoints,
/// outermost along the highest interval axis. Equals the alternating
/// corner sum over the 2^p box corners with sign (-1)^(#lower endpoints),
/// folded axis-by-axis in ascending axis order.
double mixed_difference(const GridFunction& f, const Box& box);

/// Restriction of f to the axes in `alpha`, with the complement axes
/// pinned at `fixed` (indices listed in ascending complement-axis order).
GridFunction slice(const GridFunction& f, const IndexSet& alpha, std::span<const int> fixed);

/// Evaluate src on the product grid spanned by `axes`.
GridFunction sample(const FunctionSource& src, std::vector<std::vector<double>> axes);

nlohmann::json to_json(const GridFunction& f);
GridFunction grid_function_from_json(const nlohmann::json& j);

// --- multi-index utilities -------------------------------------------------

/// Advance a row-major odometer; returns false after the last index.
bool advance_index(std::span<int> idx, std::span<const int> sizes);

/// Number of grid slices transverse to `axis` (product of the other sizes).
std::int64_t slice_count(const GridFunction& f, int axis);

/// Flat offset of slice `s` with the axis coordinate at 0. Slices are
/// numbered row-major over the other axes in ascending axis order.
std::int64_t slice_base(const GridFunction& f, int axis, std::int64_t s);

/// Multi-index of the other axes for slice `s` (ascending axis order).
std::vector<int> decode_slice(const GridFunction& f, int axis, std::int64_t s);

/// Same, transverse to a set of axes: slices enumerate the complement.
std::int64_t complement_slice_count(const GridFunction& f, std::span<const int> alpha);
std::vector<int> decode_complement_slice(const GridFunction& f, std::span<const int> alpha,
                                         std::int64_t s);

}  // namespace gvar
