// SPDX-License-Identifier: Apache-2.0

#include "gvar/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gvar {

GridFunction::GridFunction(std::vector<std::vector<double>> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
    if (axes_.empty()) {
        throw std::invalid_argument("GridFunction: dimension must be >= 1");
    }
    std::int64_t total = 1;
    for (const auto& ax : axes_) {
        if (ax.size() < 2) {
            throw std::invalid_argument("GridFunction: every axis needs >= 2 points");
        }
        for (std::size_t i = 1; i < ax.size(); ++i) {
            if (!(ax[i - 1] < ax[i])) {
                throw std::invalid_argument("GridFunction: axis coordinates must be strictly increasing");
            }
        }
        total *= static_cast<std::int64_t>(ax.size());
    }
    if (total != static_cast<std::int64_t>(values_.size())) {
        throw std::invalid_argument("GridFunction: values size does not match axis sizes");
    }
    strides_.assign(axes_.size(), 1);
    for (int k = static_cast<int>(axes_.size()) - 2; k >= 0; --k) {
        strides_[static_cast<std::size_t>(k)] =
            strides_[static_cast<std::size_t>(k) + 1] *
            static_cast<std::int64_t>(axes_[static_cast<std::size_t>(k) + 1].size());
    }
}

std::vector<int> GridFunction::sizes() const {
    std::vector<int> s(axes_.size());
    for (std::size_t k = 0; k < axes_.size(); ++k) s[k] = static_cast<int>(axes_[k].size());
    return s;
}

std::int64_t GridFunction::flat_index(std::span<const int> idx) const {
    if (idx.size() != axes_.size()) {
        throw std::invalid_argument("GridFunction: index rank mismatch");
    }
    std::int64_t flat = 0;
    for (std::size_t k = 0; k < axes_.size(); ++k) {
        if (idx[k] < 0 || idx[k] >= static_cast<int>(axes_[k].size())) {
            throw std::invalid_argument("GridFunction: index out of range");
        }
        flat += strides_[k] * idx[k];
    }
    return flat;
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<int> Box::interval_axes() const {
    std::vector<int> out;
    for (std::size_t k = 0; k < axes.size(); ++k) {
        if (axes[k].is_interval) out.push_back(static_cast<int>(k));
    }
    return out;
}

std::vector<int> IndexSet::complement(int d) const {
    std::vector<int> out;
    std::size_t p = 0;
    for (int k = 0; k < d; ++k) {
        if (p < axes.size() && axes[p] == k) {
            ++p;
        } else {
            out.push_back(k);
        }
    }
    return out;
}

namespace {

void validate_box(const GridFunction& f, const Box& box) {
    if (static_cast<int>(box.axes.size()) != f.dim()) {
        throw std::invalid_argument("mixed_difference: box rank does not match grid");
    }
    for (int k = 0; k < f.dim(); ++k) {
        const BoxAxis& a = box.axes[static_cast<std::size_t>(k)];
        const int n = f.axis_size(k);
        if (a.lo < 0 || a.lo >= n || a.hi < 0 || a.hi >= n) {
            throw std::invalid_argument("mixed_difference: box index out of range");
        }
        if (a.is_interval && !(a.lo < a.hi)) {
            throw std::invalid_argument("mixed_difference: degenerate interval");
        }
    }
}

double mixed_difference_rec(const GridFunction& f, const Box& box,
                            std::span<const int> interval_axes, int r, std::vector<int>& idx) {
    if (r < 0) return f.at(idx);
    const int ax = interval_axes[static_cast<std::size_t>(r)];
    idx[static_cast<std::size_t>(ax)] = box.axes[static_cast<std::size_t>(ax)].hi;
    const double hi = mixed_difference_rec(f, box, interval_axes, r - 1, idx);
    idx[static_cast<std::size_t>(ax)] = box.axes[static_cast<std::size_t>(ax)].lo;
    const double lo = mixed_difference_rec(f, box, interval_axes, r - 1, idx);
    return hi - lo;
}

}  // namespace

double mixed_difference(const GridFunction& f, const Box& box) {
    validate_box(f, box);
    const std::vector<int> ivs = box.interval_axes();
    if (ivs.empty()) {
        throw std::invalid_argument("mixed_difference: box has no interval axis");
    }
    std::vector<int> idx(static_cast<std::size_t>(f.dim()), 0);
    for (int k = 0; k < f.dim(); ++k) {
        if (!box.axes[static_cast<std::size_t>(k)].is_interval) {
            idx[static_cast<std::size_t>(k)] = box.axes[static_cast<std::size_t>(k)].lo;
        }
    }
    return mixed_difference_rec(f, box, ivs, static_cast<int>(ivs.size()) - 1, idx);
}

GridFunction slice(const GridFunction& f, const IndexSet& alpha, std::span<const int> fixed) {
    if (alpha.axes.empty()) {
        throw std::invalid_argument("slice: empty index set");
    }
    for (std::size_t i = 0; i < alpha.axes.size(); ++i) {
        if (alpha.axes[i] < 0 || alpha.axes[i] >= f.dim() ||
            (i > 0 && alpha.axes[i] <= alpha.axes[i - 1])) {
            throw std::invalid_argument("slice: index set must be a sorted subset of the axes");
        }
    }
    const std::vector<int> comp = alpha.complement(f.dim());
    if (fixed.size() != comp.size()) {
        throw std::invalid_argument("slice: fixed indices do not match the complement");
    }

    std::vector<int> full(static_cast<std::size_t>(f.dim()), 0);
    for (std::size_t i = 0; i < comp.size(); ++i) {
        const int n = f.axis_size(comp[i]);
        if (fixed[i] < 0 || fixed[i] >= n) {
            throw std::invalid_argument("slice: fixed index out of range");
        }
        full[static_cast<std::size_t>(comp[i])] = fixed[i];
    }

    std::vector<std::vector<double>> axes;
    std::vector<int> sub_sizes;
    axes.reserve(alpha.axes.size());
    for (int a : alpha.axes) {
        axes.push_back(f.axis(a));
        sub_sizes.push_back(f.axis_size(a));
    }

    std::vector<double> values;
    values.reserve(1);
    std::vector<int> sub(static_cast<std::size_t>(alpha.size()), 0);
    do {
        for (std::size_t i = 0; i < alpha.axes.size(); ++i) {
            full[static_cast<std::size_t>(alpha.axes[i])] = sub[i];
        }
        values.push_back(f.at(full));
    } while (advance_index(sub, sub_sizes));

    return GridFunction(std::move(axes), std::move(values));
}

GridFunction sample(const FunctionSource& src, std::vector<std::vector<double>> axes) {
    if (static_cast<int>(axes.size()) != src.dim) {
        throw std::invalid_argument("sample: axis count does not match source dimension");
    }
    std::vector<int> sizes(axes.size());
    std::int64_t total = 1;
    for (std::size_t k = 0; k < axes.size(); ++k) {
        sizes[k] = static_cast<int>(axes[k].size());
        total *= sizes[k];
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(total));
    std::vector<int> idx(axes.size(), 0);
    std::vector<double> x(axes.size(), 0.0);
    do {
        for (std::size_t k = 0; k < axes.size(); ++k) x[k] = axes[k][static_cast<std::size_t>(idx[k])];
        values.push_back(src.eval(x));
    } while (advance_index(idx, sizes));
    return GridFunction(std::move(axes), std::move(values));
}

namespace {

nlohmann::json values_to_nested(const GridFunction& f, int axis, std::vector<int>& idx) {
    nlohmann::json arr = nlohmann::json::array();
    const int n = f.axis_size(axis);
    for (int i = 0; i < n; ++i) {
        idx[static_cast<std::size_t>(axis)] = i;
        if (axis + 1 == f.dim()) {
            arr.push_back(f.at(idx));
        } else {
            arr.push_back(values_to_nested(f, axis + 1, idx));
        }
    }
    return arr;
}

void nested_to_values(const nlohmann::json& j, std::span<const int> sizes, int axis,
                      std::vector<double>& out) {
    if (!j.is_array() || static_cast<int>(j.size()) != sizes[static_cast<std::size_t>(axis)]) {
        throw std::invalid_argument("grid_function_from_json: values shape does not match axes");
    }
    for (const auto& item : j) {
        if (axis + 1 == static_cast<int>(sizes.size())) {
            if (!item.is_number()) {
                throw std::invalid_argument("grid_function_from_json: non-numeric value");
            }
            out.push_back(item.get<double>());
        } else {
            nested_to_values(item, sizes, axis + 1, out);
        }
    }
}

}  // namespace

nlohmann::json to_json(const GridFunction& f) {
    nlohmann::json j;
    j["dim"] = f.dim();
    nlohmann::json axes = nlohmann::json::array();
    for (int k = 0; k < f.dim(); ++k) axes.push_back(f.axis(k));
    j["axes"] = axes;
    std::vector<int> idx(static_cast<std::size_t>(f.dim()), 0);
    j["values"] = values_to_nested(f, 0, idx);
    return j;
}

GridFunction grid_function_from_json(const nlohmann::json& j) {
    if (!j.contains("dim") || !j.contains("axes") || !j.contains("values")) {
        throw std::invalid_argument("grid_function_from_json: need dim, axes, values");
    }
    const int d = j["dim"].get<int>();
    auto axes = j["axes"].get<std::vector<std::vector<double>>>();
    if (static_cast<int>(axes.size()) != d) {
        throw std::invalid_argument("grid_function_from_json: dim does not match axes");
    }
    std::vector<int> sizes(axes.size());
    std::int64_t total = 1;
    for (std::size_t k = 0; k < axes.size(); ++k) {
        sizes[k] = static_cast<int>(axes[k].size());
        total *= sizes[k];
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(total));
    nested_to_values(j["values"], sizes, 0, values);
    return GridFunction(std::move(axes), std::move(values));
}

bool advance_index(std::span<int> idx, std::span<const int> sizes) {
    for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k) {
        if (++idx[static_cast<std::size_t>(k)] < sizes[static_cast<std::size_t>(k)]) return true;
        idx[static_cast<std::size_t>(k)] = 0;
    }
    return false;
}

std::int64_t slice_count(const GridFunction& f, int axis) {
    return f.node_count() / f.axis_size(axis);
}

std::int64_t slice_base(const GridFunction& f, int axis, std::int64_t s) {
    std::int64_t base = 0;
    std::int64_t rem = s;
    for (int k = f.dim() - 1; k >= 0; --k) {
        if (k == axis) continue;
        const std::int64_t n = f.axis_size(k);
        base += (rem % n) * f.stride(k);
        rem /= n;
    }
    return base;
}

std::vector<int> decode_slice(const GridFunction& f, int axis, std::int64_t s) {
    std::vector<int> out;
    std::int64_t rem = s;
    std::vector<int> rev;
    for (int k = f.dim() - 1; k >= 0; --k) {
        if (k == axis) continue;
        const std::int64_t n = f.axis_size(k);
        rev.push_back(static_cast<int>(rem % n));
        rem /= n;
    }
    out.assign(rev.rbegin(), rev.rend());
    return out;
}

std::int64_t complement_slice_count(const GridFunction& f, std::span<const int> alpha) {
    std::int64_t total = 1;
    std::size_t p = 0;
    for (int k = 0; k < f.dim(); ++k) {
        if (p < alpha.size() && alpha[p] == k) {
            ++p;
        } else {
            total *= f.axis_size(k);
        }
    }
    return total;
}

std::vector<int> decode_complement_slice(const GridFunction& f, std::span<const int> alpha,
                                         std::int64_t s) {
    std::vector<int> comp;
    std::size_t p = 0;
    for (int k = 0; k < f.dim(); ++k) {
        if (p < alpha.size() && alpha[p] == k) {
            ++p;
        } else {
            comp.push_back(k);
        }
    }
    std::vector<int> rev;
    std::int64_t rem = s;
    for (auto it = comp.rbegin(); it != comp.rend(); ++it) {
        const std::int64_t n = f.axis_size(*it);
        rev.push_back(static_cast<int>(rem % n));
        rem /= n;
    }
    return {rev.rbegin(), rev.rend()};
}

}  // namespace gvar
