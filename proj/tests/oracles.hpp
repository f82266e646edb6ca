// SPDX-License-Identifier: Apache-2.0
//
// Independent brute-force oracles used only by the tests. These re-derive
// every supremum by direct enumeration and direct scoring, sharing no code
// with the library paths they check.

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "gvar/grid_function.hpp"

namespace gvar::testing {

/// Alternating corner sum of f over the box: enumerate the 2^p corners by
/// bitmask (sign = (-1)^(#lower endpoints)) and fold differences
/// axis-by-axis in ascending axis order, which is the fixed summation
/// order the recursive definition induces.
double oracle_corner_sum(const GridFunction& f, const Box& box);

/// Supremum over interval families on n points of the rearranged score
/// sum_k w_(k) / mu_k, scored directly per family (descending weights,
/// ascending sort of lambda_1..m). All candidate intervals participate.
double oracle_family_supremum(int n, const std::function<double(int, int)>& w,
                              const std::vector<double>& lambda);

/// Max over families of at most k disjoint intervals of the plain weight
/// sum (no lambda), by enumeration.
double oracle_disjoint_sum(int n, const std::function<double(int, int)>& w, int k);

/// Per-term-max interval weight along an axis, by explicit iteration over
/// every choice of the other coordinates.
double oracle_sharp_weight(const GridFunction& f, int axis, int a, int b);

/// Sum over axes of the per-term-max family supremum.
double oracle_sharp_variation(const GridFunction& f, const std::vector<double>& lambda);

/// Per-axis fixed-slice supremum (max over slices of the 1D variation of
/// the slice), summed over axes.
double oracle_partial_variation(const GridFunction& f, const std::vector<double>& lambda);

/// Max over slices of the 1D fixed-slice supremum for one axis.
double oracle_partial_axis(const GridFunction& f, int axis, const std::vector<double>& lambda);
double oracle_sharp_axis(const GridFunction& f, int axis, const std::vector<double>& lambda);

/// Index-set variation by full enumeration: per-axis families, ALL
/// orderings of EVERY axis, supremum over the fixed complement slices.
double oracle_index_set_variation(const GridFunction& f, const std::vector<int>& alpha,
                                  const std::vector<std::vector<double>>& lambdas);

/// Sum over all nonempty axis subsets of the index-set oracle.
double oracle_total_variation(const GridFunction& f, const std::vector<double>& lambda);

/// Supremum over families of pairwise interior-disjoint grid rectangles
/// (d = 2) of the rearranged |mixed difference| score.
double oracle_rectangle_variation(const GridFunction& f, const std::vector<double>& lambda);

}  // namespace gvar::testing
