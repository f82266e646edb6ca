// SPDX-License-Identifier: Apache-2.0
//
// Weighted-variation functionals of grid functions.
//
// Everything here reduces to one 1D kernel. An axis carries a weight
// w(I) >= 0 for every candidate index interval I = (a, b); a family of
// interior-disjoint intervals of size m scores
//
//     sum_k  w_(k) / mu_k,
//
// where w_(k) are the family weights sorted descending and mu is the
// ascending sort of the first m sequence values lambda_1..lambda_m (the
// rearrangement-optimal assignment; collections may be ordered
// arbitrarily, so any pairing of intervals with positions 1..m is
// admissible). The kernel brackets the supremum of this score over all
// families:
//
//   lower:  best of (a) each max-weight family from the cardinality-
//            constrained disjoint-sum DP, re-scored as above, and (b) full
//            enumeration when the axis is small enough (then exact);
//   upper:  Abel bound  max_m [ sum_{k<m} (c_k - c_{k+1}) T_k + c_m T_m ]
//            with c_k = 1/mu_k and T_k the DP optima, or lower itself when
//            enumeration ran.
//
// The per-axis functionals differ only in how the axis weights are built:
// fixed-slice weights (one slice serves every term) give the partial
// variation, per-term-max weights (each term may pick its own slice of
// the other variables) give the #-variation. Multi-axis index-set
// variation, rectangle variation, and their compositions reuse the same
// scoring.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gvar/grid_function.hpp"
#include "gvar/lambda_seq.hpp"

namespace gvar {

/// Ordered family of interior-disjoint index intervals on one axis
/// (b_i <= a_{i+1}; shared endpoints allowed).
struct IntervalFamily {
    int axis = 0;
    std::vector<std::pair<int, int>> intervals;

    int size() const { return static_cast<int>(intervals.size()); }
};

/// Weights for every candidate interval on one axis, plus the slice that
/// realized each weight (used for witness reporting).
struct AxisWeights {
    enum class Kind { FixedSlice, PerTermMax };

    int axis = 0;
    int n = 0;  // grid points on the axis
    Kind kind = Kind::PerTermMax;
    std::vector<double> w;                  // n*n, entry a*n+b for a < b
    std::vector<std::int64_t> arg_slice;    // slice achieving w (PerTermMax) or the fixed slice
    std::vector<int> other_sizes;           // sizes of the transverse axes (slice decoding)

    double at(int a, int b) const { return w[static_cast<std::size_t>(a) * n + b]; }
    std::int64_t slice_of(int a, int b) const {
        return arg_slice[static_cast<std::size_t>(a) * n + b];
    }
};

/// Certificate for a supremum-type functional: lower <= value <= upper,
/// upper may be +infinity when no certified bound exists; exact implies
/// lower == upper.
struct VariationBracket {
    double lower = 0.0;
    double upper = 0.0;
    bool exact = true;

    bool upper_finite() const;
};

/// Sum of brackets (lower parts and upper parts add; +inf propagates).
VariationBracket operator+(const VariationBracket& a, const VariationBracket& b);

/// Enumeration caps: grids at or below the cap are solved by exhaustive
/// enumeration (exact); above it the kernel returns certified brackets
/// (1D) or a coordinate-ascent lower bound with an infinite upper
/// (multi-axis, rectangles).
struct VariationParams {
    int exact_cap_1d = 12;     // points per axis, 1D kernel
    int exact_cap_multi = 5;   // points per axis, |alpha| >= 2 enumeration
    int exact_cap_rect = 4;    // points per axis, rectangle families
    int ascent_max_rounds = 16;
};

/// Result of the 1D kernel on one axis: bracket plus the family achieving
/// the lower bound. `term_slices` lists, per interval (same order as
/// `family.intervals`), the grid indices of the other axes where the
/// weight was attained; empty for fixed-slice or 1D inputs.
struct AxisVariation {
    VariationBracket bracket;
    IntervalFamily family;
    std::vector<std::vector<int>> term_slices;
    std::vector<int> fixed_point;  // argmax slice (fixed-slice functionals only)
};

/// Per-axis functional: one kernel result per axis plus their sum.
struct PerAxisVariation {
    std::vector<AxisVariation> axes;
    VariationBracket total;
};

struct IndexSetVariation {
    VariationBracket bracket;
    std::vector<IntervalFamily> families;  // per axis of alpha, in position order
    std::vector<int> fixed_point;          // argmax indices of the complement axes
};

struct TotalVariation {
    std::vector<std::pair<IndexSet, VariationBracket>> terms;  // nonempty alpha, mask order
    VariationBracket total;
};

struct RectangleVariation {
    VariationBracket bracket;
    std::vector<std::array<int, 4>> rects;  // (x_lo, x_hi, y_lo, y_hi) index rectangles
};

// --- weights -----------------------------------------------------------------

/// w(I) = max over all grid choices of the other coordinates of the
/// absolute first difference of f over I along `axis`.
AxisWeights per_term_max_weights(const GridFunction& f, int axis);

/// w(I) = absolute first difference within the one given slice.
AxisWeights fixed_slice_weights(const GridFunction& f, int axis, std::int64_t slice);

/// Single per-term-max weight (convenience over per_term_max_weights).
double sharp_interval_weight(const GridFunction& f, int axis, std::pair<int, int> I);

// --- 1D kernel ---------------------------------------------------------------

/// T_k and witness families for k = 1..n-1 (max sum of at most k
/// interior-disjoint interval weights). Zero-weight intervals are pruned
/// from the DP candidates; they cannot change any T_k. Ties prefer
/// earlier-ending, earlier-starting intervals, so witnesses are
/// deterministic.
struct DisjointSums {
    std::vector<double> best;               // best[k], k = 1..n-1 (best[0] unused = 0)
    std::vector<IntervalFamily> witness;    // parallel
};
DisjointSums best_disjoint_sums(const AxisWeights& w);

/// T_k alone, with optional witness. k must satisfy 1 <= k <= n-1.
double best_disjoint_sum(const AxisWeights& w, int k, IntervalFamily* family = nullptr);

/// Rearrangement-optimal score of a fixed multiset of weights:
/// descending weights paired with the ascending sort of lambda_1..m.
double family_score(std::span<const double> weights, const LambdaSeq& lambda);

/// The 1D kernel described in the header comment.
AxisVariation axis_variation(const AxisWeights& w, const LambdaSeq& lambda,
                             const VariationParams& p = {});

// --- functionals ---------------------------------------------------------------

/// Per-axis #-variation (per-term-max weights) and its total.
PerAxisVariation sharp_variation(const GridFunction& f, const LambdaSeq& lambda,
                                 const VariationParams& p = {});

/// Per-axis partial variation: for each axis the supremum over one fixed
/// slice of the 1D variation of that slice; total over axes.
PerAxisVariation partial_variation(const GridFunction& f, const LambdaSeq& lambda,
                                   const VariationParams& p = {});

/// Variation with respect to an index set alpha: supremum over the fixed
/// complement variables of the multi-axis family sum
/// sum |f(I_{i_1} x ... x I_{i_p}, fixed)| / (lambda_{i_1} ... lambda_{i_p}).
/// |alpha| = 1 delegates to the partial-variation machinery. For
/// |alpha| >= 2 the result is exact by enumeration over per-axis families
/// and orderings when every alpha-axis size is at most exact_cap_multi;
/// otherwise a coordinate-ascent lower bound with upper = +infinity.
/// `lambdas` has one sequence per axis of alpha.
IndexSetVariation index_set_variation(const GridFunction& f, const IndexSet& alpha,
                                      std::span<const LambdaSeq> lambdas,
                                      const VariationParams& p = {});

/// Same sequence on every axis of alpha.
IndexSetVariation index_set_variation(const GridFunction& f, const IndexSet& alpha,
                                      const LambdaSeq& lambda, const VariationParams& p = {});

/// Sum of index-set variations over all nonempty subsets of the axes.
TotalVariation total_variation(const GridFunction& f, const LambdaSeq& lambda,
                               const VariationParams& p = {});

/// 2D variation over families of pairwise interior-disjoint axis-aligned
/// grid rectangles of |mixed difference| / lambda_k, rearrangement-optimal.
/// Exact by enumeration up to exact_cap_rect points per axis, else a
/// greedy lower bound with upper = +infinity.
RectangleVariation rectangle_variation(const GridFunction& f, const LambdaSeq& lambda,
                                       const VariationParams& p = {});

/// Largest sum of n interior-disjoint first differences along `axis`,
/// each difference taking its own worst-case slice of the other
/// variables. Exact; nondecreasing in n. Requires 1 <= n <= axis size - 1.
double sharp_sum(const GridFunction& f, int axis, int n);

/// Index-set variation with the k-th sequence of alpha tail-shifted by
/// n = 1..n_max (shift 1 is the unshifted value). The caller inspects the
/// decay toward zero.
std::vector<VariationBracket> continuity_profile(const GridFunction& f, const LambdaSeq& lambda,
                                                 const IndexSet& alpha, int k, int n_max,
                                                 const VariationParams& p = {});

/// #-variation of src sampled on an m-per-axis grid strictly inside the
/// open corner box (x_s, x_s + eps * delta_s). delta entries are +-1.
PerAxisVariation local_sharp_variation(const FunctionSource& src, const LambdaSeq& lambda,
                                       std::span<const double> x, double eps,
                                       std::span<const int> delta, int m,
                                       const VariationParams& p = {});

/// Same on the closed symmetric box [x_s - eps, x_s + eps].
PerAxisVariation local_sharp_variation_symmetric(const FunctionSource& src,
                                                 const LambdaSeq& lambda,
                                                 std::span<const double> x, double eps, int m,
                                                 const VariationParams& p = {});

}  // namespace gvar
