// SPDX-License-Identifier: Apache-2.0

#include "gvar/variation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gvar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_axis(const GridFunction& f, int axis) {
    if (axis < 0 || axis >= f.dim()) throw std::invalid_argument("variation: axis out of range");
}

std::vector<int> transverse_sizes(const GridFunction& f, int axis) {
    std::vector<int> out;
    for (int k = 0; k < f.dim(); ++k) {
        if (k != axis) out.push_back(f.axis_size(k));
    }
    return out;
}

std::vector<int> decode_mixed_radix(std::int64_t s, std::span<const int> sizes) {
    std::vector<int> rev;
    std::int64_t rem = s;
    for (auto it = sizes.rbegin(); it != sizes.rend(); ++it) {
        rev.push_back(static_cast<int>(rem % *it));
        rem /= *it;
    }
    return {rev.rbegin(), rev.rend()};
}

// Precomputes the ascending sorts of lambda_1..m for every m up to max_m,
// so repeated family scoring avoids re-sorting the sequence values.
class FamilyScorer {
public:
    FamilyScorer(const LambdaSeq& lambda, int max_m) {
        sorted_prefix_.resize(static_cast<std::size_t>(max_m) + 1);
        std::vector<double> cur;
        for (int m = 1; m <= max_m; ++m) {
            const double v = lambda(m);
            cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
            sorted_prefix_[static_cast<std::size_t>(m)] = cur;
        }
    }

    // Scores weights already sorted descending.
    double score_sorted(std::span<const double> desc) const {
        const std::size_t m = desc.size();
        if (m == 0) return 0.0;
        const auto& mu = sorted_prefix_[m];
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) s += desc[k] / mu[k];
        return s;
    }

    double score(std::vector<double> weights) const {
        std::sort(weights.begin(), weights.end(), std::greater<>());
        return score_sorted(weights);
    }

    const std::vector<double>& sorted_lambda(int m) const {
        return sorted_prefix_[static_cast<std::size_t>(m)];
    }

    int max_m() const { return static_cast<int>(sorted_prefix_.size()) - 1; }

private:
    std::vector<std::vector<double>> sorted_prefix_;
};

}  // namespace

bool VariationBracket::upper_finite() const { return std::isfinite(upper); }

VariationBracket operator+(const VariationBracket& a, const VariationBracket& b) {
    VariationBracket out;
    out.lower = a.lower + b.lower;
    out.upper = a.upper + b.upper;
    out.exact = a.exact && b.exact;
    return out;
}

AxisWeights per_term_max_weights(const GridFunction& f, int axis) {
    check_axis(f, axis);
    const int n = f.axis_size(axis);
    const std::int64_t S = slice_count(f, axis);
    const std::int64_t stride = f.stride(axis);

    AxisWeights out;
    out.axis = axis;
    out.n = n;
    out.kind = AxisWeights::Kind::PerTermMax;
    out.w.assign(static_cast<std::size_t>(n) * n, 0.0);
    out.arg_slice.assign(static_cast<std::size_t>(n) * n, 0);
    out.other_sizes = transverse_sizes(f, axis);

    std::vector<double> col(static_cast<std::size_t>(n));
    for (std::int64_t s = 0; s < S; ++s) {
        const std::int64_t base = slice_base(f, axis, s);
        for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = f.at_flat(base + i * stride);
        for (int a = 0; a + 1 < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                const double diff = std::abs(col[static_cast<std::size_t>(b)] - col[static_cast<std::size_t>(a)]);
                const std::size_t at = static_cast<std::size_t>(a) * n + b;
                if (diff > out.w[at]) {
                    out.w[at] = diff;
                    out.arg_slice[at] = s;
                }
            }
        }
    }
    return out;
}

AxisWeights fixed_slice_weights(const GridFunction& f, int axis, std::int64_t s) {
    check_axis(f, axis);
    if (s < 0 || s >= slice_count(f, axis)) {
        throw std::invalid_argument("fixed_slice_weights: slice out of range");
    }
    const int n = f.axis_size(axis);
    const std::int64_t stride = f.stride(axis);
    const std::int64_t base = slice_base(f, axis, s);

    AxisWeights out;
    out.axis = axis;
    out.n = n;
    out.kind = AxisWeights::Kind::FixedSlice;
    out.w.assign(static_cast<std::size_t>(n) * n, 0.0);
    out.arg_slice.assign(static_cast<std::size_t>(n) * n, s);
    out.other_sizes = transverse_sizes(f, axis);

    std::vector<double> col(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = f.at_flat(base + i * stride);
    for (int a = 0; a + 1 < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            out.w[static_cast<std::size_t>(a) * n + b] =
                std::abs(col[static_cast<std::size_t>(b)] - col[static_cast<std::size_t>(a)]);
        }
    }
    return out;
}

double sharp_interval_weight(const GridFunction& f, int axis, std::pair<int, int> I) {
    check_axis(f, axis);
    const int n = f.axis_size(axis);
    if (I.first < 0 || I.second >= n || !(I.first < I.second)) {
        throw std::invalid_argument("sharp_interval_weight: invalid interval");
    }
    const std::int64_t S = slice_count(f, axis);
    const std::int64_t stride = f.stride(axis);
    double best = 0.0;
    for (std::int64_t s = 0; s < S; ++s) {
        const std::int64_t base = slice_base(f, axis, s);
        best = std::max(best, std::abs(f.at_flat(base + I.second * stride) -
                                       f.at_flat(base + I.first * stride)));
    }
    return best;
}

DisjointSums best_disjoint_sums(const AxisWeights& w) {
    const int n = w.n;
    const int kmax = n - 1;

    // Candidates with positive weight, grouped by right endpoint. Zero
    // weights never change an unweighted maximum sum, so they are pruned.
    std::vector<std::vector<std::pair<int, double>>> ending(static_cast<std::size_t>(n));
    for (int b = 1; b < n; ++b) {
        for (int a = 0; a < b; ++a) {
            const double wt = w.at(a, b);
            if (wt > 0.0) ending[static_cast<std::size_t>(b)].emplace_back(a, wt);
        }
    }

    std::vector<std::vector<double>> dp(static_cast<std::size_t>(kmax) + 1,
                                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
    std::vector<std::vector<int>> choice(static_cast<std::size_t>(kmax) + 1,
                                         std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int j = 1; j <= kmax; ++j) {
        for (int m = 1; m < n; ++m) {
            double best = dp[static_cast<std::size_t>(j)][static_cast<std::size_t>(m - 1)];
            int ch = -1;  // carry: ties prefer earlier-ending intervals
            for (const auto& [a, wt] : ending[static_cast<std::size_t>(m)]) {
                const double v = dp[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(a)] + wt;
                if (v > best) {
                    best = v;
                    ch = a;
                }
            }
            dp[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] = best;
            choice[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] = ch;
        }
    }

    DisjointSums out;
    out.best.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
    out.witness.assign(static_cast<std::size_t>(kmax) + 1, IntervalFamily{w.axis, {}});
    for (int k = 1; k <= kmax; ++k) {
        out.best[static_cast<std::size_t>(k)] = dp[static_cast<std::size_t>(k)][static_cast<std::size_t>(n - 1)];
        std::vector<std::pair<int, int>> fam;
        int j = k;
        int m = n - 1;
        while (m > 0 && j > 0) {
            const int c = choice[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
            if (c < 0) {
                --m;
            } else {
                fam.emplace_back(c, m);
                m = c;
                --j;
            }
        }
        std::reverse(fam.begin(), fam.end());
        out.witness[static_cast<std::size_t>(k)].intervals = std::move(fam);
    }
    return out;
}

double best_disjoint_sum(const AxisWeights& w, int k, IntervalFamily* family) {
    if (k < 1 || k > w.n - 1) throw std::invalid_argument("best_disjoint_sum: k out of range");
    const DisjointSums sums = best_disjoint_sums(w);
    if (family) *family = sums.witness[static_cast<std::size_t>(k)];
    return sums.best[static_cast<std::size_t>(k)];
}

double family_score(std::span<const double> weights, const LambdaSeq& lambda) {
    const int m = static_cast<int>(weights.size());
    if (m == 0) return 0.0;
    std::vector<double> w(weights.begin(), weights.end());
    std::sort(w.begin(), w.end(), std::greater<>());
    std::vector<double> mu = lambda.first(m);
    std::sort(mu.begin(), mu.end());
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += w[static_cast<std::size_t>(k)] / mu[static_cast<std::size_t>(k)];
    return s;
}

namespace {

struct BestFamily {
    double score = 0.0;
    std::vector<std::pair<int, int>> intervals;
};

// Exhaustive supremum over interval families on n points. All candidate
// intervals participate, including zero-weight ones: under a non-monotone
// sequence a zero-weight term still enlarges the pool of usable lambda
// values, so dropping them could undercount the supremum.
BestFamily enumerate_axis_families(const AxisWeights& w, const FamilyScorer& scorer) {
    const int n = w.n;
    BestFamily best;
    std::vector<std::pair<int, int>> cur;
    std::vector<double> curw;

    std::function<void(int)> rec = [&](int start) {
        for (int a = start; a + 1 < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                cur.emplace_back(a, b);
                curw.push_back(w.at(a, b));
                const double s = scorer.score(curw);
                if (s > best.score) {
                    best.score = s;
                    best.intervals = cur;
                }
                rec(b);
                cur.pop_back();
                curw.pop_back();
            }
        }
    };
    rec(0);
    return best;
}

double abel_upper_bound(std::span<const double> T, const FamilyScorer& scorer, int kmax) {
    double best = 0.0;
    for (int m = 1; m <= kmax; ++m) {
        const auto& mu = scorer.sorted_lambda(m);
        double U = 0.0;
        for (int k = 1; k < m; ++k) {
            U += (1.0 / mu[static_cast<std::size_t>(k - 1)] - 1.0 / mu[static_cast<std::size_t>(k)]) *
                 T[static_cast<std::size_t>(k)];
        }
        U += (1.0 / mu[static_cast<std::size_t>(m - 1)]) * T[static_cast<std::size_t>(m)];
        best = std::max(best, U);
    }
    return best;
}

void attach_term_slices(AxisVariation& out, const AxisWeights& w) {
    if (w.kind != AxisWeights::Kind::PerTermMax || w.other_sizes.empty()) return;
    out.term_slices.clear();
    for (const auto& [a, b] : out.family.intervals) {
        out.term_slices.push_back(decode_mixed_radix(w.slice_of(a, b), w.other_sizes));
    }
}

}  // namespace

AxisVariation axis_variation(const AxisWeights& w, const LambdaSeq& lambda,
                             const VariationParams& p) {
    AxisVariation out;
    out.family.axis = w.axis;

    const int n = w.n;
    const int kmax = n - 1;
    if (kmax < 1) throw std::invalid_argument("axis_variation: axis needs >= 2 points");

    const DisjointSums sums = best_disjoint_sums(w);
    if (sums.best[static_cast<std::size_t>(kmax)] == 0.0) {
        out.bracket = VariationBracket{0.0, 0.0, true};
        return out;
    }

    const FamilyScorer scorer(lambda, kmax);

    if (n <= p.exact_cap_1d) {
        const BestFamily best = enumerate_axis_families(w, scorer);
        out.bracket = VariationBracket{best.score, best.score, true};
        out.family.intervals = best.intervals;
    } else {
        double lower = 0.0;
        int best_k = 0;
        for (int k = 1; k <= kmax; ++k) {
            std::vector<double> weights;
            weights.reserve(sums.witness[static_cast<std::size_t>(k)].intervals.size());
            for (const auto& [a, b] : sums.witness[static_cast<std::size_t>(k)].intervals) {
                weights.push_back(w.at(a, b));
            }
            const double s = scorer.score(std::move(weights));
            if (s > lower) {
                lower = s;
                best_k = k;
            }
        }
        out.bracket.lower = lower;
        out.bracket.upper = abel_upper_bound(sums.best, scorer, kmax);
        out.bracket.exact = false;
        if (best_k > 0) out.family.intervals = sums.witness[static_cast<std::size_t>(best_k)].intervals;
    }

    attach_term_slices(out, w);
    return out;
}

PerAxisVariation sharp_variation(const GridFunction& f, const LambdaSeq& lambda,
                                 const VariationParams& p) {
    PerAxisVariation out;
    for (int axis = 0; axis < f.dim(); ++axis) {
        out.axes.push_back(axis_variation(per_term_max_weights(f, axis), lambda, p));
    }
    out.total = VariationBracket{0.0, 0.0, true};
    for (const auto& a : out.axes) out.total = out.total + a.bracket;
    return out;
}

PerAxisVariation partial_variation(const GridFunction& f, const LambdaSeq& lambda,
                                   const VariationParams& p) {
    PerAxisVariation out;
    for (int axis = 0; axis < f.dim(); ++axis) {
        const std::int64_t S = slice_count(f, axis);
        AxisVariation best;
        best.bracket = VariationBracket{0.0, 0.0, true};
        double upper_max = 0.0;
        bool all_exact = true;
        std::int64_t best_slice = 0;
        for (std::int64_t s = 0; s < S; ++s) {
            AxisVariation cand = axis_variation(fixed_slice_weights(f, axis, s), lambda, p);
            all_exact = all_exact && cand.bracket.exact;
            upper_max = std::max(upper_max, cand.bracket.upper);
            if (s == 0 || cand.bracket.lower > best.bracket.lower) {
                best = std::move(cand);
                best_slice = s;
            }
        }
        best.bracket.upper = all_exact ? best.bracket.lower : upper_max;
        best.bracket.exact = all_exact;
        best.fixed_point = decode_slice(f, axis, best_slice);
        out.axes.push_back(std::move(best));
    }
    out.total = VariationBracket{0.0, 0.0, true};
    for (const auto& a : out.axes) out.total = out.total + a.bracket;
    return out;
}

namespace {

// |mixed difference| of the product box built from per-axis intervals on
// the alpha axes, other coordinates pinned at `idx` (modified in place and
// restored by the caller loop).
double abs_box_difference(const GridFunction& f, std::span<const int> alpha_axes,
                          std::span<const std::pair<int, int>> intervals, std::vector<int>& idx,
                          int r) {
    if (r < 0) return f.at(idx);
    const int ax = alpha_axes[static_cast<std::size_t>(r)];
    idx[static_cast<std::size_t>(ax)] = intervals[static_cast<std::size_t>(r)].second;
    const double hi = abs_box_difference(f, alpha_axes, intervals, idx, r - 1);
    idx[static_cast<std::size_t>(ax)] = intervals[static_cast<std::size_t>(r)].first;
    const double lo = abs_box_difference(f, alpha_axes, intervals, idx, r - 1);
    return hi - lo;
}

double abs_box_difference(const GridFunction& f, std::span<const int> alpha_axes,
                          std::span<const std::pair<int, int>> intervals, std::vector<int>& idx) {
    return std::abs(
        abs_box_difference(f, alpha_axes, intervals, idx, static_cast<int>(alpha_axes.size()) - 1));
}

// All nonempty interval families on n points, in lexicographic order.
std::vector<std::vector<std::pair<int, int>>> all_families(int n) {
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> cur;
    std::function<void(int)> rec = [&](int start) {
        for (int a = start; a + 1 < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                cur.emplace_back(a, b);
                out.push_back(cur);
                rec(b);
                cur.pop_back();
            }
        }
    };
    rec(0);
    return out;
}

struct JointResult {
    double score = 0.0;
    std::vector<IntervalFamily> families;  // position order per axis
};

// Places intervals at positions so that the t-th largest row value divides
// by the t-th smallest of lambda_1..m; returns the position-ordered family.
std::vector<std::pair<int, int>> position_order(std::span<const std::pair<int, int>> intervals,
                                                std::span<const double> values,
                                                std::span<const double> lam_first_m) {
    const int m = static_cast<int>(intervals.size());
    std::vector<int> by_value(static_cast<std::size_t>(m));
    std::iota(by_value.begin(), by_value.end(), 0);
    std::stable_sort(by_value.begin(), by_value.end(), [&](int i, int j) {
        return values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(j)];
    });
    std::vector<int> by_lambda(static_cast<std::size_t>(m));
    std::iota(by_lambda.begin(), by_lambda.end(), 0);
    std::stable_sort(by_lambda.begin(), by_lambda.end(), [&](int i, int j) {
        return lam_first_m[static_cast<std::size_t>(i)] < lam_first_m[static_cast<std::size_t>(j)];
    });
    std::vector<std::pair<int, int>> ordered(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) {
        ordered[static_cast<std::size_t>(by_lambda[static_cast<std::size_t>(t)])] =
            intervals[static_cast<std::size_t>(by_value[static_cast<std::size_t>(t)])];
    }
    return ordered;
}

// Exact supremum for one fixed complement slice: enumerate per-axis
// families, enumerate orderings of all axes but the last explicitly, and
// order the last axis by the rearrangement pairing (optimal once the other
// orderings are fixed, since its divisor factors out of each row sum).
JointResult joint_exact(const GridFunction& f, const IndexSet& alpha,
                        std::span<const LambdaSeq> lambdas, std::span<const int> fixed) {
    const int p = alpha.size();
    const std::vector<int> comp = alpha.complement(f.dim());
    std::vector<int> idx(static_cast<std::size_t>(f.dim()), 0);
    for (std::size_t i = 0; i < comp.size(); ++i) idx[static_cast<std::size_t>(comp[i])] = fixed[i];

    std::vector<std::vector<std::vector<std::pair<int, int>>>> fams;
    std::vector<std::vector<double>> lam_vals;  // lambda_1..n-1 per axis
    for (int j = 0; j < p; ++j) {
        const int n = f.axis_size(alpha.axes[static_cast<std::size_t>(j)]);
        fams.push_back(all_families(n));
        lam_vals.push_back(lambdas[static_cast<std::size_t>(j)].first(n - 1));
    }

    JointResult best;
    std::vector<int> combo(static_cast<std::size_t>(p), 0);
    std::vector<int> combo_sizes(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) combo_sizes[static_cast<std::size_t>(j)] = static_cast<int>(fams[static_cast<std::size_t>(j)].size());

    std::vector<std::pair<int, int>> box(static_cast<std::size_t>(p));
    do {
        std::vector<const std::vector<std::pair<int, int>>*> family(static_cast<std::size_t>(p));
        std::vector<int> m(static_cast<std::size_t>(p));
        std::int64_t terms = 1;
        for (int j = 0; j < p; ++j) {
            family[static_cast<std::size_t>(j)] =
                &fams[static_cast<std::size_t>(j)][static_cast<std::size_t>(combo[static_cast<std::size_t>(j)])];
            m[static_cast<std::size_t>(j)] = static_cast<int>(family[static_cast<std::size_t>(j)]->size());
            terms *= m[static_cast<std::size_t>(j)];
        }

        // |D| over all term combinations, row-major over (m_0 .. m_{p-1}).
        std::vector<double> D(static_cast<std::size_t>(terms));
        std::vector<int> t(static_cast<std::size_t>(p), 0);
        std::int64_t flat = 0;
        do {
            for (int j = 0; j < p; ++j) {
                box[static_cast<std::size_t>(j)] =
                    (*family[static_cast<std::size_t>(j)])[static_cast<std::size_t>(t[static_cast<std::size_t>(j)])];
            }
            D[static_cast<std::size_t>(flat++)] = abs_box_difference(f, alpha.axes, box, idx);
        } while (advance_index(t, m));

        // Permutations of axes 0..p-2; positions perm[j][t] are 0-based.
        std::vector<std::vector<int>> perm(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j) {
            perm[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(m[static_cast<std::size_t>(j)]));
            std::iota(perm[static_cast<std::size_t>(j)].begin(), perm[static_cast<std::size_t>(j)].end(), 0);
        }
        const int mp = m[static_cast<std::size_t>(p - 1)];
        std::vector<double> lam_last(lam_vals[static_cast<std::size_t>(p - 1)].begin(),
                                     lam_vals[static_cast<std::size_t>(p - 1)].begin() + mp);
        std::vector<double> mu_last = lam_last;
        std::sort(mu_last.begin(), mu_last.end());
        std::vector<double> rows(static_cast<std::size_t>(mp));

        std::function<void(int)> over_perms = [&](int j) {
            if (j == p - 1) {
                std::fill(rows.begin(), rows.end(), 0.0);
                std::vector<int> u(static_cast<std::size_t>(p), 0);
                std::int64_t fl = 0;
                do {
                    double denom = 1.0;
                    for (int q = 0; q + 1 < p; ++q) {
                        denom *= lam_vals[static_cast<std::size_t>(q)][static_cast<std::size_t>(
                            perm[static_cast<std::size_t>(q)][static_cast<std::size_t>(u[static_cast<std::size_t>(q)])])];
                    }
                    rows[static_cast<std::size_t>(u[static_cast<std::size_t>(p - 1)])] +=
                        D[static_cast<std::size_t>(fl++)] / denom;
                } while (advance_index(u, m));

                std::vector<double> sorted_rows = rows;
                std::sort(sorted_rows.begin(), sorted_rows.end(), std::greater<>());
                double s = 0.0;
                for (int k = 0; k < mp; ++k) {
                    s += sorted_rows[static_cast<std::size_t>(k)] / mu_last[static_cast<std::size_t>(k)];
                }
                if (s > best.score) {
                    best.score = s;
                    best.families.clear();
                    for (int q = 0; q < p; ++q) {
                        const int ax = alpha.axes[static_cast<std::size_t>(q)];
                        IntervalFamily fam{ax, {}};
                        if (q + 1 < p) {
                            fam.intervals.resize(static_cast<std::size_t>(m[static_cast<std::size_t>(q)]));
                            for (int tq = 0; tq < m[static_cast<std::size_t>(q)]; ++tq) {
                                fam.intervals[static_cast<std::size_t>(
                                    perm[static_cast<std::size_t>(q)][static_cast<std::size_t>(tq)])] =
                                    (*family[static_cast<std::size_t>(q)])[static_cast<std::size_t>(tq)];
                            }
                        } else {
                            fam.intervals = position_order(*family[static_cast<std::size_t>(q)], rows,
                                                           lam_last);
                        }
                        best.families.push_back(std::move(fam));
                    }
                }
                return;
            }
            std::vector<int>& pj = perm[static_cast<std::size_t>(j)];
            std::sort(pj.begin(), pj.end());
            do {
                over_perms(j + 1);
            } while (std::next_permutation(pj.begin(), pj.end()));
        };
        over_perms(0);
    } while (advance_index(combo, combo_sizes));

    return best;
}

// Coordinate-ascent lower bound for one fixed complement slice: holding
// every other axis's ordered family fixed, the objective restricted to one
// axis is exactly the 1D kernel on aggregated weights, so each sweep
// re-solves that axis and the score never decreases.
JointResult joint_ascent(const GridFunction& f, const IndexSet& alpha,
                         std::span<const LambdaSeq> lambdas, std::span<const int> fixed,
                         const VariationParams& p_) {
    const int p = alpha.size();
    const std::vector<int> comp = alpha.complement(f.dim());
    std::vector<int> idx(static_cast<std::size_t>(f.dim()), 0);
    for (std::size_t i = 0; i < comp.size(); ++i) idx[static_cast<std::size_t>(comp[i])] = fixed[i];

    struct AxisState {
        std::vector<std::pair<int, int>> intervals;  // position order
        std::vector<double> divisors;                // lambda value per position
    };
    std::vector<AxisState> state(static_cast<std::size_t>(p));
    std::vector<std::vector<double>> lam_vals(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        const int n = f.axis_size(alpha.axes[static_cast<std::size_t>(j)]);
        lam_vals[static_cast<std::size_t>(j)] = lambdas[static_cast<std::size_t>(j)].first(n - 1);
        state[static_cast<std::size_t>(j)].intervals = {{0, n - 1}};
        state[static_cast<std::size_t>(j)].divisors = {lam_vals[static_cast<std::size_t>(j)][0]};
    }

    std::vector<std::pair<int, int>> box(static_cast<std::size_t>(p));
    auto joint_score = [&]() {
        std::vector<int> m(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j) m[static_cast<std::size_t>(j)] = static_cast<int>(state[static_cast<std::size_t>(j)].intervals.size());
        std::vector<int> t(static_cast<std::size_t>(p), 0);
        double s = 0.0;
        do {
            double denom = 1.0;
            for (int j = 0; j < p; ++j) {
                box[static_cast<std::size_t>(j)] =
                    state[static_cast<std::size_t>(j)].intervals[static_cast<std::size_t>(t[static_cast<std::size_t>(j)])];
                denom *= state[static_cast<std::size_t>(j)].divisors[static_cast<std::size_t>(t[static_cast<std::size_t>(j)])];
            }
            s += abs_box_difference(f, alpha.axes, box, idx) / denom;
        } while (advance_index(t, m));
        return s;
    };

    double score = joint_score();
    for (int round = 0; round < p_.ascent_max_rounds; ++round) {
        bool improved = false;
        for (int j = 0; j < p; ++j) {
            const int ax = alpha.axes[static_cast<std::size_t>(j)];
            const int n = f.axis_size(ax);

            // Aggregated weight of each candidate interval on axis j given
            // the other axes' terms; the axis-j divisor factors out.
            AxisWeights agg;
            agg.axis = ax;
            agg.n = n;
            agg.kind = AxisWeights::Kind::FixedSlice;
            agg.w.assign(static_cast<std::size_t>(n) * n, 0.0);
            agg.arg_slice.assign(static_cast<std::size_t>(n) * n, 0);

            std::vector<int> m_other;
            std::vector<int> other;
            for (int q = 0; q < p; ++q) {
                if (q != j) {
                    other.push_back(q);
                    m_other.push_back(static_cast<int>(state[static_cast<std::size_t>(q)].intervals.size()));
                }
            }
            for (int a = 0; a + 1 < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    double acc = 0.0;
                    std::vector<int> t(other.size(), 0);
                    do {
                        double denom = 1.0;
                        for (std::size_t oi = 0; oi < other.size(); ++oi) {
                            const int q = other[oi];
                            box[static_cast<std::size_t>(q)] =
                                state[static_cast<std::size_t>(q)].intervals[static_cast<std::size_t>(t[oi])];
                            denom *= state[static_cast<std::size_t>(q)].divisors[static_cast<std::size_t>(t[oi])];
                        }
                        box[static_cast<std::size_t>(j)] = {a, b};
                        acc += abs_box_difference(f, alpha.axes, box, idx) / denom;
                    } while (!other.empty() && advance_index(t, m_other));
                    agg.w[static_cast<std::size_t>(a) * n + b] = acc;
                }
            }

            const AxisVariation sol = axis_variation(agg, lambdas[static_cast<std::size_t>(j)], p_);
            if (sol.bracket.lower > score * (1.0 + 1e-12) ||
                (score == 0.0 && sol.bracket.lower > 0.0)) {
                // Adopt: place intervals by the rearrangement pairing.
                std::vector<double> values;
                for (const auto& [a, b] : sol.family.intervals) values.push_back(agg.at(a, b));
                const int mj = static_cast<int>(sol.family.intervals.size());
                std::vector<double> lam_first(lam_vals[static_cast<std::size_t>(j)].begin(),
                                              lam_vals[static_cast<std::size_t>(j)].begin() + mj);
                state[static_cast<std::size_t>(j)].intervals =
                    position_order(sol.family.intervals, values, lam_first);
                state[static_cast<std::size_t>(j)].divisors.assign(static_cast<std::size_t>(mj), 0.0);
                for (int t = 0; t < mj; ++t) {
                    state[static_cast<std::size_t>(j)].divisors[static_cast<std::size_t>(t)] =
                        lam_first[static_cast<std::size_t>(t)];
                }
                score = sol.bracket.lower;
                improved = true;
            }
        }
        if (!improved) break;
    }

    JointResult out;
    out.score = score;
    for (int j = 0; j < p; ++j) {
        out.families.push_back(
            IntervalFamily{alpha.axes[static_cast<std::size_t>(j)], state[static_cast<std::size_t>(j)].intervals});
    }
    return out;
}

void validate_index_set(const GridFunction& f, const IndexSet& alpha) {
    if (alpha.axes.empty()) throw std::invalid_argument("index_set_variation: empty index set");
    for (std::size_t i = 0; i < alpha.axes.size(); ++i) {
        if (alpha.axes[i] < 0 || alpha.axes[i] >= f.dim() ||
            (i > 0 && alpha.axes[i] <= alpha.axes[i - 1])) {
            throw std::invalid_argument("index_set_variation: index set must be sorted and in range");
        }
    }
}

}  // namespace

IndexSetVariation index_set_variation(const GridFunction& f, const IndexSet& alpha,
                                      std::span<const LambdaSeq> lambdas,
                                      const VariationParams& p) {
    validate_index_set(f, alpha);
    if (lambdas.size() != alpha.axes.size()) {
        throw std::invalid_argument("index_set_variation: one sequence per axis of alpha");
    }

    IndexSetVariation out;
    if (alpha.size() == 1) {
        const int axis = alpha.axes[0];
        const std::int64_t S = slice_count(f, axis);
        AxisVariation best;
        best.bracket = VariationBracket{0.0, 0.0, true};
        double upper_max = 0.0;
        bool all_exact = true;
        std::int64_t best_slice = 0;
        for (std::int64_t s = 0; s < S; ++s) {
            AxisVariation cand = axis_variation(fixed_slice_weights(f, axis, s), lambdas[0], p);
            all_exact = all_exact && cand.bracket.exact;
            upper_max = std::max(upper_max, cand.bracket.upper);
            if (s == 0 || cand.bracket.lower > best.bracket.lower) {
                best = std::move(cand);
                best_slice = s;
            }
        }
        out.bracket.lower = best.bracket.lower;
        out.bracket.upper = all_exact ? best.bracket.lower : upper_max;
        out.bracket.exact = all_exact;
        out.families = {best.family};
        out.fixed_point = decode_slice(f, axis, best_slice);
        return out;
    }

    bool exact_mode = true;
    for (int a : alpha.axes) exact_mode = exact_mode && f.axis_size(a) <= p.exact_cap_multi;

    const std::int64_t S = complement_slice_count(f, alpha.axes);
    JointResult best;
    std::vector<int> best_fixed;
    for (std::int64_t s = 0; s < S; ++s) {
        const std::vector<int> fixed = decode_complement_slice(f, alpha.axes, s);
        JointResult cand = exact_mode ? joint_exact(f, alpha, lambdas, fixed)
                                      : joint_ascent(f, alpha, lambdas, fixed, p);
        if (s == 0 || cand.score > best.score) {
            best = std::move(cand);
            best_fixed = fixed;
        }
    }

    out.bracket.lower = best.score;
    out.bracket.upper = exact_mode ? best.score : kInf;
    out.bracket.exact = exact_mode;
    out.families = std::move(best.families);
    out.fixed_point = std::move(best_fixed);
    return out;
}

IndexSetVariation index_set_variation(const GridFunction& f, const IndexSet& alpha,
                                      const LambdaSeq& lambda, const VariationParams& p) {
    const std::vector<LambdaSeq> lambdas(alpha.axes.size(), lambda);
    return index_set_variation(f, alpha, lambdas, p);
}

TotalVariation total_variation(const GridFunction& f, const LambdaSeq& lambda,
                               const VariationParams& p) {
    TotalVariation out;
    out.total = VariationBracket{0.0, 0.0, true};
    const int d = f.dim();
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        IndexSet alpha;
        for (int k = 0; k < d; ++k) {
            if (mask & (1u << k)) alpha.axes.push_back(k);
        }
        const IndexSetVariation v = index_set_variation(f, alpha, lambda, p);
        out.total = out.total + v.bracket;
        out.terms.emplace_back(std::move(alpha), v.bracket);
    }
    return out;
}

RectangleVariation rectangle_variation(const GridFunction& f, const LambdaSeq& lambda,
                                       const VariationParams& p) {
    if (f.dim() != 2) throw std::invalid_argument("rectangle_variation: requires d = 2");
    const int n1 = f.axis_size(0);
    const int n2 = f.axis_size(1);

    struct Rect {
        int a1, b1, a2, b2;
        double value;
    };
    std::vector<Rect> cands;
    std::vector<int> idx(2, 0);
    const std::array<int, 2> axes01 = {0, 1};
    std::vector<std::pair<int, int>> box(2);
    for (int a1 = 0; a1 + 1 < n1; ++a1) {
        for (int b1 = a1 + 1; b1 < n1; ++b1) {
            for (int a2 = 0; a2 + 1 < n2; ++a2) {
                for (int b2 = a2 + 1; b2 < n2; ++b2) {
                    box[0] = {a1, b1};
                    box[1] = {a2, b2};
                    const double v = abs_box_difference(f, axes01, box, idx);
                    cands.push_back(Rect{a1, b1, a2, b2, v});
                }
            }
        }
    }

    auto interiors_disjoint = [](const Rect& r, const Rect& q) {
        const bool overlap1 = std::max(r.a1, q.a1) < std::min(r.b1, q.b1);
        const bool overlap2 = std::max(r.a2, q.a2) < std::min(r.b2, q.b2);
        return !(overlap1 && overlap2);
    };

    RectangleVariation out;
    const int max_terms = std::max(1, (n1 - 1) * (n2 - 1));
    const FamilyScorer scorer(lambda, max_terms);

    if (n1 <= p.exact_cap_rect && n2 <= p.exact_cap_rect) {
        std::vector<int> chosen;
        std::vector<double> vals;
        double best_score = 0.0;
        std::vector<int> best_chosen;
        std::function<void(int)> rec = [&](int start) {
            for (int i = start; i < static_cast<int>(cands.size()); ++i) {
                bool ok = true;
                for (int c : chosen) {
                    if (!interiors_disjoint(cands[static_cast<std::size_t>(i)], cands[static_cast<std::size_t>(c)])) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                chosen.push_back(i);
                vals.push_back(cands[static_cast<std::size_t>(i)].value);
                const double s = scorer.score(vals);
                if (s > best_score) {
                    best_score = s;
                    best_chosen = chosen;
                }
                rec(i + 1);
                chosen.pop_back();
                vals.pop_back();
            }
        };
        rec(0);
        out.bracket = VariationBracket{best_score, best_score, true};
        for (int c : best_chosen) {
            const Rect& r = cands[static_cast<std::size_t>(c)];
            out.rects.push_back({r.a1, r.b1, r.a2, r.b2});
        }
        return out;
    }

    // Greedy: repeatedly add the disjoint rectangle with the largest
    // rescored marginal gain. Lower bound only.
    std::vector<int> chosen;
    std::vector<double> vals;
    double cur = 0.0;
    for (;;) {
        double best_gain = 0.0;
        int best_i = -1;
        for (int i = 0; i < static_cast<int>(cands.size()); ++i) {
            if (cands[static_cast<std::size_t>(i)].value <= 0.0) continue;
            bool ok = true;
            for (int c : chosen) {
                if (!interiors_disjoint(cands[static_cast<std::size_t>(i)], cands[static_cast<std::size_t>(c)])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            vals.push_back(cands[static_cast<std::size_t>(i)].value);
            const double gain = scorer.score(vals) - cur;
            vals.pop_back();
            if (gain > best_gain) {
                best_gain = gain;
                best_i = i;
            }
        }
        if (best_i < 0) break;
        chosen.push_back(best_i);
        vals.push_back(cands[static_cast<std::size_t>(best_i)].value);
        cur = scorer.score(vals);
    }
    out.bracket = VariationBracket{cur, kInf, false};
    for (int c : chosen) {
        const Rect& r = cands[static_cast<std::size_t>(c)];
        out.rects.push_back({r.a1, r.b1, r.a2, r.b2});
    }
    return out;
}

double sharp_sum(const GridFunction& f, int axis, int n) {
    check_axis(f, axis);
    const int size = f.axis_size(axis);
    if (n < 1 || n > size - 1) throw std::invalid_argument("sharp_sum: n out of range");
    const DisjointSums sums = best_disjoint_sums(per_term_max_weights(f, axis));
    return sums.best[static_cast<std::size_t>(n)];
}

std::vector<VariationBracket> continuity_profile(const GridFunction& f, const LambdaSeq& lambda,
                                                 const IndexSet& alpha, int k, int n_max,
                                                 const VariationParams& p) {
    validate_index_set(f, alpha);
    if (k < 1 || k > alpha.size()) throw std::invalid_argument("continuity_profile: k out of range");
    if (n_max < 1) throw std::invalid_argument("continuity_profile: n_max must be >= 1");
    std::vector<VariationBracket> out;
    out.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        std::vector<LambdaSeq> lambdas(alpha.axes.size(), lambda);
        lambdas[static_cast<std::size_t>(k - 1)] = lambda.shifted(n);
        out.push_back(index_set_variation(f, alpha, lambdas, p).bracket);
    }
    return out;
}

namespace {

PerAxisVariation local_variation_on(const FunctionSource& src, const LambdaSeq& lambda,
                                    std::vector<std::vector<double>> axes,
                                    const VariationParams& p) {
    return sharp_variation(sample(src, std::move(axes)), lambda, p);
}

}  // namespace

PerAxisVariation local_sharp_variation(const FunctionSource& src, const LambdaSeq& lambda,
                                       std::span<const double> x, double eps,
                                       std::span<const int> delta, int m,
                                       const VariationParams& p) {
    if (!(eps > 0.0)) throw std::invalid_argument("local_sharp_variation: eps must be positive");
    if (m < 2) throw std::invalid_argument("local_sharp_variation: need m >= 2 sample points");
    if (static_cast<int>(x.size()) != src.dim || x.size() != delta.size()) {
        throw std::invalid_argument("local_sharp_variation: dimension mismatch");
    }
    std::vector<std::vector<double>> axes(x.size());
    for (std::size_t s = 0; s < x.size(); ++s) {
        if (delta[s] != 1 && delta[s] != -1) {
            throw std::invalid_argument("local_sharp_variation: delta entries must be +-1");
        }
        std::vector<double> coords(static_cast<std::size_t>(m));
        for (int j = 1; j <= m; ++j) {
            coords[static_cast<std::size_t>(j - 1)] =
                x[s] + delta[s] * eps * static_cast<double>(j) / (m + 1);
        }
        if (delta[s] < 0) std::reverse(coords.begin(), coords.end());
        axes[s] = std::move(coords);
    }
    return local_variation_on(src, lambda, std::move(axes), p);
}

PerAxisVariation local_sharp_variation_symmetric(const FunctionSource& src,
                                                 const LambdaSeq& lambda,
                                                 std::span<const double> x, double eps, int m,
                                                 const VariationParams& p) {
    if (!(eps > 0.0)) throw std::invalid_argument("local_sharp_variation: eps must be positive");
    if (m < 2) throw std::invalid_argument("local_sharp_variation: need m >= 2 sample points");
    if (static_cast<int>(x.size()) != src.dim) {
        throw std::invalid_argument("local_sharp_variation: dimension mismatch");
    }
    std::vector<std::vector<double>> axes(x.size());
    for (std::size_t s = 0; s < x.size(); ++s) {
        std::vector<double> coords(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            coords[static_cast<std::size_t>(j)] = x[s] - eps + 2.0 * eps * j / (m - 1);
        }
        axes[s] = std::move(coords);
    }
    return local_variation_on(src, lambda, std::move(axes), p);
}

}  // namespace gvar
