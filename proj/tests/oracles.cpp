// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gvar::testing {

namespace {

// Direct rearranged score: descending weights against the ascending sort
// of lambda_1..m.
double score_direct(std::vector<double> weights, const std::vector<double>& lambda) {
    const std::size_t m = weights.size();
    if (m == 0) return 0.0;
    if (m > lambda.size()) throw std::logic_error("oracle: lambda table too short");
    std::sort(weights.begin(), weights.end(), std::greater<>());
    std::vector<double> mu(lambda.begin(), lambda.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(mu.begin(), mu.end());
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += weights[k] / mu[k];
    return s;
}

// Enumerate all interval families on n points (shared endpoints allowed),
// invoking visit(family) for every nonempty one.
void for_each_family(int n, const std::function<void(const std::vector<std::pair<int, int>>&)>& visit) {
    std::vector<std::pair<int, int>> cur;
    const std::function<void(int)> rec = [&](int start) {
        for (int a = start; a + 1 < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                cur.emplace_back(a, b);
                visit(cur);
                rec(b);
                cur.pop_back();
            }
        }
    };
    rec(0);
}

// Odometer over all index choices of the axes in `which`.
bool next_choice(std::vector<int>& idx, const std::vector<int>& sizes) {
    for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k) {
        if (++idx[static_cast<std::size_t>(k)] < sizes[static_cast<std::size_t>(k)]) return true;
        idx[static_cast<std::size_t>(k)] = 0;
    }
    return false;
}

std::vector<int> complement_of(const std::vector<int>& alpha, int d) {
    std::vector<int> out;
    for (int k = 0; k < d; ++k) {
        if (std::find(alpha.begin(), alpha.end(), k) == alpha.end()) out.push_back(k);
    }
    return out;
}

}  // namespace

double oracle_corner_sum(const GridFunction& f, const Box& box) {
    std::vector<int> ivs;
    std::vector<int> idx(static_cast<std::size_t>(f.dim()), 0);
    for (int k = 0; k < f.dim(); ++k) {
        const BoxAxis& a = box.axes[static_cast<std::size_t>(k)];
        if (a.is_interval) {
            ivs.push_back(k);
        } else {
            idx[static_cast<std::size_t>(k)] = a.lo;
        }
    }
    const int p = static_cast<int>(ivs.size());
    std::vector<double> vals(static_cast<std::size_t>(1) << p);
    for (unsigned mask = 0; mask < vals.size(); ++mask) {
        for (int k = 0; k < p; ++k) {
            const BoxAxis& a = box.axes[static_cast<std::size_t>(ivs[static_cast<std::size_t>(k)])];
            idx[static_cast<std::size_t>(ivs[static_cast<std::size_t>(k)])] =
                (mask & (1u << k)) ? a.hi : a.lo;
        }
        vals[mask] = f.at(idx);
    }
    // Fold: after processing bit k, vals[m] (bit k clear) holds the
    // difference upper-minus-lower along interval axis k.
    for (int k = 0; k < p; ++k) {
        const unsigned bit = 1u << k;
        for (unsigned m = 0; m < vals.size(); ++m) {
            if (!(m & bit)) vals[m] = vals[m | bit] - vals[m];
        }
    }
    return vals[0];
}

double oracle_family_supremum(int n, const std::function<double(int, int)>& w,
                              const std::vector<double>& lambda) {
    double best = 0.0;
    for_each_family(n, [&](const std::vector<std::pair<int, int>>& fam) {
        std::vector<double> weights;
        weights.reserve(fam.size());
        for (const auto& [a, b] : fam) weights.push_back(w(a, b));
        best = std::max(best, score_direct(std::move(weights), lambda));
    });
    return best;
}

double oracle_disjoint_sum(int n, const std::function<double(int, int)>& w, int k) {
    double best = 0.0;
    for_each_family(n, [&](const std::vector<std::pair<int, int>>& fam) {
        if (static_cast<int>(fam.size()) > k) return;
        double s = 0.0;
        for (const auto& [a, b] : fam) s += w(a, b);
        best = std::max(best, s);
    });
    return best;
}

double oracle_sharp_weight(const GridFunction& f, int axis, int a, int b) {
    std::vector<int> other = complement_of({axis}, f.dim());
    std::vector<int> sizes;
    for (int k : other) sizes.push_back(f.axis_size(k));
    std::vector<int> choice(other.size(), 0);
    std::vector<int> idx(static_cast<std::size_t>(f.dim()), 0);
    double best = 0.0;
    do {
        for (std::size_t i = 0; i < other.size(); ++i) {
            idx[static_cast<std::size_t>(other[i])] = choice[i];
        }
        idx[static_cast<std::size_t>(axis)] = b;
        const double hi = f.at(idx);
        idx[static_cast<std::size_t>(axis)] = a;
        const double lo = f.at(idx);
        best = std::max(best, std::abs(hi - lo));
    } while (!other.empty() && next_choice(choice, sizes));
    return best;
}

double oracle_sharp_axis(const GridFunction& f, int axis, const std::vector<double>& lambda) {
    return oracle_family_supremum(
        f.axis_size(axis), [&](int a, int b) { return oracle_sharp_weight(f, axis, a, b); },
        lambda);
}

double oracle_sharp_variation(const GridFunction& f, const std::vector<double>& lambda) {
    double total = 0.0;
    for (int axis = 0; axis < f.dim(); ++axis) total += oracle_sharp_axis(f, axis, lambda);
    return total;
}

double oracle_partial_axis(const GridFunction& f, int axis, const std::vector<double>& lambda) {
    std::vector<int> other = complement_of({axis}, f.dim());
    std::vector<int> sizes;
    for (int k : other) sizes.push_back(f.axis_size(k));
    std::vector<int> choice(other.size(), 0);
    std::vector<int> idx(static_cast<std::size_t>(f.dim()), 0);
    double best = 0.0;
    do {
        for (std::size_t i = 0; i < other.size(); ++i) {
            idx[static_cast<std::size_t>(other[i])] = choice[i];
        }
        const auto slice_diff = [&](int a, int b) {
            idx[static_cast<std::size_t>(axis)] = b;
            const double hi = f.at(idx);
            idx[static_cast<std::size_t>(axis)] = a;
            const double lo = f.at(idx);
            return std::abs(hi - lo);
        };
        best = std::max(best, oracle_family_supremum(f.axis_size(axis), slice_diff, lambda));
    } while (!other.empty() && next_choice(choice, sizes));
    return best;
}

double oracle_partial_variation(const GridFunction& f, const std::vector<double>& lambda) {
    double total = 0.0;
    for (int axis = 0; axis < f.dim(); ++axis) total += oracle_partial_axis(f, axis, lambda);
    return total;
}

double oracle_index_set_variation(const GridFunction& f, const std::vector<int>& alpha,
                                  const std::vector<std::vector<double>>& lambdas) {
    const int p = static_cast<int>(alpha.size());
    const std::vector<int> comp = complement_of(alpha, f.dim());
    std::vector<int> comp_sizes;
    for (int k : comp) comp_sizes.push_back(f.axis_size(k));

    // Collect every family per axis once.
    std::vector<std::vector<std::vector<std::pair<int, int>>>> fams(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        for_each_family(f.axis_size(alpha[static_cast<std::size_t>(j)]),
                        [&](const std::vector<std::pair<int, int>>& fam) {
                            fams[static_cast<std::size_t>(j)].push_back(fam);
                        });
    }

    double best = 0.0;
    std::vector<int> fixed(comp.size(), 0);
    std::vector<int> idx(static_cast<std::size_t>(f.dim()), 0);
    do {
        Box box;
        box.axes.assign(static_cast<std::size_t>(f.dim()), BoxAxis{});
        for (std::size_t i = 0; i < comp.size(); ++i) {
            box.axes[static_cast<std::size_t>(comp[i])] = BoxAxis::fixed(fixed[i]);
        }

        std::vector<int> combo(static_cast<std::size_t>(p), 0);
        std::vector<int> combo_sizes(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j) {
            combo_sizes[static_cast<std::size_t>(j)] = static_cast<int>(fams[static_cast<std::size_t>(j)].size());
        }
        do {
            std::vector<const std::vector<std::pair<int, int>>*> family(static_cast<std::size_t>(p));
            std::vector<int> m(static_cast<std::size_t>(p));
            for (int j = 0; j < p; ++j) {
                family[static_cast<std::size_t>(j)] =
                    &fams[static_cast<std::size_t>(j)][static_cast<std::size_t>(combo[static_cast<std::size_t>(j)])];
                m[static_cast<std::size_t>(j)] = static_cast<int>(family[static_cast<std::size_t>(j)]->size());
            }

            // All orderings of every axis: perm[j][t] is the 1-based
            // position of interval t.
            std::vector<std::vector<int>> perm(static_cast<std::size_t>(p));
            for (int j = 0; j < p; ++j) {
                perm[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(m[static_cast<std::size_t>(j)]));
                std::iota(perm[static_cast<std::size_t>(j)].begin(), perm[static_cast<std::size_t>(j)].end(), 0);
            }
            const std::function<void(int)> over_perms = [&](int j) {
                if (j == p) {
                    double s = 0.0;
                    std::vector<int> t(static_cast<std::size_t>(p), 0);
                    do {
                        for (int q = 0; q < p; ++q) {
                            const auto& iv =
                                (*family[static_cast<std::size_t>(q)])[static_cast<std::size_t>(t[static_cast<std::size_t>(q)])];
                            box.axes[static_cast<std::size_t>(alpha[static_cast<std::size_t>(q)])] =
                                BoxAxis::interval(iv.first, iv.second);
                        }
                        double denom = 1.0;
                        for (int q = 0; q < p; ++q) {
                            denom *= lambdas[static_cast<std::size_t>(q)][static_cast<std::size_t>(
                                perm[static_cast<std::size_t>(q)][static_cast<std::size_t>(t[static_cast<std::size_t>(q)])])];
                        }
                        s += std::abs(oracle_corner_sum(f, box)) / denom;
                    } while (next_choice(t, m));
                    best = std::max(best, s);
                    return;
                }
                std::vector<int>& pj = perm[static_cast<std::size_t>(j)];
                std::sort(pj.begin(), pj.end());
                do {
                    over_perms(j + 1);
                } while (std::next_permutation(pj.begin(), pj.end()));
            };
            over_perms(0);
        } while (next_choice(combo, combo_sizes));
        (void)idx;
    } while (!comp.empty() && next_choice(fixed, comp_sizes));
    return best;
}

double oracle_total_variation(const GridFunction& f, const std::vector<double>& lambda) {
    const int d = f.dim();
    double total = 0.0;
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        std::vector<int> alpha;
        for (int k = 0; k < d; ++k) {
            if (mask & (1u << k)) alpha.push_back(k);
        }
        const std::vector<std::vector<double>> lambdas(alpha.size(), lambda);
        total += oracle_index_set_variation(f, alpha, lambdas);
    }
    return total;
}

double oracle_rectangle_variation(const GridFunction& f, const std::vector<double>& lambda) {
    if (f.dim() != 2) throw std::logic_error("oracle_rectangle_variation: d must be 2");
    struct R {
        int a1, b1, a2, b2;
        double v;
    };
    std::vector<R> cands;
    for (int a1 = 0; a1 + 1 < f.axis_size(0); ++a1) {
        for (int b1 = a1 + 1; b1 < f.axis_size(0); ++b1) {
            for (int a2 = 0; a2 + 1 < f.axis_size(1); ++a2) {
                for (int b2 = a2 + 1; b2 < f.axis_size(1); ++b2) {
                    Box box;
                    box.axes = {BoxAxis::interval(a1, b1), BoxAxis::interval(a2, b2)};
                    cands.push_back(R{a1, b1, a2, b2, std::abs(oracle_corner_sum(f, box))});
                }
            }
        }
    }
    const auto disjoint = [](const R& r, const R& q) {
        return !(std::max(r.a1, q.a1) < std::min(r.b1, q.b1) &&
                 std::max(r.a2, q.a2) < std::min(r.b2, q.b2));
    };
    double best = 0.0;
    std::vector<int> chosen;
    std::vector<double> vals;
    const std::function<void(int)> rec = [&](int start) {
        for (int i = start; i < static_cast<int>(cands.size()); ++i) {
            bool ok = true;
            for (int c : chosen) {
                if (!disjoint(cands[static_cast<std::size_t>(i)], cands[static_cast<std::size_t>(c)])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen.push_back(i);
            vals.push_back(cands[static_cast<std::size_t>(i)].v);
            best = std::max(best, score_direct(vals, lambda));
            rec(i + 1);
            chosen.pop_back();
            vals.pop_back();
        }
    };
    rec(0);
    return best;
}

}  // namespace gvar::testing
