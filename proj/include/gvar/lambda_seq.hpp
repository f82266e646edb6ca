// SPDX-License-Identifier: Apache-2.0
//
// Positive weight sequences used by the variation functionals.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gvar {

/// Schedules for the xi-modulated sequence n * xi_n / ln^(d-1)(n+1).
enum class XiKind { Log, LogLog };

/// xi_n for the named schedule: Log = ln(n+1), LogLog = ln(ln(n+3)).
double xi_value(XiKind kind, std::int64_t n);

/// Immutable weight sequence n -> lambda_n > 0 (n >= 1) with tail-shift
/// support. Sequences are NOT assumed monotone: the paper-type sequence
/// n / ln^(d-1)(n+1) dips at small n for d >= 3, so consumers that need an
/// ordering must sort the values they use.
class LambdaSeq {
public:
    enum class Kind { Harmonic, Paper, Xi, Constant, Table };

    /// lambda_n = n.
    static LambdaSeq harmonic();
    /// lambda_n = n / ln^(d-1)(n+1), d >= 2. Natural logarithm throughout.
    static LambdaSeq paper(int d);
    /// lambda_n = n * xi_n / ln^(d-1)(n+1), d >= 2.
    static LambdaSeq xi(int d, XiKind schedule);
    /// lambda_n = c. Allowed solely to recover the classical (Hardy) classes.
    static LambdaSeq constant(double c = 1.0);
    /// Explicit table; beyond its length the last ratio extends geometrically
    /// so the evaluator stays total.
    static LambdaSeq table(std::vector<double> values);

    /// Tail shift: the result evaluates at index s + n - 1 (shift by 1 is
    /// the identity; shifts compose as shift(a)+shift(b) = shift(a+b-1)).
    LambdaSeq shifted(std::int64_t n) const;

    double operator()(std::int64_t n) const;
    /// lambda_1 .. lambda_count as a vector.
    std::vector<double> first(int count) const;

    Kind kind() const { return kind_; }
    std::int64_t offset() const { return offset_; }
    /// True for the kinds with lambda_n -> infinity.
    bool diverges() const;

    /// Round-trips the CLI spelling, e.g. "paper:d=2" or "xi:d=2,xi=loglog".
    std::string spec_string() const;
    /// Parses "harmonic" | "paper:d=D" | "xi:d=D,xi=log|loglog" |
    /// "constant[:c=C]" | "table:path.json" (path: JSON array of positives).
    static LambdaSeq parse(const std::string& spec);

private:
    LambdaSeq() = default;

    Kind kind_ = Kind::Harmonic;
    int d_ = 2;
    XiKind xi_ = XiKind::LogLog;
    double c_ = 1.0;
    std::vector<double> table_;
    std::int64_t offset_ = 0;  // evaluation index = n + offset_
};

}  // namespace gvar
