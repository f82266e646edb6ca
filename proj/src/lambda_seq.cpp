// SPDX-License-Identifier: Apache-2.0

#include "gvar/lambda_seq.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gvar {

double xi_value(XiKind kind, std::int64_t n) {
    switch (kind) {
        case XiKind::Log:
            return std::log(static_cast<double>(n) + 1.0);
        case XiKind::LogLog:
            return std::log(std::log(static_cast<double>(n) + 3.0));
    }
    throw std::logic_error("xi_value: unknown schedule");
}

LambdaSeq LambdaSeq::harmonic() {
    LambdaSeq s;
    s.kind_ = Kind::Harmonic;
    return s;
}

LambdaSeq LambdaSeq::paper(int d) {
    if (d < 2) throw std::invalid_argument("LambdaSeq::paper: requires d >= 2");
    LambdaSeq s;
    s.kind_ = Kind::Paper;
    s.d_ = d;
    return s;
}

LambdaSeq LambdaSeq::xi(int d, XiKind schedule) {
    if (d < 2) throw std::invalid_argument("LambdaSeq::xi: requires d >= 2");
    LambdaSeq s;
    s.kind_ = Kind::Xi;
    s.d_ = d;
    s.xi_ = schedule;
    return s;
}

LambdaSeq LambdaSeq::constant(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("LambdaSeq::constant: c must be positive");
    LambdaSeq s;
    s.kind_ = Kind::Constant;
    s.c_ = c;
    return s;
}

LambdaSeq LambdaSeq::table(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("LambdaSeq::table: empty table");
    for (double v : values) {
        if (!(v > 0.0)) throw std::invalid_argument("LambdaSeq::table: entries must be positive");
    }
    LambdaSeq s;
    s.kind_ = Kind::Table;
    s.table_ = std::move(values);
    return s;
}

LambdaSeq LambdaSeq::shifted(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("LambdaSeq::shifted: shift must be >= 1");
    LambdaSeq s = *this;
    s.offset_ = offset_ + (n - 1);
    return s;
}

double LambdaSeq::operator()(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("LambdaSeq: index must be >= 1");
    const std::int64_t m = n + offset_;
    const double x = static_cast<double>(m);
    switch (kind_) {
        case Kind::Harmonic:
            return x;
        case Kind::Paper:
            return x / std::pow(std::log(x + 1.0), d_ - 1);
        case Kind::Xi:
            return x * xi_value(xi_, m) / std::pow(std::log(x + 1.0), d_ - 1);
        case Kind::Constant:
            return c_;
        case Kind::Table: {
            const std::int64_t len = static_cast<std::int64_t>(table_.size());
            if (m <= len) return table_[static_cast<std::size_t>(m - 1)];
            const double last = table_.back();
            const double ratio = len >= 2 ? last / table_[static_cast<std::size_t>(len - 2)] : 1.0;
            return last * std::pow(ratio, static_cast<double>(m - len));
        }
    }
    throw std::logic_error("LambdaSeq: unknown kind");
}

std::vector<double> LambdaSeq::first(int count) const {
    std::vector<double> out(static_cast<std::size_t>(count > 0 ? count : 0));
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = (*this)(i + 1);
    return out;
}

bool LambdaSeq::diverges() const {
    switch (kind_) {
        case Kind::Harmonic:
        case Kind::Paper:
        case Kind::Xi:
            return true;
        case Kind::Constant:
            return false;
        case Kind::Table: {
            // Spot test: doubling growth in the geometric extension region.
            const std::int64_t m = static_cast<std::int64_t>(table_.size()) + 4;
            return (*this)(2 * m) > (*this)(m);
        }
    }
    return false;
}

std::string LambdaSeq::spec_string() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Harmonic:
            os << "harmonic";
            break;
        case Kind::Paper:
            os << "paper:d=" << d_;
            break;
        case Kind::Xi:
            os << "xi:d=" << d_ << ",xi=" << (xi_ == XiKind::Log ? "log" : "loglog");
            break;
        case Kind::Constant:
            os << "constant:c=" << c_;
            break;
        case Kind::Table:
            os << "table[" << table_.size() << "]";
            break;
    }
    if (offset_ != 0) os << "+shift" << offset_;
    return os.str();
}

namespace {

// Splits "key=value" pairs separated by commas after the kind prefix.
std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("lambda spec: expected key=value, got '" + item + "'");
        }
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

}  // namespace

LambdaSeq LambdaSeq::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (kind == "harmonic") {
        if (!rest.empty()) throw std::invalid_argument("lambda spec: harmonic takes no arguments");
        return harmonic();
    }
    if (kind == "paper") {
        int d = 0;
        for (const auto& [k, v] : parse_kv(rest)) {
            if (k == "d") d = std::stoi(v);
            else throw std::invalid_argument("lambda spec: unknown key '" + k + "'");
        }
        if (d == 0) throw std::invalid_argument("lambda spec: paper requires d=...");
        return paper(d);
    }
    if (kind == "xi") {
        int d = 0;
        XiKind x = XiKind::LogLog;
        bool have_xi = false;
        for (const auto& [k, v] : parse_kv(rest)) {
            if (k == "d") {
                d = std::stoi(v);
            } else if (k == "xi") {
                if (v == "log") x = XiKind::Log;
                else if (v == "loglog") x = XiKind::LogLog;
                else throw std::invalid_argument("lambda spec: unknown xi schedule '" + v + "'");
                have_xi = true;
            } else {
                throw std::invalid_argument("lambda spec: unknown key '" + k + "'");
            }
        }
        if (d == 0 || !have_xi) throw std::invalid_argument("lambda spec: xi requires d=... and xi=...");
        return xi(d, x);
    }
    if (kind == "constant") {
        double c = 1.0;
        if (!rest.empty()) {
            for (const auto& [k, v] : parse_kv(rest)) {
                if (k == "c") c = std::stod(v);
                else throw std::invalid_argument("lambda spec: unknown key '" + k + "'");
            }
        }
        return constant(c);
    }
    if (kind == "table") {
        if (rest.empty()) throw std::invalid_argument("lambda spec: table requires a path");
        std::ifstream in(rest);
        if (!in) throw std::invalid_argument("lambda spec: cannot open table file '" + rest + "'");
        nlohmann::json j;
        in >> j;
        return table(j.get<std::vector<double>>());
    }
    throw std::invalid_argument("lambda spec: unknown kind '" + kind + "'");
}

}  // namespace gvar
