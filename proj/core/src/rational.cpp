// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#include "bdproof/rational.hpp"

#include <cctype>
#include <sstream>

#include "bdproof/errors.hpp"

namespace bdproof {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && rest.front() == '-') {
        negative = true;
        rest.remove_prefix(1);
    }
    const auto slash = rest.find('/');
    std::string_view num = rest.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash + 1);
    if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
        throw ParseError("not a rational: '" + std::string(text) + "'");
    }
    boost::multiprecision::cpp_int n{std::string(num)};
    boost::multiprecision::cpp_int d{1};
    if (slash != std::string_view::npos) {
        d = boost::multiprecision::cpp_int{std::string(den)};
        if (d == 0) {
            throw ParseError("zero denominator: '" + std::string(text) + "'");
        }
    }
    Rational r(n, d);
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

bool in_unit_interval(const Rational& r) {
    return r >= 0 && r <= 1;
}

Rational truncated_add(const Rational& a, const Rational& b) {
    Rational s = a + b;
    return s > 1 ? Rational(1) : s;
}

Rational truncated_sub(const Rational& a, const Rational& b) {
    Rational s = a - b;
    return s < 0 ? Rational(0) : s;
}

} // namespace bdproof
