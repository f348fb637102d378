// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bdproof {

// Exact arbitrary-precision rational, always in lowest terms with a
// positive denominator. Kleene iterates multiply probabilities, so
// denominators grow without bound; fixed-width representations would
// silently overflow. There is no floating point anywhere in this
// project.
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q" or an integer "p", with an optional leading minus.
// Throws ParseError on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

// Renders "p/q", or just "p" when the value is integral.
std::string to_string(const Rational& r);

bool in_unit_interval(const Rational& r);

// Addition on [0,1] truncated at 1.
Rational truncated_add(const Rational& a, const Rational& b);

// Subtraction on [0,1] truncated at 0.
Rational truncated_sub(const Rational& a, const Rational& b);

} // namespace bdproof
