#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace rankcalc {

using Rational = boost::multiprecision::mpq_rational;

// "p/q" or "p"; throws ValidationError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace rankcalc
