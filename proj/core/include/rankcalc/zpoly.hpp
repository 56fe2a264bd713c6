#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankcalc/rank.hpp"
#include "rankcalc/rational.hpp"

namespace rankcalc {

// Polynomial in a formal infinitesimal z with rational coefficients. Only
// non-zero coefficients are stored. The order is the least exponent present;
// "P is of the same order as z^n" becomes order(P) == n.
class ZPoly {
 public:
  ZPoly() = default;

  static ZPoly constant(const Rational& c) { return monomial(c, 0); }
  static ZPoly monomial(const Rational& c, std::uint64_t exponent);

  using Term = std::pair<std::uint64_t, Rational>;

  // Ascending exponents.
  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // TOP for the zero polynomial.
  Rank order() const;
  // Coefficient of the lowest-order term; throws std::domain_error for zero.
  const Rational& leading_coefficient() const;
  Rational coefficient(std::uint64_t exponent) const;

  ZPoly& operator+=(const ZPoly& other);
  ZPoly& operator-=(const ZPoly& other);
  ZPoly operator-() const;

  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend bool operator==(const ZPoly&, const ZPoly&) = default;

  // "2 + 3/2 z^2 - z^5", "0" for zero; ascending exponents.
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

}  // namespace rankcalc
