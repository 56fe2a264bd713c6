#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>

namespace rankcalc {

// Extended natural number: a natural rank or TOP, the rank of the empty
// proposition. TOP absorbs under addition and is neutral under min.
class Rank {
 public:
  constexpr Rank() = default;
  constexpr Rank(std::uint64_t value) : value_(value) {}  // NOLINT: implicit

  static constexpr Rank top() { return Rank(kTop); }

  constexpr bool is_top() const { return value_ == kTop; }
  constexpr bool is_finite() const { return value_ != kTop; }

  // Throws std::domain_error for TOP.
  std::uint64_t value() const;

  friend constexpr bool operator==(Rank, Rank) = default;
  friend constexpr std::strong_ordering operator<=>(Rank a, Rank b) {
    return a.value_ <=> b.value_;
  }

  // Saturates at TOP; throws std::overflow_error if two finite ranks overflow.
  friend Rank operator+(Rank a, Rank b);
  Rank& operator+=(Rank other) { return *this = *this + other; }

  // Finite difference. TOP on the left, or a negative result, is a
  // std::domain_error.
  friend Rank operator-(Rank a, Rank b);

  std::string to_string() const;

 private:
  static constexpr std::uint64_t kTop = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_ = 0;
};

constexpr Rank min(Rank a, Rank b) { return b < a ? b : a; }

std::ostream& operator<<(std::ostream& os, Rank r);

}  // namespace rankcalc
