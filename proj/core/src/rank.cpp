#include "rankcalc/rank.hpp"

#include <ostream>
#include <stdexcept>

namespace rankcalc {

std::uint64_t Rank::value() const {
  if (is_top()) throw std::domain_error("TOP has no finite value");
  return value_;
}

Rank operator+(Rank a, Rank b) {
  if (a.is_top() || b.is_top()) return Rank::top();
  if (a.value_ > Rank::kTop - 1 - b.value_) throw std::overflow_error("rank overflow");
  return Rank(a.value_ + b.value_);
}

Rank operator-(Rank a, Rank b) {
  if (a.is_top()) throw std::domain_error("TOP minus a rank is undefined");
  if (b.is_top() || b.value_ > a.value_) throw std::domain_error("negative rank difference");
  return Rank(a.value_ - b.value_);
}

std::string Rank::to_string() const {
  return is_top() ? std::string("TOP") : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, Rank r) { return os << r.to_string(); }

}  // namespace rankcalc
