#include "rankcalc/zpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace rankcalc {

ZPoly ZPoly::monomial(const Rational& c, std::uint64_t exponent) {
  ZPoly p;
  if (c != 0) p.terms_.emplace_back(exponent, c);
  return p;
}

Rank ZPoly::order() const {
  return terms_.empty() ? Rank::top() : Rank(terms_.front().first);
}

const Rational& ZPoly::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
  return terms_.front().second;
}

Rational ZPoly::coefficient(std::uint64_t exponent) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                                   [](const Term& t, std::uint64_t e) { return t.first < e; });
  return it == terms_.end() || it->first != exponent ? Rational(0) : it->second;
}

ZPoly& ZPoly::operator+=(const ZPoly& other) {
  if (other.terms_.empty()) return *this;
  auto by_exponent = [](const Term& t, std::uint64_t e) { return t.first < e; };
  // A single term landing on an existing exponent, or past the end, needs no merge.
  if (other.terms_.size() == 1) {
    const auto& [e, c] = other.terms_.front();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e, by_exponent);
    if (it == terms_.end()) {
      terms_.emplace_back(e, c);
    } else if (it->first == e) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    } else {
      terms_.emplace(it, e, c);
    }
    return *this;
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      a->second += b->second;
      if (a->second != 0) merged.push_back(std::move(*a));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& other) { return *this += -other; }

ZPoly ZPoly::operator-() const {
  ZPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  ZPoly out;
  if (a.terms_.empty() || b.terms_.empty()) return out;
  std::vector<ZPoly::Term> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) raw.emplace_back(ea + eb, ca * cb);
  std::stable_sort(raw.begin(), raw.end(),
                   [](const ZPoly::Term& x, const ZPoly::Term& y) { return x.first < y.first; });
  for (auto& term : raw) {
    if (!out.terms_.empty() && out.terms_.back().first == term.first)
      out.terms_.back().second += term.second;
    else
      out.terms_.push_back(std::move(term));
  }
  std::erase_if(out.terms_, [](const ZPoly::Term& t) { return t.second == 0; });
  return out;
}

std::string ZPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += mag.str();
      continue;
    }
    if (mag != 1) out += mag.str() + " ";
    out += "z";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace rankcalc
