#include "rankcalc/report.hpp"

#include "rankcalc/error.hpp"
#include "rankcalc/rational.hpp"

namespace rankcalc {

void CheckTally::merge(const CheckTally& other) {
  checked += other.checked;
  violations += other.violations;
  if (!first_witness && other.first_witness) first_witness = other.first_witness;
}

std::string render_tallies(const std::vector<CheckTally>& tallies) {
  std::string out;
  for (const auto& t : tallies) {
    out += t.name + ": checked " + std::to_string(t.checked) +
           (t.informational ? ", counterexamples " : ", violations ") +
           std::to_string(t.violations) + (t.informational ? " (not a law, reported only)" : "") +
           "\n";
    if (t.first_witness)
      out += (t.informational ? "  first counterexample: " : "  first witness: ") +
             *t.first_witness + "\n";
  }
  return out;
}

std::size_t total_violations(const std::vector<CheckTally>& tallies) {
  std::size_t n = 0;
  for (const auto& t : tallies)
    if (!t.informational) n += t.violations;
  return n;
}

Rational parse_rational(std::string_view text) {
  try {
    const auto slash = text.find('/');
    using boost::multiprecision::mpz_int;
    auto parse_int = [](std::string_view s) {
      if (s.empty()) throw ValidationError("empty number");
      std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
      if (i == s.size()) throw ValidationError("malformed number");
      for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw ValidationError("malformed number");
      return mpz_int(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator");
    return Rational(parse_int(text.substr(0, slash)), den);
  } catch (const ValidationError& e) {
    throw ValidationError("invalid rational '" + std::string(text) + "': " + e.what());
  }
}

}  // namespace rankcalc
