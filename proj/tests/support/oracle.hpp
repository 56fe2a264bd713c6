#pragma once

// Brute-force reference implementations over plain rank vectors and world
// masks. Deliberately shares no code with the library: every quantity is
// recomputed from its definition by enumeration.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

using Ranks = std::vector<std::uint64_t>;
using Mask = std::uint64_t;

inline constexpr std::uint64_t kTop = std::numeric_limits<std::uint64_t>::max();

inline Mask all_worlds(std::size_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

inline std::uint64_t rank(const Ranks& k, Mask a) {
  std::uint64_t best = kTop;
  for (std::size_t w = 0; w < k.size(); ++w)
    if ((a >> w) & 1U) best = std::min(best, k[w]);
  return best;
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  return (a == kTop || b == kTop) ? kTop : a + b;
}

inline std::uint64_t cond_rank(const Ranks& k, Mask b, Mask a) {
  const auto joint = rank(k, a & b);
  return joint == kTop ? kTop : joint - rank(k, a);
}

inline bool is_ncf(const Ranks& k) {
  return !k.empty() && *std::min_element(k.begin(), k.end()) == 0;
}

// A,m-conditionalization straight from the definition:
// k'(w) = k(w|A) on A, k(w|-A) + m off A.
inline Ranks conditionalize(const Ranks& k, Mask a, std::uint64_t m) {
  const Mask neg = all_worlds(k.size()) & ~a;
  const auto ra = rank(k, a), rn = rank(k, neg);
  Ranks out(k.size());
  for (std::size_t w = 0; w < k.size(); ++w)
    out[w] = ((a >> w) & 1U) ? k[w] - ra : k[w] - rn + m;
  return out;
}

// Jeffrey version: atoms as masks, lambda one rank per atom.
inline Ranks jeffrey(const Ranks& k, const std::vector<Mask>& atoms,
                     const std::vector<std::uint64_t>& lambda) {
  Ranks out(k.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto ri = rank(k, atoms[i]);
    for (std::size_t w = 0; w < k.size(); ++w)
      if ((atoms[i] >> w) & 1U) out[w] = k[w] - ri + lambda[i];
  }
  return out;
}

// Atoms of the field generated by the variables in `var_mask` over
// `vars` binary variables, first variable most significant.
inline std::vector<Mask> binary_subfield(std::size_t vars, std::uint64_t var_mask) {
  const std::size_t n = std::size_t{1} << vars;
  std::vector<Mask> atoms;
  std::vector<int> seen(n, -1);
  for (std::size_t w = 0; w < n; ++w) {
    std::size_t key = 0;
    for (std::size_t v = 0; v < vars; ++v)
      if ((var_mask >> v) & 1U) key |= w & (std::size_t{1} << (vars - 1 - v));
    if (seen[key] < 0) {
      seen[key] = static_cast<int>(atoms.size());
      atoms.push_back(0);
    }
    atoms[static_cast<std::size_t>(seen[key])] |= Mask{1} << w;
  }
  return atoms;
}

// All non-empty unions of atoms.
inline std::vector<Mask> members(const std::vector<Mask>& atoms) {
  std::vector<Mask> out;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << atoms.size()); ++s) {
    Mask m = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if ((s >> i) & 1U) m |= atoms[i];
    out.push_back(m);
  }
  return out;
}

// Every pair of non-empty members, ranks taken relative to D.
inline bool cond_independent(const Ranks& k, const std::vector<Mask>& b,
                             const std::vector<Mask>& c, Mask d) {
  for (auto x : members(b))
    for (auto y : members(c))
      if (cond_rank(k, x & y, d) != add(cond_rank(k, x, d), cond_rank(k, y, d))) return false;
  return true;
}

inline bool independent(const Ranks& k, const std::vector<Mask>& b, const std::vector<Mask>& c) {
  return cond_independent(k, b, c, all_worlds(k.size()));
}

inline bool cond_independent_field(const Ranks& k, const std::vector<Mask>& b,
                                   const std::vector<Mask>& c, const std::vector<Mask>& d) {
  return std::all_of(d.begin(), d.end(),
                     [&](Mask atom) { return cond_independent(k, b, c, atom); });
}

inline std::vector<Mask> prop_field(std::size_t n, Mask a) {
  return {a, all_worlds(n) & ~a};
}

// Next rank vector with entries <= max_rank, lexicographic; false at the end.
inline bool next_vector(Ranks& k, std::uint64_t max_rank) {
  for (std::size_t i = k.size(); i-- > 0;) {
    if (k[i] < max_rank) {
      ++k[i];
      return true;
    }
    k[i] = 0;
  }
  return false;
}

}  // namespace oracle
