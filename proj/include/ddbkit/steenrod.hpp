#pragma once

// Steenrod squares on Stiefel-Whitney polynomials.
//
// Generators use the Wu formula
//   Sq^i(w_j) = sum_{s=0}^{i} C(j+s-i-1, s) w_{i-s} w_{j+s}
// with w_0 = 1 and the ring's truncation (w_1 = 0 in oriented rings,
// w_a = 0 above the rank). Products use the Cartan formula, folded one
// generator factor at a time. Sq^0 = id, instability and Sq^{deg x} x = x^2
// are never special-cased; they fall out of these two rules.

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ddbkit/error.hpp"
#include "ddbkit/mod2_poly.hpp"

namespace ddbkit {

inline Mod2Poly sq_generator(int i, int j, const SWRing& ring) {
  if (i < 0) throw Error(Errc::kDomain, "Steenrod square index must be nonnegative");
  if (!ring.has_generator(j)) {
    throw Error(Errc::kOutOfRange, "generator w" + std::to_string(j) + " is outside the " +
                                       ring.describe() + " ring");
  }
  Mod2Poly out = Mod2Poly::zero(ring);
  for (int s = 0; s <= i; ++s) {
    if (binom_parity(j + s - i - 1, s) == 0) continue;
    out += Mod2Poly::generator_or_zero(ring, i - s) * Mod2Poly::generator_or_zero(ring, j + s);
  }
  return out;
}

namespace detail {

// Per-call memo for Sq^b(w_j); lives on the caller's stack only.
class WuTable {
 public:
  explicit WuTable(const SWRing& ring) : ring_(ring) {}

  const Mod2Poly& get(int b, int j) {
    auto key = std::make_pair(b, j);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, sq_generator(b, j, ring_)).first;
    return it->second;
  }

 private:
  SWRing ring_;
  std::map<std::pair<int, int>, Mod2Poly> cache_;
};

// Sq^0 .. Sq^top of a single monomial, by folding Cartan over its factors.
inline std::vector<Mod2Poly> sq_monomial_all(const Monomial& mono, int top, const SWRing& ring,
                                             WuTable& wu) {
  std::vector<Mod2Poly> partial(top + 1, Mod2Poly::zero(ring));
  partial[0] = Mod2Poly::from_monomials(ring, {Monomial{}});
  for (int g : mono.factors()) {
    std::vector<Mod2Poly> next(top + 1, Mod2Poly::zero(ring));
    for (int c = 0; c <= top; ++c) {
      for (int b = 0; b <= c; ++b) {
        const Mod2Poly& left = partial[c - b];
        if (left.is_zero()) continue;
        const Mod2Poly& right = wu.get(b, g);
        if (right.is_zero()) continue;
        next[c] += left * right;
      }
    }
    partial = std::move(next);
  }
  return partial;
}

}  // namespace detail

/// Sq^i(p), extended linearly over the terms of p.
inline Mod2Poly sq(int i, const Mod2Poly& p) {
  if (i < 0) throw Error(Errc::kDomain, "Steenrod square index must be nonnegative");
  detail::WuTable wu(p.ring());
  std::vector<Monomial> acc;
  for (const auto& term : p.terms()) {
    auto all = detail::sq_monomial_all(term, i, p.ring(), wu);
    const auto& t = all[i].terms();
    acc.insert(acc.end(), t.begin(), t.end());
  }
  return Mod2Poly::from_monomials(p.ring(), std::move(acc));
}

/// Total square Sq = Sq^0 + Sq^1 + ... truncated at the top degree of p.
inline Mod2Poly sq_total(const Mod2Poly& p) {
  Mod2Poly out = Mod2Poly::zero(p.ring());
  for (int i = 0; i <= p.max_degree(); ++i) out += sq(i, p);
  return out;
}

/// A composite Sq^{a_1} ... Sq^{a_r}; indices apply right to left.
struct SqWord {
  std::vector<int> indices;

  /// Sq^{2^t} Sq^{2^{t-1}} ... Sq^2 Sq^1.
  static SqWord spin_word(int t) {
    if (t < 0) throw Error(Errc::kDomain, "spin word length must be nonnegative");
    SqWord w;
    for (int e = t; e >= 0; --e) w.indices.push_back(1 << e);
    return w;
  }

  int degree() const {
    int d = 0;
    for (int i : indices) d += i;
    return d;
  }

  std::string to_string() const {
    if (indices.empty()) return "id";
    std::string out;
    for (int i : indices) {
      if (!out.empty()) out += ' ';
      out += "Sq^" + std::to_string(i);
    }
    return out;
  }

  friend bool operator==(const SqWord&, const SqWord&) = default;
};

inline Mod2Poly sq_word(const SqWord& word, const Mod2Poly& p) {
  Mod2Poly out = p;
  for (auto it = word.indices.rbegin(); it != word.indices.rend(); ++it) out = sq(*it, out);
  return out;
}

/// v_t = Sq^{2^t} ... Sq^1 w_2 split as leading generator plus remainder.
struct SpinLemmaReport {
  int t = 0;
  Mod2Poly value;
  bool leading_present = false;
  Mod2Poly remainder;
  int remainder_max_gen = 0;

  int leading_index() const { return (1 << (t + 1)) + 1; }
  int remainder_bound() const { return (1 << (t + 1)) - 1; }
  bool holds() const { return leading_present && remainder_max_gen <= remainder_bound(); }
};

inline SpinLemmaReport verify_spin_lemma(int t, const SWRing& ring) {
  if (t < 0) throw Error(Errc::kDomain, "t must be nonnegative");
  if (t > 12) throw Error(Errc::kDomain, "t is too large to expand");
  if (!ring.is_oriented()) {
    throw Error(Errc::kDomain, "the spin lemma lives in an oriented ring");
  }
  const int lead = (1 << (t + 1)) + 1;
  if (ring.max_gen && *ring.max_gen < lead) {
    throw Error(Errc::kRingTooSmall, "ring rank " + std::to_string(*ring.max_gen) +
                                         " is below w" + std::to_string(lead));
  }
  SpinLemmaReport report;
  report.t = t;
  report.value = sq_word(SqWord::spin_word(t), Mod2Poly::generator(ring, 2));
  const Mod2Poly leading = Mod2Poly::generator(ring, lead);
  report.leading_present = report.value.contains(leading.terms().front());
  report.remainder = report.leading_present ? report.value + leading : report.value;
  report.remainder_max_gen = report.remainder.max_generator();
  return report;
}

}  // namespace ddbkit
