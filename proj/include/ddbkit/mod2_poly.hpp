#pragma once

// Graded polynomials over the two-element field in Stiefel-Whitney
// generators w_i (|w_i| = i).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddbkit/error.hpp"

namespace ddbkit {

/// Which generators exist: w_j for min_gen <= j <= max_gen.
///
/// min_gen = 2 models H*(BSO(m); Z_2) = Z_2[w_2, ..., w_m]; min_gen = 1 models
/// H*(BO(m); Z_2). An empty max_gen means no truncation.
struct SWRing {
  int min_gen = 2;
  std::optional<int> max_gen;

  static SWRing oriented(int m) { return checked(2, m); }
  static SWRing unoriented(int m) { return checked(1, m); }
  static SWRing oriented_unbounded() { return SWRing{2, std::nullopt}; }
  static SWRing unoriented_unbounded() { return SWRing{1, std::nullopt}; }

  bool bounded() const { return max_gen.has_value(); }
  bool is_oriented() const { return min_gen == 2; }
  bool has_generator(int j) const { return j >= min_gen && (!max_gen || j <= *max_gen); }

  friend bool operator==(const SWRing&, const SWRing&) = default;

  std::string describe() const {
    std::string out = is_oriented() ? "oriented" : "unoriented";
    out += max_gen ? " rank " + std::to_string(*max_gen) : " unbounded";
    return out;
  }

 private:
  static SWRing checked(int min_gen, int max_gen) {
    if (max_gen < min_gen) {
      throw Error(Errc::kDomain, "ring rank " + std::to_string(max_gen) +
                                     " is below the first generator w" + std::to_string(min_gen));
    }
    return SWRing{min_gen, max_gen};
  }
};

/// A monomial stored as its sorted multiset of generator indices, so
/// w2^2*w3 is {2, 2, 3}. The unit monomial is the empty multiset.
class Monomial {
 public:
  Monomial() = default;

  explicit Monomial(std::vector<int> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
    for (int f : factors_) degree_ += f;
  }

  static Monomial generator(int j) { return Monomial(std::vector<int>{j}); }

  const std::vector<int>& factors() const { return factors_; }
  int degree() const { return degree_; }
  bool is_unit() const { return factors_.empty(); }
  int max_generator() const { return factors_.empty() ? 0 : factors_.back(); }

  /// (index, exponent) pairs in increasing index order.
  std::vector<std::pair<int, int>> exponents() const {
    std::vector<std::pair<int, int>> out;
    for (int f : factors_) {
      if (!out.empty() && out.back().first == f) {
        ++out.back().second;
      } else {
        out.emplace_back(f, 1);
      }
    }
    return out;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    std::merge(a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
               std::back_inserter(out.factors_));
    out.degree_ = a.degree_ + b.degree_;
    return out;
  }

  // Canonical order: by degree, then lexicographically on sorted indices.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(),
                                                  b.factors_.begin(), b.factors_.end());
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& [index, exp] : exponents()) {
      if (!out.empty()) out += '*';
      out += 'w';
      out += std::to_string(index);
      if (exp > 1) {
        out += '^';
        out += std::to_string(exp);
      }
    }
    return out;
  }

 private:
  std::vector<int> factors_;
  int degree_ = 0;
};

/// Element of Z_2[w_i]. Terms are a sorted set of monomials: a monomial is
/// present iff its coefficient is 1.
class Mod2Poly {
 public:
  explicit Mod2Poly(SWRing ring = SWRing::oriented_unbounded()) : ring_(ring) {}

  static Mod2Poly zero(const SWRing& ring) { return Mod2Poly(ring); }

  static Mod2Poly one(const SWRing& ring) {
    Mod2Poly p(ring);
    p.terms_.emplace_back();
    return p;
  }

  /// w_j as an element of the ring. Throws when w_j is not a generator.
  static Mod2Poly generator(const SWRing& ring, int j) {
    if (!ring.has_generator(j)) {
      throw Error(Errc::kOutOfRange, "generator w" + std::to_string(j) + " is outside the " +
                                         ring.describe() + " ring");
    }
    Mod2Poly p(ring);
    p.terms_.push_back(Monomial::generator(j));
    return p;
  }

  /// w_j with the truncation conventions: w_0 = 1, and w_j = 0 when j is
  /// below the first generator or above the rank.
  static Mod2Poly generator_or_zero(const SWRing& ring, int j) {
    if (j == 0) return one(ring);
    if (!ring.has_generator(j)) return zero(ring);
    return generator(ring, j);
  }

  /// Sum of the given monomials with mod-2 cancellation of repeats. Monomials
  /// mentioning generators outside the ring are dropped.
  static Mod2Poly from_monomials(const SWRing& ring, std::vector<Monomial> monomials) {
    Mod2Poly p(ring);
    std::erase_if(monomials, [&](const Monomial& m) { return !p.fits(m); });
    p.terms_ = collapse(std::move(monomials));
    return p;
  }

  const SWRing& ring() const { return ring_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool contains(const Monomial& m) const { return std::binary_search(terms_.begin(), terms_.end(), m); }

  /// Largest degree among the terms; -1 for the zero polynomial.
  int max_degree() const { return terms_.empty() ? -1 : terms_.back().degree(); }

  bool is_homogeneous() const {
    return terms_.empty() || terms_.front().degree() == terms_.back().degree();
  }

  /// Largest generator index occurring in any term; 0 when none does.
  int max_generator() const {
    int out = 0;
    for (const auto& t : terms_) out = std::max(out, t.max_generator());
    return out;
  }

  std::map<int, Mod2Poly> homogeneous_components() const {
    std::map<int, Mod2Poly> out;
    for (const auto& t : terms_) {
      auto [it, inserted] = out.try_emplace(t.degree(), ring_);
      it->second.terms_.push_back(t);
    }
    return out;
  }

  Mod2Poly component(int degree) const {
    Mod2Poly out(ring_);
    for (const auto& t : terms_) {
      if (t.degree() == degree) out.terms_.push_back(t);
    }
    return out;
  }

  /// Image in a smaller (or equal) ring: generators the target lacks go to 0.
  Mod2Poly project(const SWRing& target) const {
    if (target.min_gen != ring_.min_gen) {
      throw Error(Errc::kRingMismatch, "projection must keep the orientation model");
    }
    Mod2Poly out(target);
    for (const auto& t : terms_) {
      if (out.fits(t)) out.terms_.push_back(t);
    }
    return out;
  }

  friend Mod2Poly operator+(const Mod2Poly& a, const Mod2Poly& b) {
    require_same_ring(a, b);
    Mod2Poly out(a.ring_);
    std::set_symmetric_difference(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                                  b.terms_.end(), std::back_inserter(out.terms_));
    return out;
  }
  friend Mod2Poly operator-(const Mod2Poly& a, const Mod2Poly& b) { return a + b; }

  Mod2Poly& operator+=(const Mod2Poly& other) { return *this = *this + other; }

  friend Mod2Poly operator*(const Mod2Poly& a, const Mod2Poly& b) {
    require_same_ring(a, b);
    std::vector<Monomial> products;
    products.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) products.push_back(x * y);
    }
    Mod2Poly out(a.ring_);
    out.terms_ = collapse(std::move(products));
    return out;
  }

  Mod2Poly& operator*=(const Mod2Poly& other) { return *this = *this * other; }

  friend bool operator==(const Mod2Poly&, const Mod2Poly&) = default;

  /// Canonical text: "0", or terms in canonical order joined by " + ".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += " + ";
      out += t.to_string();
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Mod2Poly& p) { return os << p.to_string(); }

 private:
  bool fits(const Monomial& m) const {
    return std::all_of(m.factors().begin(), m.factors().end(),
                       [&](int j) { return ring_.has_generator(j); });
  }

  static void require_same_ring(const Mod2Poly& a, const Mod2Poly& b) {
    if (!(a.ring_ == b.ring_)) {
      throw Error(Errc::kRingMismatch,
                  "ring mismatch: " + a.ring_.describe() + " vs " + b.ring_.describe());
    }
  }

  // Sort, then keep one copy of each monomial that occurs an odd number of times.
  static std::vector<Monomial> collapse(std::vector<Monomial> monomials) {
    std::sort(monomials.begin(), monomials.end());
    std::vector<Monomial> out;
    for (std::size_t i = 0; i < monomials.size();) {
      std::size_t j = i + 1;
      while (j < monomials.size() && monomials[j] == monomials[i]) ++j;
      if ((j - i) % 2 == 1) out.push_back(std::move(monomials[i]));
      i = j;
    }
    return out;
  }

  SWRing ring_;
  std::vector<Monomial> terms_;
};

/// Parity of the generalized binomial coefficient C(n, k), k >= 0.
///
/// For n >= 0 this is Lucas' criterion; for n < 0 it uses
/// C(n, k) = (-1)^k C(k - n - 1, k).
inline int binom_parity(std::int64_t n, std::int64_t k) {
  if (k < 0) throw Error(Errc::kDomain, "binomial lower index must be nonnegative");
  if (n < 0) n = k - n - 1;
  if (k > n) return 0;
  return (k & ~n) == 0 ? 1 : 0;
}

namespace detail {

inline void enumerate_partitions(int remaining, int smallest, int largest, std::vector<int>& parts,
                                 std::vector<Monomial>& out) {
  if (remaining == 0) {
    out.emplace_back(parts);
    return;
  }
  for (int part = smallest; part <= std::min(largest, remaining); ++part) {
    parts.push_back(part);
    enumerate_partitions(remaining - part, part, largest, parts, out);
    parts.pop_back();
  }
}

}  // namespace detail

/// All monomials of total degree d, in canonical order.
inline std::vector<Monomial> basis_of_degree(const SWRing& ring, int d) {
  if (!ring.bounded()) {
    throw Error(Errc::kUnboundedRing, "degree basis needs a ring of finite rank");
  }
  if (d < 0) return {};
  std::vector<Monomial> out;
  std::vector<int> parts;
  detail::enumerate_partitions(d, ring.min_gen, *ring.max_gen, parts, out);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const SWRing& ring) : text_(text), ring_(ring) {}

  Mod2Poly parse() {
    skip_space();
    if (at_end()) fail("empty polynomial");
    std::vector<Monomial> terms;
    if (peek() == '0') {
      ++pos_;
      skip_space();
      if (!at_end()) fail("unexpected text after '0'");
      return Mod2Poly::zero(ring_);
    }
    terms.push_back(term());
    skip_space();
    while (!at_end()) {
      expect('+');
      skip_space();
      terms.push_back(term());
      skip_space();
    }
    return Mod2Poly::from_monomials(ring_, std::move(terms));
  }

 private:
  Monomial term() {
    if (peek() == '1') {
      ++pos_;
      return Monomial{};
    }
    std::vector<int> factors;
    factor(factors);
    for (;;) {
      std::size_t save = pos_;
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
        factor(factors);
      } else {
        pos_ = save;
        break;
      }
    }
    return Monomial(std::move(factors));
  }

  void factor(std::vector<int>& factors) {
    expect('w');
    int index = number("generator index");
    int exp = 1;
    if (!at_end() && peek() == '^') {
      ++pos_;
      exp = number("exponent");
    }
    if (!ring_.has_generator(index)) {
      throw Error(Errc::kOutOfRange, "generator w" + std::to_string(index) + " is outside the " +
                                         ring_.describe() + " ring");
    }
    factors.insert(factors.end(), exp, index);
  }

  int number(const char* what) {
    std::size_t start = pos_;
    long long value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > 100000) fail(std::string(what) + " is too large");
      ++pos_;
    }
    if (pos_ == start) fail(std::string("expected ") + what);
    if (value == 0) fail(std::string(what) + " must be positive");
    return static_cast<int>(value);
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::kSyntax,
                "polynomial syntax error at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  std::string_view text_;
  SWRing ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `0 | term (" + " term)*` with `term := w<i>[^<e>] ("*" w<j>[^<e>])*`.
/// The unit monomial is written "1".
inline Mod2Poly parse_poly(std::string_view text, const SWRing& ring) {
  return detail::PolyParser(text, ring).parse();
}

}  // namespace ddbkit
