#pragma once

// Bookkeeping for finitely generated graded abelian groups: per-degree free
// rank plus cyclic torsion orders.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ddbkit/error.hpp"

namespace ddbkit {

struct GroupEntry {
  std::int64_t free_rank = 0;
  std::vector<std::int64_t> torsion;  // cyclic orders, each >= 2

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
};

namespace detail {

inline std::vector<std::int64_t> prime_power_parts(std::int64_t order) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= order; ++p) {
    if (order % p != 0) continue;
    std::int64_t q = 1;
    while (order % p == 0) {
      order /= p;
      q *= p;
    }
    out.push_back(q);
  }
  if (order > 1) out.push_back(order);
  return out;
}

}  // namespace detail

class GradedAbGroup {
 public:
  GradedAbGroup() = default;

  static GradedAbGroup point() {
    GradedAbGroup g;
    g.add_free(0, 1);
    return g;
  }

  /// Integral cohomology groups of S^n.
  static GradedAbGroup sphere(int n) {
    GradedAbGroup g;
    g.add_free(0, 1);
    g.add_free(n, 1);
    return g;
  }

  static GradedAbGroup product_of_spheres(int a, int b) {
    GradedAbGroup g;
    g.add_free(0, 1);
    g.add_free(a, 1);
    g.add_free(b, 1);
    g.add_free(a + b, 1);
    return g;
  }

  void add_free(int degree, std::int64_t rank) {
    check_degree(degree);
    if (rank < 0) throw Error(Errc::kDomain, "free rank must be nonnegative");
    if (rank == 0) return;
    entries_[degree].free_rank += rank;
  }

  void add_torsion(int degree, std::int64_t order) {
    check_degree(degree);
    if (order < 2) throw Error(Errc::kDomain, "torsion order must be at least 2");
    entries_[degree].torsion.push_back(order);
  }

  /// Entry in a degree; the zero entry when absent.
  GroupEntry at(int degree) const {
    auto it = entries_.find(degree);
    return it == entries_.end() ? GroupEntry{} : it->second;
  }

  const std::map<int, GroupEntry>& entries() const { return entries_; }

  /// Largest degree with a nonzero entry, -1 for the zero group.
  int top_degree() const { return entries_.empty() ? -1 : entries_.rbegin()->first; }

  bool is_torsion_free() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const auto& kv) { return kv.second.torsion.empty(); });
  }

  /// The same group with every degree raised by `by`.
  GradedAbGroup shifted(int by) const {
    GradedAbGroup out;
    for (const auto& [d, e] : entries_) {
      out.add_free(d + by, e.free_rank);
      for (auto t : e.torsion) out.add_torsion(d + by, t);
    }
    return out;
  }

  friend GradedAbGroup direct_sum(const GradedAbGroup& a, const GradedAbGroup& b) {
    GradedAbGroup out = a;
    for (const auto& [d, e] : b.entries_) {
      out.add_free(d, e.free_rank);
      for (auto t : e.torsion) out.add_torsion(d, t);
    }
    return out;
  }

  /// Torsion split into sorted prime powers, so Z/6 and Z/2 + Z/3 compare equal.
  std::vector<std::int64_t> normalized_torsion(int degree) const {
    std::vector<std::int64_t> out;
    for (auto t : at(degree).torsion) {
      auto parts = detail::prime_power_parts(t);
      out.insert(out.end(), parts.begin(), parts.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const GradedAbGroup& a, const GradedAbGroup& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (const auto& [d, e] : a.entries_) {
      if (b.at(d).free_rank != e.free_rank) return false;
      if (a.normalized_torsion(d) != b.normalized_torsion(d)) return false;
    }
    return true;
  }

  /// One `deg <d>: Z^<r> (+ Z/<t>)*` line per nonzero degree.
  std::string to_text() const {
    std::string out;
    for (const auto& [d, e] : entries_) {
      out += "deg " + std::to_string(d) + ": Z^" + std::to_string(e.free_rank);
      for (auto t : e.torsion) out += " + Z/" + std::to_string(t);
      out += '\n';
    }
    return out;
  }

  nlohmann::json to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto& [d, e] : entries_) {
      arr.push_back({{"degree", d}, {"free_rank", e.free_rank}, {"torsion", e.torsion}});
    }
    return arr;
  }

  static GradedAbGroup from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(Errc::kSyntax, "graded group JSON must be an array");
    GradedAbGroup g;
    for (const auto& item : j) {
      const int d = item.at("degree").get<int>();
      g.add_free(d, item.at("free_rank").get<std::int64_t>());
      for (const auto& t : item.at("torsion")) g.add_torsion(d, t.get<std::int64_t>());
    }
    return g;
  }

  /// Parses the line format; blank lines and `#` comments are ignored.
  static GradedAbGroup parse(std::string_view text) {
    GradedAbGroup g;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
        continue;
      }
      parse_line(line, lineno, g);
    }
    return g;
  }

 private:
  static void check_degree(int degree) {
    if (degree < 0) throw Error(Errc::kDomain, "degrees must be nonnegative");
  }

  static void parse_line(const std::string& line, int lineno, GradedAbGroup& g) {
    auto fail = [&](const std::string& msg) {
      throw Error(Errc::kSyntax, "graded group line " + std::to_string(lineno) + ": " + msg);
    };
    std::size_t pos = 0;
    auto skip = [&] {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    };
    auto literal = [&](std::string_view lit) {
      skip();
      if (line.compare(pos, lit.size(), lit) != 0) fail("expected '" + std::string(lit) + "'");
      pos += lit.size();
    };
    auto number = [&]() -> std::int64_t {
      skip();
      std::size_t start = pos;
      std::int64_t v = 0;
      while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) {
        v = v * 10 + (line[pos++] - '0');
        if (v > (std::int64_t{1} << 40)) fail("number too large");
      }
      if (pos == start) fail("expected a number");
      return v;
    };

    literal("deg");
    const auto degree = number();
    literal(":");
    literal("Z^");
    const auto rank = number();
    if (g.entries_.count(static_cast<int>(degree))) fail("degree listed twice");
    g.add_free(static_cast<int>(degree), rank);
    skip();
    while (pos < line.size()) {
      literal("+");
      literal("Z/");
      const auto order = number();
      if (order < 2) fail("torsion order must be at least 2");
      g.add_torsion(static_cast<int>(degree), order);
      skip();
    }
    // Keep "deg d: Z^0" lines from leaving an empty entry behind.
    if (auto it = g.entries_.find(static_cast<int>(degree)); it != g.entries_.end() && it->second.is_zero()) {
      g.entries_.erase(it);
    }
  }

  std::map<int, GroupEntry> entries_;
};

/// Alternating sum of free ranks; torsion does not contribute.
inline std::int64_t euler_char(const GradedAbGroup& g) {
  std::int64_t chi = 0;
  for (const auto& [d, e] : g.entries()) chi += (d % 2 == 0 ? 1 : -1) * e.free_rank;
  return chi;
}

/// chi(M) = chi(B_1) + chi(B_2) - chi(L) with chi(M) = 2 for an even rational sphere.
inline bool ddb_euler_check(std::int64_t chi_b1, std::int64_t chi_b2, std::int64_t chi_l) {
  return chi_b1 + chi_b2 - chi_l == 2;
}

/// Cohomology groups of the total space of an S^fiber_dim bundle whose Euler
/// class vanishes. The Gysin sequence then breaks into
///   0 -> H^s(B) -> H^s(L) -> H^{s-l}(B) -> 0,
/// and the result is the degree-wise direct sum H^s(B) + H^{s-l}(B).
inline GradedAbGroup gysin_total_space(const GradedAbGroup& base, int fiber_dim, bool euler_class_zero) {
  if (fiber_dim < 1) throw Error(Errc::kDomain, "fiber dimension must be positive");
  if (!euler_class_zero) {
    throw Error(Errc::kUnsupported,
                "nonzero Euler class: the Gysin sequence does not split and is not modeled");
  }
  return direct_sum(base, base.shifted(fiber_dim));
}

/// Z[e, a]/<m e, e a, a^2, e^{s+1}> with |e| = k+1, |a| = dimB.
struct BtopRing {
  int dim_b = 0;
  int k = 0;
  int s = 0;
  /// Order of the Euler class. Fixed at 2 for even k, unconstrained (>= 2) for odd k.
  std::optional<int> torsion_order;

  std::string presentation() const {
    const std::string m = torsion_order ? std::to_string(*torsion_order) : "m";
    return "Z[e,a]/<" + m + "e, ea, a^2, e^" + std::to_string(s + 1) + "> with |e| = " +
           std::to_string(k + 1) + ", |a| = " + std::to_string(dim_b);
  }

  /// Additive groups: Z in degrees 0 and dimB, Z/m in degrees j(k+1) for
  /// 1 <= j <= s. Only available once the torsion order is known.
  GradedAbGroup groups() const {
    if (!torsion_order) throw Error(Errc::kDomain, "torsion order is symbolic for odd k");
    GradedAbGroup g;
    g.add_free(0, 1);
    for (int j = 1; j <= s; ++j) g.add_torsion(j * (k + 1), *torsion_order);
    g.add_free(dim_b, 1);
    return g;
  }
};

enum class BtopRejection {
  kCongruence,   // dimB is not -1 mod (k+1)
  kEvenFiber,    // k even but dimB != 2k+1
};

class BtopError : public Error {
 public:
  BtopError(BtopRejection why, const std::string& what) : Error(Errc::kDomain, what), why_(why) {}
  BtopRejection why() const { return why_; }

 private:
  BtopRejection why_;
};

/// Cohomology ring of a rational-sphere base that is not a homotopy sphere
/// but carries an S^k bundle whose total space has product cohomology.
inline BtopRing btop_ring(int dim_b, int k) {
  if (k < 1 || k >= dim_b) {
    throw Error(Errc::kDomain, "need 1 <= k < dimB, got k = " + std::to_string(k) +
                                   ", dimB = " + std::to_string(dim_b));
  }
  if ((dim_b - k) % (k + 1) != 0) {
    throw BtopError(BtopRejection::kCongruence,
                    "dimB = " + std::to_string(dim_b) + " is not -1 mod " + std::to_string(k + 1) +
                        "; base must be a homotopy sphere");
  }
  BtopRing ring;
  ring.dim_b = dim_b;
  ring.k = k;
  ring.s = (dim_b - k) / (k + 1);
  if (k % 2 == 0) {
    if (dim_b != 2 * k + 1) {
      throw BtopError(BtopRejection::kEvenFiber,
                      "even k = " + std::to_string(k) + " forces dimB = 2k+1 = " +
                          std::to_string(2 * k + 1) + "; base must be a homotopy sphere");
    }
    ring.torsion_order = 2;
  }
  return ring;
}

}  // namespace ddbkit
