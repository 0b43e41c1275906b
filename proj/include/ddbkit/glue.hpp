#pragma once

// Gluing two copies of a disk bundle over S^k along L, where L is
// KP^2 # -KP^2 (connected-sum ring) or has the cohomology of S^k x S^k
// (product ring). The Mayer-Vietoris map psi: H^k(S^k) + H^k(S^k) -> H^k(L)
// has rows pi_i^*(x_i), each a primitive class squaring to zero, and its
// cokernel is H^{k+1}(M_f).

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "ddbkit/error.hpp"
#include "ddbkit/smith.hpp"

namespace ddbkit {

enum class RingRelations {
  kConnectedSum,  // u^2 + v^2 = 0, uv = 0
  kProduct,       // u^2 = 0, v^2 = 0
};

inline const char* relations_name(RingRelations r) {
  return r == RingRelations::kConnectedSum ? "connected-sum" : "product";
}

/// Division-algebra dimensions: the only k with a rank-k bundle over S^k
/// whose w_k is nonzero (Milnor, Hopf invariant one).
inline bool is_division_algebra_dim(int k) { return k == 2 || k == 4 || k == 8; }

struct ConnectedSumRing {
  int k = 2;
  RingRelations relations = RingRelations::kConnectedSum;

  /// Validating constructor. The connected-sum ring only arises for k in
  /// {2, 4, 8}; for other even k, w_k(L) = 0 and L has the product ring.
  static ConnectedSumRing make(int k, RingRelations relations) {
    if (k < 2 || k % 2 != 0) {
      throw Error(Errc::kDomain, "k must be even and positive, got " + std::to_string(k));
    }
    if (relations == RingRelations::kConnectedSum && !is_division_algebra_dim(k)) {
      throw Error(Errc::kDomain,
                  "k = " + std::to_string(k) +
                      " is not in {2, 4, 8}: w_k(L) = 0 (Milnor), so H*(L) is the product ring "
                      "H*(S^k x S^k); use the product ring");
    }
    return ConnectedSumRing{k, relations};
  }

  int glued_dimension() const { return 2 * k + 1; }
};

/// The class alpha u + beta v in H^k(L).
struct DegKClass {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;

  bool primitive() const { return std::gcd(std::llabs(alpha), std::llabs(beta)) == 1; }

  friend auto operator<=>(const DegKClass&, const DegKClass&) = default;

  std::string to_string() const {
    auto coeff = [](std::int64_t c, const char* name, bool leading) {
      std::string out;
      if (c == 0) return out;
      if (c < 0) out += leading ? "-" : " - ";
      else if (!leading) out += " + ";
      if (std::llabs(c) != 1) out += std::to_string(std::llabs(c));
      out += name;
      return out;
    };
    if (alpha == 0 && beta == 0) return "0";
    return coeff(alpha, "u", true) + coeff(beta, "v", alpha == 0);
  }
};

/// Coefficient of the top class in (alpha u + beta v)^2: of u^2 for the
/// connected-sum ring (v^2 = -u^2, uv = 0), of uv for the product ring.
inline std::int64_t square_top_coeff(const DegKClass& c, const ConnectedSumRing& ring) {
  if (ring.relations == RingRelations::kConnectedSum) return c.alpha * c.alpha - c.beta * c.beta;
  return 2 * c.alpha * c.beta;
}

struct PrimitiveSquareZeroSet {
  std::vector<DegKClass> classes;  // sorted
  int search_bound = 0;
  /// The identity showing the brute-force list is complete for every bound.
  std::string closure_fact;
};

inline PrimitiveSquareZeroSet primitive_square_zero_set(const ConnectedSumRing& ring,
                                                         int search_bound = 50) {
  if (search_bound < 2) throw Error(Errc::kDomain, "search bound must be at least 2");
  PrimitiveSquareZeroSet out;
  out.search_bound = search_bound;
  for (std::int64_t a = -search_bound; a <= search_bound; ++a) {
    for (std::int64_t b = -search_bound; b <= search_bound; ++b) {
      DegKClass c{a, b};
      if (c.primitive() && square_top_coeff(c, ring) == 0) out.classes.push_back(c);
    }
  }
  out.closure_fact = ring.relations == RingRelations::kConnectedSum
                         ? "alpha^2 - beta^2 = 0 iff alpha = +-beta; primitivity then forces "
                           "|alpha| = |beta| = 1, so P = {+-(u+v), +-(u-v)} for every bound"
                         : "2 alpha beta = 0 iff alpha = 0 or beta = 0; primitivity then forces "
                           "the other coefficient to be +-1, so P = {+-u, +-v} for every bound";
  return out;
}

struct PsiMatrix {
  DegKClass first;   // pi_1^*(x_1)
  DegKClass second;  // pi_2^*(x_2)

  std::int64_t det() const { return first.alpha * second.beta - first.beta * second.alpha; }

  IntMatrix as_matrix() const { return {{first.alpha, first.beta}, {second.alpha, second.beta}}; }
};

enum class GluingVerdict {
  kNotRationalSphere,
  kHomotopySphere,
  kRationalSphereWithZ2,
  kRationalSphereWithTorsion,
};

inline const char* verdict_name(GluingVerdict v) {
  switch (v) {
    case GluingVerdict::kNotRationalSphere: return "NotRationalSphere";
    case GluingVerdict::kHomotopySphere: return "HomotopySphere";
    case GluingVerdict::kRationalSphereWithZ2: return "RationalSphereWithZ2";
    case GluingVerdict::kRationalSphereWithTorsion: return "RationalSphereWithTorsion";
  }
  return "?";
}

struct Gluing {
  PsiMatrix psi;
  std::int64_t abs_det = 0;
  Cokernel h_k1;  // H^{k+1}(M_f) = coker psi
  GluingVerdict verdict = GluingVerdict::kNotRationalSphere;
};

inline GluingVerdict verdict_from_cokernel(const Cokernel& c) {
  if (c.free_rank > 0) return GluingVerdict::kNotRationalSphere;
  if (c.torsion.empty()) return GluingVerdict::kHomotopySphere;
  if (c.torsion.size() == 1 && c.torsion[0] == 2) return GluingVerdict::kRationalSphereWithZ2;
  return GluingVerdict::kRationalSphereWithTorsion;
}

/// All 16 ordered row pairs from P, in row-pair index order.
inline std::vector<Gluing> enumerate_gluings(const ConnectedSumRing& ring) {
  const auto p = primitive_square_zero_set(ring, 2).classes;
  std::vector<Gluing> out;
  out.reserve(p.size() * p.size());
  for (const auto& r1 : p) {
    for (const auto& r2 : p) {
      Gluing g;
      g.psi = PsiMatrix{r1, r2};
      g.abs_det = std::llabs(g.psi.det());
      g.h_k1 = cokernel(g.psi.as_matrix());
      g.verdict = verdict_from_cokernel(g.h_k1);
      out.push_back(std::move(g));
    }
  }
  return out;
}

struct AdmissibleDimensions {
  std::vector<int> dimensions;
  std::vector<std::string> trace;
};

/// Dimensions 2k+1 in which the connected-sum gluing can produce a rational
/// sphere with Z/2 torsion.
inline AdmissibleDimensions admissible_dimensions() {
  AdmissibleDimensions out;
  for (int k : {2, 4, 8}) out.dimensions.push_back(2 * k + 1);
  out.trace.push_back(
      "axiom (imported): a rank-k bundle over S^k with w_k != 0 exists only for k in {2, 4, 8} "
      "(Milnor, Hopf invariant one)");
  out.trace.push_back(
      "for other even k, w_k(L) = 0 gives the product ring, where every gluing has |det| in {0, 1}");
  out.trace.push_back("k = 2, 4, 8 give M_f of dimension 5, 9, 17");
  return out;
}

}  // namespace ddbkit
