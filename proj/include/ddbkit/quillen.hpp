#pragma once

// The ideal J = <w_2, Sq^1 w_2, Sq^2 Sq^1 w_2, ...> in H*(BSO(m); Z_2) and
// membership in it, decided one homogeneous degree at a time by row
// reduction over the two-element field.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddbkit/error.hpp"
#include "ddbkit/gf2_matrix.hpp"
#include "ddbkit/mod2_poly.hpp"
#include "ddbkit/steenrod.hpp"

namespace ddbkit {

/// Writing s = 8t + u with 1 <= u <= 8: 4t, 4t+1, 4t+2 (u = 3, 4) or 4t+3.
inline int quillen_h(int s) {
  if (s < 1) throw Error(Errc::kDomain, "h is defined for s >= 1");
  const int t = (s - 1) / 8;
  const int u = s - 8 * t;
  if (u == 1) return 4 * t;
  if (u == 2) return 4 * t + 1;
  if (u == 3 || u == 4) return 4 * t + 2;
  return 4 * t + 3;
}

inline constexpr int kExpandAll = -1;

struct QuillenIdeal {
  int m = 2;
  SWRing ring;
  /// w_2, v_0, ..., v_{h(m)-1} where v_t = Sq^{2^t} ... Sq^1 w_2. Generators
  /// whose degree exceeds `expanded_through` are listed but not expanded.
  std::vector<std::optional<Mod2Poly>> generators;
  std::vector<SqWord> words;
  int expanded_through = kExpandAll;

  /// Nominal degree of generator g (2 for w_2, 2^{t+1}+1 for v_t), even when
  /// truncation has made the generator zero.
  int generator_degree(std::size_t g) const { return g == 0 ? 2 : (1 << g) + 1; }

  bool covers_degree(int d) const { return expanded_through == kExpandAll || d <= expanded_through; }

  const Mod2Poly& generator(std::size_t g) const {
    if (!generators.at(g)) {
      throw Error(Errc::kDomain, "generator " + label(g) + " (degree " +
                                     std::to_string(generator_degree(g)) + ") was not expanded");
    }
    return *generators[g];
  }

  std::string label(std::size_t g) const {
    if (g == 0) return "w2";
    return words[g].to_string() + " w2";
  }

  std::string value_text(std::size_t g) const {
    return generators.at(g) ? generators[g]->to_string() : "(not expanded)";
  }
};

/// Generators of J in H*(BSO(m); Z_2). With a degree cap, only generators of
/// degree <= cap are expanded; that is all membership below the cap needs.
inline QuillenIdeal quillen_generators(int m, int degree_cap = kExpandAll) {
  if (m < 2) throw Error(Errc::kDomain, "Quillen's ideal needs m >= 2");
  const int count = quillen_h(m);
  QuillenIdeal ideal;
  ideal.m = m;
  ideal.ring = SWRing::oriented(m);
  ideal.expanded_through = degree_cap;
  const Mod2Poly w2 = Mod2Poly::generator(ideal.ring, 2);
  ideal.generators.emplace_back(w2);
  ideal.words.push_back(SqWord{});
  std::optional<Mod2Poly> previous = w2;
  for (int t = 0; t < count; ++t) {
    SqWord word = SqWord::spin_word(t);
    const int degree = (2 << t) + 1;
    if (degree_cap != kExpandAll && degree > degree_cap) {
      previous.reset();
    } else if (degree > 40 && m > 12) {
      throw Error(Errc::kDomain, "expanding every generator for m = " + std::to_string(m) +
                                     " is infeasible; pass a degree cap");
    } else {
      // v_t = Sq^{2^t} v_{t-1}
      previous = sq(1 << t, *previous);
    }
    ideal.generators.push_back(previous);
    ideal.words.push_back(std::move(word));
  }
  return ideal;
}

struct MembershipCertificate {
  bool member = false;
  /// (generator index, cofactor); sum of generator * cofactor equals the query.
  std::vector<std::pair<std::size_t, Mod2Poly>> combination;

  Mod2Poly evaluate(const QuillenIdeal& ideal) const {
    Mod2Poly out = Mod2Poly::zero(ideal.ring);
    for (const auto& [g, cofactor] : combination) out += ideal.generator(g) * cofactor;
    return out;
  }
};

namespace detail {

inline MembershipCertificate in_ideal_homogeneous(const Mod2Poly& p, int degree,
                                                  const QuillenIdeal& ideal) {
  const SWRing& ring = ideal.ring;
  const auto basis = basis_of_degree(ring, degree);
  std::map<Monomial, std::size_t> column;
  for (std::size_t c = 0; c < basis.size(); ++c) column.emplace(basis[c], c);

  auto to_row = [&](const Mod2Poly& q) {
    BitRow row(basis.size());
    for (const auto& t : q.terms()) row.flip(column.at(t));
    return row;
  };

  // Spanning set: generator * monomial cofactor, generators in order.
  struct Source {
    std::size_t generator;
    Monomial cofactor;
  };
  std::vector<Source> sources;
  std::vector<BitRow> rows;
  for (std::size_t g = 0; g < ideal.generators.size(); ++g) {
    const int gdeg = ideal.generator_degree(g);
    if (gdeg > degree) continue;
    const Mod2Poly& gen = ideal.generator(g);
    if (gen.is_zero()) continue;
    for (const auto& mu : basis_of_degree(ring, degree - gdeg)) {
      rows.push_back(to_row(gen * Mod2Poly::from_monomials(ring, {mu})));
      sources.push_back(Source{g, mu});
    }
  }

  Gf2Eliminator elim(basis.size(), rows.size());
  for (auto& row : rows) elim.insert(std::move(row));

  MembershipCertificate cert;
  auto combo = elim.solve(to_row(p));
  if (!combo) return cert;
  cert.member = true;
  std::map<std::size_t, std::vector<Monomial>> grouped;
  for (std::size_t r : combo->ones()) grouped[sources[r].generator].push_back(sources[r].cofactor);
  for (auto& [g, monos] : grouped) {
    Mod2Poly cofactor = Mod2Poly::from_monomials(ring, std::move(monos));
    if (!cofactor.is_zero()) cert.combination.emplace_back(g, std::move(cofactor));
  }
  return cert;
}

}  // namespace detail

/// Decides p in J. A nonhomogeneous p is a member iff each homogeneous
/// component is; the certificate then sums the per-degree certificates.
inline MembershipCertificate in_ideal(const Mod2Poly& p, const QuillenIdeal& ideal) {
  if (!ideal.ring.bounded()) throw Error(Errc::kUnboundedRing, "membership needs a bounded ring");
  if (!(p.ring() == ideal.ring)) {
    throw Error(Errc::kRingMismatch, "query ring " + p.ring().describe() + " differs from ideal ring " +
                                         ideal.ring.describe());
  }
  if (!ideal.covers_degree(p.max_degree())) {
    throw Error(Errc::kDomain, "query degree " + std::to_string(p.max_degree()) +
                                   " is above the ideal's expansion cap " +
                                   std::to_string(ideal.expanded_through));
  }
  MembershipCertificate total;
  total.member = true;
  std::map<std::size_t, Mod2Poly> cofactors;
  for (const auto& [degree, part] : p.homogeneous_components()) {
    auto cert = detail::in_ideal_homogeneous(part, degree, ideal);
    if (!cert.member) return MembershipCertificate{};
    for (auto& [g, c] : cert.combination) {
      auto [it, inserted] = cofactors.try_emplace(g, Mod2Poly::zero(ideal.ring));
      it->second += c;
    }
  }
  for (auto& [g, c] : cofactors) {
    if (!c.is_zero()) total.combination.emplace_back(g, std::move(c));
  }
  return total;
}

enum class SpinObstructionStatus {
  kVanishes,
  kNotPowerOfTwo,
  kInequalityFails,
  kLemmaFails,
};

/// Outcome of the top-class argument for a spin bundle of rank k+1.
struct SpinObstruction {
  int k = 0;
  bool vanishes = false;
  SpinObstructionStatus status = SpinObstructionStatus::kNotPowerOfTwo;
  std::optional<int> t;
  std::optional<int> h_value;
  std::string inequality;
  std::string reason;
  std::optional<SpinLemmaReport> lemma;
  std::optional<MembershipCertificate> certificate;
};

/// For k = 2^{t+1}: checks t <= h(k+1) - 1, expands v_t = w_{k+1} + p with
/// p in lower generators, and certifies v_t in J. Then w_{k+1} = p modulo J,
/// so w_{k+1} dies on a base with vanishing mod-2 cohomology below degree k.
inline SpinObstruction spin_top_class_vanishes(int k) {
  if (k < 4 || k % 2 != 0) {
    throw Error(Errc::kDomain, "k must be even and at least 4, got " + std::to_string(k));
  }
  SpinObstruction out;
  out.k = k;
  if (!std::has_single_bit(static_cast<unsigned>(k))) {
    out.status = SpinObstructionStatus::kNotPowerOfTwo;
    out.reason =
        "k = " + std::to_string(k) +
        " is not a power of two; lowest nonvanishing Stiefel-Whitney degree must be a power of 2";
    return out;
  }
  const int t = std::countr_zero(static_cast<unsigned>(k)) - 1;
  const int h = quillen_h(k + 1);
  out.t = t;
  out.h_value = h;
  out.inequality = "t <= h(k+1) - 1: " + std::to_string(t) + " <= h(" + std::to_string(k + 1) +
                   ") - 1 = " + std::to_string(h - 1);
  if (t > h - 1) {
    out.status = SpinObstructionStatus::kInequalityFails;
    out.reason = "inequality fails: " + out.inequality;
    return out;
  }
  const SWRing ring = SWRing::oriented(k + 1);
  out.lemma = verify_spin_lemma(t, ring);
  if (!out.lemma->holds()) {
    out.status = SpinObstructionStatus::kLemmaFails;
    out.reason = "v_t does not have the form w_{k+1} + p(w_2, ..., w_{k-1})";
    return out;
  }
  const QuillenIdeal ideal = quillen_generators(k + 1, k + 1);
  out.certificate = in_ideal(out.lemma->value, ideal);
  if (!out.certificate->member) {
    out.status = SpinObstructionStatus::kLemmaFails;
    out.reason = "v_t is not in the kernel ideal";
    return out;
  }
  out.vanishes = true;
  out.status = SpinObstructionStatus::kVanishes;
  out.reason = "w_" + std::to_string(k + 1) + " + " + out.lemma->remainder.to_string() +
               " lies in the kernel ideal, so w_" + std::to_string(k + 1) +
               " vanishes on a spin bundle over a base with no mod-2 cohomology below degree " +
               std::to_string(k);
  return out;
}

}  // namespace ddbkit
