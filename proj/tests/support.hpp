#pragma once

// Shared helpers for the test binaries: conversion to oracle form and
// seeded random polynomials.

#include <random>
#include <vector>

#include "ddbkit/mod2_poly.hpp"
#include "oracles/oracles.hpp"

namespace ddbkit::testing {

inline oracle::Poly to_oracle(const Mod2Poly& p) {
  oracle::Poly out;
  for (const auto& t : p.terms()) {
    oracle::Exponents e;
    for (int f : t.factors()) ++e[f];
    out.insert(e);
  }
  return out;
}

inline oracle::Ring to_oracle(const SWRing& r) { return oracle::Ring{r.min_gen, *r.max_gen}; }

/// A random homogeneous polynomial of degree d (possibly zero).
inline Mod2Poly random_homogeneous(std::mt19937& rng, const SWRing& ring, int d) {
  const auto basis = basis_of_degree(ring, d);
  std::vector<Monomial> chosen;
  std::bernoulli_distribution coin(0.5);
  for (const auto& m : basis) {
    if (coin(rng)) chosen.push_back(m);
  }
  return Mod2Poly::from_monomials(ring, std::move(chosen));
}

/// A random polynomial with components in degrees 0..max_degree.
inline Mod2Poly random_poly(std::mt19937& rng, const SWRing& ring, int max_degree) {
  std::vector<Monomial> chosen;
  std::uniform_int_distribution<int> pick_deg(0, max_degree);
  std::uniform_int_distribution<int> count(0, 6);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const auto basis = basis_of_degree(ring, pick_deg(rng));
    if (basis.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    chosen.push_back(basis[pick(rng)]);
  }
  return Mod2Poly::from_monomials(ring, std::move(chosen));
}

}  // namespace ddbkit::testing
