#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

#include "ddbkit/error.hpp"

namespace ddbkit {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Cokernel of an integer matrix viewed as a map Z^cols -> Z^rows.
struct Cokernel {
  std::int64_t free_rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1, divisibility chain

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
};

/// Diagonal of the Smith normal form (nonnegative, each dividing the next,
/// zeros last), by unimodular row and column operations.
inline std::vector<std::int64_t> smith_diagonal(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (const auto& r : a) {
    if (r.size() != cols) throw Error(Errc::kDomain, "ragged matrix");
  }
  std::vector<std::int64_t> diag;
  const std::size_t n = std::min(rows, cols);
  for (std::size_t p = 0; p < n; ++p) {
    bool rest_zero = false;
    // Bring the smallest nonzero entry of the trailing block to (p, p).
    for (;;) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = p; i < rows; ++i) {
        for (std::size_t j = p; j < cols; ++j) {
          if (a[i][j] != 0 && (bi == rows || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == rows) {
        rest_zero = true;
        break;
      }
      std::swap(a[p], a[bi]);
      for (auto& r : a) std::swap(r[p], r[bj]);

      bool clean = true;
      for (std::size_t i = p + 1; i < rows; ++i) {
        const std::int64_t q = a[i][p] / a[p][p];
        for (std::size_t j = p; j < cols; ++j) a[i][j] -= q * a[p][j];
        if (a[i][p] != 0) clean = false;
      }
      for (std::size_t j = p + 1; j < cols; ++j) {
        const std::int64_t q = a[p][j] / a[p][p];
        for (std::size_t i = p; i < rows; ++i) a[i][j] -= q * a[i][p];
        if (a[p][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row p.
      bool divides = true;
      for (std::size_t i = p + 1; i < rows && divides; ++i) {
        for (std::size_t j = p + 1; j < cols; ++j) {
          if (a[i][j] % a[p][p] != 0) {
            for (std::size_t c = p; c < cols; ++c) a[p][c] += a[i][c];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (rest_zero) break;
    diag.push_back(std::llabs(a[p][p]));
  }
  diag.resize(n, 0);
  return diag;
}

inline Cokernel cokernel(const IntMatrix& a) {
  Cokernel out;
  const auto diag = smith_diagonal(a);
  out.free_rank = static_cast<std::int64_t>(a.size());
  for (auto d : diag) {
    if (d == 0) continue;
    --out.free_rank;
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

}  // namespace ddbkit
