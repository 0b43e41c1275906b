#pragma once

// Row reduction over the two-element field with bit-packed rows.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace ddbkit {

class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  BitRow& operator^=(const BitRow& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  bool none() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  /// Index of the lowest set bit, if any.
  std::optional<std::size_t> lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return std::nullopt;
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
    return out;
  }

  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Incremental echelon form. Each stored row remembers which inserted rows
/// were XORed into it, so a successful reduction yields a certificate.
/// Pivots are the lowest set bit, which makes results independent of
/// anything but insertion order.
class Gf2Eliminator {
 public:
  Gf2Eliminator(std::size_t columns, std::size_t max_rows) : columns_(columns), max_rows_(max_rows) {}

  std::size_t rank() const { return pivots_.size(); }
  std::size_t inserted() const { return inserted_; }

  /// Adds a row; returns true when it was independent of earlier rows.
  bool insert(BitRow row) {
    BitRow combo(max_rows_);
    combo.set(inserted_++);
    reduce(row, combo);
    auto lead = row.lowest();
    if (!lead) return false;
    pivots_.emplace(*lead, Entry{std::move(row), std::move(combo)});
    return true;
  }

  /// When `target` lies in the row span, returns the set of inserted rows
  /// (by insertion index) summing to it.
  std::optional<BitRow> solve(BitRow target) const {
    BitRow combo(max_rows_);
    reduce(target, combo);
    if (!target.none()) return std::nullopt;
    return combo;
  }

 private:
  struct Entry {
    BitRow row;
    BitRow combo;
  };

  void reduce(BitRow& row, BitRow& combo) const {
    while (auto lead = row.lowest()) {
      auto it = pivots_.find(*lead);
      if (it == pivots_.end()) return;
      row ^= it->second.row;
      combo ^= it->second.combo;
    }
  }

  std::size_t columns_;
  std::size_t max_rows_;
  std::size_t inserted_ = 0;
  std::map<std::size_t, Entry> pivots_;
};

}  // namespace ddbkit
