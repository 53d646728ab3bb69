#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cwn::chaos {

// Finitely supported exponent sequence over coordinates 0,1,2,...
// Entries are (coordinate, exponent) with coordinates strictly increasing and
// exponents >= 1; the empty list is the zero multi-index.
class MultiIndex {
 public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;

  MultiIndex() = default;
  // Validates canonical form; throws std::invalid_argument otherwise.
  explicit MultiIndex(std::vector<Entry> entries);
  // Sorts, merges duplicates and drops zero exponents.
  static MultiIndex collect(std::span<const Entry> entries);
  static MultiIndex unit(std::uint32_t coordinate);

  bool zero() const { return entries_.empty(); }
  int order() const;                        // |alpha| = sum of exponents
  std::uint32_t exponent(std::uint32_t coordinate) const;
  std::uint32_t max_coordinate() const;     // 0 for the zero multi-index
  const std::vector<Entry>& entries() const { return entries_; }

  double factorial_log() const;             // ln(alpha!) = sum ln(alpha_k!)

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ <=> b.entries_;
  }
  std::size_t hash() const;

 private:
  std::vector<Entry> entries_;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& a) const { return a.hash(); }
};

}  // namespace cwn::chaos
