#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sdft/bits.hpp"

namespace sdft {

// A validated frequency support J within Z_N, N = 2^M. Indices are kept
// sorted and distinct.
class SupportSet {
 public:
  SupportSet() = default;

  // Sorts and validates. Throws InvalidInput on duplicates, out-of-range
  // indices, an empty set or a non-power-of-two modulus.
  SupportSet(Index n, std::vector<Index> indices);

  static SupportSet full(Index n);

  Index modulus() const noexcept { return n_; }
  int levels() const noexcept { return log2_exact(n_); }
  std::size_t size() const noexcept { return indices_.size(); }
  std::span<const Index> indices() const noexcept { return indices_; }
  Index operator[](std::size_t i) const noexcept { return indices_[i]; }

  bool contains(Index j) const;
  // Position of j in the sorted index list; throws if absent.
  std::size_t position(Index j) const;

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  Index n_ = 1;
  std::vector<Index> indices_{0};
};

}  // namespace sdft
