#include "sdft/support_set.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sdft/errors.hpp"

namespace sdft {

SupportSet::SupportSet(Index n, std::vector<Index> indices) : n_(n), indices_(std::move(indices)) {
  if (!is_pow2(n_)) throw InvalidInput("modulus " + std::to_string(n_) + " is not a power of two");
  if (indices_.empty()) throw InvalidInput("support set must not be empty");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw InvalidInput("support set has duplicate indices");
  if (indices_.back() >= n_)
    throw InvalidInput("index " + std::to_string(indices_.back()) + " out of range for N=" +
                       std::to_string(n_));
}

SupportSet SupportSet::full(Index n) {
  std::vector<Index> all(n);
  std::iota(all.begin(), all.end(), Index{0});
  return SupportSet(n, std::move(all));
}

bool SupportSet::contains(Index j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

std::size_t SupportSet::position(Index j) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), j);
  if (it == indices_.end() || *it != j)
    throw InvalidInput("index " + std::to_string(j) + " not in support");
  return static_cast<std::size_t>(it - indices_.begin());
}

}  // namespace sdft
