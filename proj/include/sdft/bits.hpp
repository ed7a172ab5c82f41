#pragma once

#include <bit>
#include <cstdint>

namespace sdft {

using Index = std::uint64_t;

constexpr bool is_pow2(Index n) noexcept { return n != 0 && std::has_single_bit(n); }

// Exact log2 of a power of two.
constexpr int log2_exact(Index n) noexcept { return std::countr_zero(n); }

// 2-adic valuation of a nonzero residue difference.
constexpr int v2(Index x) noexcept { return std::countr_zero(x); }

constexpr Index mod_pow2(Index x, int level) noexcept {
  return level >= 64 ? x : (x & ((Index{1} << level) - 1));
}

}  // namespace sdft
