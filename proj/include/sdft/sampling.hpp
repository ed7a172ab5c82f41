#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sdft/congruence.hpp"
#include "sdft/numeric_core.hpp"
#include "sdft/support_set.hpp"

namespace sdft {

// Multi-coset time-domain sample set I_r = { sum_k b_k 2^{M-1-r_k} }.
struct SamplingPattern {
  int levels = 0;  // M
  PivotVector pivots;
  std::vector<Index> samples;  // sorted, distinct

  Index modulus() const noexcept { return Index{1} << levels; }
  std::size_t size() const noexcept { return samples.size(); }
};

// Built by the recursion I_r = I_{r^-} U (2^{M-1-r_max} + I_{r^-}), I_() = {0}.
SamplingPattern pivoted_pattern(const PivotVector& r, int levels);
// Built from the closed form, for cross-checking the recursion.
SamplingPattern pivoted_pattern_closed_form(const PivotVector& r, int levels);

// h_r(m) = prod_i (1 + e^{-2 pi i m / 2^{r_i + 1}}), the DFT of 1_{I_r} at m.
Complex aliasing_value(const PivotVector& r, Index m);
// Structural zero test: some factor vanishes iff v2(m) is a pivot of r.
bool aliasing_is_zero(const PivotVector& r, Index m);

struct PairIsolation {
  Index j1 = 0;
  Index j2 = 0;
  int valuation = 0;       // v2(j1 - j2)
  bool isolated = false;   // h vanishes structurally
  Complex h;               // floating value of the product
  bool matches_rule = false;
};

struct IsolationReport {
  PivotVector sub_pivots;  // r^{n-}
  std::size_t expected_alias_value = 0;  // 2^{size(r) - n}
  std::vector<PairIsolation> pairs;
  bool all_match = true;
};

// For every pair j1 < j2 in J, checks h_{r^{n-}}(j1 - j2) against the
// vanishing rule: zero iff v2(j1 - j2) is in r^{n-}, else 2^{size(r) - n}.
// Throws ContractViolation if J is not r-part-homogeneous.
IsolationReport check_isolation(const PivotVector& r, const SupportSet& support, std::size_t drop);

struct IsolatingSetResult {
  std::size_t min_size = 0;     // exact minimum when `exact`, else a lower bound
  std::vector<Index> witness;   // lexicographically least isolating set of min_size
  bool exact = false;
  std::uint64_t visited = 0;
  // Smallest isolating pivoted pattern, an upper bound from structured candidates.
  std::optional<SamplingPattern> structured_upper;
};

inline constexpr std::uint64_t kDefaultIsolationBudget = 200'000'000;

// Smallest I within Z_N with F(1_I)(j1 - j2) = 0 for all j1 != j2 in K.
// Subsets are enumerated by increasing size in lexicographic order; since h
// only changes by a phase under translation, only sets containing 0 are
// enumerated. Zero tests are exact (integer coordinates in the cyclotomic
// power basis). Exceeding the budget returns a lower bound with exact = false.
IsolatingSetResult min_isolating_set(const SupportSet& k_set,
                                     std::uint64_t budget = kDefaultIsolationBudget);

// Exact zero test of sum_{i in I} e^{-2 pi i d i / N}.
bool isolates_difference(Index n, std::span<const Index> samples, Index d);

}  // namespace sdft
