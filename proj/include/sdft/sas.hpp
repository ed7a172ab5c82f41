#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdft/congruence.hpp"
#include "sdft/hidft.hpp"
#include "sdft/numeric_core.hpp"

namespace sdft {

inline constexpr double kC1 = 1.5;  // radix-2 constant
inline constexpr double kC2 = 6.0;  // Vandermonde solve constant

// Shift-and-sample plan for a support J and pivots r.
struct SasPlan {
  PivotVector pivots;
  int decoding_level = 0;            // r_max + 1
  std::size_t mu_star = 0;           // max node weight at decoding_level
  std::uint64_t sum_sq_weights = 0;  // sum over nodes of mu(v)^2
  std::vector<Index> shifts;         // 0 .. mu_star - 1
  double predicted_cost = 0.0;       // c1 s 2^s mu* + c2 sum mu(v)^2
  double envelope = 0.0;             // 2^s mu* (c1 s + c2 mu*)
  std::uint64_t tree_bitops = 0;
};

// Throws ContractViolation unless J is r-part-homogeneous.
SasPlan make_plan(const SupportSet& support, const PivotVector& r);

enum class PivotPolicy { kBalanced, kUoe, kUoh, kRandomSubset, kAuto };

PivotPolicy parse_policy(const std::string& name);
std::string to_string(PivotPolicy policy);

// What the caller knows about the family the support was drawn from.
struct FamilyMeta {
  // Balanced: the pivots to use. UoH / random subsets: pivots of the base
  // homogeneous set. UoE: defaults to (0, ..., M-1) when absent.
  std::optional<PivotVector> base_pivots;
};

// floor(log2 k - log2 log2 k), clamped to [0, limit].
std::size_t loglog_prefix_size(std::size_t k, std::size_t limit);

// Picks r per policy and verifies that J is r-part-homogeneous. kAuto
// minimizes the predicted cost over all prefixes of pivots(J), preferring
// the shortest prefix on ties.
PivotVector select_pivots(const SupportSet& support, PivotPolicy policy, const FamilyMeta& meta = {});

// Solves sum_m x_m^j c_m = rhs_j, j = 0..m-1 (rows are powers of the nodes)
// with the Bjorck-Pereyra recurrences for the dual Vandermonde system.
// Counted cost is 2.5 m (m - 1). Throws InvalidInput on duplicate nodes.
ComplexVec vandermonde_solve(std::span<const Complex> nodes, std::span<const Complex> rhs,
                             OpCounter* counter = nullptr);

// Gaussian elimination with partial pivoting on a dense square system.
ComplexVec dense_solve(std::vector<ComplexVec> a, ComplexVec b, OpCounter* counter = nullptr);

// max_j |sum_m x_m^j c_m - rhs_j|
double vandermonde_residual(std::span<const Complex> nodes, std::span<const Complex> coeffs,
                            std::span<const Complex> rhs);

struct CostReport {
  std::uint64_t tree_build_bitops = 0;
  std::uint64_t hidft_adds = 0;
  std::uint64_t hidft_mults = 0;
  std::uint64_t solve_adds = 0;
  std::uint64_t solve_mults = 0;
  std::uint64_t read_ops = 0;
  double bound_alg1bnd = 0.0;   // predicted cost from the plan
  double bound_hidft = 0.0;     // mu* (1.5 A log2 A + A)
  std::uint64_t samples_touched = 0;
  std::size_t systems_solved = 0;
  std::size_t dense_fallbacks = 0;

  std::uint64_t hidft_ops() const noexcept { return hidft_adds + hidft_mults; }
  std::uint64_t solve_ops() const noexcept { return solve_adds + solve_mults; }
  std::uint64_t total() const noexcept { return hidft_ops() + solve_ops() + read_ops; }
};

struct NodeSystemRecord {
  NodeId node;
  std::vector<Index> members;
  double residual = 0.0;
  bool dense_fallback = false;
};

struct SasResult {
  ComplexVec coeffs;  // (F f)_J aligned with the support order
  SasPlan plan;
  CostReport cost;
  std::vector<NodeSystemRecord> systems;  // nodes with weight > 1
  std::vector<HiDftResult> measurements;  // one per shift
};

inline constexpr double kResidualGuard = 1e-8;

// Shift-and-sample: mu* shifted Hi-DFTs, then one Vandermonde system per
// aliased node at the decoding level; weight-1 nodes are read directly.
SasResult sas_transform(const SampleSource& f, const SupportSet& support, const PivotVector& r);

struct SubmatrixResult {
  ComplexVec coeffs;
  std::uint64_t ops = 0;
  double residual = 0.0;
};

// Baseline: solves F^{-1}({0..k-1}, J) (F f)_J = f_{0..k-1} from the first k
// samples.
SubmatrixResult submatrix_method(const SampleSource& f, const SupportSet& support);

}  // namespace sdft
