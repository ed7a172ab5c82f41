#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdft/congruence.hpp"
#include "sdft/numeric_core.hpp"
#include "sdft/support_set.hpp"

namespace sdft {

// SplitMix64. Stateless per draw (state is a counter), so streams replay
// exactly on every platform. All bounded draws use rejection sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1).
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }

  // Independent stream for sub-task `i`.
  Rng fork(std::uint64_t i) const;

 private:
  std::uint64_t state_;
};

// Coefficients uniform in [-1, 1]^2; with `nonzero`, magnitudes are kept at
// least 1e-3.
ComplexVec random_coeffs(std::size_t count, Rng& rng, bool nonzero = true);

struct GapSpec {
  Index a = 0;
  std::vector<Index> steps;    // s_1 .. s_d
  std::vector<Index> lengths;  // N_1 .. N_d
  Index modulus = 1;
};

struct GapResult {
  SupportSet support;
  bool proper = false;
};

enum class FamilyKind { kElementary, kHomogeneous, kConsecutive, kAp, kGap, kUoe, kUoh, kRandomSubset, kJstar };

FamilyKind parse_family(const std::string& name);
std::string to_string(FamilyKind kind);

// Parameters for every kind; each generator reads the fields it needs.
struct FamilySpec {
  FamilyKind kind = FamilyKind::kHomogeneous;
  int levels = 1;                   // M
  std::uint64_t seed = 0;
  int size_exponent = 0;            // elementary: |J| = 2^r
  std::vector<int> pivots;          // homogeneous r, UoH base l, random_subset base (empty = Z_N)
  Index a = 0;                      // consecutive / ap start
  Index step = 1;                   // ap difference
  std::size_t count = 1;            // consecutive / ap / random_subset k
  GapSpec gap;
  int top = 0;                      // UoE / UoH a_N
  std::vector<std::size_t> eta;     // constituents per size 2^i, i = 0..a_N
  double alpha = 2.0;               // a_N <= log2 k + alpha
};

struct GeneratedSet {
  SupportSet support;
  // Pivots the family advertises to the algorithm (base pivots of K for
  // UoH / random subsets, all levels for UoE).
  std::optional<PivotVector> base_pivots;
  bool proper = true;  // GAP properness
};

SupportSet gen_elementary(int r, int levels, std::uint64_t seed);
SupportSet gen_homogeneous(const PivotVector& r, int levels, std::uint64_t seed);
SupportSet gen_consecutive(Index a, std::size_t k, Index n);
// Throws InvalidInput if two terms collide modulo N.
SupportSet gen_ap(Index a, Index s, std::size_t k, Index n);
GapResult gen_gap(const GapSpec& spec);
// Random GAP of dimension d with prod N_i <= max_size inside Z_{2^levels}.
GapSpec random_gap_spec(std::size_t d, std::size_t max_size, int levels, Rng& rng);

// 10 d max(1, log2 d) + 10
double gap_pivot_constant(std::size_t d);
// |pivots(J)| <= log2 k + log2 max(1, log2 k) + B(d)
bool gap_pivot_bound_check(const SupportSet& support, std::size_t d);

// |J + J| modulo N.
std::size_t doubling(const SupportSet& support);

inline constexpr int kMaxRegenerations = 100;

// Union over i <= top of eta[i] elementary sets of size 2^i. Regenerates
// until top <= log2 k + alpha; throws ContractViolation after
// kMaxRegenerations attempts.
SupportSet gen_uoe(int top, const std::vector<std::size_t>& eta, int levels, double alpha, std::uint64_t seed);

// As gen_uoe, but every constituent of size 2^i is a subset of one random
// homogeneous K with pivots l that varies the first i pivot bits.
SupportSet gen_uoh(const PivotVector& l, int top, const std::vector<std::size_t>& eta, int levels, double alpha,
                   std::uint64_t seed);

// Independent Bernoulli(k / |K|) inclusion; empty draws are redrawn.
SupportSet gen_random_subset(const SupportSet& base, std::size_t k, std::uint64_t seed);

// {1, 2, 4, ..., 2^{M-1}} in Z_{2^M}.
SupportSet gen_jstar(int levels);

GeneratedSet generate(const FamilySpec& spec);

// Fixtures.
SupportSet fixture_homogeneous();          // {3,17,25,27}, N = 32
SupportSet fixture_uoe_union();            // {0} U {31,22} U {3,4,9,10} U {1,2,3,4,8,13,22,23}, N = 32
SupportSet fixture_uoe_adversarial(int top);  // U_i {2^{top+i} + j : j < 2^i}, N = 2^{2 top + 1}
SupportSet fixture_two_by_two();           // {0,1,6,7,512}, N = 1024

// C (s + 2^{top - s + 1} - 1), C = max eta: weight cap at level s <= top.
double uoe_weight_bound(const std::vector<std::size_t>& eta, int top, int s);

}  // namespace sdft
