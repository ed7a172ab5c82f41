#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sdft/congruence.hpp"
#include "sdft/numeric_core.hpp"
#include "sdft/sampling.hpp"
#include "sdft/support_set.hpp"

namespace sdft {

// Time-domain sample access f(i), 0 <= i < N.
using SampleSource = std::function<Complex(Index)>;

SampleSource sample_source(const BandlimitedSignal& sig);

// Hi-DFT values at one height, one per tree node at that height.
struct HiDftResult {
  Index modulus = 1;
  PivotVector pivots;
  std::size_t height = 0;
  Index shift = 0;             // the transform is of tau^shift f
  int level = 0;               // tree level representing this height
  std::vector<NodeId> nodes;   // sorted by residue
  ComplexVec values;           // aligned with nodes

  std::size_t samples() const noexcept { return std::size_t{1} << (pivots.size() - height); }
  // Value at the node containing index j.
  Complex at(Index j) const;
};

// Computes F(J, I_{r^{n-}}) applied to the samples of tau^shift f, i.e.
// sum_{i in I} e^{-2 pi i j i / N} f(i - shift), for every node at height n.
// No scaling is applied. The generalized radix-2 butterfly runs over all
// 2^{size(r)-n} pivot-bit patterns and costs exactly 1.5 A log2 A counted
// ops with A = 2^{size(r)-n}; the base case reads samples for free.
// Throws ContractViolation unless J is r-part-homogeneous.
HiDftResult hidft(const SampleSource& f, const SupportSet& support, const PivotVector& r,
                  std::size_t height = 0, Index shift = 0, OpCounter* counter = nullptr);

// Reference value of the same quantity by direct summation.
HiDftResult hidft_oracle(const SampleSource& f, const SupportSet& support, const PivotVector& r,
                         std::size_t height = 0, Index shift = 0);

// Rescales a height-0 result into (F f)_J, aligned with the support's order.
// Requires every height-0 node to be a singleton (true for homogeneous J with
// r = pivots(J)); the scale is N / |I_r|, which is N / |J| in that case.
ComplexVec hidft_to_dft(const HiDftResult& res, const SupportSet& support, OpCounter* counter = nullptr);

// Convenience: pivots(J), Hi-DFT at height 0, rescale. J must be homogeneous.
ComplexVec homogeneous_dft(const SampleSource& f, const SupportSet& support, OpCounter* counter = nullptr);

struct BlockFactorization {
  bool passed = false;
  double max_abs_diff = 0.0;
  std::vector<Index> rows;          // J_1 representatives then J_2
  std::vector<Index> cols;          // I_{r^-} then 2^{M-1-r_max} + I_{r^-}
  std::vector<NodeId> degenerate;   // height-1 nodes lacking a sibling pair
};

// Checks F(J, I_r) = [[I, D], [I, -D]] blockdiag(F(J_1, I_{r^-}), F(J_1, I_{r^-}))
// entrywise, with J_1 (J_2) the left (right) height-0 representatives under
// each height-1 node.
BlockFactorization block_factorization_check(const SupportSet& support, const PivotVector& r,
                                             double tol = 1e-12);

struct SpectralityReport {
  bool applicable = false;  // |J| is a power of two
  bool passed = false;
  double max_abs_dev = 0.0;
  PivotVector pivots;
};

// With r = pivots(J): max |F(J, I_r) F(J, I_r)^H - |J| Id| <= tol.
SpectralityReport spectrality_check(const SupportSet& support, double tol = 1e-9);

// max |F(rows, cols) F(rows, cols)^H - |cols| Id| for a square submatrix.
double unitarity_deviation(Index n, std::span<const Index> rows, std::span<const Index> cols);

}  // namespace sdft
