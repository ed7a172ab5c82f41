#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "sdft/bits.hpp"
#include "sdft/support_set.hpp"

namespace sdft {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{sign * 2 pi i * num / den}, with num reduced modulo den first so the
// angle stays small for large moduli.
Complex unit_root(Index num, Index den, int sign);

// Counts complex operations under the convention used throughout the
// library: one complex multiplication (or division) is one op, one complex
// addition or subtraction is one op. Twiddle generation, index arithmetic and
// data movement are free.
class OpCounter {
 public:
  struct Tally {
    std::uint64_t adds = 0;
    std::uint64_t mults = 0;
    std::uint64_t total() const noexcept { return adds + mults; }
    friend bool operator==(const Tally&, const Tally&) = default;
  };

  void set_phase(std::string phase) { phase_ = std::move(phase); }
  const std::string& phase() const noexcept { return phase_; }

  void add(std::uint64_t n = 1) {
    totals_.adds += n;
    phases_[phase_].adds += n;
  }
  void mul(std::uint64_t n = 1) {
    totals_.mults += n;
    phases_[phase_].mults += n;
  }

  std::uint64_t adds() const noexcept { return totals_.adds; }
  std::uint64_t mults() const noexcept { return totals_.mults; }
  std::uint64_t total() const noexcept { return totals_.total(); }
  Tally phase_tally(const std::string& phase) const;
  const std::map<std::string, Tally>& phases() const noexcept { return phases_; }

  // Adds another counter's tallies, phase by phase.
  void merge(const OpCounter& other);
  void reset();

 private:
  std::string phase_ = "default";
  Tally totals_;
  std::map<std::string, Tally> phases_;
};

// O(N^2) forward DFT with kernel e^{-2 pi i m n / N}.
ComplexVec dft_direct(std::span<const Complex> f, OpCounter* counter = nullptr);

// O(N^2) inverse DFT with kernel e^{+2 pi i m n / N} / N.
ComplexVec idft_direct(std::span<const Complex> spectrum, OpCounter* counter = nullptr);

// Iterative decimation-in-time radix-2 FFT. Costs exactly N/2 mults and N
// adds per stage, i.e. 1.5 N log2 N counted ops.
ComplexVec fft_radix2(std::span<const Complex> f, OpCounter* counter = nullptr);

// A signal f in B^J described by its spectrum on J: (F f)(l) = coeffs[l] for
// l in J and zero elsewhere. Sample access costs O(|J|).
class BandlimitedSignal {
 public:
  BandlimitedSignal(SupportSet support, ComplexVec coeffs);

  Index modulus() const noexcept { return support_.modulus(); }
  const SupportSet& support() const noexcept { return support_; }
  const ComplexVec& coeffs() const noexcept { return coeffs_; }
  Complex coeff(Index l) const;

  // f(i) = (1/N) sum_{l in J} coeffs(l) e^{+2 pi i i l / N}.
  Complex sample(Index i) const;

  // All N samples via the direct inverse DFT of the zero-padded spectrum.
  ComplexVec synthesize() const;

 private:
  SupportSet support_;
  ComplexVec coeffs_;
  // e^{+2 pi i t / N} = hi_[t >> lo_bits_] * lo_[t & (2^lo_bits_ - 1)]
  int lo_bits_ = 0;
  std::vector<Complex> lo_;
  std::vector<Complex> hi_;
};

Complex signal_sample(const BandlimitedSignal& sig, Index i);

// F(rows, cols) x with kernel e^{-2 pi i r c / N}.
ComplexVec submatrix_apply(Index n, std::span<const Index> rows,
                           std::span<const Index> cols, std::span<const Complex> x,
                           OpCounter* counter = nullptr);

// Dense F(rows, cols), row-major.
std::vector<ComplexVec> fourier_submatrix(Index n, std::span<const Index> rows,
                                          std::span<const Index> cols);

// max_i |a_i - b_i| / max(max_i |b_i|, tiny)
double max_rel_error(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace sdft
