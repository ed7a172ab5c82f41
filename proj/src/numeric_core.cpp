#include "sdft/numeric_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdft/errors.hpp"

namespace sdft {

namespace {

ComplexVec root_table(std::size_t n, int sign) {
  ComplexVec t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = unit_root(i, n, sign);
  return t;
}

void require_pow2_length(std::size_t n, const char* what) {
  if (!is_pow2(n))
    throw InvalidInput(std::string(what) + ": length " + std::to_string(n) +
                       " is not a power of two");
}

}  // namespace

Complex unit_root(Index num, Index den, int sign) {
  const Index r = num % den;
  const double angle = sign * kTwoPi * (static_cast<double>(r) / static_cast<double>(den));
  return std::polar(1.0, angle);
}

OpCounter::Tally OpCounter::phase_tally(const std::string& phase) const {
  auto it = phases_.find(phase);
  return it == phases_.end() ? Tally{} : it->second;
}

void OpCounter::merge(const OpCounter& other) {
  totals_.adds += other.totals_.adds;
  totals_.mults += other.totals_.mults;
  for (const auto& [name, tally] : other.phases_) {
    phases_[name].adds += tally.adds;
    phases_[name].mults += tally.mults;
  }
}

void OpCounter::reset() {
  totals_ = {};
  phases_.clear();
}

ComplexVec dft_direct(std::span<const Complex> f, OpCounter* counter) {
  const std::size_t n = f.size();
  require_pow2_length(n, "dft_direct");
  const ComplexVec roots = root_table(n, -1);
  ComplexVec out(n);
  for (std::size_t m = 0; m < n; ++m) {
    Complex acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) acc += f[t] * roots[(m * t) & (n - 1)];
    out[m] = acc;
  }
  if (counter) {
    counter->mul(Index{n} * n);
    counter->add(Index{n} * (n - 1));
  }
  return out;
}

ComplexVec idft_direct(std::span<const Complex> spectrum, OpCounter* counter) {
  const std::size_t n = spectrum.size();
  require_pow2_length(n, "idft_direct");
  const ComplexVec roots = root_table(n, +1);
  ComplexVec out(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t t = 0; t < n; ++t) {
    Complex acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) acc += spectrum[m] * roots[(m * t) & (n - 1)];
    out[t] = acc * scale;
  }
  if (counter) {
    counter->mul(Index{n} * n + n);
    counter->add(Index{n} * (n - 1));
  }
  return out;
}

ComplexVec fft_radix2(std::span<const Complex> f, OpCounter* counter) {
  const std::size_t n = f.size();
  require_pow2_length(n, "fft_radix2");
  const int levels = log2_exact(n);
  ComplexVec a(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rev = 0;
    for (int b = 0; b < levels; ++b) rev |= ((i >> b) & 1u) << (levels - 1 - b);
    a[rev] = f[i];
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex t = unit_root(k, len, -1) * a[start + k + half];
        const Complex u = a[start + k];
        a[start + k] = u + t;
        a[start + k + half] = u - t;
      }
    }
    if (counter) {
      counter->mul(n / 2);
      counter->add(n);
    }
  }
  return a;
}

BandlimitedSignal::BandlimitedSignal(SupportSet support, ComplexVec coeffs)
    : support_(std::move(support)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != support_.size())
    throw InvalidInput("signal has " + std::to_string(coeffs_.size()) + " coefficients for a support of size " +
                       std::to_string(support_.size()));
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvalidInput("signal coefficients must be finite");
  const int m = support_.levels();
  lo_bits_ = m / 2;
  const Index lo_size = Index{1} << lo_bits_;
  const Index hi_size = Index{1} << (m - lo_bits_);
  const Index n = support_.modulus();
  lo_.resize(lo_size);
  hi_.resize(hi_size);
  for (Index t = 0; t < lo_size; ++t) lo_[t] = unit_root(t, n, +1);
  for (Index t = 0; t < hi_size; ++t) hi_[t] = unit_root(t << lo_bits_, n, +1);
}

Complex BandlimitedSignal::coeff(Index l) const { return coeffs_[support_.position(l)]; }

Complex BandlimitedSignal::sample(Index i) const {
  const Index n = modulus();
  if (i >= n) throw InvalidInput("sample index " + std::to_string(i) + " out of range");
  const Index mask = n - 1;
  const Index lo_mask = (Index{1} << lo_bits_) - 1;
  Complex acc = 0.0;
  for (std::size_t p = 0; p < support_.size(); ++p) {
    const Index t = (i * support_[p]) & mask;
    acc += coeffs_[p] * (hi_[t >> lo_bits_] * lo_[t & lo_mask]);
  }
  return acc / static_cast<double>(n);
}

ComplexVec BandlimitedSignal::synthesize() const {
  ComplexVec spectrum(modulus(), 0.0);
  for (std::size_t p = 0; p < support_.size(); ++p) spectrum[support_[p]] = coeffs_[p];
  return idft_direct(spectrum);
}

Complex signal_sample(const BandlimitedSignal& sig, Index i) { return sig.sample(i); }

ComplexVec submatrix_apply(Index n, std::span<const Index> rows, std::span<const Index> cols,
                           std::span<const Complex> x, OpCounter* counter) {
  if (!is_pow2(n)) throw InvalidInput("modulus is not a power of two");
  if (x.size() != cols.size())
    throw InvalidInput("submatrix_apply: vector length " + std::to_string(x.size()) +
                       " does not match column count " + std::to_string(cols.size()));
  for (Index r : rows)
    if (r >= n) throw InvalidInput("row index out of range");
  for (Index c : cols)
    if (c >= n) throw InvalidInput("column index out of range");
  ComplexVec out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < cols.size(); ++j) acc += unit_root(rows[i] * cols[j], n, -1) * x[j];
    out[i] = acc;
  }
  if (counter && !cols.empty()) {
    counter->mul(rows.size() * cols.size());
    counter->add(rows.size() * (cols.size() - 1));
  }
  return out;
}

std::vector<ComplexVec> fourier_submatrix(Index n, std::span<const Index> rows,
                                          std::span<const Index> cols) {
  std::vector<ComplexVec> m(rows.size(), ComplexVec(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = unit_root(rows[i] * cols[j], n, -1);
  return m;
}

double max_rel_error(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InvalidInput("max_rel_error: length mismatch");
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return diff / std::max(scale, 1e-300);
}

}  // namespace sdft
