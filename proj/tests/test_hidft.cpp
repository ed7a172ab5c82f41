#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sdft/errors.hpp"
#include "sdft/families.hpp"
#include "sdft/hidft.hpp"

using namespace sdft;

namespace {

PivotVector random_pivots(Rng& rng, int levels, std::size_t count) {
  std::vector<int> all(static_cast<std::size_t>(levels));
  for (int l = 0; l < levels; ++l) all[static_cast<std::size_t>(l)] = l;
  std::vector<int> pick;
  for (std::size_t t = 0; t < count; ++t) {
    const auto i = rng.below(all.size());
    pick.push_back(all[i]);
    all.erase(all.begin() + static_cast<long>(i));
  }
  std::sort(pick.begin(), pick.end());
  return PivotVector(pick);
}

// (F f)_J by direct summation over all N samples of the signal.
ComplexVec oracle_spectrum(const BandlimitedSignal& sig) {
  const auto& j = sig.support();
  const Index n = j.modulus();
  ComplexVec out(j.size(), 0.0);
  for (Index i = 0; i < n; ++i) {
    const Complex fi = sig.sample(i);
    for (std::size_t q = 0; q < j.size(); ++q) out[q] += oracle::kernel(i * j[q], n, -1) * fi;
  }
  return out;
}

}  // namespace

TEST_CASE("full support reduces to the radix-2 fft") {
  for (int m = 0; m <= 10; ++m) {
    const Index n = Index{1} << m;
    Rng rng(40 + m);
    ComplexVec f = random_coeffs(n, rng, false);
    std::vector<int> lv(static_cast<std::size_t>(m));
    for (int l = 0; l < m; ++l) lv[static_cast<std::size_t>(l)] = l;
    OpCounter ch, cf;
    const auto res = hidft([&](Index i) { return f[i]; }, SupportSet::full(n), PivotVector(lv), 0, 0, &ch);
    const ComplexVec ref = fft_radix2(f, &cf);
    REQUIRE(res.values.size() == n);
    for (Index q = 0; q < n; ++q) CHECK(std::abs(res.values[q] - ref[res.nodes[q].residue]) <= 1e-10 * n);
    CHECK(ch.total() == cf.total());
  }
}

TEST_CASE("top height reads one sample") {
  const SupportSet j(32, {3, 17, 25, 27});
  Rng rng(1);
  BandlimitedSignal sig(j, random_coeffs(4, rng));
  OpCounter c;
  const auto res = hidft(sample_source(sig), j, PivotVector({1, 3}), 2, 0, &c);
  REQUIRE(res.values.size() == 1);
  CHECK(std::abs(res.values[0] - sig.sample(0)) < 1e-15);
  CHECK(c.total() == 0);
  const auto shifted = hidft(sample_source(sig), j, PivotVector({1, 3}), 2, 5, &c);
  CHECK(std::abs(shifted.values[0] - sig.sample(32 - 5)) < 1e-15);
}

TEST_CASE("fixture with pivots (0,2,5) recovers the spectrum") {
  const SupportSet j(1024, {23, 187, 190, 247, 386, 731, 990, 994});
  Rng rng(2);
  BandlimitedSignal sig(j, random_coeffs(8, rng));
  OpCounter c;
  const ComplexVec got = homogeneous_dft(sample_source(sig), j, &c);
  CHECK(oracle::max_rel(got, oracle_spectrum(sig)) < 1e-9);
  CHECK(oracle::max_rel(got, sig.coeffs()) < 1e-12);
}

TEST_CASE("hidft equals the submatrix oracle at every height and shift") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const int m = 3 + static_cast<int>(rng.below(8));
    const Index n = Index{1} << m;
    std::set<Index> s;
    const std::size_t k = 1 + rng.below(std::min<Index>(n, 40));
    while (s.size() < k) s.insert(rng.below(n));
    const SupportSet j(n, {s.begin(), s.end()});
    const PivotVector all = pivots(j);
    const PivotVector r = all.prefix(rng.below(all.size() + 1));
    BandlimitedSignal sig(j, random_coeffs(k, rng));
    for (std::size_t h = 0; h <= r.size(); ++h) {
      const Index shift = rng.below(n);
      OpCounter c;
      const auto fast = hidft(sample_source(sig), j, r, h, shift, &c);
      const auto slow = hidft_oracle(sample_source(sig), j, r, h, shift);
      REQUIRE(fast.nodes == slow.nodes);
      CHECK(oracle::max_rel(fast.values, slow.values) < 1e-10);
      const std::size_t a = std::size_t{1} << (r.size() - h);
      const int la = static_cast<int>(r.size() - h);
      CHECK(2 * c.total() == 3 * a * static_cast<std::size_t>(la));
      CHECK(fast.nodes.size() <= a);
    }
  }
}

TEST_CASE("hidft values are tree weights of the modulated spectrum") {
  // value(v) = (|I| / N) sum_{l in v} e^{-2 pi i a l / N} (F f)(l)
  const SupportSet j(64, {3, 17, 25, 27, 35});
  const PivotVector r({1, 3});
  Rng rng(8);
  BandlimitedSignal sig(j, random_coeffs(5, rng));
  for (std::size_t h = 0; h <= 2; ++h)
    for (Index a : {0, 1, 9}) {
      const auto res = hidft(sample_source(sig), j, r, h, a);
      const double scale = double(res.samples()) / 64.0;
      for (std::size_t q = 0; q < j.size(); ++q) {
        Complex want = 0;
        for (std::size_t p = 0; p < j.size(); ++p)
          if (((j[p] ^ j[q]) & ((Index{1} << res.level) - 1)) == 0)
            want += oracle::kernel(a * j[p], 64, -1) * sig.coeffs()[p];
        CHECK(std::abs(res.at(j[q]) - scale * want) < 1e-12);
      }
    }
}

TEST_CASE("random homogeneous supports") {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const int m = 4 + static_cast<int>(rng.below(13));
    const PivotVector r = random_pivots(rng, m, 1 + rng.below(std::min(m, 9)));
    const SupportSet j = gen_homogeneous(r, m, rng.next());
    BandlimitedSignal sig(j, random_coeffs(j.size(), rng));
    OpCounter c;
    const ComplexVec got = homogeneous_dft(sample_source(sig), j, &c);
    CHECK(max_rel_error(got, sig.coeffs()) < 1e-9);
    const std::size_t a = j.size();
    CHECK(2 * (c.total() - a) == 3 * a * r.size());  // butterfly plus one scaling per output
  }
}

TEST_CASE("elementary supports match downsample plus fft") {
  const int m = 12, rexp = 5;
  const SupportSet j = gen_elementary(rexp, m, 77);
  Rng rng(10);
  BandlimitedSignal sig(j, random_coeffs(j.size(), rng));
  const Index stride = Index{1} << (m - rexp);
  ComplexVec down(std::size_t{1} << rexp);
  for (std::size_t t = 0; t < down.size(); ++t) down[t] = sig.sample(t * stride);
  const ComplexVec spec = fft_radix2(down);
  const ComplexVec got = homogeneous_dft(sample_source(sig), j);
  for (std::size_t q = 0; q < j.size(); ++q)
    CHECK(std::abs(got[q] - spec[j[q] % down.size()] * double(stride)) < 1e-9);
}

TEST_CASE("singleton") {
  const SupportSet j(256, {77});
  BandlimitedSignal sig(j, {Complex(2, -3)});
  const ComplexVec got = homogeneous_dft(sample_source(sig), j);
  CHECK(std::abs(got[0] - Complex(2, -3)) < 1e-12);
}

TEST_CASE("contract violations") {
  const SupportSet j(64, {3, 17, 25, 27, 35});
  BandlimitedSignal sig(j, ComplexVec(5, 1.0));
  CHECK_THROWS_AS(hidft(sample_source(sig), j, PivotVector({3})), ContractViolation);
  CHECK_THROWS_AS(hidft(sample_source(sig), j, PivotVector({1, 3}), 3), ContractViolation);
  CHECK_THROWS_AS(homogeneous_dft(sample_source(sig), j), ContractViolation);
}

TEST_CASE("block factorization") {
  CHECK(block_factorization_check(SupportSet(32, {3, 17, 25, 27}), PivotVector({1, 3})).passed);
  CHECK(block_factorization_check(SupportSet::full(4), PivotVector({0, 1})).passed);
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + static_cast<int>(rng.below(10));
    const PivotVector r = random_pivots(rng, m, 1 + rng.below(std::min(m, 6)));
    const SupportSet j = gen_homogeneous(r, m, rng.next());
    const auto rep = block_factorization_check(j, r);
    CHECK(rep.passed);
    CHECK(rep.max_abs_diff <= 1e-12);
    CHECK(rep.degenerate.empty());
  }
  const auto part = block_factorization_check(SupportSet(64, {3, 17, 25, 27, 35}), PivotVector({1, 3}));
  CHECK(part.passed);
}

TEST_CASE("spectrality iff homogeneous") {
  CHECK(spectrality_check(SupportSet(32, {3, 17, 25, 27})).passed);
  const std::vector<Index> rows{1, 292, 641, 932};
  const std::vector<Index> cols{316, 384, 828, 896};
  CHECK(unitarity_deviation(1024, rows, cols) <= 1e-9);
  Rng rng(14);
  int non_hom = 0;
  for (int t = 0; t < 300; ++t) {
    const int m = 3 + static_cast<int>(rng.below(6));
    const Index n = Index{1} << m;
    const std::size_t k = std::size_t{1} << rng.below(std::min(m, 4) + 1);
    std::set<Index> s;
    while (s.size() < k) s.insert(rng.below(n));
    const SupportSet j(n, {s.begin(), s.end()});
    const auto rep = spectrality_check(j);
    CHECK(rep.applicable);
    CHECK(rep.passed == is_homogeneous(j));
    non_hom += !is_homogeneous(j);
  }
  CHECK(non_hom > 0);
  CHECK_FALSE(spectrality_check(SupportSet(16, {0, 1, 2})).applicable);
}
