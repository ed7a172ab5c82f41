#include <doctest.h>

#include "oracles.hpp"
#include "sdft/congruence.hpp"
#include "sdft/errors.hpp"
#include "sdft/families.hpp"
#include "sdft/sampling.hpp"

using namespace sdft;

TEST_CASE("pivoted pattern examples") {
  CHECK(pivoted_pattern(PivotVector({0, 2}), 10).samples == std::vector<Index>{0, 128, 512, 640});
  CHECK(pivoted_pattern(PivotVector(), 10).samples == std::vector<Index>{0});
  CHECK(pivoted_pattern(PivotVector({1, 3}), 6).samples == std::vector<Index>{0, 4, 16, 20});
  const auto full = pivoted_pattern(PivotVector({0, 1, 2, 3}), 4);
  CHECK(full.size() == 16);
  CHECK(full.samples.back() == 15);
  CHECK_THROWS_AS(pivoted_pattern(PivotVector({4}), 4), InvalidInput);
}

TEST_CASE("recursive and closed form agree, pattern is self-homogeneous") {
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    const int m = 1 + static_cast<int>(rng.below(24));
    std::vector<int> lv;
    for (int l = 0; l < m; ++l)
      if (rng.below(3) == 0) lv.push_back(l);
    if (lv.size() > 12) lv.resize(12);
    const PivotVector r(lv);
    const auto rec = pivoted_pattern(r, m);
    CHECK(rec.samples == pivoted_pattern_closed_form(r, m).samples);
    CHECK(rec.size() == (std::size_t{1} << r.size()));
    if (t % 10 == 0 && r.size() <= 8) {
      std::vector<int> want;
      for (int p : r) want.push_back(m - 1 - p);
      std::sort(want.begin(), want.end());
      const auto got = pivots(SupportSet(rec.modulus(), rec.samples));
      CHECK(std::vector<int>(got.begin(), got.end()) == want);
    }
    for (std::size_t n = 0; n <= r.size() && t % 50 == 0; ++n)
      CHECK(pivoted_pattern(r.drop_top(n), m).size() == (std::size_t{1} << (r.size() - n)));
  }
}

TEST_CASE("indicator is a convolution of coarser patterns") {
  const int m = 7;
  const Index n = Index{1} << m;
  const PivotVector r({0, 2, 5});
  std::vector<int> a(n, 0), b(n, 0), whole(n, 0);
  for (Index i : pivoted_pattern(r.drop_top(1), m).samples) a[i] = 1;
  for (Index i : pivoted_pattern(PivotVector({r.max()}), m).samples) b[i] = 1;
  for (Index i : pivoted_pattern(r, m).samples) whole[i] = 1;
  for (Index x = 0; x < n; ++x) {
    int acc = 0;
    for (Index y = 0; y < n; ++y) acc += a[y] * b[(x + n - y) % n];
    CHECK(acc == whole[x]);
  }
}

TEST_CASE("aliasing value matches dft of the indicator") {
  const Index n = 1024;
  const PivotVector r({0, 2});
  ComplexVec ind(n, 0.0);
  for (Index i : pivoted_pattern(r, 10).samples) ind[i] = 1.0;
  const ComplexVec spec = dft_direct(ind);
  for (Index m = 0; m < n; ++m) {
    CHECK(std::abs(aliasing_value(r, m) - spec[m]) < 1e-10);
    CHECK(aliasing_is_zero(r, m) == (std::abs(spec[m]) < 1e-9));
  }
  CHECK(std::abs(aliasing_value(PivotVector({1, 3, 4}), 0) - Complex(8.0)) < 1e-15);
  CHECK(aliasing_is_zero(PivotVector({1, 3, 4}), 3 * 8));
  CHECK(std::abs(aliasing_value(PivotVector({1, 3, 4}), 5 * 16)) < 1e-12);
}

TEST_CASE("isolation on the homogeneous fixture") {
  const SupportSet j(32, {3, 17, 25, 27});
  const PivotVector r({1, 3});
  const auto rep = check_isolation(r, j, 0);
  CHECK(rep.all_match);
  CHECK(rep.pairs.size() == 6);
  for (const auto& p : rep.pairs) {
    CHECK(p.isolated);
    CHECK(std::abs(p.h) < 1e-12);
  }
  const auto top = check_isolation(r, j, 2);
  CHECK(top.all_match);
  for (const auto& p : top.pairs) {
    CHECK_FALSE(p.isolated);
    CHECK(std::abs(p.h - Complex(1.0)) < 1e-12);
  }
}

TEST_CASE("isolation on the part-homogeneous fixture") {
  const SupportSet j(64, {3, 17, 25, 27, 35});
  const auto rep = check_isolation(PivotVector({1, 3}), j, 0);
  CHECK(rep.all_match);
  for (const auto& p : rep.pairs) {
    const int v = oracle::val2(p.j2 - p.j1);
    CHECK(p.valuation == v);
    CHECK(p.isolated == (v == 1 || v == 3));
    if (!p.isolated) CHECK(std::abs(p.h - Complex(4.0)) < 1e-12);
  }
  CHECK_THROWS_AS(check_isolation(PivotVector({3}), j, 0), ContractViolation);
}

TEST_CASE("minimum isolating sets by exhaustive search") {
  // Brute-force oracle: enumerate every subset of Z_N (N <= 16) and test the
  // difference set with floating sums.
  const auto brute = [](Index n, const std::vector<Index>& k) {
    std::size_t best = n + 1;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      const auto size = static_cast<std::size_t>(std::popcount(mask));
      if (size >= best) continue;
      bool ok = true;
      for (std::size_t a = 0; a < k.size() && ok; ++a)
        for (std::size_t b = 0; b < k.size() && ok; ++b) {
          if (a == b) continue;
          Complex h = 0;
          for (Index i = 0; i < n; ++i)
            if (mask >> i & 1) h += oracle::kernel((k[a] + n - k[b]) * i, n, -1);
          ok = std::abs(h) < 1e-9;
        }
      if (ok) best = size;
    }
    return best;
  };

  const auto r12 = min_isolating_set(SupportSet(16, {1, 2}));
  CHECK(r12.exact);
  CHECK(r12.min_size == brute(16, {1, 2}));
  CHECK(r12.min_size == 2);
  CHECK(r12.witness == std::vector<Index>{0, 8});

  const auto r124 = min_isolating_set(SupportSet(32, {1, 2, 4}));
  CHECK(r124.exact);
  CHECK(r124.min_size == 4);
  for (Index d : {1, 2, 3, 29, 30, 31}) CHECK(isolates_difference(32, r124.witness, d));
  REQUIRE(r124.structured_upper);
  CHECK(r124.structured_upper->size() >= r124.min_size);

  const auto single = min_isolating_set(SupportSet(16, {5}));
  CHECK(single.min_size == 1);
  CHECK(single.witness == std::vector<Index>{0});

  CHECK(brute(8, {1, 2, 4}) == 4);
  CHECK(min_isolating_set(SupportSet(8, {1, 2, 4})).min_size == 4);
}

TEST_CASE("exact difference test") {
  const std::vector<Index> i{0, 8};
  CHECK(isolates_difference(16, i, 1));
  CHECK(isolates_difference(16, i, 15));
  CHECK_FALSE(isolates_difference(16, i, 2));
  const std::vector<Index> third{0, 5, 10};  // not a multiple of a power-of-two coset
  CHECK_FALSE(isolates_difference(16, third, 1));
}
