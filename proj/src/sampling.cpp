#include "sdft/sampling.hpp"

#include <algorithm>
#include <set>

#include "sdft/errors.hpp"

namespace sdft {

namespace {

void validate_pivots(const PivotVector& r, int levels) {
  if (levels < 0 || levels > 62) throw InvalidInput("levels out of range");
  if (!r.empty() && r.max() >= levels)
    throw InvalidInput("pivot " + std::to_string(r.max()) + " must be below M=" + std::to_string(levels));
}

// Integer coordinates of sums of N-th roots of unity in the power basis
// 1, z, ..., z^{N/2-1} of Q(z), using z^{N/2} = -1.
class CyclotomicSum {
 public:
  explicit CyclotomicSum(Index n) : n_(n), half_(n / 2), coef_(std::max<Index>(half_, 1), 0) {}

  void add_root(Index e, int sign) {
    e %= n_;
    if (n_ == 1) {
      bump(0, sign);
      return;
    }
    if (e < half_) bump(e, sign);
    else bump(e - half_, -sign);
  }
  bool is_zero() const noexcept { return nonzero_ == 0; }

 private:
  void bump(Index pos, int delta) {
    auto& c = coef_[pos];
    const bool was = c != 0;
    c += delta;
    const bool now = c != 0;
    nonzero_ += static_cast<int>(now) - static_cast<int>(was);
  }

  Index n_;
  Index half_;
  std::vector<std::int64_t> coef_;
  int nonzero_ = 0;
};

}  // namespace

SamplingPattern pivoted_pattern(const PivotVector& r, int levels) {
  validate_pivots(r, levels);
  std::vector<Index> samples{0};
  for (int p : r) {
    const Index shift = Index{1} << (levels - 1 - p);
    const std::size_t half = samples.size();
    for (std::size_t i = 0; i < half; ++i) samples.push_back(samples[i] + shift);
  }
  std::sort(samples.begin(), samples.end());
  return {levels, r, std::move(samples)};
}

SamplingPattern pivoted_pattern_closed_form(const PivotVector& r, int levels) {
  validate_pivots(r, levels);
  const std::size_t s = r.size();
  std::vector<Index> samples;
  samples.reserve(std::size_t{1} << s);
  for (Index b = 0; b < (Index{1} << s); ++b) {
    Index sum = 0;
    for (std::size_t k = 0; k < s; ++k)
      if (b >> k & 1u) sum += Index{1} << (levels - 1 - r[k]);
    samples.push_back(sum);
  }
  std::sort(samples.begin(), samples.end());
  return {levels, r, std::move(samples)};
}

Complex aliasing_value(const PivotVector& r, Index m) {
  Complex h = 1.0;
  for (int p : r) h *= 1.0 + unit_root(m, Index{1} << (p + 1), -1);
  return h;
}

bool aliasing_is_zero(const PivotVector& r, Index m) {
  if (r.empty()) return false;
  const Index window = Index{1} << (r.max() + 1);
  const Index reduced = m % window;
  return reduced != 0 && r.contains(v2(reduced));
}

IsolationReport check_isolation(const PivotVector& r, const SupportSet& support, std::size_t drop) {
  if (drop > r.size()) throw InvalidInput("drop count exceeds size(r)");
  require_part_homogeneous(support, r);
  IsolationReport report;
  report.sub_pivots = r.drop_top(drop);
  report.expected_alias_value = std::size_t{1} << report.sub_pivots.size();
  const Index n = support.modulus();
  const auto idx = support.indices();
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      PairIsolation pi;
      pi.j1 = idx[a];
      pi.j2 = idx[b];
      const Index diff = (idx[a] + n - idx[b]) % n;
      pi.valuation = v2(diff);
      pi.isolated = aliasing_is_zero(report.sub_pivots, diff);
      pi.h = aliasing_value(report.sub_pivots, diff);
      const bool expect_zero = report.sub_pivots.contains(pi.valuation);
      const double expected = expect_zero ? 0.0 : static_cast<double>(report.expected_alias_value);
      pi.matches_rule = pi.isolated == expect_zero && std::abs(pi.h - expected) <= 1e-9 * (1.0 + expected);
      report.all_match = report.all_match && pi.matches_rule;
      report.pairs.push_back(pi);
    }
  }
  return report;
}

bool isolates_difference(Index n, std::span<const Index> samples, Index d) {
  CyclotomicSum sum(n);
  for (Index i : samples) sum.add_root((d % n) * (i % n), +1);
  return sum.is_zero();
}

IsolatingSetResult min_isolating_set(const SupportSet& k_set, std::uint64_t budget) {
  const Index n = k_set.modulus();
  if (n > (Index{1} << 10)) throw InvalidInput("isolation search supports N <= 1024");
  const int m = k_set.levels();

  // One representative of each +-d pair of nonzero differences.
  std::set<Index> diff_set;
  for (Index a : k_set)
    for (Index b : k_set)
      if (a != b) {
        const Index d = (a + n - b) % n;
        diff_set.insert(std::min(d, n - d));
      }
  const std::vector<Index> diffs(diff_set.begin(), diff_set.end());

  IsolatingSetResult result;

  // Structured candidates: every pivoted pattern.
  for (Index mask = 0; mask < (Index{1} << m); ++mask) {
    std::vector<int> lv;
    for (int l = 0; l < m; ++l)
      if (mask >> l & 1u) lv.push_back(l);
    SamplingPattern pat = pivoted_pattern(PivotVector(lv), m);
    const bool ok = std::all_of(diffs.begin(), diffs.end(),
                                [&](Index d) { return isolates_difference(n, pat.samples, d); });
    if (ok && (!result.structured_upper || pat.size() < result.structured_upper->size()))
      result.structured_upper = std::move(pat);
  }

  if (diffs.empty()) {
    result.min_size = 1;
    result.witness = {0};
    result.exact = true;
    return result;
  }

  std::vector<CyclotomicSum> sums(diffs.size(), CyclotomicSum(n));
  std::vector<Index> chosen;
  auto add = [&](Index i, int sign) {
    for (std::size_t q = 0; q < diffs.size(); ++q) sums[q].add_root(diffs[q] * i, sign);
  };
  auto all_zero = [&] {
    return std::all_of(sums.begin(), sums.end(), [](const CyclotomicSum& s) { return s.is_zero(); });
  };

  bool out_of_budget = false;
  // Depth-first over sets {0} U {i_2 < ... < i_size}, lexicographic.
  auto search = [&](auto&& self, Index next, std::size_t remaining) -> bool {
    if (++result.visited > budget) {
      out_of_budget = true;
      return false;
    }
    if (remaining == 0) return all_zero();
    for (Index i = next; i + remaining <= n; ++i) {
      add(i, +1);
      chosen.push_back(i);
      if (self(self, i + 1, remaining - 1)) return true;
      chosen.pop_back();
      add(i, -1);
      if (out_of_budget) return false;
    }
    return false;
  };

  for (std::size_t size = 1; size <= n; ++size) {
    chosen.assign(1, 0);
    for (auto& s : sums) s = CyclotomicSum(n);
    add(0, +1);
    if (search(search, 1, size - 1)) {
      result.min_size = size;
      result.witness = chosen;
      result.exact = true;
      return result;
    }
    if (out_of_budget) {
      result.min_size = size;  // every smaller size was excluded
      result.exact = false;
      return result;
    }
  }
  throw ContractViolation("no isolating set found, which is impossible since Z_N isolates");
}

}  // namespace sdft
