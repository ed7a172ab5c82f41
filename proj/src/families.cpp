#include "sdft/families.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "sdft/errors.hpp"

namespace sdft {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void require_levels(int levels) {
  if (levels < 0 || levels > 62) throw InvalidInput("levels must lie in [0, 62]");
}

}  // namespace

std::uint64_t Rng::next() {
  state_ += kGolden;
  return mix(state_);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("Rng::below needs a positive bound");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Rng Rng::fork(std::uint64_t i) const { return Rng(mix(state_ ^ mix(i * kGolden + 1))); }

ComplexVec random_coeffs(std::size_t count, Rng& rng, bool nonzero) {
  ComplexVec out(count);
  for (auto& c : out) {
    do {
      c = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    } while (nonzero && std::abs(c) < 1e-3);
  }
  return out;
}

FamilyKind parse_family(const std::string& name) {
  static const std::pair<const char*, FamilyKind> table[] = {
      {"elementary", FamilyKind::kElementary}, {"homogeneous", FamilyKind::kHomogeneous},
      {"consecutive", FamilyKind::kConsecutive}, {"ap", FamilyKind::kAp},
      {"gap", FamilyKind::kGap}, {"uoe", FamilyKind::kUoe},
      {"uoh", FamilyKind::kUoh}, {"random_subset", FamilyKind::kRandomSubset},
      {"jstar", FamilyKind::kJstar}};
  for (const auto& [n, k] : table)
    if (name == n) return k;
  throw InvalidInput("unknown family '" + name + "'");
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kElementary: return "elementary";
    case FamilyKind::kHomogeneous: return "homogeneous";
    case FamilyKind::kConsecutive: return "consecutive";
    case FamilyKind::kAp: return "ap";
    case FamilyKind::kGap: return "gap";
    case FamilyKind::kUoe: return "uoe";
    case FamilyKind::kUoh: return "uoh";
    case FamilyKind::kRandomSubset: return "random_subset";
    case FamilyKind::kJstar: return "jstar";
  }
  return "unknown";
}

SupportSet gen_elementary(int r, int levels, std::uint64_t seed) {
  require_levels(levels);
  if (r < 0 || r > levels) throw InvalidInput("elementary size exponent must lie in [0, M]");
  Rng rng(seed);
  const Index n = Index{1} << levels;
  const Index block = Index{1} << r;
  std::vector<Index> out(block);
  for (Index c = 0; c < block; ++c) out[c] = c + block * rng.below(n >> r);
  return SupportSet(n, std::move(out));
}

SupportSet gen_homogeneous(const PivotVector& r, int levels, std::uint64_t seed) {
  require_levels(levels);
  if (!r.empty() && r.max() >= levels) throw InvalidInput("pivots must be below M");
  Rng rng(seed);
  const Index n = Index{1} << levels;
  const Index a = rng.below(n);
  std::vector<Index> terms;
  for (int p : r) {
    const Index odd_count = Index{1} << (levels - p - 1);  // odd values in [1, 2^{M-p})
    terms.push_back(((2 * rng.below(odd_count) + 1) << p) & (n - 1));
  }
  std::vector<Index> out(std::size_t{1} << r.size());
  for (std::size_t b = 0; b < out.size(); ++b) {
    Index v = a;
    for (std::size_t t = 0; t < terms.size(); ++t)
      if ((b >> t) & 1) v += terms[t];
    out[b] = v & (n - 1);
  }
  return SupportSet(n, std::move(out));
}

SupportSet gen_consecutive(Index a, std::size_t k, Index n) { return gen_ap(a, 1, k, n); }

SupportSet gen_ap(Index a, Index s, std::size_t k, Index n) {
  if (!is_pow2(n)) throw InvalidInput("N must be a power of two");
  if (k == 0 || k > n) throw InvalidInput("AP length must lie in [1, N]");
  std::vector<Index> out(k);
  for (std::size_t t = 0; t < k; ++t) out[t] = (a + static_cast<Index>(t) * s) & (n - 1);
  std::vector<Index> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidInput("AP terms collide modulo N");
  return SupportSet(n, std::move(out));
}

GapResult gen_gap(const GapSpec& spec) {
  if (!is_pow2(spec.modulus)) throw InvalidInput("N must be a power of two");
  if (spec.steps.size() != spec.lengths.size()) throw InvalidInput("GAP steps and lengths differ in count");
  std::uint64_t total = 1;
  for (Index len : spec.lengths) {
    if (len == 0) throw InvalidInput("GAP lengths must be positive");
    total *= len;
    if (total > (std::uint64_t{1} << 24)) throw InvalidInput("GAP too large");
  }
  const Index mask = spec.modulus - 1;
  std::set<Index> seen;
  std::vector<Index> digit(spec.steps.size(), 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    Index v = spec.a;
    for (std::size_t i = 0; i < digit.size(); ++i) v += digit[i] * spec.steps[i];
    seen.insert(v & mask);
    for (std::size_t i = 0; i < digit.size(); ++i) {
      if (++digit[i] < spec.lengths[i]) break;
      digit[i] = 0;
    }
  }
  return {SupportSet(spec.modulus, std::vector<Index>(seen.begin(), seen.end())), seen.size() == total};
}

GapSpec random_gap_spec(std::size_t d, std::size_t max_size, int levels, Rng& rng) {
  require_levels(levels);
  if (d == 0) throw InvalidInput("GAP dimension must be positive");
  GapSpec spec;
  spec.modulus = Index{1} << levels;
  spec.a = rng.below(spec.modulus);
  const auto cap = static_cast<Index>(std::floor(std::pow(static_cast<double>(max_size), 1.0 / double(d)) + 1e-9));
  if (cap < 2) throw InvalidInput("GAP size cap too small for the dimension");
  for (std::size_t i = 0; i < d; ++i) {
    spec.steps.push_back(1 + rng.below(spec.modulus - 1));
    spec.lengths.push_back(2 + rng.below(cap - 1));
  }
  return spec;
}

double gap_pivot_constant(std::size_t d) {
  const double dd = static_cast<double>(d);
  return 10.0 * dd * std::max(1.0, std::log2(dd)) + 10.0;
}

bool gap_pivot_bound_check(const SupportSet& support, std::size_t d) {
  const double lk = std::log2(static_cast<double>(support.size()));
  const double bound = lk + std::log2(std::max(1.0, lk)) + gap_pivot_constant(d);
  return static_cast<double>(pivots(support).size()) <= bound;
}

std::size_t doubling(const SupportSet& support) {
  if (support.size() > (std::size_t{1} << 12)) throw InvalidInput("doubling is limited to |J| <= 4096");
  const Index mask = support.modulus() - 1;
  constexpr Index kBitmapLimit = Index{1} << 26;
  if (support.modulus() <= kBitmapLimit) {
    std::vector<bool> hit(support.modulus());
    std::size_t count = 0;
    for (std::size_t a = 0; a < support.size(); ++a)
      for (std::size_t b = a; b < support.size(); ++b) {
        const Index x = (support[a] + support[b]) & mask;
        if (!hit[x]) {
          hit[x] = true;
          ++count;
        }
      }
    return count;
  }
  std::unordered_set<Index> sums;
  sums.reserve(support.size() * support.size());
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = a; b < support.size(); ++b) sums.insert((support[a] + support[b]) & mask);
  return sums.size();
}

namespace {

void check_union_args(int top, const std::vector<std::size_t>& eta, int levels) {
  require_levels(levels);
  if (top < 0 || top > levels) throw InvalidInput("a_N must lie in [0, M]");
  if (eta.size() != static_cast<std::size_t>(top) + 1) throw InvalidInput("eta needs a_N + 1 entries");
  if (std::all_of(eta.begin(), eta.end(), [](std::size_t e) { return e == 0; }))
    throw InvalidInput("eta must request at least one constituent");
}

template <typename Draw>
SupportSet regenerate_union(int top, double alpha, std::uint64_t seed, Draw draw) {
  for (int attempt = 0; attempt < kMaxRegenerations; ++attempt) {
    Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(attempt));
    SupportSet j = draw(rng);
    if (static_cast<double>(top) <= std::log2(static_cast<double>(j.size())) + alpha) return j;
  }
  throw ContractViolation("union constraint a_N <= log2 k + alpha unmet after regeneration cap");
}

}  // namespace

SupportSet gen_uoe(int top, const std::vector<std::size_t>& eta, int levels, double alpha, std::uint64_t seed) {
  check_union_args(top, eta, levels);
  const Index n = Index{1} << levels;
  return regenerate_union(top, alpha, seed, [&](Rng& rng) {
    std::set<Index> acc;
    for (int i = 0; i <= top; ++i)
      for (std::size_t e = 0; e < eta[static_cast<std::size_t>(i)]; ++e) {
        const SupportSet part = gen_elementary(i, levels, rng.next());
        acc.insert(part.begin(), part.end());
      }
    return SupportSet(n, std::vector<Index>(acc.begin(), acc.end()));
  });
}

SupportSet gen_uoh(const PivotVector& l, int top, const std::vector<std::size_t>& eta, int levels, double alpha,
                   std::uint64_t seed) {
  check_union_args(top, eta, levels);
  if (static_cast<std::size_t>(top) > l.size()) throw InvalidInput("a_N exceeds the base pivot count");
  if (!l.empty() && l.max() >= levels) throw InvalidInput("pivots must be below M");
  const Index n = Index{1} << levels;
  const SupportSet base = gen_homogeneous(l, levels, seed);
  // base[b] in construction order is lost by sorting, so rebuild the terms.
  Rng krng(seed);
  const Index a = krng.below(n);
  std::vector<Index> terms;
  for (int p : l) terms.push_back(((2 * krng.below(Index{1} << (levels - p - 1)) + 1) << p) & (n - 1));
  const auto element = [&](std::uint64_t bits) {
    Index v = a;
    for (std::size_t t = 0; t < terms.size(); ++t)
      if ((bits >> t) & 1) v += terms[t];
    return v & (n - 1);
  };
  return regenerate_union(top, alpha, seed ^ 0x5555, [&](Rng& rng) {
    std::set<Index> acc;
    for (int i = 0; i <= top; ++i)
      for (std::size_t e = 0; e < eta[static_cast<std::size_t>(i)]; ++e) {
        const std::uint64_t upper = rng.below(std::uint64_t{1} << (l.size() - static_cast<std::size_t>(i)));
        for (std::uint64_t low = 0; low < (std::uint64_t{1} << i); ++low) {
          const Index v = element((upper << i) | low);
          if (!base.contains(v)) throw ContractViolation("UoH constituent escaped its base set");
          acc.insert(v);
        }
      }
    return SupportSet(n, std::vector<Index>(acc.begin(), acc.end()));
  });
}

SupportSet gen_random_subset(const SupportSet& base, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > base.size()) throw InvalidInput("random subset needs 1 <= k <= |K|");
  const double p = static_cast<double>(k) / static_cast<double>(base.size());
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng = Rng(seed).fork(attempt);
    std::vector<Index> out;
    out.reserve(k + 4 * static_cast<std::size_t>(std::sqrt(double(k))) + 8);
    for (Index j : base)
      if (p >= 1.0 || rng.bernoulli(p)) out.push_back(j);
    if (!out.empty()) return SupportSet(base.modulus(), std::move(out));
  }
}

SupportSet gen_jstar(int levels) {
  require_levels(levels);
  if (levels < 1) throw InvalidInput("J* needs M >= 1");
  std::vector<Index> out;
  for (int i = 0; i < levels; ++i) out.push_back(Index{1} << i);
  return SupportSet(Index{1} << levels, std::move(out));
}

GeneratedSet generate(const FamilySpec& spec) {
  const Index n = Index{1} << spec.levels;
  switch (spec.kind) {
    case FamilyKind::kElementary: {
      std::vector<int> lv(static_cast<std::size_t>(spec.size_exponent));
      for (int i = 0; i < spec.size_exponent; ++i) lv[static_cast<std::size_t>(i)] = i;
      return {gen_elementary(spec.size_exponent, spec.levels, spec.seed), PivotVector(lv), true};
    }
    case FamilyKind::kHomogeneous: {
      PivotVector r(spec.pivots);
      return {gen_homogeneous(r, spec.levels, spec.seed), r, true};
    }
    case FamilyKind::kConsecutive:
      return {gen_consecutive(spec.a, spec.count, n), std::nullopt, true};
    case FamilyKind::kAp:
      return {gen_ap(spec.a, spec.step, spec.count, n), std::nullopt, true};
    case FamilyKind::kGap: {
      GapSpec g = spec.gap;
      g.modulus = n;
      auto res = gen_gap(g);
      return {std::move(res.support), std::nullopt, res.proper};
    }
    case FamilyKind::kUoe: {
      std::vector<int> lv(static_cast<std::size_t>(spec.levels));
      for (int i = 0; i < spec.levels; ++i) lv[static_cast<std::size_t>(i)] = i;
      return {gen_uoe(spec.top, spec.eta, spec.levels, spec.alpha, spec.seed), PivotVector(lv), true};
    }
    case FamilyKind::kUoh: {
      PivotVector l(spec.pivots);
      return {gen_uoh(l, spec.top, spec.eta, spec.levels, spec.alpha, spec.seed), l, true};
    }
    case FamilyKind::kRandomSubset: {
      PivotVector l;
      std::optional<SupportSet> base;
      if (spec.pivots.empty()) {
        std::vector<int> lv(static_cast<std::size_t>(spec.levels));
        for (int i = 0; i < spec.levels; ++i) lv[static_cast<std::size_t>(i)] = i;
        l = PivotVector(lv);
        base = SupportSet::full(n);
      } else {
        l = PivotVector(spec.pivots);
        base = gen_homogeneous(l, spec.levels, spec.seed ^ 0xA5A5A5A5ull);
      }
      return {gen_random_subset(*base, spec.count, spec.seed), l, true};
    }
    case FamilyKind::kJstar: {
      std::vector<int> lv(static_cast<std::size_t>(spec.levels));
      for (int i = 0; i < spec.levels; ++i) lv[static_cast<std::size_t>(i)] = i;
      return {gen_jstar(spec.levels), PivotVector(lv), true};
    }
  }
  throw InvalidInput("unknown family");
}

SupportSet fixture_homogeneous() { return SupportSet(32, {3, 17, 25, 27}); }

SupportSet fixture_uoe_union() {
  std::set<Index> acc{0, 31, 22, 3, 4, 9, 10, 1, 2, 3, 4, 8, 13, 22, 23};
  return SupportSet(32, std::vector<Index>(acc.begin(), acc.end()));
}

SupportSet fixture_uoe_adversarial(int top) {
  if (top < 0 || 2 * top + 1 > 62) throw InvalidInput("a_N out of range");
  std::vector<Index> out;
  for (int i = 0; i <= top; ++i)
    for (Index j = 0; j < (Index{1} << i); ++j) out.push_back((Index{1} << (top + i)) + j);
  return SupportSet(Index{1} << (2 * top + 1), std::move(out));
}

SupportSet fixture_two_by_two() { return SupportSet(1024, {0, 1, 6, 7, 512}); }

double uoe_weight_bound(const std::vector<std::size_t>& eta, int top, int s) {
  const double c = static_cast<double>(*std::max_element(eta.begin(), eta.end()));
  return c * (static_cast<double>(s) + std::ldexp(1.0, top - s + 1) - 1.0);
}

}  // namespace sdft
