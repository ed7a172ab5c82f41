#include "sdft/hidft.hpp"

#include <algorithm>
#include <map>

#include "sdft/errors.hpp"

namespace sdft {

namespace {

// Residues of J modulo 2^level, ascending.
std::vector<Index> node_residues(const SupportSet& support, int level) {
  std::vector<Index> out;
  out.reserve(support.size());
  for (Index j : support) out.push_back(mod_pow2(j, level));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Residues of every butterfly stage. Stage t holds 2^t entries modulo
// 2^{p_t + 1}: entry c and c + 2^{t-1} extend stage t-1's entry c to level
// p_t (unique for r-part-homogeneous J, since no node splits between pivots)
// and then differ in bit p_t. Entries with no member in J are virtual; their
// values are computed but never read.
std::vector<std::vector<Index>> stage_residues(const SupportSet& support, std::span<const int> pivots) {
  std::vector<std::vector<Index>> stages{{0}};
  int prev_level = 0;
  for (int p : pivots) {
    std::map<Index, Index> extend;  // residue mod 2^prev_level -> residue mod 2^p
    for (Index j : support) extend.emplace(mod_pow2(j, prev_level), mod_pow2(j, p));
    const auto& before = stages.back();
    std::vector<Index> next(2 * before.size());
    for (std::size_t c = 0; c < before.size(); ++c) {
      const auto it = extend.find(before[c]);
      const Index ext = it == extend.end() ? before[c] : it->second;
      next[c] = ext;
      next[c + before.size()] = ext | (Index{1} << p);
    }
    stages.push_back(std::move(next));
    prev_level = p + 1;
  }
  return stages;
}

struct Butterfly {
  const SampleSource& f;
  Index n;
  int levels;
  std::span<const int> pivots;
  const std::vector<std::vector<Index>>& residues;
  OpCounter* counter;

  ComplexVec run(std::size_t t, Index offset) const {
    if (t == 0) return {f(offset)};
    const int p = pivots[t - 1];
    const Index stride = Index{1} << (levels - 1 - p);
    const ComplexVec even = run(t - 1, offset);
    const ComplexVec odd = run(t - 1, (offset + stride) & (n - 1));
    const std::size_t half = even.size();
    ComplexVec out(2 * half);
    const Index window = Index{1} << (p + 1);
    for (std::size_t c = 0; c < half; ++c) {
      const Complex twiddled = unit_root(residues[t][c], window, -1) * odd[c];
      out[c] = even[c] + twiddled;
      out[c + half] = even[c] - twiddled;
    }
    if (counter) {
      counter->mul(half);
      counter->add(2 * half);
    }
    return out;
  }
};

HiDftResult make_result(const SupportSet& support, const PivotVector& r, std::size_t height, Index shift) {
  if (height > r.size())
    throw ContractViolation("height " + std::to_string(height) + " exceeds size(r)=" + std::to_string(r.size()));
  if (!r.empty() && r.max() >= support.levels())
    throw InvalidInput("pivot " + std::to_string(r.max()) + " out of range for N=" +
                       std::to_string(support.modulus()));
  require_part_homogeneous(support, r);
  HiDftResult res;
  res.modulus = support.modulus();
  res.pivots = r;
  res.height = height;
  res.shift = shift % support.modulus();
  res.level = level_for_height(r, height);
  for (Index rho : node_residues(support, res.level)) res.nodes.push_back({res.level, rho});
  return res;
}

}  // namespace

SampleSource sample_source(const BandlimitedSignal& sig) {
  return [&sig](Index i) { return sig.sample(i); };
}

Complex HiDftResult::at(Index j) const {
  const Index rho = mod_pow2(j, level);
  auto it = std::lower_bound(nodes.begin(), nodes.end(), rho,
                             [](const NodeId& v, Index x) { return v.residue < x; });
  if (it == nodes.end() || it->residue != rho)
    throw InvalidInput("index " + std::to_string(j) + " has no node at this height");
  return values[static_cast<std::size_t>(it - nodes.begin())];
}

HiDftResult hidft(const SampleSource& f, const SupportSet& support, const PivotVector& r,
                  std::size_t height, Index shift, OpCounter* counter) {
  HiDftResult res = make_result(support, r, height, shift);
  const Index n = support.modulus();
  const std::size_t t = r.size() - height;
  const auto used = r.levels().first(t);

  const auto residues = stage_residues(support, used);
  const Butterfly bf{f, n, support.levels(), used, residues, counter};
  const Index offset = (n - res.shift) & (n - 1);
  const ComplexVec all = bf.run(t, offset);

  std::map<Index, std::size_t> slot;
  for (std::size_t c = 0; c < residues[t].size(); ++c) slot.emplace(residues[t][c], c);
  res.values.reserve(res.nodes.size());
  for (const NodeId& v : res.nodes) res.values.push_back(all[slot.at(v.residue)]);
  return res;
}

HiDftResult hidft_oracle(const SampleSource& f, const SupportSet& support, const PivotVector& r,
                         std::size_t height, Index shift) {
  HiDftResult res = make_result(support, r, height, shift);
  const Index n = support.modulus();
  const SamplingPattern pat = pivoted_pattern(r.drop_top(height), support.levels());
  ComplexVec x;
  for (Index i : pat.samples) x.push_back(f((i + n - res.shift) & (n - 1)));
  std::vector<Index> reps;
  for (const NodeId& v : res.nodes) {
    // least member of J in this node
    for (Index j : support)
      if (mod_pow2(j, res.level) == v.residue) {
        reps.push_back(j);
        break;
      }
  }
  res.values = submatrix_apply(n, reps, pat.samples, x);
  return res;
}

ComplexVec hidft_to_dft(const HiDftResult& res, const SupportSet& support, OpCounter* counter) {
  if (res.height != 0) throw ContractViolation("hidft_to_dft needs a height-0 result");
  if (res.nodes.size() != support.size())
    throw ContractViolation("height-0 nodes are not singletons; the support is not isolated by " +
                            res.pivots.to_string());
  const double scale = static_cast<double>(res.modulus) / static_cast<double>(res.samples());
  ComplexVec out(support.size());
  for (std::size_t p = 0; p < support.size(); ++p) out[p] = res.at(support[p]) * scale;
  if (counter) counter->mul(support.size());
  return out;
}

ComplexVec homogeneous_dft(const SampleSource& f, const SupportSet& support, OpCounter* counter) {
  if (!is_homogeneous(support)) throw ContractViolation("support is not homogeneous");
  return hidft_to_dft(hidft(f, support, pivots(support), 0, 0, counter), support, counter);
}

BlockFactorization block_factorization_check(const SupportSet& support, const PivotVector& r, double tol) {
  require_part_homogeneous(support, r);
  if (r.empty()) throw ContractViolation("block factorization needs at least one pivot");
  const Index n = support.modulus();
  const int m = support.levels();
  const int level0 = level_for_height(r, 0);
  const int level1 = level_for_height(r, 1);
  const int top = r.max();

  std::map<Index, Index> reps;  // height-0 residue -> least member
  for (Index j : support) reps.emplace(mod_pow2(j, level0), j);

  BlockFactorization out;
  std::vector<Index> left;
  std::vector<Index> right;
  std::map<Index, std::pair<std::optional<Index>, std::optional<Index>>> groups;
  for (const auto& [rho, j] : reps) {
    auto& g = groups[mod_pow2(rho, level1)];
    ((rho >> top & 1u) ? g.first : g.second) = j;
  }
  for (const auto& [rho1, g] : groups) {
    if (!g.first || !g.second) {
      out.degenerate.push_back({level1, rho1});
      continue;
    }
    left.push_back(*g.first);
    right.push_back(*g.second);
  }

  const SamplingPattern sub = pivoted_pattern(r.drop_top(1), m);
  const Index stride = Index{1} << (m - 1 - top);
  out.rows = left;
  out.rows.insert(out.rows.end(), right.begin(), right.end());
  out.cols = sub.samples;
  for (Index i : sub.samples) out.cols.push_back(i + stride);

  const auto full = fourier_submatrix(n, out.rows, out.cols);
  const auto f1 = fourier_submatrix(n, left, sub.samples);
  const std::size_t h = left.size();
  const std::size_t w = sub.samples.size();
  for (std::size_t i = 0; i < 2 * h; ++i) {
    const std::size_t src = i % h;
    const Complex d = unit_root(left[src] * stride, n, -1);
    const double sign = i < h ? 1.0 : -1.0;
    for (std::size_t c = 0; c < 2 * w; ++c) {
      const Complex expect = c < w ? f1[src][c] : sign * d * f1[src][c - w];
      out.max_abs_diff = std::max(out.max_abs_diff, std::abs(full[i][c] - expect));
    }
  }
  out.passed = out.max_abs_diff <= tol;
  return out;
}

double unitarity_deviation(Index n, std::span<const Index> rows, std::span<const Index> cols) {
  const auto a = fourier_submatrix(n, rows, cols);
  double dev = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows.size(); ++k) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < cols.size(); ++c) acc += a[i][c] * std::conj(a[k][c]);
      const double target = i == k ? static_cast<double>(cols.size()) : 0.0;
      dev = std::max(dev, std::abs(acc - target));
    }
  return dev;
}

SpectralityReport spectrality_check(const SupportSet& support, double tol) {
  SpectralityReport rep;
  rep.pivots = pivots(support);
  rep.applicable = is_pow2(support.size());
  if (!rep.applicable) return rep;
  const SamplingPattern pat = pivoted_pattern(rep.pivots, support.levels());
  const auto a = fourier_submatrix(support.modulus(), support.indices(), pat.samples);
  const double target = static_cast<double>(support.size());
  for (std::size_t i = 0; i < support.size(); ++i)
    for (std::size_t k = i; k < support.size(); ++k) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < pat.size(); ++c) acc += a[i][c] * std::conj(a[k][c]);
      rep.max_abs_dev = std::max(rep.max_abs_dev, std::abs(acc - (i == k ? target : 0.0)));
    }
  rep.passed = rep.max_abs_dev <= tol;
  return rep;
}

}  // namespace sdft
