#include "sdft/sas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "sdft/errors.hpp"

namespace sdft {

SasPlan make_plan(const SupportSet& support, const PivotVector& r) {
  require_part_homogeneous(support, r);
  SasPlan plan;
  plan.pivots = r;
  plan.decoding_level = r.decoding_level();
  const CongruenceTree tree(support, plan.decoding_level);
  plan.tree_bitops = tree.build_bitops();
  for (const auto& node : tree.level(plan.decoding_level)) {
    plan.mu_star = std::max(plan.mu_star, node.weight());
    plan.sum_sq_weights += static_cast<std::uint64_t>(node.weight()) * node.weight();
  }
  for (Index j = 0; j < plan.mu_star; ++j) plan.shifts.push_back(j);
  const double s = static_cast<double>(r.size());
  const double samples = std::ldexp(1.0, static_cast<int>(r.size()));
  const double mu = static_cast<double>(plan.mu_star);
  plan.predicted_cost = kC1 * s * samples * mu + kC2 * static_cast<double>(plan.sum_sq_weights);
  plan.envelope = samples * mu * (kC1 * s + kC2 * mu);
  return plan;
}

PivotPolicy parse_policy(const std::string& name) {
  if (name == "balanced") return PivotPolicy::kBalanced;
  if (name == "uoe") return PivotPolicy::kUoe;
  if (name == "uoh") return PivotPolicy::kUoh;
  if (name == "random_subset") return PivotPolicy::kRandomSubset;
  if (name == "auto") return PivotPolicy::kAuto;
  throw InvalidInput("unknown pivot policy '" + name + "'");
}

std::string to_string(PivotPolicy policy) {
  switch (policy) {
    case PivotPolicy::kBalanced: return "balanced";
    case PivotPolicy::kUoe: return "uoe";
    case PivotPolicy::kUoh: return "uoh";
    case PivotPolicy::kRandomSubset: return "random_subset";
    case PivotPolicy::kAuto: return "auto";
  }
  return "unknown";
}

std::size_t loglog_prefix_size(std::size_t k, std::size_t limit) {
  if (k < 2) return 0;
  const double lk = std::log2(static_cast<double>(k));
  const double v = std::floor(lk - std::log2(lk));
  if (v <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(v), limit);
}

PivotVector select_pivots(const SupportSet& support, PivotPolicy policy, const FamilyMeta& meta) {
  PivotVector r;
  switch (policy) {
    case PivotPolicy::kAuto: {
      const PivotVector all = pivots(support);
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t n = 0; n <= all.size(); ++n) {
        const PivotVector cand = all.prefix(n);
        const double cost = make_plan(support, cand).predicted_cost;
        if (cost < best) {
          best = cost;
          r = cand;
        }
      }
      return r;
    }
    case PivotPolicy::kBalanced:
      if (!meta.base_pivots) throw InvalidInput("balanced policy needs family pivots");
      r = *meta.base_pivots;
      break;
    case PivotPolicy::kUoe: {
      PivotVector base = meta.base_pivots.value_or([&] {
        std::vector<int> lv(static_cast<std::size_t>(support.levels()));
        for (int l = 0; l < support.levels(); ++l) lv[static_cast<std::size_t>(l)] = l;
        return PivotVector(lv);
      }());
      r = base.prefix(loglog_prefix_size(support.size(), base.size()));
      break;
    }
    case PivotPolicy::kUoh:
    case PivotPolicy::kRandomSubset:
      if (!meta.base_pivots) throw InvalidInput(to_string(policy) + " policy needs base pivots");
      r = meta.base_pivots->prefix(loglog_prefix_size(support.size(), meta.base_pivots->size()));
      break;
  }
  require_part_homogeneous(support, r);
  return r;
}

namespace {

// Leja order: start from the first node, then repeatedly take the node that
// maximizes the product of distances to those already chosen. Depends only
// on the nodes, so it is precomputed like a twiddle table and not counted.
std::vector<std::size_t> leja_order(std::span<const Complex> nodes) {
  const std::size_t m = nodes.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> score(m, 0.0);  // sum of log distances
  for (std::size_t k = 1; k < m; ++k) {
    const Complex last = nodes[order[k - 1]];
    std::size_t best = k;
    for (std::size_t i = k; i < m; ++i) {
      score[order[i]] += std::log(std::abs(nodes[order[i]] - last));
      if (score[order[i]] > score[order[best]]) best = i;
    }
    std::swap(order[k], order[best]);
  }
  return order;
}

}  // namespace

ComplexVec vandermonde_solve(std::span<const Complex> nodes, std::span<const Complex> rhs, OpCounter* counter) {
  const std::size_t m = nodes.size();
  if (m == 0) throw InvalidInput("empty Vandermonde system");
  if (rhs.size() != m) throw InvalidInput("Vandermonde right-hand side has the wrong length");
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (nodes[a] == nodes[b]) throw InvalidInput("Vandermonde nodes must be distinct");

  const auto order = leja_order(nodes);
  ComplexVec x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = nodes[order[i]];

  ComplexVec c(rhs.begin(), rhs.end());
  for (std::size_t k = 0; k + 1 < m; ++k)
    for (std::size_t i = m - 1; i > k; --i) c[i] -= x[k] * c[i - 1];
  for (std::size_t k = m - 1; k-- > 0;) {
    for (std::size_t i = k + 1; i < m; ++i) c[i] /= x[i] - x[i - k - 1];
    for (std::size_t i = k; i + 1 < m; ++i) c[i] -= c[i + 1];
  }
  if (counter) {
    const std::uint64_t pairs = static_cast<std::uint64_t>(m) * (m - 1) / 2;
    counter->mul(2 * pairs);        // x_k c_{i-1} and the divisions
    counter->add(3 * pairs);        // two subtraction sweeps and node gaps
  }
  ComplexVec out(m);
  for (std::size_t i = 0; i < m; ++i) out[order[i]] = c[i];
  return out;
}

ComplexVec dense_solve(std::vector<ComplexVec> a, ComplexVec b, OpCounter* counter) {
  const std::size_t n = b.size();
  if (a.size() != n) throw InvalidInput("dense_solve: dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) == 0.0) throw ContractViolation("dense_solve: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = a[r][col] / a[col][col];
      for (std::size_t k = col + 1; k < n; ++k) a[r][k] -= factor * a[col][k];
      b[r] -= factor * b[col];
      if (counter) {
        counter->mul(n - col);
        counter->add(n - col);
      }
    }
  }
  ComplexVec x(n);
  for (std::size_t r = n; r-- > 0;) {
    Complex acc = b[r];
    for (std::size_t k = r + 1; k < n; ++k) acc -= a[r][k] * x[k];
    x[r] = acc / a[r][r];
    if (counter) {
      counter->mul(n - r);
      counter->add(n - r - 1);
    }
  }
  return x;
}

double vandermonde_residual(std::span<const Complex> nodes, std::span<const Complex> coeffs,
                            std::span<const Complex> rhs) {
  const std::size_t m = nodes.size();
  ComplexVec powers(m, 1.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    Complex acc = 0.0;
    for (std::size_t q = 0; q < m; ++q) acc += powers[q] * coeffs[q];
    worst = std::max(worst, std::abs(acc - rhs[j]));
    for (std::size_t q = 0; q < m; ++q) powers[q] *= nodes[q];
  }
  return worst;
}

namespace {

double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

// Solves one aliased node system, falling back to a dense solve when the
// Bjorck-Pereyra residual misses the guard.
ComplexVec solve_node(std::span<const Complex> nodes, std::span<const Complex> rhs, OpCounter& counter,
                      NodeSystemRecord& rec) {
  OpCounter fast;
  fast.set_phase(counter.phase());
  ComplexVec c = vandermonde_solve(nodes, rhs, &fast);
  rec.residual = vandermonde_residual(nodes, c, rhs);
  if (rec.residual <= kResidualGuard * std::max(max_abs(rhs), 1e-300)) {
    counter.merge(fast);
    return c;
  }
  const std::size_t m = nodes.size();
  std::vector<ComplexVec> a(m, ComplexVec(m));
  for (std::size_t q = 0; q < m; ++q) {
    Complex p = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      a[j][q] = p;
      p *= nodes[q];
    }
  }
  OpCounter dense;
  dense.set_phase(counter.phase());
  c = dense_solve(std::move(a), ComplexVec(rhs.begin(), rhs.end()), &dense);
  counter.merge(dense);
  rec.residual = vandermonde_residual(nodes, c, rhs);
  rec.dense_fallback = true;
  return c;
}

}  // namespace

SasResult sas_transform(const SampleSource& f, const SupportSet& support, const PivotVector& r) {
  SasResult out;
  out.plan = make_plan(support, r);
  const Index n = support.modulus();

  std::unordered_set<Index> touched;
  const SampleSource recording = [&](Index i) {
    touched.insert(i);
    return f(i);
  };

  OpCounter counter;
  counter.set_phase("hidft");
  for (Index shift : out.plan.shifts)
    out.measurements.push_back(hidft(recording, support, r, 0, shift, &counter));

  const double scale = static_cast<double>(n) / std::ldexp(1.0, static_cast<int>(r.size()));
  out.coeffs.assign(support.size(), 0.0);
  const CongruenceTree tree(support, out.plan.decoding_level);
  for (const auto& node : tree.level(out.plan.decoding_level)) {
    const std::size_t m = node.weight();
    const std::size_t pos = static_cast<std::size_t>(
        std::lower_bound(out.measurements[0].nodes.begin(), out.measurements[0].nodes.end(), node.id.residue,
                         [](const NodeId& v, Index x) { return v.residue < x; }) -
        out.measurements[0].nodes.begin());
    if (m == 1) {
      counter.set_phase("read");
      out.coeffs[support.position(node.members[0])] = out.measurements[0].values[pos] * scale;
      counter.mul();
      continue;
    }
    counter.set_phase("solve");
    ComplexVec rhs(m);
    for (std::size_t j = 0; j < m; ++j) rhs[j] = out.measurements[j].values[pos] * scale;
    counter.mul(m);
    ComplexVec x(m);
    for (std::size_t q = 0; q < m; ++q) x[q] = unit_root(node.members[q], n, -1);
    NodeSystemRecord rec{node.id, node.members, 0.0, false};
    const ComplexVec c = solve_node(x, rhs, counter, rec);
    for (std::size_t q = 0; q < m; ++q) out.coeffs[support.position(node.members[q])] = c[q];
    out.systems.push_back(std::move(rec));
  }

  CostReport& cost = out.cost;
  cost.tree_build_bitops = out.plan.tree_bitops;
  const auto h = counter.phase_tally("hidft");
  const auto s = counter.phase_tally("solve");
  const auto rd = counter.phase_tally("read");
  cost.hidft_adds = h.adds;
  cost.hidft_mults = h.mults;
  cost.solve_adds = s.adds;
  cost.solve_mults = s.mults;
  cost.read_ops = rd.total();
  cost.bound_alg1bnd = out.plan.predicted_cost;
  const double a = std::ldexp(1.0, static_cast<int>(r.size()));
  cost.bound_hidft = static_cast<double>(out.plan.mu_star) * (kC1 * a * static_cast<double>(r.size()) + a);
  cost.samples_touched = touched.size();
  cost.systems_solved = out.systems.size();
  cost.dense_fallbacks = static_cast<std::size_t>(
      std::count_if(out.systems.begin(), out.systems.end(), [](const auto& s) { return s.dense_fallback; }));
  return out;
}

SubmatrixResult submatrix_method(const SampleSource& f, const SupportSet& support) {
  const std::size_t k = support.size();
  const Index n = support.modulus();
  ComplexVec nodes(k);
  ComplexVec rhs(k);
  for (std::size_t q = 0; q < k; ++q) nodes[q] = unit_root(support[q], n, +1);
  for (std::size_t i = 0; i < k; ++i) rhs[i] = f(i) * static_cast<double>(n);
  OpCounter counter;
  counter.mul(k);
  SubmatrixResult out;
  NodeSystemRecord rec;
  out.coeffs = solve_node(nodes, rhs, counter, rec);
  out.residual = rec.residual;
  out.ops = counter.total();
  return out;
}

}  // namespace sdft
