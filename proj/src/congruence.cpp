#include "sdft/congruence.hpp"

#include <algorithm>
#include <sstream>

#include "sdft/errors.hpp"

namespace sdft {

PivotVector::PivotVector(std::vector<int> levels) : levels_(std::move(levels)) {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i] < 0) throw InvalidInput("pivot levels must be non-negative");
    if (i > 0 && levels_[i] <= levels_[i - 1])
      throw InvalidInput("pivot levels must be strictly increasing");
  }
}

bool PivotVector::contains(int level) const {
  return std::binary_search(levels_.begin(), levels_.end(), level);
}

PivotVector PivotVector::drop_top(std::size_t n) const {
  if (n > levels_.size()) throw InvalidInput("cannot drop more pivots than present");
  return PivotVector(std::vector<int>(levels_.begin(), levels_.end() - static_cast<std::ptrdiff_t>(n)));
}

std::string PivotVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < levels_.size(); ++i) os << (i ? "," : "") << levels_[i];
  os << ')';
  return os.str();
}

NodeId left_child(NodeId v) { return {v.level + 1, v.residue | (Index{1} << v.level)}; }
NodeId right_child(NodeId v) { return {v.level + 1, v.residue}; }
NodeId parent(NodeId v) {
  if (v.level == 0) throw InvalidInput("root has no parent");
  return {v.level - 1, mod_pow2(v.residue, v.level - 1)};
}

CongruenceTree::CongruenceTree(const SupportSet& support, int depth)
    : support_(support), depth_(depth) {
  if (depth < 0 || depth > support.levels())
    throw InvalidInput("tree depth " + std::to_string(depth) + " outside [0, " +
                       std::to_string(support.levels()) + "]");
  levels_.resize(static_cast<std::size_t>(depth) + 1);
  std::vector<std::pair<Index, Index>> keyed(support.size());
  for (int l = 0; l <= depth; ++l) {
    for (std::size_t i = 0; i < support.size(); ++i) keyed[i] = {mod_pow2(support[i], l), support[i]};
    std::sort(keyed.begin(), keyed.end());
    auto& nodes = levels_[static_cast<std::size_t>(l)];
    for (const auto& [residue, j] : keyed) {
      if (nodes.empty() || nodes.back().id.residue != residue) nodes.push_back(Node{{l, residue}, {}});
      nodes.back().members.push_back(j);
    }
  }
}

std::span<const CongruenceTree::Node> CongruenceTree::level(int l) const {
  if (l < 0 || l > depth_) throw InvalidInput("level " + std::to_string(l) + " outside tree depth");
  return levels_[static_cast<std::size_t>(l)];
}

const CongruenceTree::Node* CongruenceTree::find(NodeId id) const {
  if (id.level < 0 || id.level > depth_) return nullptr;
  const auto& nodes = levels_[static_cast<std::size_t>(id.level)];
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id.residue,
                             [](const Node& n, Index r) { return n.id.residue < r; });
  return (it != nodes.end() && it->id.residue == id.residue) ? &*it : nullptr;
}

std::size_t CongruenceTree::node_weight(NodeId id) const {
  const Node* n = find(id);
  return n ? n->weight() : 0;
}

Complex CongruenceTree::induced_weight(NodeId id, std::span<const Complex> w) const {
  if (w.size() != support_.size()) throw InvalidInput("weight vector length must equal |J|");
  const Node* n = find(id);
  if (!n) return 0.0;
  Complex acc = 0.0;
  for (Index j : n->members) acc += w[support_.position(j)];
  return acc;
}

std::size_t CongruenceTree::max_weight_at_level(int l) const {
  std::size_t best = 0;
  for (const auto& n : level(l)) best = std::max(best, n.weight());
  return best;
}

bool CongruenceTree::splits(NodeId id) const {
  if (id.level >= depth_) return false;
  return find(left_child(id)) != nullptr && find(right_child(id)) != nullptr;
}

std::vector<int> CongruenceTree::split_levels() const {
  std::vector<int> out;
  for (int l = 0; l < depth_; ++l) {
    const auto& here = levels_[static_cast<std::size_t>(l)];
    if (levels_[static_cast<std::size_t>(l) + 1].size() > here.size()) out.push_back(l);
  }
  return out;
}

CongruenceTree build_tree(const SupportSet& support, int depth) { return CongruenceTree(support, depth); }

PivotVector pivots_pairwise(const SupportSet& support) {
  std::uint64_t mask = 0;
  const auto idx = support.indices();
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) mask |= std::uint64_t{1} << v2(idx[b] - idx[a]);
  std::vector<int> levels;
  for (int l = 0; l < 64; ++l)
    if (mask >> l & 1u) levels.push_back(l);
  return PivotVector(std::move(levels));
}

PivotVector pivots_from_tree(const SupportSet& support) {
  return PivotVector(build_tree(support, support.levels()).split_levels());
}

PivotVector pivots(const SupportSet& support) {
  return support.size() <= kPairwisePivotCap ? pivots_pairwise(support) : pivots_from_tree(support);
}

std::optional<int> offending_pivot(const SupportSet& support, const PivotVector& r) {
  if (r.empty()) return std::nullopt;
  for (int p : pivots(support)) {
    if (p > r.max()) break;
    if (!r.contains(p)) return p;
  }
  return std::nullopt;
}

bool is_part_homogeneous(const SupportSet& support, const PivotVector& r) {
  return !offending_pivot(support, r).has_value();
}

void require_part_homogeneous(const SupportSet& support, const PivotVector& r) {
  if (auto p = offending_pivot(support, r))
    throw ContractViolation("support is not " + r.to_string() + "-part-homogeneous: pivot " +
                            std::to_string(*p) + " is not listed");
}

bool is_homogeneous(const SupportSet& support) {
  return is_pow2(support.size()) &&
         pivots(support).size() == static_cast<std::size_t>(log2_exact(support.size()));
}

Classification classify(const SupportSet& support) {
  Classification c;
  c.pivots = pivots(support);
  const bool hom = is_pow2(support.size()) &&
                   c.pivots.size() == static_cast<std::size_t>(log2_exact(support.size()));
  c.kind = hom ? SupportClass::kHomogeneous : SupportClass::kGeneric;
  return c;
}

Classification classify(const SupportSet& support, const PivotVector& r) {
  Classification c = classify(support);
  if (c.kind == SupportClass::kGeneric && is_part_homogeneous(support, r))
    c.kind = SupportClass::kPartHomogeneous;
  return c;
}

std::string to_string(SupportClass kind) {
  switch (kind) {
    case SupportClass::kHomogeneous: return "homogeneous";
    case SupportClass::kPartHomogeneous: return "part_homogeneous";
    case SupportClass::kGeneric: return "generic";
  }
  return "unknown";
}

int height_of(const CongruenceTree& tree, NodeId node, const PivotVector& r) {
  require_part_homogeneous(tree.support(), r);
  return static_cast<int>(std::count_if(r.begin(), r.end(), [&](int p) { return p >= node.level; }));
}

int level_for_height(const PivotVector& r, std::size_t n) {
  if (n > r.size()) throw InvalidInput("height exceeds size(r)");
  return n == r.size() ? 0 : r[r.size() - n - 1] + 1;
}

}  // namespace sdft
