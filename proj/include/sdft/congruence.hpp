#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdft/numeric_core.hpp"
#include "sdft/support_set.hpp"

namespace sdft {

// Strictly increasing levels in [0, M).
class PivotVector {
 public:
  PivotVector() = default;
  explicit PivotVector(std::vector<int> levels);

  std::size_t size() const noexcept { return levels_.size(); }
  bool empty() const noexcept { return levels_.empty(); }
  int operator[](std::size_t i) const noexcept { return levels_[i]; }
  int max() const { return levels_.back(); }
  std::span<const int> levels() const noexcept { return levels_; }
  bool contains(int level) const;

  // r^{n-}: drop the n largest pivots.
  PivotVector drop_top(std::size_t n) const;
  // The first n pivots.
  PivotVector prefix(std::size_t n) const { return drop_top(size() - std::min(n, size())); }

  // Level at which aliased nodes are resolved: r_max + 1, or 0 for r = ().
  int decoding_level() const noexcept { return empty() ? 0 : levels_.back() + 1; }

  std::string to_string() const;

  auto begin() const noexcept { return levels_.begin(); }
  auto end() const noexcept { return levels_.end(); }
  friend bool operator==(const PivotVector&, const PivotVector&) = default;

 private:
  std::vector<int> levels_;
};

struct NodeId {
  int level = 0;
  Index residue = 0;  // modulo 2^level
  friend bool operator==(const NodeId&, const NodeId&) = default;
};

// Left child holds residues with bit `level` set, right child with it clear.
NodeId left_child(NodeId v);
NodeId right_child(NodeId v);
NodeId parent(NodeId v);

// The congruence tree T^depth(J): level l partitions J by residue mod 2^l.
// Empty nodes are not stored; queries on them report weight 0.
class CongruenceTree {
 public:
  struct Node {
    NodeId id;
    std::vector<Index> members;  // sorted
    std::size_t weight() const noexcept { return members.size(); }
  };

  CongruenceTree(const SupportSet& support, int depth);

  const SupportSet& support() const noexcept { return support_; }
  int depth() const noexcept { return depth_; }
  int levels() const noexcept { return support_.levels(); }

  // Nodes at level l, sorted by residue.
  std::span<const Node> level(int l) const;
  const Node* find(NodeId id) const;

  std::size_t node_weight(NodeId id) const;
  // mu(v, w) = sum of w over the node's members; w is aligned with the
  // support's sorted index order.
  Complex induced_weight(NodeId id, std::span<const Complex> w) const;
  std::size_t max_weight_at_level(int l) const;

  bool splits(NodeId id) const;
  // Levels l < depth at which some node has two children.
  std::vector<int> split_levels() const;

  // Bit operations spent building the tree, |J| * depth.
  std::uint64_t build_bitops() const noexcept { return support_.size() * static_cast<std::uint64_t>(depth_); }

 private:
  SupportSet support_;
  int depth_;
  std::vector<std::vector<Node>> levels_;
};

CongruenceTree build_tree(const SupportSet& support, int depth);

inline constexpr std::size_t kPairwisePivotCap = std::size_t{1} << 16;

// {v2(j1 - j2) : j1 != j2 in J}, by direct pairwise enumeration.
PivotVector pivots_pairwise(const SupportSet& support);
// The same set read off the splits of the full-depth tree.
PivotVector pivots_from_tree(const SupportSet& support);
// Pairwise up to kPairwisePivotCap elements, tree splits above.
PivotVector pivots(const SupportSet& support);

// Every pivot of J at or below r_max is listed in r.
bool is_part_homogeneous(const SupportSet& support, const PivotVector& r);
// First pivot of J at or below r_max that r does not list, if any.
std::optional<int> offending_pivot(const SupportSet& support, const PivotVector& r);
// Throws ContractViolation naming the offending pivot.
void require_part_homogeneous(const SupportSet& support, const PivotVector& r);

enum class SupportClass { kHomogeneous, kPartHomogeneous, kGeneric };

struct Classification {
  SupportClass kind = SupportClass::kGeneric;
  PivotVector pivots;  // pivots of J
};

// Homogeneous iff |J| = 2^s and J has exactly s pivots.
bool is_homogeneous(const SupportSet& support);
Classification classify(const SupportSet& support);
// As above, reporting kPartHomogeneous for non-homogeneous J that is
// r-part-homogeneous.
Classification classify(const SupportSet& support, const PivotVector& r);
std::string to_string(SupportClass kind);

// Number of pivots in r at or below the given level (levels above r_max have
// height 0). Throws ContractViolation if J is not r-part-homogeneous.
int height_of(const CongruenceTree& tree, NodeId node, const PivotVector& r);

// Level whose nodes represent height n for pivots r: r_{s-n} + 1, or 0 at
// n = size(r).
int level_for_height(const PivotVector& r, std::size_t n);

}  // namespace sdft
