#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sdft/congruence.hpp"
#include "sdft/errors.hpp"
#include "sdft/families.hpp"

using namespace sdft;

namespace {

std::vector<int> as_vec(const PivotVector& r) { return {r.begin(), r.end()}; }

PivotVector random_pivots(Rng& rng, int levels, std::size_t max_count) {
  std::vector<int> lv;
  for (int l = 0; l < levels; ++l)
    if (rng.bernoulli(0.5)) lv.push_back(l);
  while (lv.size() > max_count) lv.erase(lv.begin() + static_cast<long>(rng.below(lv.size())));
  return PivotVector(lv);
}

}  // namespace

TEST_CASE("pivot vector") {
  PivotVector r({1, 3, 4});
  CHECK(r.drop_top(1) == PivotVector({1, 3}));
  CHECK(r.prefix(1) == PivotVector({1}));
  CHECK(r.drop_top(3).empty());
  CHECK(r.decoding_level() == 5);
  CHECK(PivotVector().decoding_level() == 0);
  CHECK(r.to_string() == "(1,3,4)");
  CHECK_THROWS_AS(PivotVector({3, 1}), InvalidInput);
  CHECK_THROWS_AS(PivotVector({-1}), InvalidInput);
}

TEST_CASE("child convention") {
  const NodeId v{2, 3};
  CHECK(left_child(v) == NodeId{3, 7});
  CHECK(right_child(v) == NodeId{3, 3});
  CHECK(parent(left_child(v)) == v);
}

TEST_CASE("tree of {0,3,6,7} at depth 2") {
  // residues mod 4: 0 -> 0, 3 -> 3, 6 -> 2, 7 -> 3
  CongruenceTree t(SupportSet(8, {0, 3, 6, 7}), 2);
  const auto lvl = t.level(2);
  REQUIRE(lvl.size() == 3);
  CHECK(lvl[0].id.residue == 0);
  CHECK(lvl[0].members == std::vector<Index>{0});
  CHECK(lvl[1].id.residue == 2);
  CHECK(lvl[1].members == std::vector<Index>{6});
  CHECK(lvl[2].id.residue == 3);
  CHECK(lvl[2].members == std::vector<Index>{3, 7});
  CHECK(t.node_weight({2, 1}) == 0);
  CHECK(t.max_weight_at_level(2) == 2);
  CHECK(t.build_bitops() == 8);
}

TEST_CASE("full tree of Z_8") {
  CongruenceTree t(SupportSet::full(8), 3);
  for (int l = 0; l <= 3; ++l) {
    CHECK(t.level(l).size() == (std::size_t{1} << l));
    CHECK(t.max_weight_at_level(l) == (std::size_t{8} >> l));
  }
  CHECK(t.split_levels() == std::vector<int>{0, 1, 2});
}

TEST_CASE("singleton tree") {
  CongruenceTree t(SupportSet(64, {37}), 6);
  for (int l = 0; l <= 6; ++l) CHECK(t.max_weight_at_level(l) == 1);
  CHECK(t.split_levels().empty());
  CHECK(pivots(SupportSet(64, {37})).empty());
}

TEST_CASE("pivots of fixtures") {
  CHECK(as_vec(pivots(SupportSet(32, {3, 17, 25, 27}))) == std::vector<int>{1, 3});
  CHECK(as_vec(pivots(SupportSet(1024, {23, 187, 190, 247, 386, 731, 990, 994}))) == std::vector<int>{0, 2, 5});
  CHECK(as_vec(pivots(SupportSet(1024, {84, 305, 725, 992}))) == std::vector<int>{0, 2});
  CHECK(oracle::pivot_levels(1024, {84, 305, 725, 992}) == std::vector<int>{0, 2});
}

TEST_CASE("classification") {
  const auto hom = classify(SupportSet(32, {3, 17, 25, 27}));
  CHECK(hom.kind == SupportClass::kHomogeneous);
  CHECK(as_vec(hom.pivots) == std::vector<int>{1, 3});

  const SupportSet part(64, {3, 17, 25, 27, 35});
  CHECK(classify(part).kind == SupportClass::kGeneric);
  CHECK(classify(part, PivotVector({1, 3})).kind == SupportClass::kPartHomogeneous);
  CHECK(as_vec(pivots(part)) == std::vector<int>{1, 3, 5});

  const auto js = classify(gen_jstar(6));
  CHECK(js.kind == SupportClass::kGeneric);
  CHECK(as_vec(js.pivots) == std::vector<int>{0, 1, 2, 3, 4});  // v2(2^a - 2^b) = min(a, b) < M - 1

  CHECK(classify(SupportSet(8, {5})).kind == SupportClass::kHomogeneous);
}

TEST_CASE("part homogeneity reports offending pivot") {
  const SupportSet j(64, {3, 17, 25, 27, 35});
  CHECK(is_part_homogeneous(j, PivotVector({1, 3})));
  CHECK_FALSE(is_part_homogeneous(j, PivotVector({3})));
  CHECK(offending_pivot(j, PivotVector({3})) == 1);
  CHECK(is_part_homogeneous(j, PivotVector()));
  try {
    require_part_homogeneous(j, PivotVector({1, 5}));
    FAIL("expected a contract violation");
  } catch (const ContractViolation& e) {
    CHECK(std::string(e.what()).find('3') != std::string::npos);
  }
}

TEST_CASE("heights of the part-homogeneous fixture") {
  const SupportSet j(64, {3, 17, 25, 27, 35});
  const PivotVector r({1, 3});
  CongruenceTree t(j, 6);
  const int want[] = {2, 2, 1, 1, 0, 0, 0};
  for (int l = 0; l <= 6; ++l)
    for (const auto& node : t.level(l)) CHECK(height_of(t, node.id, r) == want[l]);
  CHECK_THROWS_AS(height_of(t, NodeId{0, 0}, PivotVector({3})), ContractViolation);
  CHECK(level_for_height(r, 0) == 4);
  CHECK(level_for_height(r, 1) == 2);
  CHECK(level_for_height(r, 2) == 0);
  CHECK(t.max_weight_at_level(0) == 5);
  CHECK(t.max_weight_at_level(6) == 1);
}

TEST_CASE("induced weights") {
  const SupportSet j(32, {3, 17, 25, 27});
  CongruenceTree t(j, 5);
  const ComplexVec ones(4, 1.0);
  const ComplexVec w{{1, 2}, {3, 0}, {0, -1}, {5, 5}};
  for (int l = 0; l <= 5; ++l)
    for (const auto& node : t.level(l))
      CHECK(std::abs(t.induced_weight(node.id, ones) - Complex(double(node.weight()))) < 1e-15);
  CHECK(std::abs(t.induced_weight({0, 0}, w) - Complex(9, 6)) < 1e-15);
}

TEST_CASE("pairwise and tree pivots agree, lower bound holds") {
  Rng rng(7);
  for (int t = 0; t < 300; ++t) {
    const int m = 3 + static_cast<int>(rng.below(10));
    const Index n = Index{1} << m;
    const std::size_t k = 1 + rng.below(std::min<Index>(n, 200));
    std::set<Index> s;
    while (s.size() < k) s.insert(rng.below(n));
    const SupportSet j(n, {s.begin(), s.end()});
    const auto p = pivots_pairwise(j);
    CHECK(p == pivots_from_tree(j));
    CHECK(as_vec(p) == oracle::pivot_levels(n, {s.begin(), s.end()}));
    CHECK(p.size() >= static_cast<std::size_t>(std::ceil(std::log2(double(k)))));
  }
}

TEST_CASE("homogeneous tree properties") {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    const int m = 2 + static_cast<int>(rng.below(12));
    const PivotVector r = random_pivots(rng, m, 8);
    const SupportSet j = gen_homogeneous(r, m, rng.next());
    REQUIRE(j.size() == (std::size_t{1} << r.size()));
    const std::vector<Index> idx(j.begin(), j.end());
    CHECK(oracle::pivot_levels(j.modulus(), idx).size() == r.size());
    CHECK(is_homogeneous(j));
    CongruenceTree tree(j, m);
    for (int l = 0; l < m; ++l) {
      bool any_split = false, all_split = true;
      for (const auto& node : tree.level(l)) {
        const bool sp = tree.splits(node.id);
        any_split |= sp;
        all_split &= sp;
        if (sp) CHECK(tree.node_weight(left_child(node.id)) == tree.node_weight(right_child(node.id)));
      }
      CHECK(any_split == all_split);
      CHECK(any_split == r.contains(l));
    }
    for (int l = 0; l <= m; ++l) {
      std::size_t above = 0;
      for (int p : r) above += (p >= l);
      CHECK(tree.max_weight_at_level(l) == (std::size_t{1} << above));
    }
  }
}

TEST_CASE("part-homogeneous node counts and mu recursion") {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    const int m = 4 + static_cast<int>(rng.below(8));
    const Index n = Index{1} << m;
    std::set<Index> s;
    const std::size_t k = 1 + rng.below(60);
    while (s.size() < std::min<Index>(k, n)) s.insert(rng.below(n));
    const SupportSet j(n, {s.begin(), s.end()});
    const PivotVector all = pivots(j);
    CongruenceTree tree(j, m);
    for (std::size_t q = 0; q <= all.size(); ++q) {
      const PivotVector r = all.prefix(q);
      REQUIRE(is_part_homogeneous(j, r));
      for (std::size_t h = 0; h <= r.size(); ++h)
        CHECK(tree.level(level_for_height(r, h)).size() <= (std::size_t{1} << (r.size() - h)));
    }
    for (int l = 0; l < m; ++l) {
      const auto a = tree.max_weight_at_level(l), b = tree.max_weight_at_level(l + 1);
      if (!all.contains(l)) CHECK(a == b);
      CHECK(2 * b >= a);
    }
  }
}
