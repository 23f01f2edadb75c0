#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "tbackup/biset.hpp"

using namespace tbackup;

namespace {

// Every biset (X, X+) with X nonempty, as (inner mask, outer mask).
std::vector<Biset> all_bisets(int n) {
  std::vector<Biset> out;
  for (unsigned outer = 1; outer < (1u << n); ++outer) {
    for (unsigned inner = outer;; inner = (inner - 1) & outer) {
      if (inner != 0) {
        NodeSet in(static_cast<size_t>(n), inner), out_set(static_cast<size_t>(n), outer);
        out.emplace_back(in, out_set);
      }
      if (inner == 0) break;
    }
  }
  return out;
}

EdgeVector random_x(std::mt19937_64& rng, int m) {
  EdgeVector x(m);
  for (int e = 0; e < m; ++e) x[e] = make_rational(static_cast<long>(rng() % 5), 2);
  return x;
}

}  // namespace

TEST(Biset, Operations) {
  Biset a = Biset::of(5, {0, 1}, {2});
  Biset b = Biset::of(5, {1, 2}, {3});
  EXPECT_EQ(format_biset(a), "({0,1},{0,1,2})");
  EXPECT_EQ(format_node_set(a.gamma()), "{2}");
  EXPECT_EQ(biset_cap(a, b), Biset::of(5, {1}, {2}));
  EXPECT_EQ(biset_cup(a, b), Biset::of(5, {0, 1, 2}, {3}));
  EXPECT_EQ(biset_minus(a, b), Biset::of(5, {0}, {}));
  EXPECT_EQ(classify_pair(a, b), PairKind::Crossing);
  EXPECT_EQ(classify_pair(Biset::of(5, {0}, {}), a), PairKind::Nested);
  EXPECT_EQ(classify_pair(Biset::of(5, {0}, {}), Biset::of(5, {3}, {4})), PairKind::StronglyDisjoint);
  // Disjoint inner parts, but 0 lies in the other's neighbor set.
  EXPECT_EQ(classify_pair(Biset::of(5, {0}, {}), Biset::of(5, {3}, {0})), PairKind::Crossing);
  EXPECT_THROW(Biset(make_node_set(3, {0, 1}), make_node_set(3, {0})), std::invalid_argument);
}

TEST(Biset, BoundaryAndRequirement) {
  auto inst = fixtures::star();  // hub 0, leaves 1..3
  Biset leaf = Biset::singleton(4, 1);
  EXPECT_EQ(boundary_edges(inst, leaf), (std::vector<int>{0}));
  Biset through_hub = Biset::of(4, {1}, {0});
  EXPECT_TRUE(boundary_edges(inst, through_hub).empty());
  EXPECT_EQ(h_value(inst, leaf), 1);
  EXPECT_EQ(h_value(inst, through_hub), 0);  // node mode: 1 - |{0}|
  EXPECT_EQ(owner_terminal(inst, leaf), 1);
  EXPECT_FALSE(owner_terminal(inst, Biset::of(4, {1, 2}, {})));
  EXPECT_EQ(h_value(inst.with_mode(Mode::Edge), through_hub), 0);
}

// C-biset enumeration against a filter over every biset.
TEST(BisetProperty, CBisetEnumerationMatchesFullScan) {
  for (const auto& inst : fixtures::random_batch(5, 30, 6)) {
    const int n = inst.num_nodes();
    std::set<std::pair<std::vector<int>, std::vector<int>>> expected, got;
    for (const auto& b : all_bisets(n)) {
      auto t = owner_terminal(inst, b);
      if (!t) continue;
      auto g = members(b.gamma());
      bool ok = true;
      for (int v : g) {
        bool adjacent = false;
        for (int e : inst.incident(v)) adjacent |= b.inner().test(static_cast<size_t>(inst.edge(e).other(v)));
        ok &= adjacent && !inst.is_terminal(v);
      }
      if (inst.mode() == Mode::Edge) ok &= g.empty();
      if (ok) expected.insert({members(b.inner()), members(b.outer())});
    }
    for_each_c_biset(inst, [&](const Biset& b) {
      got.insert({members(b.inner()), members(b.outer())});
      return true;
    });
    EXPECT_EQ(got, expected);
  }
}

TEST(BisetProperty, CutAndNeighborSubmodularity) {
  std::mt19937_64 rng(7);
  for (const auto& inst : fixtures::random_batch(11, 6, 6)) {
    auto bisets = all_bisets(inst.num_nodes());
    EdgeVector x = random_x(rng, inst.num_edges());
    auto d = [&](const Biset& b) { return boundary(x, b, inst.edges()); };
    auto g = [](const Biset& b) { return static_cast<long>(b.gamma().count()); };
    for (int trial = 0; trial < 2000; ++trial) {
      const auto& a = bisets[rng() % bisets.size()];
      const auto& b = bisets[rng() % bisets.size()];
      ASSERT_GE(d(a) + d(b), d(biset_cap(a, b)) + d(biset_cup(a, b)));
      ASSERT_GE(d(a) + d(b), d(biset_minus(a, b)) + d(biset_minus(b, a)));
      ASSERT_GE(g(a) + g(b), g(biset_cap(a, b)) + g(biset_cup(a, b)));
      ASSERT_GE(g(a) + g(b), g(biset_minus(a, b)) + g(biset_minus(b, a)));
    }
  }
}

// Residual node-connectivity requirement r - |Gamma| - x(delta) is skew
// supermodular on pairs where both values are positive.
TEST(BisetProperty, ResidualRequirementIsSkewSupermodular) {
  std::mt19937_64 rng(3);
  for (const auto& raw : fixtures::random_batch(23, 8, 5, Mode::Node)) {
    const Instance& inst = raw;
    auto bisets = all_bisets(inst.num_nodes());
    EdgeVector x = random_x(rng, inst.num_edges());
    for (int e = 0; e < inst.num_edges(); ++e) x[e] /= 2;
    auto f = [&](const Biset& b) -> Rational {
      if (b.empty()) return Rational(0);
      return Rational(h_value(inst, b)) - boundary(x, b, inst.edges());
    };
    std::vector<const Biset*> positive;
    for (const auto& b : bisets) {
      if (f(b) > 0) positive.push_back(&b);
    }
    for (const auto* a : positive) {
      for (const auto* b : positive) {
        Rational lhs = f(*a) + f(*b);
        bool cap_cup = lhs <= f(biset_cap(*a, *b)) + f(biset_cup(*a, *b));
        bool minus = lhs <= f(biset_minus(*a, *b)) + f(biset_minus(*b, *a));
        ASSERT_TRUE(cap_cup || minus) << format_biset(*a) << " " << format_biset(*b);
      }
    }
  }
}
