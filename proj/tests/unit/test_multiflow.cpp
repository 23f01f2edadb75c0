#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tbackup/errors.hpp"
#include "tbackup/multiflow.hpp"
#include "tbackup/pipeline.hpp"

using namespace tbackup;

TEST(Multiflow, TriangleHalfPaths) {
  auto inst = fixtures::triangle();
  auto res = extract_multiflow(inst, EdgeVector(3, make_rational(1, 2)));
  ASSERT_EQ(res.flow.paths.size(), 3u);
  for (const auto& p : res.flow.paths) {
    EXPECT_EQ(p.value, make_rational(1, 2));
    EXPECT_EQ(p.edges.size(), 1u);
  }
  EXPECT_EQ(res.stats.splits, 0);
  auto rep = verify_multiflow(inst, res.flow);
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.half_integral);
  EXPECT_FALSE(rep.integral);
  EXPECT_EQ(rep.cost, make_rational(3, 2));
}

TEST(Multiflow, StarThroughHub) {
  auto inst = fixtures::star();
  auto res = extract_multiflow(inst, EdgeVector(3, Rational(1)));
  auto rep = verify_multiflow(inst, res.flow);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(res.stats.removals, 0);
  EXPECT_EQ(res.stats.splits, 3);
  EXPECT_EQ(res.stats.node_order, (std::vector<int>{0}));
  ASSERT_EQ(res.flow.paths.size(), 3u);
  for (const auto& p : res.flow.paths) {
    EXPECT_EQ(p.value, make_rational(1, 2));
    EXPECT_EQ(p.nodes.size(), 3u);
    EXPECT_EQ(p.nodes[1], 0);
  }
  for (const auto& l : rep.load) EXPECT_EQ(l, 1);
}

TEST(Multiflow, ExciseLoops) {
  std::vector<int> nodes{0, 1, 2, 1, 3};
  std::vector<int> edges{10, 11, 12, 13};
  excise_loops(nodes, edges);
  EXPECT_EQ(nodes, (std::vector<int>{0, 1, 3}));
  EXPECT_EQ(edges, (std::vector<int>{10, 13}));

  std::vector<int> back{4, 5, 4, 6};
  std::vector<int> be{1, 2, 3};
  excise_loops(back, be);
  EXPECT_EQ(back, (std::vector<int>{4, 6}));
  EXPECT_EQ(be, (std::vector<int>{3}));
}

TEST(Multiflow, SplitPairConcatenatesWalks) {
  SplitGraph j;
  j.num_nodes = 3;
  j.requirement = {2, 0, 2};
  j.terminals = {0, 2};
  j.edges = {{1, 0, {1, 0}, {5}}, {1, 2, {1, 2}, {6}}};
  split_pair(j, 1, 0, 1);
  ASSERT_EQ(j.edges.size(), 1u);
  EXPECT_EQ(j.edges[0].u, 0);
  EXPECT_EQ(j.edges[0].v, 2);
  EXPECT_EQ(j.edges[0].walk_nodes, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(j.edges[0].walk_edges, (std::vector<int>{5, 6}));
}

TEST(Multiflow, NonMinimalVectorRaises) {
  Instance inst(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {0, 1, Rational(1)}}, {{0, 1}, {2, 1}}, Mode::Edge);
  EdgeVector x(3, Rational(1));
  EXPECT_THROW(extract_multiflow(inst, x), NotMinimal);
  auto res = extract_multiflow(inst, x, true);
  EXPECT_EQ(res.stats.removals, 2);
  EXPECT_TRUE(verify_multiflow(inst, res.flow).ok);
}

TEST(Multiflow, RejectsNonHalfIntegralInput) {
  auto inst = fixtures::triangle();
  EXPECT_THROW(extract_multiflow(inst, EdgeVector(3, make_rational(1, 3))), std::invalid_argument);
  EXPECT_THROW(extract_multiflow(inst, EdgeVector(3, Rational(0))), std::invalid_argument);
}

TEST(Multiflow, VerifyReportsViolations) {
  auto inst = fixtures::triangle();
  Multiflow bad;
  bad.paths.push_back({{0, 1}, {1}, Rational(1)});
  auto rep = verify_multiflow(inst, bad);
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.violations.empty());
}

// Half-integral LP optima split off with load exactly x, cost c.x, one
// verified state per split, and no removals.
TEST(MultiflowProperty, LoadsMatchTheLpOptimum) {
  int with_splits = 0;
  for (const auto& inst : fixtures::random_batch(101, 80, 7, Mode::Edge, 3)) {
    auto res = solve(inst, {.lp_only = true});
    auto mf = extract_multiflow(inst, res.solution);
    auto rep = verify_multiflow(inst, mf.flow);
    ASSERT_TRUE(rep.ok) << format_instance(inst);
    EXPECT_TRUE(rep.half_integral);
    EXPECT_EQ(mf.stats.removals, 0);
    EXPECT_EQ(mf.stats.verified_states, mf.stats.splits);
    EXPECT_EQ(rep.load, res.solution.values());
    EXPECT_EQ(rep.cost, res.solution.dot(inst.costs()));
    with_splits += mf.stats.splits > 0;
  }
  EXPECT_GT(with_splits, 10);
}
