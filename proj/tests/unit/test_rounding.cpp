#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "tbackup/errors.hpp"
#include "tbackup/lp.hpp"
#include "tbackup/pipeline.hpp"
#include "tbackup/rounding.hpp"

using namespace tbackup;

namespace {

std::string pattern(const LabelAssignment& a) {
  std::string s;
  for (auto l : a.labels) s += l == Label::Plus ? '+' : '-';
  return s;
}

int plus_count(const LabelAssignment& a) {
  int n = 0;
  for (auto l : a.labels) n += l == Label::Plus;
  return n;
}

}  // namespace

TEST(Rounding, FiveCycle) {
  auto inst = fixtures::five_cycle();
  auto res = solve(inst);
  ASSERT_TRUE(res.rounding);
  ASSERT_EQ(res.rounding->cycles.size(), 1u);
  const auto& cyc = res.rounding->cycles[0];
  EXPECT_EQ(cyc.k(), 5);
  EXPECT_EQ(cyc.steps.size(), 5u);
  auto all = label_assignments(cyc, inst.costs());
  ASSERT_EQ(all.size(), 5u);
  for (const auto& a : all) {
    EXPECT_EQ(plus_count(a), 3);
    EXPECT_EQ(a.cost, 3);
    EXPECT_TRUE(a.rotatable);
  }
  EXPECT_EQ(best_rounding(cyc, inst.costs()).index, 0);
  EXPECT_EQ(res.lp_bound, make_rational(5, 2));
  EXPECT_EQ(res.cost, 3);
  EXPECT_EQ(res.ratio, make_rational(6, 5));
}

TEST(Rounding, TriangleIsOneCycle) {
  auto inst = fixtures::triangle();
  auto res = solve(inst);
  ASSERT_TRUE(res.rounding);
  ASSERT_EQ(res.rounding->cycles.size(), 1u);
  EXPECT_EQ(res.rounding->cycles[0].k(), 3);
  EXPECT_EQ(res.cost, 2);
  EXPECT_EQ(res.ratio, make_rational(4, 3));
}

TEST(Rounding, RepeatedTerminalNeedsFeasibilityTest) {
  auto inst = fixtures::load("repeated_terminal.tb");
  auto res = solve(inst);
  ASSERT_TRUE(res.rounding);
  EXPECT_EQ(res.lp_bound, make_rational(59, 2));
  ASSERT_EQ(res.rounding->cycles.size(), 1u);
  const auto& cyc = res.rounding->cycles[0];
  EXPECT_EQ(cyc.terminals, (std::vector<int>{4, 6, 2, 4, 2}));
  const auto& all = res.rounding->assignments[0];
  ASSERT_EQ(all.size(), 5u);
  std::vector<Rational> costs;
  std::vector<bool> rot;
  for (const auto& a : all) {
    costs.push_back(a.cost);
    rot.push_back(a.rotatable);
  }
  EXPECT_EQ(costs, (std::vector<Rational>{16, 17, 24, 13, 17}));
  EXPECT_EQ(rot, (std::vector<bool>{true, true, true, false, false}));
  EXPECT_EQ(pattern(all[3]), "-++--+++");
  EXPECT_EQ(all[3].feasible, false);
  EXPECT_EQ(all[0].feasible, true);
  EXPECT_EQ(res.rounding->chosen, (std::vector<int>{0}));
  EXPECT_EQ(res.cost, 31);
  EXPECT_EQ(res.ratio, make_rational(62, 59));

  // The cheapest assignment alone leaves a terminal short.
  EXPECT_EQ(best_rounding(cyc, inst.costs()).index, 3);
  EXPECT_THROW(solve(inst, {.rounding = RoundingPolicy::Cheapest}), InternalError);
}

TEST(Rounding, DegreeFourTrailsKeepWitnessPairs) {
  auto inst = fixtures::load("degree_four.tb");
  auto res = solve(inst);
  ASSERT_TRUE(res.rounding);
  const auto& w = res.rounding->structure.witnesses.at(0);
  for (const auto& cyc : res.rounding->cycles) {
    const size_t m = cyc.steps.size();
    for (size_t i = 0; i < m; ++i) {
      const auto& in = cyc.steps[i];
      const auto& out = cyc.steps[(i + 1) % m];
      if (in.to != w.node) continue;
      auto in_outer = std::count(w.outer_edges.begin(), w.outer_edges.end(), in.edge);
      auto out_outer = std::count(w.outer_edges.begin(), w.outer_edges.end(), out.edge);
      auto in_inner = std::count(w.inner_edges.begin(), w.inner_edges.end(), in.edge);
      auto out_inner = std::count(w.inner_edges.begin(), w.inner_edges.end(), out.edge);
      EXPECT_TRUE((in_outer && out_outer) || (in_inner && out_inner)) << "edges " << in.edge << " " << out.edge;
    }
  }
}

// Each step is Plus in exactly (k+1)/2 assignments, the chosen assignment is
// feasible, and edges outside F keep their value.
TEST(RoundingProperty, AssignmentsAndOutput) {
  int cycles = 0;
  for (const auto& inst : fixtures::random_batch(97, 800, 7, std::nullopt, 3)) {
    auto res = solve(inst);
    ASSERT_TRUE(res.rounding);
    const auto& rr = *res.rounding;
    std::vector<char> in_f(static_cast<size_t>(inst.num_edges()), 0);
    for (size_t c = 0; c < rr.cycles.size(); ++c) {
      ++cycles;
      const auto& cyc = rr.cycles[c];
      const auto& all = rr.assignments[c];
      ASSERT_EQ(static_cast<int>(all.size()), cyc.k());
      EXPECT_EQ(cyc.k() % 2, 1);
      for (size_t s = 0; s < cyc.steps.size(); ++s) {
        in_f[static_cast<size_t>(cyc.steps[s].edge)] = 1;
        int plus = 0;
        for (const auto& a : all) plus += a.labels[s] == Label::Plus;
        EXPECT_EQ(plus, (cyc.k() + 1) / 2);
      }
      for (const auto& a : all) {
        Rational cost = 0;
        for (size_t s = 0; s < cyc.steps.size(); ++s) {
          if (a.labels[s] == Label::Plus) cost += inst.edge(cyc.steps[s].edge).cost;
        }
        EXPECT_EQ(cost, a.cost);
        if (a.feasible == false) EXPECT_FALSE(a.rotatable);
      }
      EXPECT_EQ(all[static_cast<size_t>(rr.chosen[c])].feasible, true);
    }
    for (int e = 0; e < inst.num_edges(); ++e) {
      const auto& before = res.half_integral[e];
      if (in_f[static_cast<size_t>(e)]) {
        EXPECT_TRUE(res.solution[e] == before - make_rational(1, 2) || res.solution[e] == before + make_rational(1, 2));
      } else {
        EXPECT_EQ(res.solution[e], before);
      }
    }
    EXPECT_TRUE(is_feasible(inst, res.solution));
    EXPECT_LE(res.ratio, make_rational(4, 3)) << format_instance(inst);
  }
  EXPECT_GT(cycles, 20);
}
