#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tbackup/errors.hpp"
#include "tbackup/lp.hpp"
#include "tbackup/oracle.hpp"

using namespace tbackup;

namespace {

std::vector<EdgeSpec> specs_of(const Instance& inst) {
  std::vector<EdgeSpec> out;
  for (const auto& e : inst.edges()) out.push_back(EdgeSpec{e.u, e.v, e.cost, e.capacity});
  return out;
}

std::vector<std::pair<int, int>> reqs_of(const Instance& inst) {
  std::vector<std::pair<int, int>> out;
  for (int t : inst.terminals()) out.emplace_back(t, inst.requirement(t));
  return out;
}

}  // namespace

TEST(Lp, TriangleHalves) {
  auto inst = fixtures::triangle();
  auto out = solve_lp(inst, inst.costs());
  EXPECT_EQ(out.value, make_rational(3, 2));
  for (int e = 0; e < 3; ++e) EXPECT_EQ(out.x[e], make_rational(1, 2));
  EXPECT_GE(out.cuts, 3);
}

TEST(Lp, PerturbsZeroCosts) {
  Instance inst(3, {{0, 1, Rational(0)}, {1, 2, make_rational(3, 2)}, {0, 2, Rational(2)}}, {{0, 1}, {2, 1}},
                Mode::Edge);
  auto c = perturb_costs(inst);
  EXPECT_EQ(c[0], make_rational(1, 6));
  EXPECT_EQ(c[1], make_rational(3, 2));
  EXPECT_EQ(c[2], 2);
}

TEST(Lp, ResidualBounds) {
  Instance inst(2, {{0, 1, Rational(1), Capacity::finite(2)}, {0, 1, Rational(1), Capacity::finite(3)},
                    {0, 1, Rational(1)}},
                {{0, 2}, {1, 2}}, Mode::Edge);
  EdgeVector floor_part(std::vector<Rational>{Rational(2), Rational(1), Rational(5)});
  auto ub = residual_bounds(inst, floor_part);
  ASSERT_EQ(ub.size(), 3u);
  EXPECT_EQ(*ub[0], 0);
  EXPECT_EQ(*ub[1], 1);
  EXPECT_EQ(*ub[2], 1);
}

TEST(Lp, CapacityInfeasible) {
  Instance inst(3, {{0, 1, Rational(1), Capacity::finite(1)}, {1, 2, Rational(1)}}, {{0, 2}, {2, 1}}, Mode::Edge);
  EXPECT_THROW(check_capacity_feasible(inst), Infeasible);
  EXPECT_THROW(solve_lp(inst, inst.costs()), Infeasible);
}

TEST(Lp, FindViolationNamesTerminal) {
  auto inst = fixtures::triangle();
  EdgeVector x(std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
  auto v = find_violation(inst, x);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->terminal, 2);
  EXPECT_EQ(v->flow, 0);
  EXPECT_FALSE(is_feasible(inst, x));
}

TEST(Lp, AssertMinimalRejectsSlack) {
  auto inst = fixtures::triangle();
  EdgeVector x(std::vector<Rational>{Rational(1), make_rational(1, 2), make_rational(1, 2)});
  try {
    assert_minimal(inst, x);
    FAIL() << "expected NotMinimal";
  } catch (const NotMinimal& e) {
    EXPECT_EQ(e.edge(), 0);
  }
  EXPECT_NO_THROW(assert_minimal(inst, EdgeVector(3, make_rational(1, 2))));
}

TEST(Lp, FractionalDegree) {
  auto inst = fixtures::triangle();
  EXPECT_FALSE(fractional_degree_node(inst, EdgeVector(3, make_rational(1, 2))));
  EdgeVector x(std::vector<Rational>{make_rational(1, 2), Rational(0), Rational(0)});
  EXPECT_EQ(fractional_degree_node(inst, x), 0);
}

TEST(LpProperty, MatchesExhaustiveFormulation) {
  for (auto mode : {Mode::Edge, Mode::Node}) {
    for (const auto& inst : fixtures::random_batch(mode == Mode::Edge ? 61 : 62, 15, 6, mode)) {
      auto c = perturb_costs(inst);
      auto cut = solve_lp(inst, c);
      Instance priced(inst.num_nodes(), [&] {
        auto s = specs_of(inst);
        for (size_t i = 0; i < s.size(); ++i) s[i].cost = c[i];
        return s;
      }(), reqs_of(inst), inst.mode());
      auto full = exhaustive_lp_check(priced, 6);
      EXPECT_EQ(cut.value, full.value) << format_instance(inst);
      EXPECT_TRUE(is_feasible(inst, cut.x));
    }
  }
}

TEST(LpProperty, RefinementIsHalfIntegralAndOptimal) {
  for (const auto& inst : fixtures::random_batch(67, 30, 7, std::nullopt, 3)) {
    auto c = perturb_costs(inst);
    auto out = solve_lp(inst, c);
    auto ref = refine_to_extreme_point(inst, c, out.x);
    EdgeVector x = ref.floor_part + ref.half_part;
    for (int e = 0; e < inst.num_edges(); ++e) {
      EXPECT_TRUE(is_integer(ref.floor_part[e]));
      EXPECT_TRUE(ref.half_part[e] == 0 || ref.half_part[e] == make_rational(1, 2) || ref.half_part[e] == 1);
      EXPECT_TRUE(inst.edge(e).capacity.admits(x[e]));
    }
    EXPECT_EQ(x.dot(c), out.value);
    EXPECT_TRUE(is_feasible(inst, x));
    EXPECT_NO_THROW(assert_minimal(inst, x));
    EXPECT_FALSE(fractional_degree_node(inst, x));
  }
}

TEST(LpProperty, LiftingCapacitiesNeverRaisesTheValue) {
  for (const auto& inst : fixtures::random_batch(71, 20, 6)) {
    auto specs = specs_of(inst);
    for (auto& s : specs) s.capacity = Capacity::unbounded();
    Instance loose(inst.num_nodes(), specs, reqs_of(inst), inst.mode());
    EXPECT_LE(solve_lp(loose, inst.costs()).value, solve_lp(inst, inst.costs()).value);
  }
}
