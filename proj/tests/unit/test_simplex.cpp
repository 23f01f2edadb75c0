#include <gtest/gtest.h>

#include <functional>
#include <optional>
#include <random>

#include "tbackup/simplex.hpp"

using namespace tbackup;

namespace {

LpProblem make(int n, std::vector<long> cost) {
  LpProblem lp;
  lp.num_vars = n;
  for (long c : cost) lp.cost.emplace_back(c);
  lp.lower.assign(static_cast<size_t>(n), Rational(0));
  lp.upper.assign(static_cast<size_t>(n), std::nullopt);
  return lp;
}

void add_row(LpProblem& lp, std::vector<long> coeffs, long rhs) {
  LpRow row;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) row.coeffs.emplace_back(static_cast<int>(i), Rational(coeffs[i]));
  }
  row.rhs = rhs;
  lp.rows.push_back(row);
}

// Solves the square system A y = b exactly; empty when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Optimum by enumerating every basic solution.
std::optional<Rational> vertex_optimum(const LpProblem& lp) {
  const int n = lp.num_vars;
  struct Plane {
    std::vector<Rational> a;
    Rational b;
  };
  std::vector<Plane> planes;
  for (const auto& row : lp.rows) {
    Plane p{std::vector<Rational>(static_cast<size_t>(n), Rational(0)), row.rhs};
    for (const auto& [j, c] : row.coeffs) p.a[static_cast<size_t>(j)] = c;
    planes.push_back(p);
  }
  for (int j = 0; j < n; ++j) {
    Plane lo{std::vector<Rational>(static_cast<size_t>(n), Rational(0)), lp.lower[static_cast<size_t>(j)]};
    lo.a[static_cast<size_t>(j)] = 1;
    planes.push_back(lo);
    if (lp.upper[static_cast<size_t>(j)]) {
      Plane hi{std::vector<Rational>(static_cast<size_t>(n), Rational(0)), *lp.upper[static_cast<size_t>(j)]};
      hi.a[static_cast<size_t>(j)] = 1;
      planes.push_back(hi);
    }
  }
  auto feasible = [&](const std::vector<Rational>& x) {
    for (const auto& row : lp.rows) {
      Rational s = 0;
      for (const auto& [j, c] : row.coeffs) s += c * x[static_cast<size_t>(j)];
      if (s < row.rhs) return false;
    }
    for (int j = 0; j < n; ++j) {
      if (x[static_cast<size_t>(j)] < lp.lower[static_cast<size_t>(j)]) return false;
      if (lp.upper[static_cast<size_t>(j)] && x[static_cast<size_t>(j)] > *lp.upper[static_cast<size_t>(j)]) return false;
    }
    return true;
  };
  std::optional<Rational> best;
  const size_t m = planes.size();
  std::vector<int> pick(static_cast<size_t>(n));
  std::function<void(size_t, int)> rec = [&](size_t from, int depth) {
    if (depth == n) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (int i : pick) {
        a.push_back(planes[static_cast<size_t>(i)].a);
        b.push_back(planes[static_cast<size_t>(i)].b);
      }
      auto x = solve_square(a, b);
      if (!x || !feasible(*x)) return;
      Rational v = 0;
      for (int j = 0; j < n; ++j) v += lp.cost[static_cast<size_t>(j)] * (*x)[static_cast<size_t>(j)];
      if (!best || v < *best) best = v;
      return;
    }
    for (size_t i = from; i < m; ++i) {
      pick[static_cast<size_t>(depth)] = static_cast<int>(i);
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST(Simplex, CoveringLp) {
  // min x0 + x1 + x2, pairwise sums >= 1: optimum 3/2 at all halves.
  auto lp = make(3, {1, 1, 1});
  add_row(lp, {1, 1, 0}, 1);
  add_row(lp, {0, 1, 1}, 1);
  add_row(lp, {1, 0, 1}, 1);
  auto sol = solve_exact_lp(lp);
  ASSERT_TRUE(sol.feasible);
  EXPECT_EQ(sol.value, make_rational(3, 2));
  for (const auto& v : sol.x) EXPECT_EQ(v, make_rational(1, 2));
  ASSERT_EQ(sol.duals.size(), 3u);
  for (const auto& y : sol.duals) EXPECT_EQ(y, make_rational(1, 2));
}

TEST(Simplex, UpperBoundsBind) {
  auto lp = make(2, {1, 3});
  lp.upper[0] = Rational(1);
  add_row(lp, {1, 1}, 3);
  auto sol = solve_exact_lp(lp);
  ASSERT_TRUE(sol.feasible);
  EXPECT_EQ(sol.value, 7);
  EXPECT_EQ(sol.x[0], 1);
  EXPECT_EQ(sol.x[1], 2);
}

TEST(Simplex, LowerBoundsShiftTheOptimum) {
  auto lp = make(2, {2, 1});
  lp.lower[0] = make_rational(1, 3);
  add_row(lp, {1, 1}, 1);
  auto sol = solve_exact_lp(lp);
  ASSERT_TRUE(sol.feasible);
  EXPECT_EQ(sol.value, make_rational(4, 3));
}

TEST(Simplex, DetectsInfeasibility) {
  auto lp = make(2, {1, 1});
  lp.upper[0] = Rational(1);
  lp.upper[1] = Rational(1);
  add_row(lp, {1, 1}, 3);
  EXPECT_FALSE(solve_exact_lp(lp).feasible);
}

TEST(Simplex, NoRowsGivesLowerBounds) {
  auto lp = make(2, {5, 0});
  lp.lower[1] = Rational(2);
  auto sol = solve_exact_lp(lp);
  ASSERT_TRUE(sol.feasible);
  EXPECT_EQ(sol.value, 0);
  EXPECT_EQ(sol.x[0], 0);
}

TEST(SimplexProperty, MatchesVertexEnumeration) {
  std::mt19937_64 rng(41);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int rows = 1 + static_cast<int>(rng() % 4);
    std::vector<long> cost;
    for (int j = 0; j < n; ++j) cost.push_back(static_cast<long>(rng() % 6));
    auto lp = make(n, cost);
    for (int j = 0; j < n; ++j) {
      if (rng() % 2) lp.upper[static_cast<size_t>(j)] = Rational(1 + static_cast<long>(rng() % 3));
    }
    for (int r = 0; r < rows; ++r) {
      std::vector<long> a;
      for (int j = 0; j < n; ++j) a.push_back(static_cast<long>(rng() % 4) - 1);
      add_row(lp, a, static_cast<long>(rng() % 5) - 1);
    }
    auto sol = solve_exact_lp(lp);
    auto ref = vertex_optimum(lp);
    ASSERT_EQ(sol.feasible, ref.has_value()) << "trial " << trial;
    if (!ref) continue;
    ++feasible;
    EXPECT_EQ(sol.value, *ref) << "trial " << trial;
    // Returned point is feasible and attains the value.
    Rational v = 0;
    for (int j = 0; j < n; ++j) v += lp.cost[static_cast<size_t>(j)] * sol.x[static_cast<size_t>(j)];
    EXPECT_EQ(v, sol.value);
    for (const auto& row : lp.rows) {
      Rational s = 0;
      for (const auto& [j, c] : row.coeffs) s += c * sol.x[static_cast<size_t>(j)];
      EXPECT_GE(s, row.rhs);
    }
  }
  EXPECT_GT(feasible, 100);
}
