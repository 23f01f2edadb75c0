#include "tbackup/simplex.hpp"

#include <stdexcept>

#include "tbackup/errors.hpp"

namespace tbackup {

namespace {

// Dense tableau for  max g.v  s.t.  M v <= c, v >= 0, with c >= 0.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> m, std::vector<Rational> c, std::vector<Rational> g)
      : rows_(m.size()), cols_(g.size()) {
    const size_t width = cols_ + rows_ + 1;
    t_.assign(rows_ + 1, std::vector<Rational>(width, Rational(0)));
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) t_[i][j] = m[i][j];
      t_[i][cols_ + i] = 1;
      t_[i][width - 1] = c[i];
    }
    for (size_t j = 0; j < cols_; ++j) t_[rows_][j] = -g[j];
    basis_.resize(rows_);
    for (size_t i = 0; i < rows_; ++i) basis_[i] = cols_ + i;
  }

  // Returns false when unbounded.
  bool optimize(int& pivots) {
    const size_t width = cols_ + rows_ + 1;
    for (;;) {
      size_t enter = width;
      for (size_t j = 0; j + 1 < width; ++j) {
        if (t_[rows_][j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == width) return true;
      size_t leave = rows_;
      Rational best;
      for (size_t i = 0; i < rows_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][width - 1] / t_[i][enter];
        if (leave == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

  Rational objective() const { return t_[rows_][cols_ + rows_]; }
  // Objective-row entry of slack i: the optimal multiplier of row i.
  Rational slack_price(size_t i) const { return t_[rows_][cols_ + i]; }
  Rational value_of(size_t j) const {
    for (size_t i = 0; i < rows_; ++i) {
      if (basis_[i] == j) return t_[i][cols_ + rows_];
    }
    return 0;
  }

 private:
  void pivot(size_t r, size_t c) {
    const size_t width = cols_ + rows_ + 1;
    Rational p = t_[r][c];
    for (size_t j = 0; j < width; ++j) t_[r][j] /= p;
    for (size_t i = 0; i <= rows_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (size_t j = 0; j < width; ++j) {
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
      }
    }
    basis_[r] = c;
  }

  size_t rows_;
  size_t cols_;
  std::vector<std::vector<Rational>> t_;
  std::vector<size_t> basis_;
};

}  // namespace

LpSolution solve_exact_lp(const LpProblem& lp) {
  const auto n = static_cast<size_t>(lp.num_vars);
  if (lp.cost.size() != n || lp.lower.size() != n || lp.upper.size() != n) {
    throw std::invalid_argument("LP dimensions disagree");
  }
  for (const auto& c : lp.cost) {
    if (c < 0) throw std::invalid_argument("LP costs must be non-negative");
  }
  LpSolution sol;
  for (size_t j = 0; j < n; ++j) {
    if (lp.upper[j] && *lp.upper[j] < lp.lower[j]) return sol;
  }

  // Shift x = lower + y; rows become A y >= rhs - A lower.
  std::vector<size_t> bounded;
  for (size_t j = 0; j < n; ++j) {
    if (lp.upper[j]) bounded.push_back(j);
  }
  const size_t m = lp.rows.size();
  const size_t cols = m + bounded.size();
  std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(cols, Rational(0)));
  std::vector<Rational> gain(cols, Rational(0));
  for (size_t r = 0; r < m; ++r) {
    Rational rhs = lp.rows[r].rhs;
    for (const auto& [j, a] : lp.rows[r].coeffs) {
      mat[static_cast<size_t>(j)][r] += a;
      rhs -= a * lp.lower[static_cast<size_t>(j)];
    }
    gain[r] = rhs;
  }
  for (size_t k = 0; k < bounded.size(); ++k) {
    size_t j = bounded[k];
    mat[j][m + k] = -1;
    gain[m + k] = -(*lp.upper[j] - lp.lower[j]);
  }

  Tableau tab(mat, lp.cost, gain);
  if (!tab.optimize(sol.pivots)) return sol;

  Rational base = 0;
  for (size_t j = 0; j < n; ++j) base += lp.cost[j] * lp.lower[j];
  sol.feasible = true;
  sol.x.resize(n);
  Rational primal = base;
  for (size_t j = 0; j < n; ++j) {
    sol.x[j] = lp.lower[j] + tab.slack_price(j);
    primal += lp.cost[j] * tab.slack_price(j);
  }
  sol.value = primal;
  sol.duals.resize(m);
  for (size_t r = 0; r < m; ++r) sol.duals[r] = tab.value_of(r);

  // Certify: the recovered point is feasible and matches the dual objective.
  if (primal != base + tab.objective()) throw InternalError("simplex: primal and dual values differ");
  for (size_t j = 0; j < n; ++j) {
    if (sol.x[j] < lp.lower[j] || (lp.upper[j] && sol.x[j] > *lp.upper[j])) {
      throw InternalError("simplex: recovered point violates a bound");
    }
  }
  for (const auto& row : lp.rows) {
    Rational lhs = 0;
    for (const auto& [j, a] : row.coeffs) lhs += a * sol.x[static_cast<size_t>(j)];
    if (lhs < row.rhs) throw InternalError("simplex: recovered point violates a row");
  }
  return sol;
}

}  // namespace tbackup
