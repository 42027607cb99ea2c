#pragma once

#include <cmath>
#include <vector>

#include "eqlearn/core/types.hpp"

namespace eqlearn::classify {

inline constexpr double kLpTol = 1e-9;

enum class Sense { le, ge, eq };
enum class LpStatus { optimal, infeasible, unbounded };

struct LpRow {
  std::vector<double> coeffs;
  Sense sense = Sense::le;
  double rhs = 0.0;
};

// maximize objective . x  subject to rows, x >= 0.
struct LinearProgram {
  std::size_t vars = 0;
  std::vector<double> objective;
  std::vector<LpRow> rows;

  void add(std::vector<double> coeffs, Sense sense, double rhs) {
    if (coeffs.size() != vars) throw ConfigError("LinearProgram: row width differs from the variable count");
    rows.push_back({std::move(coeffs), sense, rhs});
  }
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double value = 0.0;
};

namespace detail {

// Dense tableau with Bland's rule (smallest entering index, then smallest
// leaving basic index), so every solve is deterministic and cycle-free.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : a_(rows, std::vector<double>(cols + 1, 0.0)), basis_(rows, 0), cols_(cols) {}

  std::vector<std::vector<double>>& a() { return a_; }
  std::vector<std::size_t>& basis() { return basis_; }
  double rhs(std::size_t r) const { return a_[r][cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    double p = a_[r][c];
    for (double& v : a_[r]) v /= p;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r) continue;
      double f = a_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) a_[i][j] -= f * a_[r][j];
    }
    basis_[r] = c;
  }

  // Maximise cost . x over columns with allowed[c]; false when unbounded.
  bool optimise(const std::vector<double>& cost, const std::vector<bool>& allowed) {
    const std::size_t limit = 50000;
    for (std::size_t it = 0; it < limit; ++it) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_ && enter == cols_; ++c) {
        if (!allowed[c]) continue;
        double rc = cost[c];
        for (std::size_t i = 0; i < a_.size(); ++i) rc -= cost[basis_[i]] * a_[i][c];
        if (rc > kLpTol) enter = c;
      }
      if (enter == cols_) return true;
      std::size_t leave = a_.size();
      double best = kInfinity;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][enter] <= kLpTol) continue;
        double ratio = a_[i][cols_] / a_[i][enter];
        bool tie = leave < a_.size() && ratio <= best + kLpTol;
        if (ratio < best - kLpTol || (tie && basis_[i] < basis_[leave])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave == a_.size()) return false;
      pivot(leave, enter);
    }
    throw InvariantError("simplex: iteration limit reached");
  }

 private:
  std::vector<std::vector<double>> a_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace detail

// Two-phase primal simplex.
inline LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.vars;
  if (lp.objective.size() != n) throw ConfigError("LinearProgram: objective width differs from the variable count");

  // Column layout: originals, then one slack/surplus per inequality, then
  // one artificial per >= or = row.
  std::size_t slacks = 0, artificials = 0;
  for (const LpRow& r : lp.rows) {
    Sense s = r.sense;
    if (r.rhs < 0.0 && s != Sense::eq) s = s == Sense::le ? Sense::ge : Sense::le;
    if (s != Sense::eq) ++slacks;
    if (s != Sense::le) ++artificials;
  }
  const std::size_t cols = n + slacks + artificials;
  detail::Tableau t(m, cols);
  std::vector<bool> is_artificial(cols, false);
  std::size_t next_slack = n, next_art = n + slacks;
  for (std::size_t i = 0; i < m; ++i) {
    const LpRow& r = lp.rows[i];
    double sign = r.rhs < 0.0 ? -1.0 : 1.0;
    Sense s = r.sense;
    if (sign < 0.0 && s != Sense::eq) s = s == Sense::le ? Sense::ge : Sense::le;
    auto& row = t.a()[i];
    for (std::size_t j = 0; j < n; ++j) row[j] = sign * r.coeffs[j];
    row[cols] = sign * r.rhs;
    if (s == Sense::le) {
      row[next_slack] = 1.0;
      t.basis()[i] = next_slack++;
    } else {
      if (s == Sense::ge) row[next_slack++] = -1.0;
      row[next_art] = 1.0;
      is_artificial[next_art] = true;
      t.basis()[i] = next_art++;
    }
  }

  LpResult res;
  std::vector<bool> all(cols, true);
  if (artificials > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j)
      if (is_artificial[j]) phase1[j] = -1.0;
    t.optimise(phase1, all);
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (is_artificial[t.basis()[i]]) infeas += t.rhs(i);
    if (infeas > 1e-7) {
      res.status = LpStatus::infeasible;
      return res;
    }
    // Pivot zero-level artificials out where possible; rows where that is
    // impossible are redundant and keep their artificial at zero.
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_artificial[t.basis()[i]]) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!is_artificial[j] && std::abs(t.a()[i][j]) > kLpTol) {
          t.pivot(i, j);
          break;
        }
    }
  }
  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  std::vector<bool> allowed(cols, true);
  for (std::size_t j = 0; j < cols; ++j)
    if (is_artificial[j]) allowed[j] = false;
  if (!t.optimise(cost, allowed)) {
    res.status = LpStatus::unbounded;
    return res;
  }
  res.status = LpStatus::optimal;
  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis()[i] < n) res.x[t.basis()[i]] = std::max(0.0, t.rhs(i));
  for (std::size_t j = 0; j < n; ++j) res.value += lp.objective[j] * res.x[j];
  return res;
}

}  // namespace eqlearn::classify
