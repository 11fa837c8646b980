#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "kantian/game.hpp"

namespace kantian {

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

enum class Relation { le, eq, ge };

struct LpConstraint {
  std::vector<double> coeffs;
  Relation rel;
  double rhs;
};

// maximize c.x  subject to  a_i.x {<=,=,>=} b_i  and  x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LpConstraint> constraints;

  void add(std::vector<double> coeffs, Relation rel, double rhs) {
    constraints.push_back({std::move(coeffs), rel, rhs});
  }
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double value = 0.0;
  bool degenerate = false;    // a basic variable sat at zero in the final basis
  int pivots = 0;
  double max_violation = 0.0; // worst constraint residual of the returned point
};

// Dense two-phase tableau simplex with Bland's anti-cycling rule. All the
// programs in this project are small (variables on the order of the Pareto
// set size), so determinism and simplicity win over sparse machinery.
class SimplexSolver {
 public:
  static constexpr double kOptTol = 1e-9;   // reduced-cost threshold
  static constexpr double kFeasTol = 1e-8;  // phase-1 residual threshold
  static constexpr double kPivTol = 1e-10;  // smallest usable pivot

  LpSolution solve(const LinearProgram& lp) {
    validate(lp);
    build_tableau(lp);

    LpSolution solution;
    if (num_artificial_ > 0) {
      std::vector<double> phase1_cost(num_cols_, 0.0);
      for (std::size_t j = cols_before_artificial_; j < num_cols_; ++j)
        phase1_cost[j] = -1.0;  // maximize -(sum of artificials)
      set_objective(phase1_cost);
      run_simplex(/*allow_artificial=*/true, solution);
      if (objective_value() < -kFeasTol) {
        solution.status = LpStatus::infeasible;
        return solution;
      }
      evict_artificials();
    }

    std::vector<double> cost(num_cols_, 0.0);
    for (std::size_t j = 0; j < lp.objective.size(); ++j) cost[j] = lp.objective[j];
    set_objective(cost);
    if (!run_simplex(/*allow_artificial=*/false, solution)) {
      solution.status = LpStatus::unbounded;
      return solution;
    }

    solution.status = LpStatus::optimal;
    solution.x.assign(lp.objective.size(), 0.0);
    for (std::size_t i = 0; i < num_rows_; ++i)
      if (basis_[i] < lp.objective.size()) solution.x[basis_[i]] = rhs(i);
    solution.value = 0.0;
    for (std::size_t j = 0; j < lp.objective.size(); ++j)
      solution.value += lp.objective[j] * solution.x[j];
    for (std::size_t i = 0; i < num_rows_; ++i)
      if (std::abs(rhs(i)) <= kOptTol) solution.degenerate = true;
    solution.max_violation = residual(lp, solution.x);
    return solution;
  }

 private:
  std::size_t num_rows_ = 0;
  std::size_t num_cols_ = 0;               // structural + slack + artificial
  std::size_t cols_before_artificial_ = 0;
  std::size_t num_artificial_ = 0;
  std::vector<double> tableau_;             // (rows + 1) x (cols + 1); last row = objective
  std::vector<std::size_t> basis_;

  double& at(std::size_t r, std::size_t c) { return tableau_[r * (num_cols_ + 1) + c]; }
  double rhs(std::size_t r) const { return tableau_[r * (num_cols_ + 1) + num_cols_]; }
  double objective_value() { return at(num_rows_, num_cols_); }

  static void validate(const LinearProgram& lp) {
    for (double c : lp.objective)
      if (!std::isfinite(c)) throw domain_error("lp objective must be finite");
    for (const auto& con : lp.constraints) {
      if (con.coeffs.size() != lp.objective.size())
        throw domain_error("lp constraint length does not match objective");
      for (double c : con.coeffs)
        if (!std::isfinite(c)) throw domain_error("lp coefficients must be finite");
      if (!std::isfinite(con.rhs)) throw domain_error("lp bounds must be finite");
    }
  }

  void build_tableau(const LinearProgram& lp) {
    const std::size_t n = lp.objective.size();
    const std::size_t m = lp.constraints.size();
    num_rows_ = m;

    std::size_t slacks = 0, artificials = 0;
    for (const auto& con : lp.constraints) {
      Relation rel = con.rel;
      if (con.rhs < 0.0) rel = flip(rel);
      if (rel == Relation::le) {
        ++slacks;
      } else if (rel == Relation::ge) {
        ++slacks;
        ++artificials;
      } else {
        ++artificials;
      }
    }
    cols_before_artificial_ = n + slacks;
    num_artificial_ = artificials;
    num_cols_ = cols_before_artificial_ + artificials;
    tableau_.assign((m + 1) * (num_cols_ + 1), 0.0);
    basis_.assign(m, 0);

    std::size_t slack = n, artificial = cols_before_artificial_;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& con = lp.constraints[i];
      const double sign = con.rhs < 0.0 ? -1.0 : 1.0;
      Relation rel = con.rhs < 0.0 ? flip(con.rel) : con.rel;
      for (std::size_t j = 0; j < n; ++j) at(i, j) = sign * con.coeffs[j];
      at(i, num_cols_) = sign * con.rhs;
      if (rel == Relation::le) {
        at(i, slack) = 1.0;
        basis_[i] = slack++;
      } else if (rel == Relation::ge) {
        at(i, slack) = -1.0;
        ++slack;
        at(i, artificial) = 1.0;
        basis_[i] = artificial++;
      } else {
        at(i, artificial) = 1.0;
        basis_[i] = artificial++;
      }
    }
  }

  static Relation flip(Relation rel) {
    if (rel == Relation::le) return Relation::ge;
    if (rel == Relation::ge) return Relation::le;
    return Relation::eq;
  }

  // Rebuild the objective row for cost vector c (maximization): the row holds
  // reduced costs z_j - c_j, priced out over the current basis.
  void set_objective(const std::vector<double>& cost) {
    for (std::size_t j = 0; j <= num_cols_; ++j) at(num_rows_, j) = 0.0;
    for (std::size_t j = 0; j < num_cols_; ++j) at(num_rows_, j) = -cost[j];
    for (std::size_t i = 0; i < num_rows_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= num_cols_; ++j) at(num_rows_, j) += cb * at(i, j);
    }
  }

  // Bland's rule in both choices: entering = lowest-index column with a
  // negative reduced cost, leaving = lowest basis index among minimal ratios.
  bool run_simplex(bool allow_artificial, LpSolution& solution) {
    const std::size_t usable = allow_artificial ? num_cols_ : cols_before_artificial_;
    const int pivot_limit = 10000 + 200 * static_cast<int>(num_rows_ + num_cols_);
    for (;;) {
      if (solution.pivots > pivot_limit)
        throw numeric_error("simplex exceeded its pivot limit (degenerate cycling?)");
      std::size_t entering = num_cols_;
      for (std::size_t j = 0; j < usable; ++j) {
        if (at(num_rows_, j) < -kOptTol && !in_basis(j)) {
          entering = j;
          break;
        }
      }
      if (entering == num_cols_) return true;  // optimal for this phase

      std::size_t leaving = num_rows_;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < num_rows_; ++i) {
        const double a = at(i, entering);
        if (a <= kPivTol) continue;
        const double ratio = rhs(i) / a;
        if (leaving == num_rows_ || ratio < best_ratio - kPivTol ||
            (std::abs(ratio - best_ratio) <= kPivTol && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == num_rows_) return false;  // unbounded direction
      pivot(leaving, entering);
      ++solution.pivots;
    }
  }

  bool in_basis(std::size_t column) const {
    for (std::size_t b : basis_)
      if (b == column) return true;
    return false;
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = at(row, col);
    for (std::size_t j = 0; j <= num_cols_; ++j) at(row, j) /= p;
    for (std::size_t i = 0; i <= num_rows_; ++i) {
      if (i == row) continue;
      const double factor = at(i, col);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= num_cols_; ++j) at(i, j) -= factor * at(row, j);
    }
    basis_[row] = col;
  }

  // After phase 1, pivot zero-level artificials out of the basis where a
  // structural column is available; rows with none are redundant and inert.
  void evict_artificials() {
    for (std::size_t i = 0; i < num_rows_; ++i) {
      if (basis_[i] < cols_before_artificial_) continue;
      for (std::size_t j = 0; j < cols_before_artificial_; ++j) {
        if (std::abs(at(i, j)) > kPivTol && !in_basis(j)) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  static double residual(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& con : lp.constraints) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) lhs += con.coeffs[j] * x[j];
      double v = 0.0;
      if (con.rel == Relation::le) v = lhs - con.rhs;
      else if (con.rel == Relation::ge) v = con.rhs - lhs;
      else v = std::abs(lhs - con.rhs);
      if (v > worst) worst = v;
    }
    for (double xi : x)
      if (-xi > worst) worst = -xi;
    return worst;
  }
};

inline LpSolution solve(const LinearProgram& lp) { return SimplexSolver().solve(lp); }

}  // namespace kantian
