#pragma once

#include <Eigen/Dense>

namespace ghzledger {

/// Result of the nonnegative feasibility problem {A x = b, x >= 0}.
struct LpFeasibility {
  bool feasible = false;
  Eigen::VectorXd witness;           // basic feasible point when feasible
  Eigen::VectorXd dual_certificate;  // Farkas prices y (y'A <= 0, y'b > 0) when infeasible
  double residual = 0.0;             // max |A.witness - b| when feasible
  bool retried_perturbation = false;
};

/// Phase-1 simplex with Bland's anti-cycling rule. Feasible iff the
/// artificial objective optimum is below `tol`.
LpFeasibility nonneg_lp_feasible(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                 double tol = 1e-7);

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
};

/// min c'x subject to {A x = b, x >= 0} (two-phase simplex, Bland's rule).
LpSolution nonneg_lp_minimize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const Eigen::VectorXd& c, double tol = 1e-7);

}  // namespace ghzledger
