#include "ghzledger/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ghzledger {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDegeneratePivot = 1e-12;

// Dense tableau simplex over {x >= 0}. Columns 0..n-1 are the original
// variables, n..n+m-1 the artificials, all kept for dual extraction.
struct Tableau {
  Eigen::MatrixXd d;    // m x (n + m)
  Eigen::VectorXd rhs;  // m
  std::vector<int> basis;
  int n_orig;

  int rows() const { return static_cast<int>(d.rows()); }
  int cols() const { return static_cast<int>(d.cols()); }

  void pivot(int row, int col) {
    const double p = d(row, col);
    d.row(row) /= p;
    rhs(row) /= p;
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const double f = d(i, col);
      if (f == 0.0) continue;
      d.row(i) -= f * d.row(row);
      rhs(i) -= f * rhs(row);
      if (rhs(i) < 0.0 && rhs(i) > -1e-13) rhs(i) = 0.0;
    }
    basis[static_cast<size_t>(row)] = col;
  }

  // Bland's rule: entering = smallest index with negative reduced cost,
  // leaving = smallest ratio with ties broken by smallest basis index.
  // `cost` has one entry per column; only columns below `enter_limit` may
  // enter (phase 2 bars the artificials this way). Returns false when
  // optimal; throws on unboundedness (cannot happen in phase 1).
  bool step(const Eigen::VectorXd& cost, int enter_limit, bool* degenerate_pivot) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(rows());
    for (int i = 0; i < rows(); ++i) y(i) = cost(basis[static_cast<size_t>(i)]);
    int enter = -1;
    for (int j = 0; j < enter_limit; ++j) {
      const double red = cost(j) - y.dot(d.col(j));
      if (red < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;

    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows(); ++i) {
      if (d(i, enter) <= kPivotTol) continue;
      const double ratio = rhs(i) / d(i, enter);
      if (ratio < best - 1e-12 ||
          (std::abs(ratio - best) <= 1e-12 &&
           (leave < 0 || basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      // Some entry may still be positive but below the pivot tolerance.
      for (int i = 0; i < rows(); ++i)
        if (d(i, enter) > kDegeneratePivot) {
          *degenerate_pivot = true;
          return false;
        }
      throw std::runtime_error("simplex: unbounded direction");
    }
    if (std::abs(d(leave, enter)) < kDegeneratePivot) {
      *degenerate_pivot = true;
      return false;
    }
    pivot(leave, enter);
    return true;
  }

  double objective(const Eigen::VectorXd& cost) const {
    double v = 0.0;
    for (int i = 0; i < rows(); ++i) v += cost(basis[static_cast<size_t>(i)]) * rhs(i);
    return v;
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_orig);
    for (int i = 0; i < rows(); ++i)
      if (basis[static_cast<size_t>(i)] < n_orig) x(basis[static_cast<size_t>(i)]) = rhs(i);
    return x;
  }
};

struct Phase1Result {
  Tableau t;
  Eigen::VectorXd row_signs;
  double artificial_objective = 0.0;
  bool degenerate = false;
};

Phase1Result run_phase1(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());

  Phase1Result r;
  r.row_signs = Eigen::VectorXd::Ones(m);
  r.t.n_orig = n;
  r.t.d = Eigen::MatrixXd::Zero(m, n + m);
  r.t.rhs = Eigen::VectorXd(m);
  for (int i = 0; i < m; ++i) {
    const double s = b(i) < 0.0 ? -1.0 : 1.0;
    r.row_signs(i) = s;
    r.t.d.row(i).head(n) = s * a.row(i);
    r.t.d(i, n + i) = 1.0;
    r.t.rhs(i) = s * b(i);
    r.t.basis.push_back(n + i);
  }

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + m);
  cost.tail(m).setOnes();
  const int max_steps = 2000 * (n + m + 1);
  int steps = 0;
  while (r.t.step(cost, n + m, &r.degenerate)) {
    if (++steps > max_steps) throw std::runtime_error("simplex: iteration limit exceeded");
  }
  r.artificial_objective = r.t.objective(cost);
  return r;
}

}  // namespace

LpFeasibility nonneg_lp_feasible(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                 double tol) {
  if (a.rows() != b.size()) throw std::invalid_argument("nonneg_lp_feasible: shape mismatch");
  if (!a.allFinite() || !b.allFinite())
    throw std::invalid_argument("nonneg_lp_feasible: non-finite entries");

  LpFeasibility out;
  Eigen::VectorXd rhs = b;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Phase1Result p1 = run_phase1(a, rhs);
    if (p1.degenerate && attempt == 0) {
      // Perturb and retry once, as tiny pivots indicate a degenerate vertex.
      out.retried_perturbation = true;
      rhs = b + Eigen::VectorXd::Constant(b.size(), 1e-10);
      continue;
    }
    out.feasible = p1.artificial_objective < tol;
    if (out.feasible) {
      out.witness = p1.t.solution();
      out.residual = (a * out.witness - b).cwiseAbs().maxCoeff();
    } else {
      // Farkas prices from the phase-1 duals: y_j = 1 - reduced cost of
      // artificial j, mapped back through the row sign flips.
      const int m = static_cast<int>(a.rows());
      const int n = static_cast<int>(a.cols());
      Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + m);
      cost.tail(m).setOnes();
      Eigen::VectorXd cb(m);
      for (int i = 0; i < m; ++i) cb(i) = cost(p1.t.basis[static_cast<size_t>(i)]);
      Eigen::VectorXd y(m);
      for (int j = 0; j < m; ++j) y(j) = cb.dot(p1.t.d.col(n + j));
      out.dual_certificate = (p1.row_signs.array() * y.array()).matrix();
    }
    return out;
  }
  return out;
}

LpSolution nonneg_lp_minimize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const Eigen::VectorXd& c, double tol) {
  if (a.rows() != b.size() || a.cols() != c.size())
    throw std::invalid_argument("nonneg_lp_minimize: shape mismatch");

  LpSolution sol;
  Phase1Result p1 = run_phase1(a, b);
  if (p1.artificial_objective >= tol) {
    sol.status = LpSolution::Status::Infeasible;
    return sol;
  }

  Tableau t = p1.t;
  const int n = t.n_orig;
  const int m = t.rows();

  // Drive any zero-level artificial out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (t.basis[static_cast<size_t>(i)] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j)
      if (std::abs(t.d(i, j)) > kPivotTol) {
        col = j;
        break;
      }
    if (col >= 0) t.pivot(i, col);
  }

  // Phase 2: artificials cost nothing but may not re-enter; any left basic
  // sit at zero level on redundant rows.
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + m);
  cost.head(n) = c;
  bool degenerate = false;
  const int max_steps = 2000 * (n + m + 1);
  int steps = 0;
  try {
    while (t.step(cost, n, &degenerate)) {
      if (++steps > max_steps) throw std::runtime_error("simplex: iteration limit exceeded");
    }
  } catch (const std::runtime_error&) {
    sol.status = LpSolution::Status::Unbounded;
    return sol;
  }

  sol.status = LpSolution::Status::Optimal;
  sol.x = t.solution();
  sol.objective = c.dot(sol.x);
  return sol;
}

}  // namespace ghzledger
