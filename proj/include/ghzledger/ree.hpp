#pragma once

#include <cstdint>
#include <vector>

#include "ghzledger/state.hpp"

namespace ghzledger {

enum class BoundDirection { UpperBound, LowerBound, Exact };

struct ReeOptions {
  double tol = 1e-6;          // stop when the step improvement falls below this
  int max_iter = 2000;
  int restarts = 16;          // product-state oracle restarts per step
  int sweeps = 200;           // alternating eigenvector sweeps per restart
  std::uint64_t seed = 0;
  int dim_cap = 64;           // refuse cuts with a larger total dimension
  double certify_tol = 5e-3;  // upper-lower agreement needed to report "exact"
  int max_proj = 500;         // Dykstra iterations per projection
};

/// One pure product state |x><x| (x) |y><y| in an explicit separable mixture.
struct ProductAtom {
  double weight = 0.0;
  Eigen::VectorXcd left, right;
};

struct OptimizerReport {
  double value = 0.0;
  BoundDirection direction = BoundDirection::UpperBound;
  int iterations = 0;
  double gap = 0.0;   // last-step improvement
  bool converged = false;
  Eigen::MatrixXcd witness;        // optimizing sigma, in cut-ordered basis
  std::vector<ProductAtom> atoms;  // upper bound only: sigma as a separable mixture
  double identity_mix = 0.0;       // weight of the I/D component kept in sigma
};

/// Maximally correlated two-party state sum a_{n1 n2} |phi_n1 psi_n1><phi_n2 psi_n2|.
class MaxCorrelatedForm {
 public:
  /// Computational local bases.
  explicit MaxCorrelatedForm(Eigen::MatrixXcd coeff);
  MaxCorrelatedForm(Eigen::MatrixXcd coeff, Eigen::MatrixXcd basis_a, Eigen::MatrixXcd basis_b);

  const Eigen::MatrixXcd& coeff() const { return coeff_; }
  const Eigen::MatrixXcd& basis_a() const { return basis_a_; }
  const Eigen::MatrixXcd& basis_b() const { return basis_b_; }

  DensityOperator to_density() const;

 private:
  Eigen::MatrixXcd coeff_, basis_a_, basis_b_;
};

/// E_r of a pure state across a cut: the entropy of either marginal.
double ree_pure(const PureState& state, const PartySubset& cut_left);

/// Closed form for maximally correlated states:
/// shannon(diag a) - von_neumann(rho).
double ree_max_correlated(const MaxCorrelatedForm& form);

/// Certified upper bound on E_r by Frank-Wolfe over the separable hull.
/// The witness stays an explicit convex mixture of pure product states
/// (plus an identity component of weight `identity_mix`).
OptimizerReport ree_upper(const DensityOperator& rho, const PartySubset& cut_left,
                          const ReeOptions& opts = {});

/// Rains' bound: projected descent of S(rho||sigma) over PPT states
/// (Dykstra alternating projections onto the PSD and PPT-PSD spectrahedra).
/// Serves as the lower evidence of the sandwich since B_Gamma <= E_r.
OptimizerReport rains_bound(const DensityOperator& rho, const PartySubset& cut_left,
                            const ReeOptions& opts = {});

/// As rains_bound but starting the descent from a caller-supplied PPT state
/// (used by ree_sandwich to start from the separable upper-bound witness).
OptimizerReport rains_bound_from(const DensityOperator& rho, const PartySubset& cut_left,
                                 const ReeOptions& opts, const Eigen::MatrixXcd& start);

struct SandwichReport {
  OptimizerReport upper, lower;
  BoundDirection direction = BoundDirection::UpperBound;  // Exact when certified
  double value = 0.0;                                     // upper-bound value
  bool exact() const { return direction == BoundDirection::Exact; }
  double width() const { return upper.value - lower.value; }
};

/// Runs both bounds; "exact" iff upper - lower <= opts.certify_tol.
SandwichReport ree_sandwich(const DensityOperator& rho, const PartySubset& cut_left,
                            const ReeOptions& opts = {});
SandwichReport ree_sandwich(const PureState& state, const PartySubset& cut_left,
                            const ReeOptions& opts = {});

struct AdditivityReport {
  double gap = 0.0;        // E_r(rho12 (x) rho34) - E_r(rho12) - E_r(rho34)
  bool certified = false;  // all three sandwiches exact
  SandwichReport joint, left, right;
};

/// Additivity probe across the (1,3)|(2,4) cut of rho12 (x) rho34. A
/// certified negative gap is evidence against universal GHZ reducibility.
AdditivityReport additivity_gap(const DensityOperator& rho12, const DensityOperator& rho34,
                                const ReeOptions& opts = {});

namespace detail {
/// d/dsigma S(rho||sigma) in bits, via the Daleckii-Krein divided-difference
/// formula in sigma's eigenbasis. Exposed for finite-difference checks.
Eigen::MatrixXcd relative_entropy_gradient(const Eigen::MatrixXcd& rho,
                                           const Eigen::MatrixXcd& sigma);
}  // namespace detail

}  // namespace ghzledger
