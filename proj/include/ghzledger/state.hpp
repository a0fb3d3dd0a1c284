#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzledger/indexing.hpp"

namespace ghzledger {

/// Thrown when an operation's precondition is violated (wrong arity,
/// dimension cap exceeded, invalid cut). Malformed values throw plain
/// std::invalid_argument from the type constructors instead.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Party {
  std::string label;
  int dim = 0;
};

/// A nonempty set of party labels, addressing marginals and cuts.
/// Stored in the owning state's party order once validated.
struct PartySubset {
  std::vector<std::string> labels;

  PartySubset() = default;
  PartySubset(std::initializer_list<std::string> ls) : labels(ls) {}
  explicit PartySubset(std::vector<std::string> ls) : labels(std::move(ls)) {}

  bool contains(const std::string& label) const {
    for (const auto& l : labels)
      if (l == label) return true;
    return false;
  }
};

/// Multipartite pure state: named parties with local dimensions and a
/// normalized amplitude vector in mixed-radix order (first party most
/// significant).
class PureState {
 public:
  PureState(std::vector<Party> parties, Eigen::VectorXcd amplitudes);

  const std::vector<Party>& parties() const { return parties_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  int num_parties() const { return static_cast<int>(parties_.size()); }
  int dim() const { return static_cast<int>(amps_.size()); }
  const ModeLayout& layout() const { return layout_; }

  int party_index(const std::string& label) const;

  /// Validates that `subset` names existing parties without repetition and
  /// returns their mode indices in party order.
  std::vector<int> subset_modes(const PartySubset& subset) const;

 private:
  std::vector<Party> parties_;
  Eigen::VectorXcd amps_;
  ModeLayout layout_;
};

/// Hermitian, positive-semidefinite, unit-trace operator over an ordered
/// list of subsystems.
class DensityOperator {
 public:
  DensityOperator(std::vector<Party> parties, Eigen::MatrixXcd matrix);

  const std::vector<Party>& parties() const { return parties_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  const ModeLayout& layout() const { return layout_; }

  int party_index(const std::string& label) const;
  std::vector<int> subset_modes(const PartySubset& subset) const;

  /// Reorders subsystems to the given mode permutation (indices into the
  /// current party list); rows/columns are reindexed accordingly.
  DensityOperator permuted(std::span<const int> mode_order) const;

 private:
  std::vector<Party> parties_;
  Eigen::MatrixXcd mat_;
  ModeLayout layout_;
};

/// Bipartite Schmidt form: descending coefficients and matched orthonormal
/// bases so that |psi> = sum_k c_k |left_k> |right_k>.
struct SchmidtForm {
  Eigen::VectorXd coefficients;
  Eigen::MatrixXcd left_vectors;   // columns
  Eigen::MatrixXcd right_vectors;  // columns
};

/// Outcome of the simultaneous-Schmidt test. `Undetermined` is reported when
/// degenerate marginal spectra defeat every basis-alignment attempt; it is
/// never used where a definite answer is available.
struct MultiSchmidtResult {
  enum class Verdict { Decomposable, NotDecomposable, Undetermined };
  Verdict verdict = Verdict::Undetermined;
  std::vector<double> coefficients;            // p_i, descending
  std::vector<Eigen::MatrixXcd> local_bases;   // per party, columns are |i>

  bool decomposable() const { return verdict == Verdict::Decomposable; }
};

/// Tensor product with party merging: a party appearing in several factors
/// becomes one party whose local dimension is the product of its per-factor
/// dimensions, sub-indices laid out in factor order.
PureState compose(std::span<const PureState> factors);
PureState compose(std::initializer_list<PureState> factors);

DensityOperator partial_trace(const PureState& state, const PartySubset& keep);
DensityOperator partial_trace(const DensityOperator& rho, const PartySubset& keep);

/// Density operator of a pure state (all parties kept).
DensityOperator to_density(const PureState& state);

/// Tensor product of two density operators; party labels must be disjoint.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Schmidt decomposition across the cut (left subset vs. complement).
/// Coefficients below 1e-12 are dropped.
SchmidtForm schmidt(const PureState& state, const PartySubset& left);

/// |<a|b>|^2. Requires identical party structure.
double fidelity(const PureState& a, const PureState& b);

/// Tests whether the state can be brought to sum_i sqrt(p_i)|i i ... i> by
/// local basis changes. Degenerate marginal blocks are aligned with seeded
/// generic probes built from two-party marginals; if alignment fails the
/// verdict is Undetermined.
MultiSchmidtResult multi_schmidt_decompose(const PureState& state);

}  // namespace ghzledger
