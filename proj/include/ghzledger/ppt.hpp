#pragma once

#include <Eigen/Dense>

#include "ghzledger/state.hpp"

namespace ghzledger {

struct PptVerdict {
  double min_pt_eigenvalue = 0.0;
  bool is_ppt = false;
  PartySubset transposed_subset;
};

enum class SepVerdict { Separable, Entangled, Unknown };

/// Transposes the indices of the given parties. The result is Hermitian and
/// trace preserving but not necessarily positive.
Eigen::MatrixXcd partial_transpose(const DensityOperator& rho, const PartySubset& subset);

/// Peres test across a cut: transposes the right side of the cut and reports
/// the minimum eigenvalue (tolerance -1e-9).
PptVerdict ppt_test(const DensityOperator& rho, const PartySubset& cut_left);

/// PPT doubles as a separability decision only for 2x2 and 2x3 cuts; any
/// other shape returns Unknown.
SepVerdict separable_2x2_or_2x3(const DensityOperator& rho, const PartySubset& cut_left);

}  // namespace ghzledger
