#include "ghzledger/ppt.hpp"

#include <algorithm>

namespace ghzledger {

namespace {
constexpr double kPptTol = -1e-9;
}

Eigen::MatrixXcd partial_transpose(const DensityOperator& rho, const PartySubset& subset) {
  const auto modes = rho.subset_modes(subset);
  if (modes.empty()) throw precondition_error("partial_transpose: empty subset");
  std::vector<bool> flip(rho.parties().size(), false);
  for (int m : modes) flip[static_cast<size_t>(m)] = true;

  const auto& layout = rho.layout();
  const int n = layout.modes();
  const int d = rho.dim();
  std::vector<int> ri(static_cast<size_t>(n)), ci(static_cast<size_t>(n));
  Eigen::MatrixXcd out(d, d);
  for (int r = 0; r < d; ++r) {
    layout.decode(r, ri);
    for (int c = 0; c < d; ++c) {
      layout.decode(c, ci);
      int rr = 0, cc = 0;
      for (int m = 0; m < n; ++m) {
        const int a = flip[static_cast<size_t>(m)] ? ci[static_cast<size_t>(m)] : ri[static_cast<size_t>(m)];
        const int b = flip[static_cast<size_t>(m)] ? ri[static_cast<size_t>(m)] : ci[static_cast<size_t>(m)];
        rr += a * layout.stride(m);
        cc += b * layout.stride(m);
      }
      out(rr, cc) = rho.matrix()(r, c);
    }
  }
  return out;
}

PptVerdict ppt_test(const DensityOperator& rho, const PartySubset& cut_left) {
  const auto left = rho.subset_modes(cut_left);
  if (left.empty() || left.size() == rho.parties().size())
    throw precondition_error("ppt_test: cut must be a nonempty proper subset");

  // Transpose the complement of the cut's left side.
  PartySubset right;
  std::vector<bool> in_left(rho.parties().size(), false);
  for (int m : left) in_left[static_cast<size_t>(m)] = true;
  for (size_t m = 0; m < rho.parties().size(); ++m)
    if (!in_left[m]) right.labels.push_back(rho.parties()[m].label);

  Eigen::MatrixXcd pt = partial_transpose(rho, right);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);

  PptVerdict v;
  v.min_pt_eigenvalue = es.eigenvalues().minCoeff();
  v.is_ppt = v.min_pt_eigenvalue >= kPptTol;
  v.transposed_subset = right;
  return v;
}

SepVerdict separable_2x2_or_2x3(const DensityOperator& rho, const PartySubset& cut_left) {
  const auto left = rho.subset_modes(cut_left);
  if (left.empty() || left.size() == rho.parties().size())
    throw precondition_error("separable_2x2_or_2x3: cut must be a nonempty proper subset");
  std::vector<bool> in_left(rho.parties().size(), false);
  for (int m : left) in_left[static_cast<size_t>(m)] = true;
  int dl = 1, dr = 1;
  for (size_t m = 0; m < rho.parties().size(); ++m)
    (in_left[m] ? dl : dr) *= rho.parties()[m].dim;

  const int lo = std::min(dl, dr), hi = std::max(dl, dr);
  if (!(lo == 2 && (hi == 2 || hi == 3))) return SepVerdict::Unknown;
  return ppt_test(rho, cut_left).is_ppt ? SepVerdict::Separable : SepVerdict::Entangled;
}

}  // namespace ghzledger
