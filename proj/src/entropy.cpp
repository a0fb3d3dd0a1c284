#include "ghzledger/entropy.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

namespace ghzledger {

namespace {
constexpr double kEigenCutoff = 1e-12;
constexpr double kSupportTol = 1e-9;
const double kLn2 = std::log(2.0);
}  // namespace

namespace detail {

double spectrum_entropy_bits(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double lam : eigenvalues)
    if (lam > kEigenCutoff) s -= lam * std::log2(lam);
  return s;
}

}  // namespace detail

EntropyValue von_neumann(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  EntropyValue out;
  out.bits = detail::spectrum_entropy_bits({ev.data(), static_cast<size_t>(ev.size())});
  if (out.bits < 0.0 && out.bits > -1e-12) out.bits = 0.0;
  if (out.bits < 0.0 || out.bits > std::log2(static_cast<double>(rho.dim())) + 1e-9)
    throw std::logic_error("von_neumann: entropy outside [0, log2 d]");
  for (const auto& p : rho.parties()) out.source += p.label;
  return out;
}

double shannon(std::span<const double> p) {
  double sum = 0.0;
  for (double x : p) {
    if (x < -1e-12) throw std::invalid_argument("shannon: negative probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("shannon: probabilities do not sum to 1");
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

std::optional<double> relative_entropy(const DensityOperator& rho,
                                       const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim())
    throw precondition_error("relative_entropy: dimension mismatch");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> er(rho.matrix());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma.matrix());

  double tr_rho_log_rho = 0.0;  // natural log
  for (int i = 0; i < er.eigenvalues().size(); ++i) {
    const double lam = er.eigenvalues()(i);
    if (lam > kEigenCutoff) tr_rho_log_rho += lam * std::log(lam);
  }

  double tr_rho_log_sigma = 0.0;
  double outside_mass = 0.0;
  for (int j = 0; j < es.eigenvalues().size(); ++j) {
    const double mu = es.eigenvalues()(j);
    const Eigen::VectorXcd v = es.eigenvectors().col(j);
    const double q = std::real(v.dot(rho.matrix() * v));
    if (mu > kEigenCutoff)
      tr_rho_log_sigma += q * std::log(mu);
    else
      outside_mass += std::max(q, 0.0);
  }
  if (outside_mass > kSupportTol) return std::nullopt;

  double bits = (tr_rho_log_rho - tr_rho_log_sigma) / kLn2;
  if (bits < 0.0 && bits > -1e-9) bits = 0.0;
  return bits;
}

}  // namespace ghzledger
