#pragma once

#include <optional>
#include <span>
#include <string>

#include "ghzledger/state.hpp"

namespace ghzledger {

/// Entropy in bits together with the marginal/cut that produced it.
struct EntropyValue {
  double bits = 0.0;
  std::string source;
};

/// Von Neumann entropy -tr(rho log2 rho). Eigenvalues below 1e-12 are
/// treated as exact zeros.
EntropyValue von_neumann(const DensityOperator& rho);

/// Shannon entropy of a probability vector, bits, with 0 log 0 = 0.
double shannon(std::span<const double> p);

/// Quantum relative entropy tr{rho (log2 rho - log2 sigma)} in bits.
/// Returns std::nullopt when supp(rho) is not contained in supp(sigma)
/// (the +infinity case); callers must branch on it.
std::optional<double> relative_entropy(const DensityOperator& rho,
                                       const DensityOperator& sigma);

namespace detail {
/// Entropy of a raw eigenvalue spectrum (clamps sub-cutoff values to 0).
double spectrum_entropy_bits(std::span<const double> eigenvalues);
}  // namespace detail

}  // namespace ghzledger
