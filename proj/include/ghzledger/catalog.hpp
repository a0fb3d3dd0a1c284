#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ghzledger/state.hpp"

namespace ghzledger {

/// n-party GHZ state (|0...0> + |1...1>)/sqrt(2), parties labeled A, B, C, ...
PureState ghz(int n);

/// EPR pair = ghz(2).
PureState epr();

/// The 4-party state (|0000> + |0110> + |1001> - |1111>)/2 with exact
/// dyadic amplitudes.
PureState counterexample_4party();

/// sum_i sqrt(p_i) |i i ... i> over n parties of local dimension len(p).
PureState schmidt_state(std::span<const double> p, int n_parties);

/// Maximally correlated two-party operator sum a_{n1 n2} |n1 n1><n2 n2|.
DensityOperator max_correlated(const Eigen::MatrixXcd& a);

/// sum_i sqrt(p_i) |i>_A |psi_i>_B |i>_C with <psi_i|psi_j> prescribed by a
/// PSD Gram matrix with unit diagonal.
PureState appendix_b_state(std::span<const double> p, const Eigen::MatrixXcd& gram);

/// Seeded Haar-random pure state (test utility).
PureState haar_random_state(const std::vector<Party>& parties, std::uint64_t seed);

struct CatalogEntry {
  std::string name;
  std::string description;
  std::string params_schema;  // human-readable parameter summary
  std::function<PureState(const nlohmann::json& params)> build;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Builds a catalog state from a name and a JSON parameter object.
PureState build_from_catalog(const std::string& name, const nlohmann::json& params);

}  // namespace ghzledger
