#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "ghzledger/lp.hpp"
#include "ghzledger/ppt.hpp"
#include "ghzledger/ree.hpp"
#include "ghzledger/state.hpp"

namespace ghzledger {

enum class LedgerVerdict { ViolatesE4, LPInfeasible, NecessaryConditionsPass };

/// Entropy accounting of a 4-party pure state against the GHZ-combination
/// equalities. A failed certificate proves the state is not GHZ reducible;
/// passing is necessary, not sufficient.
struct EntanglementLedger {
  std::map<std::string, double> one_party;  // label -> S
  std::map<std::string, double> two_party;  // "AB","AC","AD" (first-party pairs)
  double e4 = 0.0;
  bool lp_feasible = false;
  Eigen::VectorXd lp_witness;  // 11-vector in variable_names() order
  Eigen::VectorXd lp_dual;     // Farkas certificate when infeasible
  double e2_total = 0.0, e3_total = 0.0;  // aggregates of the witness
  double eq_c_residual = 0.0, eq_d_residual = 0.0;
  LedgerVerdict verdict = LedgerVerdict::NecessaryConditionsPass;

  /// E2(AB), E2(AC), E2(AD), E2(BC), E2(BD), E2(CD),
  /// E3(ABC), E3(ABD), E3(ACD), E3(BCD), E4 — with the state's own labels.
  std::array<std::string, 11> variable_names;
};

/// E4 = sum_i S(rho_i) - [S(rho_AB) + S(rho_AC) + S(rho_AD)].
double four_party_essential(const PureState& state);

/// Computes all seven entropies, the E4 sign test, and the nonnegative
/// feasibility of the full equality system.
EntanglementLedger ghz_reducibility_certificate(const PureState& state, double lp_tol = 1e-7);

/// The 7x11 coefficient matrix of the GHZ-combination equality system
/// (rows: S_A..S_D, S_AB, S_AC, S_AD).
Eigen::MatrixXd ghz_ledger_matrix();

/// Relative-entropy accounting of a 3-party pure state.
struct TripartiteLedger {
  SandwichReport er_ab, er_ac, er_bc;
  std::map<std::string, double> one_party;
  std::array<double, 3> e3_candidates{};  // from S_A, S_B, S_C respectively
  std::array<double, 3> slacks{};         // Eq-(g)-style slacks, signed
  std::array<double, 3> eq_f_values{};    // S_A + E_r(B,C) and cyclic
  double spread = 0.0;                    // max - min of the candidates
  bool inconclusive = false;              // some sandwich not certified
};

TripartiteLedger three_party_ledger(const PureState& state, const ReeOptions& opts = {});

/// Checks the equal-sums condition when at least two of the two-party
/// marginals are certified separable (2x2/2x3 PPT range only).
struct Prop4Report {
  std::array<SepVerdict, 3> separability{};  // AB, AC, BC
  int n_separable = 0;
  bool skipped = false;       // outside the certified PPT range
  std::string notice;
  std::array<double, 3> eq_f_values{};  // S_A + E_r(B,C) and cyclic
  double spread = 0.0;
  double h_value = 0.0;       // common value; equals S of an end party
  bool holds = false;
  bool inconclusive = false;
};

Prop4Report prop4_check(const PureState& state, const ReeOptions& opts = {});

/// Builds psi_AB^m (x) phi_AC^n (x) phi_BC^l (x) Theta^k, verifies Theta is
/// simultaneously Schmidt decomposable, and compares the measured E_r(A,B)
/// of the composite against m * E_r(psi_AB).
struct Prop2Report {
  bool theta_ok = false;
  MultiSchmidtResult::Verdict theta_verdict = MultiSchmidtResult::Verdict::Undetermined;
  double expected = 0.0;
  double measured = 0.0;
  double abs_error = 0.0;
  bool certified = false;
  SandwichReport er_ab;
};

Prop2Report prop2_probe(int m, int n, int l, int k,
                        const std::optional<PureState>& psi_ab,
                        const std::optional<PureState>& phi_ac,
                        const std::optional<PureState>& phi_bc,
                        const PureState& theta_abc, const ReeOptions& opts = {});

}  // namespace ghzledger
