#include "ghzledger/ledger.hpp"

#include <algorithm>
#include <cmath>

#include "ghzledger/entropy.hpp"

namespace ghzledger {

namespace {

constexpr double kE4Tol = 1e-9;

// Variable order: E2 pairs (AB, AC, AD, BC, BD, CD), E3 triples
// (ABC, ABD, ACD, BCD), E4.
constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
constexpr int kTriples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

bool pair_crosses(const int pair[2], const std::array<bool, 4>& left) {
  return left[static_cast<size_t>(pair[0])] != left[static_cast<size_t>(pair[1])];
}

bool triple_crosses(const int triple[3], const std::array<bool, 4>& left) {
  const bool a = left[static_cast<size_t>(triple[0])];
  const bool b = left[static_cast<size_t>(triple[1])];
  const bool c = left[static_cast<size_t>(triple[2])];
  return !(a == b && b == c);
}

// A factor contributes one ebit to S of a subset per cut it crosses.
Eigen::RowVectorXd cut_row(const std::array<bool, 4>& left) {
  Eigen::RowVectorXd row(11);
  for (int p = 0; p < 6; ++p) row(p) = pair_crosses(kPairs[p], left) ? 1.0 : 0.0;
  for (int t = 0; t < 4; ++t) row(6 + t) = triple_crosses(kTriples[t], left) ? 1.0 : 0.0;
  row(10) = 1.0;  // GHZ4 crosses every nontrivial cut
  return row;
}

std::array<double, 7> seven_entropies(const PureState& state) {
  const auto& ps = state.parties();
  auto s1 = [&](int i) {
    return von_neumann(partial_trace(state, PartySubset{ps[static_cast<size_t>(i)].label})).bits;
  };
  auto s2 = [&](int i, int j) {
    return von_neumann(partial_trace(state, PartySubset{ps[static_cast<size_t>(i)].label,
                                                        ps[static_cast<size_t>(j)].label}))
        .bits;
  };
  return {s1(0), s1(1), s1(2), s1(3), s2(0, 1), s2(0, 2), s2(0, 3)};
}

}  // namespace

Eigen::MatrixXd ghz_ledger_matrix() {
  Eigen::MatrixXd m(7, 11);
  for (int i = 0; i < 4; ++i) {
    std::array<bool, 4> left{};
    left[static_cast<size_t>(i)] = true;
    m.row(i) = cut_row(left);
  }
  // Two-party rows: AB|CD, AC|BD, AD|BC.
  for (int j = 1; j < 4; ++j) {
    std::array<bool, 4> left{};
    left[0] = true;
    left[static_cast<size_t>(j)] = true;
    m.row(3 + j) = cut_row(left);
  }
  return m;
}

double four_party_essential(const PureState& state) {
  if (state.num_parties() != 4)
    throw precondition_error("four_party_essential: state must have exactly 4 parties");
  const auto s = seven_entropies(state);
  return s[0] + s[1] + s[2] + s[3] - (s[4] + s[5] + s[6]);
}

EntanglementLedger ghz_reducibility_certificate(const PureState& state, double lp_tol) {
  if (state.num_parties() != 4)
    throw precondition_error("ghz_reducibility_certificate: state must have exactly 4 parties");

  const auto& ps = state.parties();
  const auto s = seven_entropies(state);

  EntanglementLedger led;
  for (int i = 0; i < 4; ++i) led.one_party[ps[static_cast<size_t>(i)].label] = s[static_cast<size_t>(i)];
  led.two_party[ps[0].label + ps[1].label] = s[4];
  led.two_party[ps[0].label + ps[2].label] = s[5];
  led.two_party[ps[0].label + ps[3].label] = s[6];
  led.e4 = s[0] + s[1] + s[2] + s[3] - (s[4] + s[5] + s[6]);

  for (int p = 0; p < 6; ++p)
    led.variable_names[static_cast<size_t>(p)] =
        "E2(" + ps[static_cast<size_t>(kPairs[p][0])].label + ps[static_cast<size_t>(kPairs[p][1])].label + ")";
  for (int t = 0; t < 4; ++t)
    led.variable_names[static_cast<size_t>(6 + t)] =
        "E3(" + ps[static_cast<size_t>(kTriples[t][0])].label + ps[static_cast<size_t>(kTriples[t][1])].label +
        ps[static_cast<size_t>(kTriples[t][2])].label + ")";
  led.variable_names[10] = "E4";

  Eigen::VectorXd rhs(7);
  for (int i = 0; i < 7; ++i) rhs(i) = s[static_cast<size_t>(i)];
  LpFeasibility lp = nonneg_lp_feasible(ghz_ledger_matrix(), rhs, lp_tol);
  led.lp_feasible = lp.feasible;
  if (lp.feasible) {
    // The equalities pin E4 and 2*E2t + 3*E3t but not the individual E2/E3
    // split (isentropic exchanges such as three EPR pairs vs. GHZ3^2 exist).
    // Canonical witness: the E3-maximizing vertex, deterministic via Bland.
    Eigen::VectorXd objective = Eigen::VectorXd::Zero(11);
    objective.segment(6, 4).setConstant(-1.0);
    LpSolution canonical = nonneg_lp_minimize(ghz_ledger_matrix(), rhs, objective, lp_tol);
    led.lp_witness = canonical.status == LpSolution::Status::Optimal ? canonical.x : lp.witness;
    led.e2_total = lp.witness.head(6).sum();
    led.e3_total = lp.witness.segment(6, 4).sum();
    led.eq_c_residual = std::abs((s[0] + s[1] + s[2] + s[3]) -
                                 (2.0 * led.e2_total + 3.0 * led.e3_total + 4.0 * lp.witness(10)));
    led.eq_d_residual = std::abs((s[4] + s[5] + s[6]) -
                                 (2.0 * led.e2_total + 3.0 * led.e3_total + 3.0 * lp.witness(10)));
  } else {
    led.lp_dual = lp.dual_certificate;
  }

  if (led.e4 < -kE4Tol)
    led.verdict = LedgerVerdict::ViolatesE4;
  else if (!led.lp_feasible)
    led.verdict = LedgerVerdict::LPInfeasible;
  else
    led.verdict = LedgerVerdict::NecessaryConditionsPass;
  return led;
}

TripartiteLedger three_party_ledger(const PureState& state, const ReeOptions& opts) {
  if (state.num_parties() != 3)
    throw precondition_error("three_party_ledger: state must have exactly 3 parties");

  const auto& ps = state.parties();
  const std::string a = ps[0].label, b = ps[1].label, c = ps[2].label;

  TripartiteLedger led;
  for (const auto& p : ps)
    led.one_party[p.label] = von_neumann(partial_trace(state, PartySubset{p.label})).bits;

  auto sandwich_pair = [&](const std::string& x, const std::string& y) {
    DensityOperator marg = partial_trace(state, PartySubset{x, y});
    return ree_sandwich(marg, PartySubset{x}, opts);
  };
  led.er_ab = sandwich_pair(a, b);
  led.er_ac = sandwich_pair(a, c);
  led.er_bc = sandwich_pair(b, c);
  led.inconclusive = !(led.er_ab.exact() && led.er_ac.exact() && led.er_bc.exact());

  const double sa = led.one_party[a], sb = led.one_party[b], sc = led.one_party[c];
  led.e3_candidates = {sa - led.er_ab.value - led.er_ac.value,
                       sb - led.er_ab.value - led.er_bc.value,
                       sc - led.er_ac.value - led.er_bc.value};
  led.slacks = led.e3_candidates;
  led.eq_f_values = {sa + led.er_bc.value, sb + led.er_ac.value, sc + led.er_ab.value};
  led.spread = *std::max_element(led.e3_candidates.begin(), led.e3_candidates.end()) -
               *std::min_element(led.e3_candidates.begin(), led.e3_candidates.end());
  return led;
}

Prop4Report prop4_check(const PureState& state, const ReeOptions& opts) {
  if (state.num_parties() != 3)
    throw precondition_error("prop4_check: state must have exactly 3 parties");

  const auto& ps = state.parties();
  const std::string a = ps[0].label, b = ps[1].label, c = ps[2].label;
  const std::array<std::pair<std::string, std::string>, 3> pairs = {
      std::make_pair(a, b), std::make_pair(a, c), std::make_pair(b, c)};

  Prop4Report rep;
  std::array<DensityOperator, 3> margs = {partial_trace(state, PartySubset{a, b}),
                                          partial_trace(state, PartySubset{a, c}),
                                          partial_trace(state, PartySubset{b, c})};
  for (size_t i = 0; i < 3; ++i) {
    rep.separability[i] = separable_2x2_or_2x3(margs[i], PartySubset{pairs[i].first});
    if (rep.separability[i] == SepVerdict::Separable) ++rep.n_separable;
  }
  const bool any_unknown =
      std::any_of(rep.separability.begin(), rep.separability.end(),
                  [](SepVerdict v) { return v == SepVerdict::Unknown; });
  if (rep.n_separable < 2) {
    rep.skipped = true;
    rep.notice = any_unknown ? "separability outside the certified 2x2/2x3 PPT range"
                             : "fewer than two separable two-party marginals";
    return rep;
  }

  // E_r of certified-separable marginals is 0; compute the remaining one.
  std::array<double, 3> er{0.0, 0.0, 0.0};
  for (size_t i = 0; i < 3; ++i) {
    if (rep.separability[i] == SepVerdict::Separable) continue;
    SandwichReport s = ree_sandwich(margs[i], PartySubset{pairs[i].first}, opts);
    er[i] = s.value;
    if (!s.exact()) rep.inconclusive = true;
  }

  const double sa = von_neumann(partial_trace(state, PartySubset{a})).bits;
  const double sb = von_neumann(partial_trace(state, PartySubset{b})).bits;
  const double sc = von_neumann(partial_trace(state, PartySubset{c})).bits;
  rep.eq_f_values = {sa + er[2], sb + er[1], sc + er[0]};
  rep.spread = *std::max_element(rep.eq_f_values.begin(), rep.eq_f_values.end()) -
               *std::min_element(rep.eq_f_values.begin(), rep.eq_f_values.end());
  rep.holds = rep.spread <= 5e-3;

  // With rho_xy and rho_yz separable the end parties x, z are isentropic and
  // the common value is their entropy H{p'}.
  if (rep.separability[0] == SepVerdict::Separable && rep.separability[2] == SepVerdict::Separable)
    rep.h_value = sa;  // AB and BC separable: ends A, C
  else if (rep.separability[0] == SepVerdict::Separable && rep.separability[1] == SepVerdict::Separable)
    rep.h_value = sb;  // AB and AC separable: ends B, C
  else
    rep.h_value = sa;  // AC and BC separable: ends A, B
  return rep;
}

namespace {

PureState relabeled(const PureState& s, const std::vector<std::string>& labels) {
  if (s.num_parties() != static_cast<int>(labels.size()))
    throw precondition_error("prop2_probe: component has wrong party count");
  std::vector<Party> ps;
  for (size_t i = 0; i < labels.size(); ++i)
    ps.push_back({labels[i], s.parties()[i].dim});
  return PureState(std::move(ps), s.amplitudes());
}

}  // namespace

Prop2Report prop2_probe(int m, int n, int l, int k, const std::optional<PureState>& psi_ab,
                        const std::optional<PureState>& phi_ac,
                        const std::optional<PureState>& phi_bc, const PureState& theta_abc,
                        const ReeOptions& opts) {
  if (m < 0 || n < 0 || l < 0 || k < 0)
    throw precondition_error("prop2_probe: multiplicities must be nonnegative");
  if ((m > 0 && !psi_ab) || (n > 0 && !phi_ac) || (l > 0 && !phi_bc))
    throw precondition_error("prop2_probe: missing component for a nonzero multiplicity");
  if (m + n + l + k == 0) throw precondition_error("prop2_probe: all multiplicities are zero");

  Prop2Report rep;
  MultiSchmidtResult theta_test = multi_schmidt_decompose(theta_abc);
  rep.theta_verdict = theta_test.verdict;
  rep.theta_ok = theta_test.decomposable();
  if (!rep.theta_ok && k > 0) return rep;  // precondition violation report

  std::vector<PureState> factors;
  for (int i = 0; i < m; ++i) factors.push_back(relabeled(*psi_ab, {"A", "B"}));
  for (int i = 0; i < n; ++i) factors.push_back(relabeled(*phi_ac, {"A", "C"}));
  for (int i = 0; i < l; ++i) factors.push_back(relabeled(*phi_bc, {"B", "C"}));
  for (int i = 0; i < k; ++i) factors.push_back(relabeled(theta_abc, {"A", "B", "C"}));
  PureState composite = compose(factors);

  rep.expected = m > 0 ? m * ree_pure(relabeled(*psi_ab, {"A", "B"}), PartySubset{"A"}) : 0.0;

  const auto has_party = [&](const std::string& l2) {
    for (const auto& p : composite.parties())
      if (p.label == l2) return true;
    return false;
  };
  if (!has_party("A") || !has_party("B")) {
    rep.measured = 0.0;
    rep.certified = true;
  } else if (composite.num_parties() == 2) {
    // Pure A-B state (k = n = l = 0): E_r is the marginal entropy.
    rep.measured = ree_pure(composite, PartySubset{"A"});
    rep.certified = true;
  } else {
    DensityOperator marg = partial_trace(composite, PartySubset{"A", "B"});
    rep.er_ab = ree_sandwich(marg, PartySubset{"A"}, opts);
    rep.measured = rep.er_ab.value;
    rep.certified = rep.er_ab.exact();
  }
  rep.abs_error = std::abs(rep.measured - rep.expected);
  return rep;
}

}  // namespace ghzledger
