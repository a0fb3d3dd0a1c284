#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ghzledger/catalog.hpp"
#include "ghzledger/entropy.hpp"
#include "ghzledger/ledger.hpp"
#include "ghzledger/rng.hpp"
#include "ghzledger/state.hpp"

using namespace ghzledger;

namespace {

constexpr double kH37 = 0.8812908992306927;

PureState basis_state(std::vector<Party> parties, int index) {
  int total = 1;
  for (const auto& p : parties) total *= p.dim;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(total);
  amps(index) = 1.0;
  return PureState(std::move(parties), std::move(amps));
}

PureState epr_pair(const std::string& a, const std::string& b) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps(0) = amps(3) = 1.0 / std::sqrt(2.0);
  return PureState({{a, 2}, {b, 2}}, std::move(amps));
}

ReeOptions tight() {
  ReeOptions o;
  o.tol = 1e-8;
  o.max_iter = 4000;
  return o;
}

}  // namespace

TEST_CASE("four-party essential entanglement") {
  CHECK(four_party_essential(counterexample_4party()) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(four_party_essential(ghz(4)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(four_party_essential(compose({epr_pair("A", "B"), epr_pair("C", "D")})) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK_THROWS_AS(four_party_essential(ghz(3)), precondition_error);
}

TEST_CASE("E4 is invariant under single-party local unitaries") {
  Rng rng(7);
  PureState psi = counterexample_4party();
  Eigen::MatrixXcd u = rng.haar_unitary(2);
  ModeLayout layout({2, 2, 2, 2});
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(16);
  for (int i = 0; i < 16; ++i) {
    std::vector<int> d(4);
    layout.decode(i, d);
    for (int k = 0; k < 2; ++k) {
      std::vector<int> d2 = d;
      d2[1] = k;
      amps(layout.encode(d2)) += u(k, d[1]) * psi.amplitudes()(i);
    }
  }
  PureState rotated(psi.parties(), amps);
  CHECK(std::abs(four_party_essential(rotated) - four_party_essential(psi)) < 1e-9);
}

TEST_CASE("ledger additivity under party-aligned composition") {
  PureState a = ghz(4);
  PureState b = compose({epr_pair("A", "B"), epr_pair("C", "D")});
  PureState joint = compose({a, b});
  CHECK(std::abs(four_party_essential(joint) - four_party_essential(a) - four_party_essential(b)) <
        1e-8);
}

TEST_CASE("certificate: counterexample violates E4 and the LP") {
  EntanglementLedger led = ghz_reducibility_certificate(counterexample_4party());
  CHECK(led.verdict == LedgerVerdict::ViolatesE4);
  CHECK(led.e4 == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK_FALSE(led.lp_feasible);  // ViolatesE4 implies LPInfeasible
  CHECK(led.one_party.at("A") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(led.two_party.at("AB") == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(led.two_party.at("AD") == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("certificate: ghz4 passes with the expected witness") {
  EntanglementLedger led = ghz_reducibility_certificate(ghz(4));
  CHECK(led.verdict == LedgerVerdict::NecessaryConditionsPass);
  REQUIRE(led.lp_feasible);
  for (int i = 0; i < 10; ++i) CHECK(std::abs(led.lp_witness(i)) < 1e-7);
  CHECK(led.lp_witness(10) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(led.eq_c_residual < 1e-7);
  CHECK(led.eq_d_residual < 1e-7);
  CHECK(led.e3_total == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("certificate: ghz3 with a spectator party") {
  PureState state = compose({ghz(3), basis_state({{"D", 2}}, 0)});
  EntanglementLedger led = ghz_reducibility_certificate(state);
  CHECK(led.verdict == LedgerVerdict::NecessaryConditionsPass);
  REQUIRE(led.lp_feasible);
  // Witness: E3(ABC) = 1, everything else 0.
  for (int i = 0; i < 11; ++i) {
    const double expect = led.variable_names[static_cast<size_t>(i)] == "E3(ABC)" ? 1.0 : 0.0;
    CHECK(std::abs(led.lp_witness(i) - expect) < 1e-7);
  }
}

TEST_CASE("certificate: epr pairs recover their multiplicities") {
  PureState state = compose({epr_pair("A", "B"), epr_pair("C", "D")});
  EntanglementLedger led = ghz_reducibility_certificate(state);
  REQUIRE(led.lp_feasible);
  for (int i = 0; i < 11; ++i) {
    const auto& name = led.variable_names[static_cast<size_t>(i)];
    const double expect = (name == "E2(AB)" || name == "E2(CD)") ? 1.0 : 0.0;
    CHECK(std::abs(led.lp_witness(i) - expect) < 1e-7);
  }
}

TEST_CASE("three-party ledger on ghz3") {
  TripartiteLedger led = three_party_ledger(ghz(3), tight());
  CHECK_FALSE(led.inconclusive);
  CHECK(led.er_ab.value < 2e-3);
  CHECK(led.er_ac.value < 2e-3);
  CHECK(led.er_bc.value < 2e-3);
  for (double c : led.e3_candidates) CHECK(c == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(led.spread < 5e-3);
  for (double s : led.slacks) CHECK(s > -5e-3);
}

TEST_CASE("three-party ledger on EPR with a spectator") {
  PureState state = compose({epr_pair("A", "B"), basis_state({{"C", 2}}, 0)});
  TripartiteLedger led = three_party_ledger(state, tight());
  CHECK(led.er_ab.value == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(led.er_ac.value < 2e-3);
  CHECK(led.er_bc.value < 2e-3);
  for (double c : led.e3_candidates) CHECK(std::abs(c) < 5e-3);
  CHECK(led.spread < 5e-3);
}

TEST_CASE("three-party ledger on a mixed EPR/GHZ combination") {
  // EPR_AB (x) EPR_AC (x) GHZ_ABC: S_A = 3, S_B = S_C = 2, and the
  // relative entropies are E_r(A,B) = 1, E_r(A,C) = 1, E_r(B,C) = 0,
  // so every E3 candidate is 1.
  PureState state = compose({epr_pair("A", "B"), epr_pair("A", "C"), ghz(3)});
  ReeOptions o;
  o.tol = 1e-7;
  o.max_iter = 3000;
  TripartiteLedger led = three_party_ledger(state, o);
  CHECK_FALSE(led.inconclusive);
  CHECK(led.one_party.at("A") == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(led.one_party.at("B") == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(led.er_ab.value == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(led.er_ac.value == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(led.er_bc.value < 5e-3);
  for (double c : led.e3_candidates) CHECK(c == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(led.spread < 5e-3);
}

TEST_CASE("prop4 on ghz3: all marginals separable, equal sums") {
  Prop4Report rep = prop4_check(ghz(3), tight());
  CHECK_FALSE(rep.skipped);
  CHECK(rep.n_separable == 3);
  for (double v : rep.eq_f_values) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.holds);
}

TEST_CASE("prop4 on the appendix construction") {
  Eigen::MatrixXcd gram(2, 2);
  gram << 1.0, 0.5, 0.5, 1.0;
  PureState psi = appendix_b_state(std::vector<double>{0.3, 0.7}, gram);
  Prop4Report rep = prop4_check(psi, tight());
  CHECK_FALSE(rep.skipped);
  CHECK(rep.n_separable >= 2);
  CHECK(rep.holds);
  for (double v : rep.eq_f_values) CHECK(v == doctest::Approx(kH37).epsilon(5e-3));
  CHECK(rep.h_value == doctest::Approx(kH37).epsilon(1e-9));
}

TEST_CASE("prop4 with a detached party") {
  PureState state = compose({basis_state({{"A", 2}}, 0), epr_pair("B", "C")});
  Prop4Report rep = prop4_check(state, tight());
  CHECK_FALSE(rep.skipped);
  CHECK(rep.n_separable == 2);
  for (double v : rep.eq_f_values) CHECK(v == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(rep.holds);
}

TEST_CASE("prop4 skips outside the certified range") {
  // 4-dimensional marginals: separability is unknown, so the check skips.
  PureState state = haar_random_state({{"A", 4}, {"B", 4}, {"C", 4}}, 5);
  Prop4Report rep = prop4_check(state, tight());
  CHECK(rep.skipped);
  CHECK_FALSE(rep.notice.empty());
}

TEST_CASE("prop2 probe with EPR and GHZ3") {
  ReeOptions o = tight();
  Prop2Report rep = prop2_probe(1, 0, 0, 1, epr_pair("A", "B"), std::nullopt, std::nullopt,
                                ghz(3), o);
  CHECK(rep.theta_ok);
  CHECK(rep.expected == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.abs_error < 5e-3);
  CHECK(rep.certified);
}

TEST_CASE("prop2 probe with only the schmidt factor") {
  Prop2Report rep =
      prop2_probe(0, 0, 0, 1, std::nullopt, std::nullopt, std::nullopt, ghz(3), tight());
  CHECK(rep.theta_ok);
  CHECK(rep.expected == 0.0);
  CHECK(rep.measured < 1e-6);
}

TEST_CASE("prop2 rejects a non-decomposable theta") {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  const double w = 1.0 / std::sqrt(3.0);
  amps(1) = w;
  amps(2) = w;
  amps(4) = w;
  PureState wstate({{"A", 2}, {"B", 2}, {"C", 2}}, amps);
  Prop2Report rep =
      prop2_probe(1, 0, 0, 1, epr_pair("A", "B"), std::nullopt, std::nullopt, wstate, tight());
  CHECK_FALSE(rep.theta_ok);
  CHECK(rep.theta_verdict == MultiSchmidtResult::Verdict::NotDecomposable);
}
