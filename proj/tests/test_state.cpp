#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ghzledger/catalog.hpp"
#include "ghzledger/entropy.hpp"
#include "ghzledger/rng.hpp"
#include "ghzledger/state.hpp"

using namespace ghzledger;

namespace {

PureState basis_state(std::vector<Party> parties, int index) {
  int total = 1;
  for (const auto& p : parties) total *= p.dim;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(total);
  amps(index) = 1.0;
  return PureState(std::move(parties), std::move(amps));
}

PureState two_qubit(const std::string& a, const std::string& b, double p00, double p11) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps(0) = std::sqrt(p00);
  amps(3) = std::sqrt(p11);
  return PureState({{a, 2}, {b, 2}}, std::move(amps));
}

}  // namespace

TEST_CASE("pure state invariants") {
  CHECK_THROWS_AS(PureState({{"A", 2}}, Eigen::VectorXcd::Zero(2)), std::invalid_argument);
  CHECK_THROWS_AS(PureState({{"A", 2}, {"A", 2}}, Eigen::VectorXcd::Ones(4) * 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(PureState({{"A", 2}}, Eigen::VectorXcd::Ones(3)), std::invalid_argument);
  // Tiny drift is renormalized, larger drift rejected.
  Eigen::VectorXcd v(2);
  v << 1.0 + 1e-9, 0.0;
  CHECK(PureState({{"A", 2}}, v).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
  v << 1.1, 0.0;
  CHECK_THROWS_AS(PureState({{"A", 2}}, v), std::invalid_argument);
}

TEST_CASE("compose merges parties and multiplies dimensions") {
  PureState zero = basis_state({{"A", 2}}, 0);
  PureState one = basis_state({{"B", 2}}, 1);
  PureState both = compose({zero, one});
  REQUIRE(both.num_parties() == 2);
  CHECK(both.amplitudes()(1) == std::complex<double>(1.0, 0.0));

  PureState pair = compose({epr(), epr()});
  REQUIRE(pair.num_parties() == 2);
  CHECK(pair.parties()[0].dim == 4);
  SchmidtForm form = schmidt(pair, PartySubset{"A"});
  REQUIRE(form.coefficients.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(form.coefficients(i) == doctest::Approx(0.5).epsilon(1e-12));

  PureState psi = two_qubit("A", "B", 0.3, 0.7);
  PureState mixed = compose({psi, ghz(3)});
  REQUIRE(mixed.num_parties() == 3);
  CHECK(mixed.parties()[0].dim == 4);
  CHECK(mixed.parties()[1].dim == 4);
  CHECK(mixed.parties()[2].dim == 2);
  CHECK(von_neumann(partial_trace(mixed, PartySubset{"C"})).bits ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(compose(std::span<const PureState>{}), precondition_error);
}

TEST_CASE("compose is associative in the flattened layout") {
  PureState psi = two_qubit("A", "B", 0.3, 0.7);
  PureState a = compose({psi, psi, psi});
  PureState b = compose({compose({psi, psi}), psi});
  REQUIRE(a.dim() == b.dim());
  CHECK((a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace") {
  DensityOperator half = partial_trace(epr(), PartySubset{"A"});
  CHECK((half.matrix() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  DensityOperator rho_ab = partial_trace(counterexample_4party(), PartySubset{"A", "B"});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_ab.matrix(), Eigen::EigenvaluesOnly);
  int rank = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-10) ++rank;
  CHECK(rank == 4);
  CHECK(von_neumann(rho_ab).bits == doctest::Approx(2.0).epsilon(1e-12));

  PureState zz = basis_state({{"A", 2}, {"B", 2}}, 0);
  DensityOperator pb = partial_trace(zz, PartySubset{"B"});
  CHECK(std::abs(pb.matrix()(0, 0) - 1.0) < 1e-14);

  CHECK_THROWS_AS(partial_trace(epr(), PartySubset{"A", "B"}), precondition_error);
  CHECK_THROWS_AS(partial_trace(epr(), PartySubset{}), precondition_error);
}

TEST_CASE("partial trace of a density operator matches the pure-state path") {
  PureState g3 = ghz(3);
  DensityOperator via_density = partial_trace(to_density(g3), PartySubset{"A", "B"});
  DensityOperator direct = partial_trace(g3, PartySubset{"A", "B"});
  CHECK((via_density.matrix() - direct.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  DensityOperator a = partial_trace(epr(), PartySubset{"A"});
  DensityOperator b({{"Z", 3}}, Eigen::MatrixXcd::Identity(3, 3) / 3.0);
  DensityOperator back = partial_trace(tensor(a, b), PartySubset{"A"});
  CHECK((back.matrix() - a.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace of a composite recovers a disjoint factor") {
  PureState psi = two_qubit("A", "B", 0.3, 0.7);
  PureState phi = two_qubit("C", "D", 0.5, 0.5);
  PureState joint = compose({psi, phi});
  DensityOperator back = partial_trace(joint, PartySubset{"A", "B"});
  Eigen::MatrixXcd expect = psi.amplitudes() * psi.amplitudes().adjoint();
  CHECK((back.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("schmidt decomposition") {
  SchmidtForm bell = schmidt(epr(), PartySubset{"A"});
  REQUIRE(bell.coefficients.size() == 2);
  CHECK(bell.coefficients(0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(bell.coefficients(1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  SchmidtForm skew = schmidt(two_qubit("A", "B", 0.3, 0.7), PartySubset{"A"});
  CHECK(skew.coefficients(0) == doctest::Approx(std::sqrt(0.7)).epsilon(1e-12));
  CHECK(skew.coefficients(1) == doctest::Approx(std::sqrt(0.3)).epsilon(1e-12));

  SchmidtForm g4 = schmidt(ghz(4), PartySubset{"A", "B"});
  REQUIRE(g4.coefficients.size() == 2);
  CHECK(g4.coefficients(0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("schmidt form reconstructs the state") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    PureState s = haar_random_state({{"A", 2}, {"B", 3}, {"C", 2}}, seed);
    SchmidtForm f = schmidt(s, PartySubset{"A", "C"});
    // sum_k c_k |left_k>|right_k| in the (A,C),(B) ordering of the cut.
    const int dl = 4, dr = 3;
    Eigen::VectorXcd rebuilt = Eigen::VectorXcd::Zero(dl * dr);
    for (int k = 0; k < f.coefficients.size(); ++k)
      for (int a = 0; a < dl; ++a)
        for (int b = 0; b < dr; ++b)
          rebuilt(a * dr + b) += f.coefficients(k) * f.left_vectors(a, k) * f.right_vectors(b, k);
    // Map back to the original (A,B,C) layout.
    double max_err = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c)
        for (int b = 0; b < 3; ++b) {
          const int cut_index = (a * 2 + c) * dr + b;
          const int orig_index = (a * 3 + b) * 2 + c;
          max_err = std::max(max_err,
                             std::abs(rebuilt(cut_index) - s.amplitudes()(orig_index)));
        }
    CHECK(max_err < 1e-10);

    // Squared coefficients match the marginal spectrum.
    DensityOperator marg = partial_trace(s, PartySubset{"A", "C"});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(marg.matrix(), Eigen::EigenvaluesOnly);
    Eigen::VectorXd lam = es.eigenvalues().reverse();
    for (int k = 0; k < f.coefficients.size(); ++k)
      CHECK(f.coefficients(k) * f.coefficients(k) == doctest::Approx(lam(k)).epsilon(1e-9));
  }
}

TEST_CASE("purity duality S_X = S_Xbar") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    PureState s = haar_random_state({{"A", 2}, {"B", 2}, {"C", 2}, {"D", 2}}, seed);
    for (const PartySubset& cut :
         {PartySubset{"A"}, PartySubset{"A", "C"}, PartySubset{"B", "D"}, PartySubset{"A", "B", "C"}}) {
      PartySubset comp;
      for (const auto& p : s.parties())
        if (!cut.contains(p.label)) comp.labels.push_back(p.label);
      const double s1 = von_neumann(partial_trace(s, cut)).bits;
      const double s2 = von_neumann(partial_trace(s, comp)).bits;
      CHECK(std::abs(s1 - s2) < 1e-9);
    }
  }
}

TEST_CASE("fidelity") {
  PureState plus = PureState({{"A", 2}}, Eigen::Vector2cd(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)));
  PureState zero = basis_state({{"A", 2}}, 0);
  PureState one = basis_state({{"A", 2}}, 1);
  CHECK(fidelity(plus, plus) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(fidelity(zero, plus) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fidelity(plus, zero) == doctest::Approx(0.5).epsilon(1e-12));

  // Global phase invariance.
  PureState rotated = PureState({{"A", 2}}, std::complex<double>(0.0, 1.0) * plus.amplitudes());
  CHECK(fidelity(plus, rotated) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(fidelity(zero, epr()), precondition_error);
}

TEST_CASE("multi schmidt: ghz and product states decompose") {
  MultiSchmidtResult g = multi_schmidt_decompose(ghz(3));
  REQUIRE(g.decomposable());
  REQUIRE(g.coefficients.size() == 2);
  CHECK(g.coefficients[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(g.coefficients[1] == doctest::Approx(0.5).epsilon(1e-10));

  MultiSchmidtResult prod = multi_schmidt_decompose(basis_state({{"A", 2}, {"B", 2}, {"C", 2}}, 0));
  REQUIRE(prod.decomposable());
  REQUIRE(prod.coefficients.size() == 1);
  CHECK(prod.coefficients[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("multi schmidt: rotated ghz still decomposes (degenerate alignment)") {
  PureState g3 = ghz(3);
  Rng rng(42);
  Eigen::VectorXcd amps = g3.amplitudes();
  ModeLayout layout({2, 2, 2});
  for (int mode = 0; mode < 3; ++mode) {
    Eigen::MatrixXcd u = rng.haar_unitary(2);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(8);
    for (int i = 0; i < 8; ++i) {
      std::vector<int> d(3);
      layout.decode(i, d);
      for (int k = 0; k < 2; ++k) {
        std::vector<int> d2 = d;
        d2[static_cast<size_t>(mode)] = k;
        out(layout.encode(d2)) += u(k, d[static_cast<size_t>(mode)]) * amps(i);
      }
    }
    amps = out;
  }
  PureState rotated({{"A", 2}, {"B", 2}, {"C", 2}}, amps);
  MultiSchmidtResult r = multi_schmidt_decompose(rotated);
  REQUIRE(r.decomposable());
  REQUIRE(r.coefficients.size() == 2);
  CHECK(r.coefficients[0] == doctest::Approx(0.5).epsilon(1e-9));

  // The claimed form reconstructs the state: sum_i sqrt(p_i) (x)_p basis[p].col(i).
  Eigen::VectorXcd rebuilt = Eigen::VectorXcd::Zero(8);
  for (size_t i = 0; i < r.coefficients.size(); ++i) {
    for (int x = 0; x < 8; ++x) {
      std::vector<int> d(3);
      layout.decode(x, d);
      std::complex<double> term = std::sqrt(r.coefficients[i]);
      for (int p = 0; p < 3; ++p)
        term *= r.local_bases[static_cast<size_t>(p)](d[static_cast<size_t>(p)], static_cast<Eigen::Index>(i));
      rebuilt(x) += term;
    }
  }
  CHECK((rebuilt - amps).norm() < 1e-8);
}

TEST_CASE("multi schmidt: rotated qutrit state with a degenerate block") {
  // p = (0.5, 0.25, 0.25): one nondegenerate eigenvalue plus a 2-block.
  PureState base = schmidt_state(std::vector<double>{0.5, 0.25, 0.25}, 3);
  Rng rng(71);
  Eigen::VectorXcd amps = base.amplitudes();
  ModeLayout layout({3, 3, 3});
  for (int mode = 0; mode < 3; ++mode) {
    Eigen::MatrixXcd u = rng.haar_unitary(3);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(27);
    for (int i = 0; i < 27; ++i) {
      std::vector<int> d(3);
      layout.decode(i, d);
      for (int k = 0; k < 3; ++k) {
        std::vector<int> d2 = d;
        d2[static_cast<size_t>(mode)] = k;
        out(layout.encode(d2)) += u(k, d[static_cast<size_t>(mode)]) * amps(i);
      }
    }
    amps = out;
  }
  MultiSchmidtResult r = multi_schmidt_decompose(PureState(base.parties(), amps));
  REQUIRE(r.decomposable());
  REQUIRE(r.coefficients.size() == 3);
  CHECK(r.coefficients[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(r.coefficients[1] == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(r.coefficients[2] == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("multi schmidt: counterexample state is not decomposable") {
  MultiSchmidtResult r = multi_schmidt_decompose(counterexample_4party());
  CHECK(r.verdict == MultiSchmidtResult::Verdict::NotDecomposable);
}

TEST_CASE("multi schmidt: W state is not decomposable") {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  const double w = 1.0 / std::sqrt(3.0);
  amps(0b001) = w;
  amps(0b010) = w;
  amps(0b100) = w;
  MultiSchmidtResult r = multi_schmidt_decompose(PureState({{"A", 2}, {"B", 2}, {"C", 2}}, amps));
  CHECK(r.verdict == MultiSchmidtResult::Verdict::NotDecomposable);
}

TEST_CASE("multi schmidt: two parties reduce to plain schmidt") {
  MultiSchmidtResult r = multi_schmidt_decompose(two_qubit("A", "B", 0.3, 0.7));
  REQUIRE(r.decomposable());
  CHECK(r.coefficients[0] == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(r.coefficients[1] == doctest::Approx(0.3).epsilon(1e-10));
}
