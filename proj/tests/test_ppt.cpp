#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ghzledger/catalog.hpp"
#include "ghzledger/ppt.hpp"
#include "ghzledger/rng.hpp"
#include "ghzledger/state.hpp"

using namespace ghzledger;

namespace {

DensityOperator bell_diagonal(double lam) {
  Eigen::MatrixXcd a(2, 2);
  a << 0.5, lam - 0.5, lam - 0.5, 0.5;
  return max_correlated(a);
}

DensityOperator random_separable(std::uint64_t seed, int da, int db, int n_terms) {
  Rng rng(seed);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(da * db, da * db);
  std::vector<double> w(static_cast<size_t>(n_terms));
  double z = 0.0;
  for (auto& x : w) {
    x = rng.uniform() + 1e-3;
    z += x;
  }
  for (int t = 0; t < n_terms; ++t) {
    Eigen::VectorXcd x = rng.unit_vector(da);
    Eigen::VectorXcd y = rng.unit_vector(db);
    Eigen::VectorXcd v(da * db);
    for (int i = 0; i < da; ++i) v.segment(i * db, db) = x(i) * y;
    m += (w[static_cast<size_t>(t)] / z) * (v * v.adjoint());
  }
  return DensityOperator({{"A", da}, {"B", db}}, m);
}

}  // namespace

TEST_CASE("partial transpose of a product state transposes the factor") {
  Rng rng(3);
  Eigen::MatrixXcd ga(2, 2), gb(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      ga(i, j) = rng.complex_normal();
      gb(i, j) = rng.complex_normal();
    }
  Eigen::MatrixXcd a = ga * ga.adjoint();
  a /= a.trace().real();
  Eigen::MatrixXcd b = gb * gb.adjoint();
  b /= b.trace().real();
  DensityOperator rho = tensor(DensityOperator({{"A", 2}}, a), DensityOperator({{"B", 2}}, b));

  Eigen::MatrixXcd pt = partial_transpose(rho, PartySubset{"B"});
  Eigen::MatrixXcd expect(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) expect.block(i * 2, j * 2, 2, 2) = a(i, j) * b.transpose();
  CHECK((pt - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("double partial transpose restores the input exactly") {
  DensityOperator rho = random_separable(11, 2, 3, 5);
  DensityOperator once({{"A", 2}, {"B", 3}}, partial_transpose(rho, PartySubset{"B"}) +
                                                  Eigen::MatrixXcd::Zero(6, 6));
  // The operator above may have negative eigenvalues only for entangled
  // inputs; for this separable one it stays a valid state.
  Eigen::MatrixXcd twice = partial_transpose(once, PartySubset{"B"});
  CHECK((twice - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("EPR partial transpose spectrum") {
  DensityOperator rho = to_density(epr());
  Eigen::MatrixXcd pt = partial_transpose(rho, PartySubset{"B"});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(es.eigenvalues()(3) == doctest::Approx(0.5).epsilon(1e-12));

  PptVerdict v = ppt_test(rho, PartySubset{"A"});
  CHECK_FALSE(v.is_ppt);
  CHECK(v.min_pt_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("transposing a subset or its complement gives the same spectrum") {
  DensityOperator rho = partial_trace(counterexample_4party(), PartySubset{"A", "B", "C"});
  Eigen::MatrixXcd pt1 = partial_transpose(rho, PartySubset{"A"});
  Eigen::MatrixXcd pt2 = partial_transpose(rho, PartySubset{"B", "C"});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(pt1, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e2(pt2, Eigen::EigenvaluesOnly);
  CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("maximally mixed and bell-diagonal verdicts") {
  DensityOperator mixed({{"A", 2}, {"B", 2}}, 0.25 * Eigen::MatrixXcd::Identity(4, 4));
  CHECK(ppt_test(mixed, PartySubset{"A"}).is_ppt);

  PptVerdict v = ppt_test(bell_diagonal(0.75), PartySubset{"A"});
  CHECK_FALSE(v.is_ppt);
  CHECK(v.min_pt_eigenvalue == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("separability certification range") {
  DensityOperator mixed({{"A", 2}, {"B", 2}}, 0.25 * Eigen::MatrixXcd::Identity(4, 4));
  CHECK(separable_2x2_or_2x3(mixed, PartySubset{"A"}) == SepVerdict::Separable);
  CHECK(separable_2x2_or_2x3(to_density(epr()), PartySubset{"A"}) == SepVerdict::Entangled);
  CHECK(separable_2x2_or_2x3(random_separable(5, 2, 3, 4), PartySubset{"A"}) ==
        SepVerdict::Separable);

  DensityOperator big({{"A", 4}, {"B", 4}}, Eigen::MatrixXcd::Identity(16, 16) / 16.0);
  CHECK(separable_2x2_or_2x3(big, PartySubset{"A"}) == SepVerdict::Unknown);
}

TEST_CASE("constructed separable mixtures are PPT") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DensityOperator rho = random_separable(1000 + seed, 2, 2, 4);
    PptVerdict v = ppt_test(rho, PartySubset{"A"});
    CHECK(v.is_ppt);
    // Hermiticity of the partial transpose: real spectrum.
    Eigen::MatrixXcd pt = partial_transpose(rho, PartySubset{"B"});
    CHECK((pt - pt.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}
