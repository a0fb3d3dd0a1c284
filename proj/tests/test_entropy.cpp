#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ghzledger/catalog.hpp"
#include "ghzledger/entropy.hpp"
#include "ghzledger/rng.hpp"
#include "ghzledger/state.hpp"

using namespace ghzledger;

namespace {

DensityOperator random_density(int dim, std::uint64_t seed, const std::string& label = "A") {
  Rng rng(seed);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  Eigen::MatrixXcd m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator({{label, dim}}, m);
}

}  // namespace

TEST_CASE("von neumann entropy basics") {
  DensityOperator mixed({{"A", 2}}, 0.5 * Eigen::MatrixXcd::Identity(2, 2));
  CHECK(von_neumann(mixed).bits == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(2, 2);
  proj(0, 0) = 1.0;
  CHECK(von_neumann(DensityOperator({{"A", 2}}, proj)).bits == doctest::Approx(0.0).epsilon(1e-14));

  DensityOperator rho_ab = partial_trace(counterexample_4party(), PartySubset{"A", "B"});
  CHECK(von_neumann(rho_ab).bits == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(von_neumann(rho_ab).source == "AB");
}

TEST_CASE("density operator invariants are enforced") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 1) = 0.5;  // not Hermitian
  bad(0, 0) = 1.0;
  CHECK_THROWS_AS(DensityOperator({{"A", 2}}, bad), std::invalid_argument);

  Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;  // negative eigenvalue
  CHECK_THROWS_AS(DensityOperator({{"A", 2}}, neg), std::invalid_argument);

  CHECK_THROWS_AS(DensityOperator({{"A", 2}}, Eigen::MatrixXcd::Identity(2, 2)),
                  std::invalid_argument);  // trace 2
}

TEST_CASE("shannon entropy") {
  CHECK(shannon(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(shannon(std::vector<double>{1.0}) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(shannon(std::vector<double>{0.3, 0.7}) ==
        doctest::Approx(0.8812908992306927).epsilon(1e-13));
  CHECK_THROWS_AS(shannon(std::vector<double>{-0.1, 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(shannon(std::vector<double>{0.5, 0.4}), std::invalid_argument);
}

TEST_CASE("relative entropy") {
  DensityOperator rho = random_density(3, 7);
  CHECK(*relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-9));

  Eigen::MatrixXcd proj0 = Eigen::MatrixXcd::Zero(2, 2);
  proj0(0, 0) = 1.0;
  DensityOperator pure0({{"A", 2}}, proj0);
  DensityOperator mixed({{"A", 2}}, 0.5 * Eigen::MatrixXcd::Identity(2, 2));
  CHECK(*relative_entropy(pure0, mixed) == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXcd proj1 = Eigen::MatrixXcd::Zero(2, 2);
  proj1(1, 1) = 1.0;
  DensityOperator pure1({{"A", 2}}, proj1);
  CHECK_FALSE(relative_entropy(pure0, pure1).has_value());

  CHECK_THROWS_AS(relative_entropy(pure0, random_density(3, 1)), precondition_error);
}

TEST_CASE("relative entropy is nonnegative and zero only at equality") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DensityOperator rho = random_density(3, 100 + seed);
    DensityOperator sigma = random_density(3, 200 + seed);
    const auto v = relative_entropy(rho, sigma);
    REQUIRE(v.has_value());
    CHECK(*v >= -1e-9);
    CHECK(*v > 1e-4);  // random pairs are far apart
  }
}

TEST_CASE("entropy additivity under tensor products") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    DensityOperator a = random_density(2, 300 + seed, "A");
    DensityOperator b = random_density(3, 400 + seed, "B");
    DensityOperator ab = tensor(a, b);
    CHECK(std::abs(von_neumann(ab).bits - von_neumann(a).bits - von_neumann(b).bits) < 1e-9);
  }
}

TEST_CASE("entropy is unitarily invariant") {
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    DensityOperator rho = random_density(4, 500 + seed);
    Eigen::MatrixXcd u = rng.haar_unitary(4);
    DensityOperator conj({{"A", 4}}, u * rho.matrix() * u.adjoint());
    CHECK(std::abs(von_neumann(rho).bits - von_neumann(conj).bits) < 1e-9);
  }
}

TEST_CASE("shannon of the spectrum equals von neumann") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    DensityOperator rho = random_density(5, 600 + seed);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix(), Eigen::EigenvaluesOnly);
    std::vector<double> p;
    for (int i = 0; i < 5; ++i) p.push_back(std::max(es.eigenvalues()(i), 0.0));
    CHECK(std::abs(shannon(p) - von_neumann(rho).bits) < 1e-9);
  }
}
