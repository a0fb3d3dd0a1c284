#include "ghzledger/catalog.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "ghzledger/rng.hpp"

namespace ghzledger {

namespace {

std::string party_label(int i) {
  std::string l(1, static_cast<char>('A' + i % 26));
  if (i >= 26) l += std::to_string(i / 26);
  return l;
}

std::vector<Party> qubit_parties(int n) {
  std::vector<Party> ps;
  for (int i = 0; i < n; ++i) ps.push_back({party_label(i), 2});
  return ps;
}

}  // namespace

PureState ghz(int n) {
  if (n < 2) throw precondition_error("ghz: need n >= 2 parties");
  const int total = 1 << n;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(total);
  const double w = 1.0 / std::sqrt(2.0);
  amps(0) = w;
  amps(total - 1) = w;
  return PureState(qubit_parties(n), std::move(amps));
}

PureState epr() { return ghz(2); }

PureState counterexample_4party() {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(16);
  amps(0b0000) = 0.5;
  amps(0b0110) = 0.5;
  amps(0b1001) = 0.5;
  amps(0b1111) = -0.5;
  return PureState(qubit_parties(4), std::move(amps));
}

PureState schmidt_state(std::span<const double> p, int n_parties) {
  if (n_parties < 1) throw precondition_error("schmidt_state: need at least one party");
  double sum = 0.0;
  for (double x : p) {
    if (x < 0.0) throw std::invalid_argument("schmidt_state: negative probability");
    sum += x;
  }
  if (p.empty() || std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("schmidt_state: probabilities must sum to 1");

  const int d = static_cast<int>(p.size());
  std::vector<Party> parties;
  for (int i = 0; i < n_parties; ++i) parties.push_back({party_label(i), d});
  ModeLayout layout(std::vector<int>(static_cast<size_t>(n_parties), d));
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(layout.total());
  std::vector<int> digits(static_cast<size_t>(n_parties));
  for (int i = 0; i < d; ++i) {
    std::fill(digits.begin(), digits.end(), i);
    amps(layout.encode(digits)) = std::sqrt(p[static_cast<size_t>(i)]);
  }
  return PureState(std::move(parties), std::move(amps));
}

DensityOperator max_correlated(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw std::invalid_argument("max_correlated: coefficient matrix must be square");
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("max_correlated: coefficient matrix must be Hermitian");
  const int d = static_cast<int>(a.rows());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i * d + i, j * d + j) = a(i, j);
  return DensityOperator({{"A", d}, {"B", d}}, std::move(m));
}

PureState appendix_b_state(std::span<const double> p, const Eigen::MatrixXcd& gram) {
  const int k = static_cast<int>(p.size());
  if (gram.rows() != k || gram.cols() != k)
    throw std::invalid_argument("appendix_b_state: Gram matrix shape mismatch");
  for (int i = 0; i < k; ++i)
    if (std::abs(gram(i, i).real() - 1.0) > 1e-10 || std::abs(gram(i, i).imag()) > 1e-10)
      throw std::invalid_argument("appendix_b_state: Gram diagonal must be 1");

  // Realize vectors with <psi_i|psi_j> = G_ij via the PSD square root.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (gram + gram.adjoint()));
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("appendix_b_state: Gram matrix is not PSD");
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXcd v = lam.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  // Column i of v is |psi_i>: v^dagger v = G.

  std::vector<Party> parties = {{"A", k}, {"B", k}, {"C", k}};
  ModeLayout layout({k, k, k});
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(layout.total());
  for (int i = 0; i < k; ++i) {
    const double w = std::sqrt(p[static_cast<size_t>(i)]);
    for (int b = 0; b < k; ++b) {
      const int digits[3] = {i, b, i};
      amps(layout.encode(digits)) += w * v(b, i);
    }
  }
  return PureState(std::move(parties), std::move(amps));
}

PureState haar_random_state(const std::vector<Party>& parties, std::uint64_t seed) {
  ModeLayout layout([&] {
    std::vector<int> dims;
    for (const auto& p : parties) dims.push_back(p.dim);
    return dims;
  }());
  Rng rng(seed);
  return PureState(parties, rng.unit_vector(layout.total()));
}

namespace {

std::vector<double> json_prob_vector(const nlohmann::json& params) {
  if (!params.contains("p")) throw std::invalid_argument("catalog: missing parameter 'p'");
  return params.at("p").get<std::vector<double>>();
}

const std::vector<CatalogEntry> kEntries = {
    {"ghz", "n-party GHZ state (|0...0> + |1...1>)/sqrt(2)", "{\"n\": int >= 2}",
     [](const nlohmann::json& params) { return ghz(params.value("n", 3)); }},
    {"epr", "two-party EPR pair", "{}",
     [](const nlohmann::json&) { return epr(); }},
    {"counterexample4", "the 4-party state (|0000>+|0110>+|1001>-|1111>)/2", "{}",
     [](const nlohmann::json&) { return counterexample_4party(); }},
    {"schmidt", "sum_i sqrt(p_i)|i i ... i> over n parties",
     "{\"p\": [prob...], \"n\": int >= 1}",
     [](const nlohmann::json& params) {
       return schmidt_state(json_prob_vector(params), params.value("n", 3));
     }},
    {"appendix_b", "sum_i sqrt(p_i)|i^A psi_i^B i^C> with prescribed B overlaps",
     "{\"p\": [prob...], \"overlap\": real (2x2 case) | \"gram\": [[..]]}",
     [](const nlohmann::json& params) {
       std::vector<double> p = json_prob_vector(params);
       const int k = static_cast<int>(p.size());
       Eigen::MatrixXcd gram = Eigen::MatrixXcd::Identity(k, k);
       if (params.contains("overlap")) {
         if (k != 2) throw std::invalid_argument("catalog: 'overlap' needs |p| = 2");
         const double ov = params.at("overlap").get<double>();
         gram(0, 1) = ov;
         gram(1, 0) = ov;
       } else if (params.contains("gram")) {
         const auto g = params.at("gram").get<std::vector<std::vector<double>>>();
         for (int i = 0; i < k; ++i)
           for (int j = 0; j < k; ++j) gram(i, j) = g.at(static_cast<size_t>(i)).at(static_cast<size_t>(j));
       }
       return appendix_b_state(p, gram);
     }},
    {"product", "computational basis state over given party dims",
     "{\"dims\": [int...], \"index\": int (default 0)}",
     [](const nlohmann::json& params) {
       const auto dims = params.at("dims").get<std::vector<int>>();
       std::vector<Party> parties;
       for (size_t i = 0; i < dims.size(); ++i)
         parties.push_back({party_label(static_cast<int>(i)), dims[i]});
       ModeLayout layout(dims);
       Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(layout.total());
       amps(params.value("index", 0)) = 1.0;
       return PureState(std::move(parties), std::move(amps));
     }},
    {"haar_random", "seeded Haar-random pure state (test utility)",
     "{\"dims\": [int...], \"seed\": int}",
     [](const nlohmann::json& params) {
       const auto dims = params.at("dims").get<std::vector<int>>();
       std::vector<Party> parties;
       for (size_t i = 0; i < dims.size(); ++i)
         parties.push_back({party_label(static_cast<int>(i)), dims[i]});
       return haar_random_state(parties, params.value("seed", 0ULL));
     }},
};

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() { return kEntries; }

PureState build_from_catalog(const std::string& name, const nlohmann::json& params) {
  for (const auto& e : kEntries)
    if (e.name == name) return e.build(params);
  throw std::invalid_argument("catalog: unknown entry '" + name + "'");
}

}  // namespace ghzledger
