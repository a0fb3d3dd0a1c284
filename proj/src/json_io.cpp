#include "ghzledger/json_io.hpp"

#include <cstdio>
#include <cstdlib>

namespace ghzledger {

double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

namespace {

ordered_json complex_to_json(const std::complex<double>& c) {
  return ordered_json::array({round12(c.real()), round12(c.imag())});
}

std::complex<double> complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Party> parties_from_json(const nlohmann::json& j) {
  if (!j.contains("parties") || !j["parties"].is_array() || j["parties"].empty())
    throw std::invalid_argument("state JSON needs a nonempty 'parties' array");
  std::vector<Party> parties;
  for (const auto& p : j["parties"])
    parties.push_back({p.at("label").get<std::string>(), p.at("dim").get<int>()});
  return parties;
}

ordered_json parties_to_json(const std::vector<Party>& parties) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : parties) arr.push_back({{"label", p.label}, {"dim", p.dim}});
  return arr;
}

}  // namespace

ordered_json state_to_json(const PureState& state) {
  ordered_json j;
  j["parties"] = parties_to_json(state.parties());
  ordered_json amps = ordered_json::array();
  for (int i = 0; i < state.dim(); ++i) amps.push_back(complex_to_json(state.amplitudes()(i)));
  j["amplitudes"] = amps;
  return j;
}

PureState state_from_json(const nlohmann::json& j) {
  auto parties = parties_from_json(j);
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array())
    throw std::invalid_argument("state JSON needs an 'amplitudes' array");
  Eigen::VectorXcd amps(j["amplitudes"].size());
  Eigen::Index i = 0;
  for (const auto& a : j["amplitudes"]) amps(i++) = complex_from_json(a);
  return PureState(std::move(parties), std::move(amps));
}

ordered_json density_to_json(const DensityOperator& rho) {
  ordered_json j;
  j["parties"] = parties_to_json(rho.parties());
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < rho.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < rho.dim(); ++c) row.push_back(complex_to_json(rho.matrix()(r, c)));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

DensityOperator density_from_json(const nlohmann::json& j) {
  auto parties = parties_from_json(j);
  if (!j.contains("matrix") || !j["matrix"].is_array())
    throw std::invalid_argument("density JSON needs a 'matrix' array");
  const auto& rows = j["matrix"];
  const Eigen::Index d = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    if (!rows[static_cast<size_t>(r)].is_array() ||
        static_cast<Eigen::Index>(rows[static_cast<size_t>(r)].size()) != d)
      throw std::invalid_argument("density JSON 'matrix' must be square");
    for (Eigen::Index c = 0; c < d; ++c)
      m(r, c) = complex_from_json(rows[static_cast<size_t>(r)][static_cast<size_t>(c)]);
  }
  return DensityOperator(std::move(parties), std::move(m));
}

bool is_density_json(const nlohmann::json& j) { return j.contains("matrix"); }

const char* to_string(LedgerVerdict v) {
  switch (v) {
    case LedgerVerdict::ViolatesE4: return "ViolatesE4";
    case LedgerVerdict::LPInfeasible: return "LPInfeasible";
    case LedgerVerdict::NecessaryConditionsPass: return "NecessaryConditionsPass";
  }
  return "?";
}

const char* to_string(BoundDirection d) {
  switch (d) {
    case BoundDirection::UpperBound: return "upper-bound";
    case BoundDirection::LowerBound: return "lower-bound";
    case BoundDirection::Exact: return "exact";
  }
  return "?";
}

const char* to_string(SepVerdict v) {
  switch (v) {
    case SepVerdict::Separable: return "separable";
    case SepVerdict::Entangled: return "entangled";
    case SepVerdict::Unknown: return "unknown";
  }
  return "?";
}

ordered_json optimizer_report_to_json(const OptimizerReport& r) {
  return ordered_json{{"value", round12(r.value)},
                      {"direction", to_string(r.direction)},
                      {"iterations", r.iterations},
                      {"gap", round12(r.gap)},
                      {"converged", r.converged}};
}

ordered_json sandwich_to_json(const SandwichReport& r) {
  return ordered_json{{"value", round12(r.value)},
                      {"direction", to_string(r.direction)},
                      {"upper", optimizer_report_to_json(r.upper)},
                      {"lower", optimizer_report_to_json(r.lower)},
                      {"width", round12(r.width())}};
}

ordered_json ledger_to_json(const EntanglementLedger& l) {
  ordered_json j;
  ordered_json one = ordered_json::object(), two = ordered_json::object();
  for (const auto& [k, v] : l.one_party) one[k] = round12(v);
  for (const auto& [k, v] : l.two_party) two[k] = round12(v);
  j["one_party_entropies"] = one;
  j["two_party_entropies"] = two;
  j["e4"] = round12(l.e4);
  j["lp_feasible"] = l.lp_feasible;
  if (l.lp_feasible) {
    ordered_json w = ordered_json::object();
    for (int i = 0; i < 11; ++i) w[l.variable_names[static_cast<size_t>(i)]] = round12(l.lp_witness(i));
    j["lp_witness"] = w;
    j["e2_total"] = round12(l.e2_total);
    j["e3_total"] = round12(l.e3_total);
    j["eq_c_residual"] = round12(l.eq_c_residual);
    j["eq_d_residual"] = round12(l.eq_d_residual);
  } else if (l.lp_dual.size() > 0) {
    ordered_json d = ordered_json::array();
    for (int i = 0; i < l.lp_dual.size(); ++i) d.push_back(round12(l.lp_dual(i)));
    j["lp_infeasibility_certificate"] = d;
  }
  j["verdict"] = to_string(l.verdict);
  return j;
}

ordered_json tripartite_to_json(const TripartiteLedger& l) {
  ordered_json j;
  ordered_json one = ordered_json::object();
  for (const auto& [k, v] : l.one_party) one[k] = round12(v);
  j["one_party_entropies"] = one;
  j["e_r"] = ordered_json{{"AB", sandwich_to_json(l.er_ab)},
                          {"AC", sandwich_to_json(l.er_ac)},
                          {"BC", sandwich_to_json(l.er_bc)}};
  j["e3_candidates"] = ordered_json::array(
      {round12(l.e3_candidates[0]), round12(l.e3_candidates[1]), round12(l.e3_candidates[2])});
  j["slacks"] = ordered_json::array(
      {round12(l.slacks[0]), round12(l.slacks[1]), round12(l.slacks[2])});
  j["eq_f_values"] = ordered_json::array(
      {round12(l.eq_f_values[0]), round12(l.eq_f_values[1]), round12(l.eq_f_values[2])});
  j["spread"] = round12(l.spread);
  j["inconclusive"] = l.inconclusive;
  return j;
}

ordered_json ppt_verdict_to_json(const PptVerdict& v) {
  std::string subset;
  for (const auto& l : v.transposed_subset.labels) subset += l;
  return ordered_json{{"min_pt_eigenvalue", round12(v.min_pt_eigenvalue)},
                      {"is_ppt", v.is_ppt},
                      {"transposed_subset", subset}};
}

ordered_json additivity_to_json(const AdditivityReport& r) {
  return ordered_json{{"gap", round12(r.gap)},
                      {"certified", r.certified},
                      {"joint", sandwich_to_json(r.joint)},
                      {"left", sandwich_to_json(r.left)},
                      {"right", sandwich_to_json(r.right)}};
}

}  // namespace ghzledger
