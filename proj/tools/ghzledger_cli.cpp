// ghzledger: entropy accounting and relative-entropy entanglement bounds for
// small multipartite states. Subcommands read a state (inline JSON, file, or
// catalog reference) and emit one deterministic JSON report on stdout.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ghzledger/catalog.hpp"
#include "ghzledger/entropy.hpp"
#include "ghzledger/json_io.hpp"
#include "ghzledger/ledger.hpp"
#include "ghzledger/ppt.hpp"
#include "ghzledger/ree.hpp"

namespace gl = ghzledger;
using gl::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInconclusive = 4;

struct StateSource {
  std::string state;    // inline JSON or file path
  std::string catalog;  // catalog entry name
  std::string params = "{}";

  bool present() const { return !state.empty() || !catalog.empty(); }

  nlohmann::json load_json() const {
    if (!state.empty()) {
      std::string text = state;
      // Anything that does not parse as JSON is treated as a file path.
      if (state.find('{') == std::string::npos) {
        std::ifstream in(state);
        if (!in) throw std::invalid_argument("cannot open state file: " + state);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
      }
      return nlohmann::json::parse(text);
    }
    return nlohmann::json();
  }

  ordered_json echo() const {
    if (!catalog.empty())
      return ordered_json{{"catalog", catalog}, {"params", nlohmann::json::parse(params)}};
    return ordered_json{{"state", load_json()}};
  }
};

gl::PureState load_pure(const StateSource& src) {
  if (!src.catalog.empty())
    return gl::build_from_catalog(src.catalog, nlohmann::json::parse(src.params));
  nlohmann::json j = src.load_json();
  if (gl::is_density_json(j))
    throw std::invalid_argument("this command needs a pure state, got a density operator");
  return gl::state_from_json(j);
}

// Pure states are accepted wherever a density operator is.
gl::DensityOperator load_density(const StateSource& src) {
  if (src.catalog.empty()) {
    nlohmann::json j = src.load_json();
    if (gl::is_density_json(j)) return gl::density_from_json(j);
  }
  return gl::to_density(load_pure(src));
}

std::vector<std::string> parse_label_group(const std::string& group) {
  std::vector<std::string> labels;
  if (group.find(',') != std::string::npos) {
    std::stringstream ss(group);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) labels.push_back(tok);
  } else {
    for (char c : group) labels.emplace_back(1, c);
  }
  return labels;
}

// "AB|CD" or "A,B|C,D"; the right side, when given, must be exactly the
// complement of the left side.
gl::PartySubset parse_cut(const std::string& cut, const std::vector<gl::Party>& parties) {
  const auto bar = cut.find('|');
  gl::PartySubset subset{parse_label_group(bar == std::string::npos ? cut : cut.substr(0, bar))};
  if (subset.labels.empty()) throw std::invalid_argument("empty cut specification");
  if (bar != std::string::npos) {
    std::vector<std::string> right = parse_label_group(cut.substr(bar + 1));
    std::vector<std::string> complement;
    for (const auto& p : parties)
      if (!subset.contains(p.label)) complement.push_back(p.label);
    std::sort(right.begin(), right.end());
    std::sort(complement.begin(), complement.end());
    if (right != complement)
      throw gl::precondition_error("cut right side does not match the complement of the left");
  }
  return subset;
}

struct CommonOpts {
  StateSource source;
  std::string cut;
  std::string out;
  double tol = 1e-6;
  double lp_tol = 1e-7;
  int max_iter = 2000;
  int restarts = 16;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int dim_cap = 64;
  bool timings = false;

  gl::ReeOptions ree() const {
    gl::ReeOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    o.restarts = restarts;
    o.seed = effective_seed();
    o.dim_cap = dim_cap;
    return o;
  }

  std::uint64_t effective_seed() const {
    if (seed_given) return seed;  // flag wins over the environment
    if (const char* env = std::getenv("GHZLEDGER_SEED")) return std::strtoull(env, nullptr, 10);
    return seed;
  }

  ordered_json options_echo() const {
    return ordered_json{{"tol", gl::round12(tol)},      {"lp_tol", gl::round12(lp_tol)},
                        {"max_iter", max_iter},          {"restarts", restarts},
                        {"seed", effective_seed()},      {"dim_cap", dim_cap}};
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_cut) {
  cmd->add_option("--state", o.source.state, "state as inline JSON or a file path");
  cmd->add_option("--catalog", o.source.catalog, "catalog entry name");
  cmd->add_option("--params", o.source.params, "catalog parameters (JSON object)");
  if (with_cut) cmd->add_option("--cut", o.cut, "bipartition, e.g. AB|CD or A,B|C,D");
  cmd->add_option("--tol", o.tol, "optimizer stopping tolerance");
  cmd->add_option("--lp-tol", o.lp_tol, "LP equality residual tolerance");
  cmd->add_option("--max-iter", o.max_iter, "optimizer iteration cap");
  cmd->add_option("--restarts", o.restarts, "product-oracle random restarts");
  cmd->add_option("--seed", o.seed, "RNG seed (overrides GHZLEDGER_SEED)")
      ->each([&o](const std::string&) { o.seed_given = true; });
  cmd->add_option("--dim-cap", o.dim_cap, "total-dimension refusal threshold");
  cmd->add_option("--out", o.out, "also write the report bytes to this file");
  cmd->add_flag("--timings", o.timings, "include wall-clock timings (non-deterministic)");
}

void emit(const CommonOpts& o, ordered_json report) {
  const std::string bytes = report.dump(2) + "\n";
  std::cout << bytes;
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    f << bytes;
  }
}

ordered_json report_shell(const std::string& command, const CommonOpts& o) {
  ordered_json req;
  req["command"] = command;
  if (o.source.present()) req["source"] = o.source.echo();
  if (!o.cut.empty()) req["cut"] = o.cut;
  req["options"] = o.options_echo();
  return ordered_json{{"version", kVersion},
                      {"request", req},
                      {"results", ordered_json::array()},
                      {"timings", ordered_json::object()}};
}

// Nontrivial subsets deduplicated by purity duality: take |X| < n/2, plus the
// canonical half containing the first party when n is even.
std::vector<std::vector<int>> dedup_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask + 1 < (1 << n); ++mask) {
    const int size = __builtin_popcount(static_cast<unsigned>(mask));
    if (2 * size > n) continue;
    if (2 * size == n && !(mask & 1)) continue;
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) subset.push_back(i);
    out.push_back(subset);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

int run_entropies(const CommonOpts& o, ordered_json& report) {
  gl::PureState state = load_pure(o.source);
  for (const auto& subset : dedup_subsets(state.num_parties())) {
    gl::PartySubset ps;
    std::string name;
    for (int m : subset) {
      ps.labels.push_back(state.parties()[static_cast<size_t>(m)].label);
      name += state.parties()[static_cast<size_t>(m)].label;
    }
    const gl::EntropyValue s = gl::von_neumann(gl::partial_trace(state, ps));
    report["results"].push_back(ordered_json{{"subset", name}, {"bits", gl::round12(s.bits)}});
  }
  return kExitOk;
}

int run_ledger4(const CommonOpts& o, ordered_json& report) {
  gl::PureState state = load_pure(o.source);
  if (state.num_parties() != 4)
    throw gl::precondition_error("ledger4 needs a 4-party pure state");
  report["results"].push_back(gl::ledger_to_json(gl::ghz_reducibility_certificate(state, o.lp_tol)));
  return kExitOk;
}

int run_ledger3(const CommonOpts& o, ordered_json& report) {
  gl::PureState state = load_pure(o.source);
  if (state.num_parties() != 3)
    throw gl::precondition_error("ledger3 needs a 3-party pure state");
  gl::TripartiteLedger led = gl::three_party_ledger(state, o.ree());
  report["results"].push_back(gl::tripartite_to_json(led));
  return led.inconclusive ? kExitInconclusive : kExitOk;
}

int run_ree(const CommonOpts& o, ordered_json& report) {
  if (o.cut.empty()) throw gl::precondition_error("ree needs --cut");
  gl::DensityOperator rho = load_density(o.source);
  gl::SandwichReport s = gl::ree_sandwich(rho, parse_cut(o.cut, rho.parties()), o.ree());
  report["results"].push_back(gl::sandwich_to_json(s));
  return s.exact() ? kExitOk : kExitInconclusive;
}

int run_rains(const CommonOpts& o, ordered_json& report) {
  if (o.cut.empty()) throw gl::precondition_error("rains needs --cut");
  gl::DensityOperator rho = load_density(o.source);
  gl::OptimizerReport r = gl::rains_bound(rho, parse_cut(o.cut, rho.parties()), o.ree());
  report["results"].push_back(gl::optimizer_report_to_json(r));
  return r.converged ? kExitOk : kExitInconclusive;
}

int run_ppt(const CommonOpts& o, ordered_json& report) {
  if (o.cut.empty()) throw gl::precondition_error("ppt needs --cut");
  gl::DensityOperator rho = load_density(o.source);
  const gl::PartySubset cut = parse_cut(o.cut, rho.parties());
  ordered_json j = gl::ppt_verdict_to_json(gl::ppt_test(rho, cut));
  j["separable_2x2_or_2x3"] = gl::to_string(gl::separable_2x2_or_2x3(rho, cut));
  report["results"].push_back(j);
  return kExitOk;
}

int run_additivity(const CommonOpts& o, const StateSource& second, ordered_json& report) {
  gl::DensityOperator rho12 = load_density(o.source);
  gl::DensityOperator rho34 = load_density(second);
  gl::AdditivityReport r = gl::additivity_gap(rho12, rho34, o.ree());
  report["results"].push_back(gl::additivity_to_json(r));
  return r.certified ? kExitOk : kExitInconclusive;
}

int run_catalog(const CommonOpts& o, ordered_json& report) {
  if (!o.source.catalog.empty()) {
    gl::PureState state =
        gl::build_from_catalog(o.source.catalog, nlohmann::json::parse(o.source.params));
    report["results"].push_back(
        ordered_json{{"name", o.source.catalog}, {"state", gl::state_to_json(state)}});
    return kExitOk;
  }
  for (const auto& e : gl::catalog_entries())
    report["results"].push_back(ordered_json{
        {"name", e.name}, {"description", e.description}, {"params", e.params_schema}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GHZ-reducibility entropy accounting and relative-entropy bounds"};
  app.require_subcommand(1);

  CommonOpts o;
  StateSource second;

  auto* entropies = app.add_subcommand("entropies", "all marginal entropies (purity-deduplicated)");
  add_common(entropies, o, false);
  auto* ledger4 = app.add_subcommand("ledger4", "4-party GHZ-reducibility certificate");
  add_common(ledger4, o, false);
  auto* ledger3 = app.add_subcommand("ledger3", "3-party relative-entropy ledger");
  add_common(ledger3, o, false);
  auto* ree = app.add_subcommand("ree", "relative entropy of entanglement (sandwich bounds)");
  add_common(ree, o, true);
  auto* rains = app.add_subcommand("rains", "Rains bound over PPT states");
  add_common(rains, o, true);
  auto* ppt = app.add_subcommand("ppt", "partial-transpose test across a cut");
  add_common(ppt, o, true);
  auto* additivity = app.add_subcommand("additivity", "additivity gap of two uncorrelated states");
  add_common(additivity, o, false);
  additivity->add_option("--state2", second.state, "second state (inline JSON or file)");
  additivity->add_option("--catalog2", second.catalog, "second state catalog name");
  additivity->add_option("--params2", second.params, "second state catalog parameters");
  auto* catalog = app.add_subcommand("catalog", "list catalog entries or emit one state");
  add_common(catalog, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitMalformed;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    ordered_json report;
    int code = kExitOk;
    if (entropies->parsed()) {
      report = report_shell("entropies", o);
      code = run_entropies(o, report);
    } else if (ledger4->parsed()) {
      report = report_shell("ledger4", o);
      code = run_ledger4(o, report);
    } else if (ledger3->parsed()) {
      report = report_shell("ledger3", o);
      code = run_ledger3(o, report);
    } else if (ree->parsed()) {
      report = report_shell("ree", o);
      code = run_ree(o, report);
    } else if (rains->parsed()) {
      report = report_shell("rains", o);
      code = run_rains(o, report);
    } else if (ppt->parsed()) {
      report = report_shell("ppt", o);
      code = run_ppt(o, report);
    } else if (additivity->parsed()) {
      report = report_shell("additivity", o);
      if (second.present()) report["request"]["source2"] = second.echo();
      code = run_additivity(o, second, report);
    } else if (catalog->parsed()) {
      report = report_shell("catalog", o);
      code = run_catalog(o, report);
    }
    if (o.timings) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      report["timings"] = ordered_json{{"total_ms", ms}};
    }
    emit(o, std::move(report));
    return code;
  } catch (const gl::precondition_error& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
}
