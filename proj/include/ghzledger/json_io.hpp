#pragma once

#include <nlohmann/json.hpp>

#include "ghzledger/ledger.hpp"
#include "ghzledger/ppt.hpp"
#include "ghzledger/ree.hpp"
#include "ghzledger/state.hpp"

namespace ghzledger {

using ordered_json = nlohmann::ordered_json;

/// Rounds to 12 significant digits; every float placed in a report goes
/// through this so that serialized bytes are reproducible.
double round12(double v);

// State schema (normative for all modules):
//   {"parties": [{"label": "A", "dim": 2}, ...],
//    "amplitudes": [[re, im], ...]}
// with amplitudes in mixed-radix order, first party most significant.
ordered_json state_to_json(const PureState& state);
PureState state_from_json(const nlohmann::json& j);

// Density operators use "matrix" (row-major, entries as [re, im]) instead of
// "amplitudes".
ordered_json density_to_json(const DensityOperator& rho);
DensityOperator density_from_json(const nlohmann::json& j);

bool is_density_json(const nlohmann::json& j);

ordered_json optimizer_report_to_json(const OptimizerReport& r);
ordered_json sandwich_to_json(const SandwichReport& r);
ordered_json ledger_to_json(const EntanglementLedger& l);
ordered_json tripartite_to_json(const TripartiteLedger& l);
ordered_json ppt_verdict_to_json(const PptVerdict& v);
ordered_json additivity_to_json(const AdditivityReport& r);

const char* to_string(LedgerVerdict v);
const char* to_string(BoundDirection d);
const char* to_string(SepVerdict v);

}  // namespace ghzledger
