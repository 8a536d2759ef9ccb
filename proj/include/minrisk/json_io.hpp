#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "minrisk/bounds.hpp"
#include "minrisk/capacity.hpp"
#include "minrisk/core.hpp"
#include "minrisk/experiment.hpp"
#include "minrisk/learning.hpp"
#include "minrisk/mechanism.hpp"

namespace minrisk::io {

using nlohmann::json;

// Malformed or unreadable inputs raise Error{parse_error}.
json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

json to_json(const Mechanism& mech);
Mechanism mechanism_from_json(const json& j);

json to_json(const Repertoire& F);
Repertoire repertoire_from_json(const json& j);

json to_json(const MinRiskHistogram& h);
MinRiskHistogram histogram_from_json(const json& j);

json to_json(const CapacityReport& report);
json to_json(const BoundReport& report);

json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const json& j);

json to_json(const CoverageSummary& summary);

// One row per trial: seed, emp_k, emp_l, true_risk, the four bound totals,
// the four held flags, distinct. Inapplicable bounds print "na".
std::string trial_log_csv(const std::vector<TrialRecord>& records);

std::string plot_csv(const std::vector<PlotPoint>& series);

}  // namespace minrisk::io
