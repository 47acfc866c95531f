#pragma once

#include <json.hpp>
#include <string>

#include "banachlab/classify.hpp"
#include "banachlab/estimate.hpp"
#include "banachlab/normcore.hpp"
#include "banachlab/verify.hpp"

namespace banachlab {

// Ordered JSON keeps key order stable so identical runs emit identical bytes.
using json = nlohmann::ordered_json;

json to_json(const Witness& w);
json to_json(const ModulusEstimate& e);
json to_json(const ModulusCurve& c);
json to_json(const DualNormEstimate& e);
json to_json(const ClassificationReport& r);
json to_json(const InequalityReport& r);
json to_json(const ReplayReport& r);

std::string curve_csv(const ModulusCurve& c);
std::string replay_csv(const ReplayReport& r);
std::string summary_csv(const std::vector<InequalityReport>& reports);

/// Structural validation against schema/report.json: required keys and types
/// of the report envelope.
bool validate_report_envelope(const json& envelope, std::string* error = nullptr);

json report_envelope(const std::string& command, const json& config, const json& result);

}  // namespace banachlab
