#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sbpm/experiments.hpp"
#include "sbpm/metrics.hpp"

namespace sbpm {

using json = nlohmann::ordered_json;

json to_json(const MetricResult& m);
json to_json(const PrivacyReport& r);
json to_json(const ExperimentConfig& cfg);
json to_json(const ExperimentReport& r);
json to_json(const CounterexampleSummary& s);

/// Versioned report envelope: command and config echo sufficient to
/// byte-reproduce the results section, which stays free of timing.
inline constexpr const char* kReportFormatVersion = "1";

json make_audit_report(const std::string& command, json config_echo, json results,
                       double timing_seconds);

}  // namespace sbpm
