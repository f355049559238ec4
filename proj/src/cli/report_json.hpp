// report_json.hpp
//
// JSON form of test reports, support estimates and test configurations.
// Doubles are written with round-trip precision, so parsing an emitted
// document gives back an equal object.

#ifndef TAILDEP_CLI_REPORT_JSON_HPP
#define TAILDEP_CLI_REPORT_JSON_HPP

#include "json.hpp"
#include "taildep/boot_tests.hpp"
#include "taildep/support_fit.hpp"

namespace taildep::cli {

inline constexpr int kSchemaVersion = 1;

nlohmann::json report_to_json(const boot::TestReport& rep);
boot::TestReport report_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const boot::TestConfig& cfg);
boot::TestConfig config_from_json(const nlohmann::json& j);

/// The trace is included only when with_trace is set.
nlohmann::json support_to_json(const SupportEstimate& est, bool with_trace);
SupportEstimate support_from_json(const nlohmann::json& j);

}  // namespace taildep::cli

#endif  // TAILDEP_CLI_REPORT_JSON_HPP
