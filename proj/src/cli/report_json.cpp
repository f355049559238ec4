#include "cli/report_json.hpp"

namespace taildep::cli {

using nlohmann::json;

namespace {

json threshold_to_json(const boot::Threshold& t) {
    if (const auto* iv = std::get_if<boot::Interval>(&t)) return json{{"lo", iv->lo}, {"hi", iv->hi}};
    return std::get<double>(t);
}

boot::Threshold threshold_from_json(const json& j) {
    if (j.is_object()) return boot::Interval{j.at("lo").get<double>(), j.at("hi").get<double>()};
    return j.get<double>();
}

}  // namespace

json report_to_json(const boot::TestReport& rep) {
    json j;
    j["test_id"] = boot::to_string(rep.test_id);
    j["verdict"] = boot::to_string(rep.verdict);
    j["statistic"] = rep.statistic;
    j["threshold"] = threshold_to_json(rep.threshold);
    j["auxiliary"] = rep.auxiliary;
    if (rep.proportion_verdict) j["proportion_verdict"] = boot::to_string(*rep.proportion_verdict);
    j["redraws"] = rep.redraws;
    j["per_resample"] = rep.per_resample;
    if (!rep.per_resample_masked.empty()) j["per_resample_masked"] = rep.per_resample_masked;
    return j;
}

boot::TestReport report_from_json(const json& j) {
    boot::TestReport rep;
    rep.test_id = boot::parse_test_id(j.at("test_id").get<std::string>());
    rep.verdict = boot::parse_verdict(j.at("verdict").get<std::string>());
    rep.statistic = j.at("statistic").get<double>();
    rep.threshold = threshold_from_json(j.at("threshold"));
    rep.auxiliary = j.at("auxiliary").get<std::map<std::string, double>>();
    if (j.contains("proportion_verdict")) {
        rep.proportion_verdict = boot::parse_verdict(j.at("proportion_verdict").get<std::string>());
    }
    rep.redraws = j.at("redraws").get<std::size_t>();
    rep.per_resample = j.at("per_resample").get<std::vector<double>>();
    if (j.contains("per_resample_masked")) {
        rep.per_resample_masked = j.at("per_resample_masked").get<std::vector<double>>();
    }
    return rep;
}

json config_to_json(const boot::TestConfig& cfg) {
    return json{{"k_n", cfg.k_n},       {"m_n", cfg.m_n},     {"k_mn", cfg.k_mn},
                {"B", cfg.B},           {"lambda", cfg.lambda}, {"alpha_sig", cfg.alpha_sig},
                {"seed", cfg.seed}};
}

// threads is a runtime knob, not part of the result, so it is not serialized.
boot::TestConfig config_from_json(const json& j) {
    boot::TestConfig cfg;
    cfg.k_n = j.at("k_n").get<std::size_t>();
    cfg.m_n = j.at("m_n").get<std::size_t>();
    cfg.k_mn = j.at("k_mn").get<std::size_t>();
    cfg.B = j.at("B").get<std::size_t>();
    cfg.lambda = j.at("lambda").get<double>();
    cfg.alpha_sig = j.at("alpha_sig").get<double>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

json support_to_json(const SupportEstimate& est, bool with_trace) {
    json j{{"a_hat", est.a_hat}, {"b_hat", est.b_hat}, {"objective_value", est.objective_value}};
    if (with_trace) {
        json trace = json::array();
        for (const auto& e : est.trace) trace.push_back(json::array({e.a, e.b, e.value}));
        j["trace"] = std::move(trace);
    }
    return j;
}

SupportEstimate support_from_json(const json& j) {
    SupportEstimate est;
    est.a_hat = j.at("a_hat").get<double>();
    est.b_hat = j.at("b_hat").get<double>();
    est.objective_value = j.at("objective_value").get<double>();
    if (j.contains("trace")) {
        for (const auto& e : j.at("trace")) {
            est.trace.push_back({e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()});
        }
    }
    return est;
}

}  // namespace taildep::cli
