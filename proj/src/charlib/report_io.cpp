#include "../core/json_util.hpp"
#include "eosb/charlib.hpp"

namespace eosb {

std::string descriptor_report_json(const DescriptorReport& r) {
  nlohmann::json j = {
      {"schema_version", kSchemaVersion},
      {"type", "descriptor_report"},
      {"id", r.id},
      {"level", r.level == DescriptorLevel::kInstance ? "instance" : "scenario"},
      {"analysis_step_s", r.analysis_step_s},
      {"instance_count", r.instance_count},
      {"degenerate", r.degenerate},
      {"gamma_ao", r.gamma_ao},
      {"gamma_oc", r.gamma_oc},
      {"gamma_ti", r.gamma_ti},
      {"gamma_at", r.gamma_at},
      {"gamma_te", r.gamma_te},
      {"lambda_oc", r.lambda_oc},
      {"lambda_cs", r.lambda_cs},
      {"lambda_to", r.lambda_to},
      {"lambda_ac", r.lambda_ac},
      {"lambda_ed", r.lambda_ed},
  };
  return j.dump(1) + "\n";
}

DescriptorReport parse_descriptor_report(std::string_view bytes) {
  using jsonutil::get;
  const auto j = jsonutil::parse(bytes);
  jsonutil::expect_schema(j, "descriptor_report");
  DescriptorReport r;
  r.id = get<std::string>(j, "id", "");
  const std::string level = get<std::string>(j, "level", "");
  if (level != "instance" && level != "scenario") throw ParseError("bad level", "/level");
  r.level = level == "instance" ? DescriptorLevel::kInstance : DescriptorLevel::kScenario;
  r.analysis_step_s = get<double>(j, "analysis_step_s", "");
  r.instance_count = get<int>(j, "instance_count", "");
  r.degenerate = get<bool>(j, "degenerate", "");
  r.gamma_ao = get<double>(j, "gamma_ao", "");
  r.gamma_oc = get<double>(j, "gamma_oc", "");
  r.gamma_ti = get<double>(j, "gamma_ti", "");
  r.gamma_at = get<double>(j, "gamma_at", "");
  r.gamma_te = get<double>(j, "gamma_te", "");
  r.lambda_oc = get<double>(j, "lambda_oc", "");
  r.lambda_cs = get<double>(j, "lambda_cs", "");
  r.lambda_to = get<double>(j, "lambda_to", "");
  r.lambda_ac = get<double>(j, "lambda_ac", "");
  r.lambda_ed = get<double>(j, "lambda_ed", "");
  return r;
}

}  // namespace eosb
