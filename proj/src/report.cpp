#include "gradmap/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "gradmap/core.hpp"

namespace gradmap {

using json = nlohmann::json;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "inconclusive") return Verdict::Inconclusive;
  throw Error(ErrorCode::InvalidArgument, "unknown verdict '" + s + "'");
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

namespace {

CheckResult make_check(std::string name, double value, double threshold, const char* relation, bool ok,
                       json details) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = threshold;
  c.relation = relation;
  // NaN compares false and therefore fails
  c.verdict = ok ? Verdict::Pass : Verdict::Fail;
  c.details = details.is_null() ? json::object() : std::move(details);
  return c;
}

// JSON has no NaN or infinity
json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? json("nan") : json(x > 0 ? "inf" : "-inf");
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return NAN;
}

}  // namespace

CheckResult check_below(std::string name, double value, double threshold, json details) {
  return make_check(std::move(name), value, threshold, "<", value < threshold, std::move(details));
}

CheckResult check_at_most(std::string name, double value, double threshold, json details) {
  return make_check(std::move(name), value, threshold, "<=", value <= threshold, std::move(details));
}

CheckResult check_at_least(std::string name, double value, double threshold, json details) {
  return make_check(std::move(name), value, threshold, ">=", value >= threshold, std::move(details));
}

CheckResult check_equal(std::string name, double value, double expected, json details) {
  return make_check(std::move(name), value, expected, "==", value == expected, std::move(details));
}

const CheckResult& RunReport::check(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return c;
  throw Error(ErrorCode::InvalidArgument, "no check named '" + name + "'");
}

bool RunReport::has_check(const std::string& name) const {
  return std::any_of(checks_.begin(), checks_.end(), [&](const CheckResult& c) { return c.name == name; });
}

void RunReport::add(CheckResult check) {
  if (has_check(check.name)) throw Error(ErrorCode::InvalidArgument, "duplicate check '" + check.name + "'");
  checks_.push_back(std::move(check));
}

Verdict RunReport::overall() const {
  Verdict v = Verdict::Pass;
  for (const auto& c : checks_) v = combine(v, c.verdict);
  return v;
}

json RunReport::to_json(bool include_timing) const {
  json checks = json::array();
  for (const auto& c : checks_)
    checks.push_back({{"name", c.name},
                      {"verdict", to_string(c.verdict)},
                      {"value", number(c.value)},
                      {"relation", c.relation},
                      {"threshold", number(c.threshold)},
                      {"details", c.details}});
  json out = {{"schema", kReportSchema}, {"scenario", scenario_},     {"suite", suite_},
              {"seed", seed_},           {"parameters", parameters_}, {"verdict", to_string(overall())},
              {"checks", checks}};
  if (include_timing) out["timing"] = timings_;
  return out;
}

RunReport RunReport::from_json(const json& j) {
  if (j.value("schema", std::string()) != kReportSchema)
    throw Error(ErrorCode::InvalidArgument, "not a " + std::string(kReportSchema) + " document");
  RunReport r(j.at("scenario").get<std::string>(), j.at("suite").get<std::string>(),
              j.at("seed").get<std::uint64_t>());
  if (j.contains("parameters")) r.parameters_ = j.at("parameters");
  for (const auto& c : j.at("checks")) {
    CheckResult cr;
    cr.name = c.at("name").get<std::string>();
    cr.verdict = verdict_from_string(c.at("verdict").get<std::string>());
    cr.value = number_from(c.at("value"));
    cr.threshold = number_from(c.at("threshold"));
    cr.relation = c.at("relation").get<std::string>();
    cr.details = c.value("details", json::object());
    r.add(std::move(cr));
  }
  if (j.contains("timing")) r.timings_ = j.at("timing").get<std::map<std::string, double>>();
  return r;
}

std::string summary_table(const std::vector<RunReport>& reports) {
  std::ostringstream out;
  out << std::left << std::setw(20) << "scenario" << std::setw(26) << "suite" << std::setw(8) << "seed"
      << std::setw(14) << "verdict" << "checks\n";
  for (const auto& r : reports) {
    int passed = 0;
    std::vector<std::string> bad;
    for (const auto& c : r.checks()) {
      if (c.verdict == Verdict::Pass)
        ++passed;
      else
        bad.push_back(c.name + "(" + to_string(c.verdict) + ")");
    }
    out << std::left << std::setw(20) << r.scenario() << std::setw(26) << r.suite() << std::setw(8) << r.seed()
        << std::setw(14) << to_string(r.overall()) << passed << "/" << r.checks().size();
    for (const auto& b : bad) out << ' ' << b;
    out << '\n';
  }
  return out.str();
}

}  // namespace gradmap
