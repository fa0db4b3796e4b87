#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace gradmap {

inline constexpr const char* kReportSchema = "gradmap-report/1";

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Fail dominates Inconclusive, which dominates Pass. Commutative and
/// associative with identity Pass.
Verdict combine(Verdict a, Verdict b);

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // how value is compared with threshold: "<", "<=", ">=", ">", "=="
  nlohmann::json details = nlohmann::json::object();
};

/// value < threshold passes.
CheckResult check_below(std::string name, double value, double threshold, nlohmann::json details = {});
/// value <= threshold passes.
CheckResult check_at_most(std::string name, double value, double threshold, nlohmann::json details = {});
/// value >= threshold passes.
CheckResult check_at_least(std::string name, double value, double threshold, nlohmann::json details = {});
/// value == expected (integers stored as doubles) passes.
CheckResult check_equal(std::string name, double value, double expected, nlohmann::json details = {});

class RunReport {
 public:
  RunReport(std::string scenario, std::string suite, std::uint64_t seed)
      : scenario_(std::move(scenario)), suite_(std::move(suite)), seed_(seed) {}

  const std::string& scenario() const { return scenario_; }
  const std::string& suite() const { return suite_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<CheckResult>& checks() const { return checks_; }
  const CheckResult& check(const std::string& name) const;
  bool has_check(const std::string& name) const;

  /// Throws InvalidArgument on a duplicate check name.
  void add(CheckResult check);
  void set_timing(const std::string& key, double seconds) { timings_[key] = seconds; }
  const std::map<std::string, double>& timings() const { return timings_; }
  void set_parameter(const std::string& key, nlohmann::json value) { parameters_[key] = std::move(value); }
  const nlohmann::json& parameters() const { return parameters_; }

  Verdict overall() const;
  /// 1 if any check failed, otherwise 0.
  int exit_code() const { return overall() == Verdict::Fail ? 1 : 0; }

  /// Everything except "timing" is a function of (scenario, suite, seed, parameters).
  nlohmann::json to_json(bool include_timing = true) const;
  static RunReport from_json(const nlohmann::json& j);

 private:
  std::string scenario_;
  std::string suite_;
  std::uint64_t seed_;
  std::vector<CheckResult> checks_;
  std::map<std::string, double> timings_;
  nlohmann::json parameters_ = nlohmann::json::object();
};

/// Fixed-width text table of (scenario, suite, seed, verdict, failed checks).
std::string summary_table(const std::vector<RunReport>& reports);

}  // namespace gradmap
