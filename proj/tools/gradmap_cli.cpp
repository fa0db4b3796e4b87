#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gradmap/convex.hpp"
#include "gradmap/flow.hpp"
#include "gradmap/io.hpp"
#include "gradmap/scenario.hpp"
#include "gradmap/suites.hpp"

namespace fs = std::filesystem;
using namespace gradmap;

namespace {

constexpr int kUsageError = 2;

Scenario load_scenario(const std::string& name, const std::string& config, int n) {
  if (!config.empty()) return scenario_from_config(read_json_file(config));
  return make_scenario(name, n);
}

int cmd_list(bool as_json) {
  json out = json::array();
  for (const auto& name : scenario_names()) {
    const Scenario s = make_scenario(name);
    out.push_back({{"name", s.name}, {"description", s.description}, {"suites", s.suites}});
  }
  if (as_json) {
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  for (const auto& s : out) {
    std::cout << s["name"].get<std::string>() << "  " << s["description"].get<std::string>() << '\n';
    for (const auto& suite : s["suites"]) std::cout << "    " << suite.get<std::string>() << '\n';
  }
  return 0;
}

int cmd_run(const Scenario& s, const std::string& suite, std::uint64_t seed, const std::string& out_dir,
            double scale) {
  std::vector<std::string> suites = suite == "all" ? s.suites : std::vector<std::string>{suite};
  std::vector<RunReport> reports;
  for (const auto& name : suites) {
    RunReport r = run_suite(s, name, seed, SuiteOptions{scale});
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      write_json_file((fs::path(out_dir) / (s.name + "-" + name + "-" + std::to_string(seed) + ".json")).string(),
                      r.to_json());
    }
    reports.push_back(std::move(r));
  }
  std::cout << summary_table(reports);
  Verdict v = Verdict::Pass;
  for (const auto& r : reports) v = combine(v, r.overall());
  if (v == Verdict::Inconclusive) std::cerr << "warning: some checks are inconclusive\n";
  return v == Verdict::Fail ? 1 : 0;
}

int cmd_flow(const Scenario& s, const std::string& point_file, std::uint64_t seed, const std::string& csv) {
  Rng rng(seed);
  const ProjectivePoint x0 = point_file.empty() ? s.sample(rng) : point_from_json(read_json_file(point_file));
  if (x0.dim() != s.n()) throw Error(ErrorCode::InvalidArgument, "point has the wrong dimension");
  const Trajectory tr = integrate_flow(s.group, x0, scenario_flow_options(s));
  if (!csv.empty()) write_trajectory_csv(tr, csv);
  json out = {{"start", point_to_json(x0)},
              {"converged", tr.converged()},
              {"time", tr.times.back()},
              {"f", tr.f_values.back()},
              {"grad_norm", tr.grad_norms.back()},
              {"steps", tr.times.size()}};
  if (tr.limit) {
    out["limit"] = point_to_json(*tr.limit);
    out["limit_beta"] = matrix_to_json(tr.limit_beta);
    out["stratum"] = vector_to_json(chamber_label(s.abelian, tr.limit_beta));
  }
  std::cout << out.dump(2) << '\n';
  return tr.converged() ? 0 : 1;
}

int cmd_polytope(const Scenario& s, int samples, std::uint64_t seed, const std::string& out_file) {
  std::vector<RVector> img;
  for (int i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    img.push_back(gradient_map_abelian(s.abelian, s.sample_spread(rng)));
  }
  json out = {{"scenario", s.name}, {"samples", samples}, {"seed", seed},
              {"sampled_hull", polytope_to_json(convex_hull(img).polytope)}};
  if (s.abelian.is_diagonal()) {
    const FixedPointPolytope fp = fixed_point_polytope(s.abelian);
    out["fixed_point_polytope"] = polytope_to_json(fp.polytope);
    const auto cmp = polytope_equal_by_support(convex_hull(img).polytope, fp.polytope, 1e-3);
    out["equal_at_1e-3"] = cmp.equal;
    out["hausdorff"] = cmp.hausdorff;
  }
  if (out_file.empty())
    std::cout << out.dump(2) << '\n';
  else
    write_json_file(out_file, out);
  return 0;
}

int cmd_report(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<RunReport> reports;
  for (const auto& f : files) {
    const json j = read_json_file(f.string());
    if (j.is_object() && j.value("schema", std::string()) == kReportSchema) reports.push_back(RunReport::from_json(j));
  }
  if (reports.empty()) {
    std::cerr << "no reports in " << dir << '\n';
    return 1;
  }
  std::cout << summary_table(reports);
  Verdict v = Verdict::Pass;
  for (const auto& r : reports) v = combine(v, r.overall());
  if (v == Verdict::Inconclusive) std::cerr << "warning: some checks are inconclusive\n";
  return v == Verdict::Fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient-map experiments on projective space"};
  app.require_subcommand(1);

  bool list_json = false;
  auto* list = app.add_subcommand("list", "List scenarios and their suites");
  list->add_flag("--json", list_json, "Print as JSON");

  std::string scenario = "sl2r-p1", suite, out_dir, config, point_file, csv, out_file, report_dir;
  std::uint64_t seed = 7;
  int dim = 0, samples = 10000;
  double scale = 1.0;

  auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("--scenario,-s", scenario, "Scenario name");
    cmd->add_option("--config", config, "Custom scenario JSON (overrides --scenario)")->check(CLI::ExistingFile);
    cmd->add_option("--n", dim, "Dimension for torus-pn");
    cmd->add_option("--seed", seed, "RNG seed");
  };

  auto* run = app.add_subcommand("run", "Run a suite (or 'all') and write a JSON report");
  add_scenario(run);
  run->add_option("--suite,-t", suite, "Suite name or 'all'")->required();
  run->add_option("--out", out_dir, "Directory for JSON reports");
  run->add_option("--scale", scale, "Sample-count multiplier")->check(CLI::PositiveNumber);

  auto* flow = app.add_subcommand("flow", "Integrate the norm-square flow from a point");
  add_scenario(flow);
  flow->add_option("--point", point_file, "JSON array of [re, im] coordinates")->check(CLI::ExistingFile);
  flow->add_option("--csv", csv, "Trajectory CSV output");

  auto* poly = app.add_subcommand("polytope", "Sampled mu_a image and fixed-point polytope");
  add_scenario(poly);
  poly->add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
  poly->add_option("--out", out_file, "Output JSON file");

  auto* report = app.add_subcommand("report", "Summarize the JSON reports in a directory");
  report->add_option("--dir", report_dir, "Report directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*list) return cmd_list(list_json);
    if (*report) return cmd_report(report_dir);
    const Scenario s = load_scenario(scenario, config, dim);
    if (*run) return cmd_run(s, suite, seed, out_dir, scale);
    if (*flow) return cmd_flow(s, point_file, seed, csv);
    if (*poly) return cmd_polytope(s, samples, seed, out_file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::UnknownSuite || e.code() == ErrorCode::UnknownScenario ||
        e.code() == ErrorCode::InvalidArgument) {
      std::cerr << app.help();
      return kUsageError;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsageError;
}
