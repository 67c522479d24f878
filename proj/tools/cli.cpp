// Copyright 2026 The Platoon Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "platoon/analysis.hpp"
#include "platoon/engine.hpp"
#include "platoon/server.hpp"

#ifndef PLATOON_SCENARIO_DIR
#define PLATOON_SCENARIO_DIR "scenarios"
#endif

namespace platoon::cli {

namespace fs = std::filesystem;

namespace {

struct Options
{
  std::string scenario;
  std::string against;
  std::string out_dir;
  std::string trace;
  std::string lateral;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string address = "127.0.0.1";
  int port = 8765;
  std::string static_dir;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

ScenarioSpec load(const Options & opt, const std::string & name)
{
  ScenarioSpec spec = load_scenario(resolve_scenario(name));
  if (opt.has_seed) spec.seed = opt.seed;
  if (opt.lateral == "pp") spec.lateral.kind = LateralKind::PurePursuit;
  if (opt.lateral == "stanley") spec.lateral.kind = LateralKind::Stanley;
  return spec;
}

std::string short_name(LateralKind kind) { return kind == LateralKind::PurePursuit ? "pp" : "stanley"; }

bool same_initial_conditions(const ScenarioSpec & a, const ScenarioSpec & b)
{
  if (a.vehicles.size() != b.vehicles.size()) return false;
  for (std::size_t i = 0; i < a.vehicles.size(); ++i) {
    const VehicleSpec & va = a.vehicles[i];
    const VehicleSpec & vb = b.vehicles[i];
    if (va.id != vb.id || va.x != vb.x || va.y != vb.y || va.psi != vb.psi || va.speed != vb.speed) return false;
  }
  return true;
}

void write_run(const TraceLog & trace, const MetricsReport & report, const fs::path & trace_path,
               const fs::path & metrics_path)
{
  write_trace_csv(trace, trace_path);
  export_csv(report, metrics_path);
}

int cmd_run(const Options & opt, std::ostream & out)
{
  const ScenarioSpec spec = load(opt, opt.scenario);
  const fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  const TraceLog trace = run_scenario(spec);
  const MetricsReport report = compute_metrics(trace);
  write_run(trace, report, dir / "trace.csv", dir / "metrics.csv");
  export_csv(report, out);
  return kOk;
}

int cmd_compare(const Options & opt, std::ostream & out)
{
  ScenarioSpec a = load(opt, opt.scenario);
  ScenarioSpec b = a;
  if (opt.against.empty()) {
    a.lateral.kind = LateralKind::PurePursuit;
    b.lateral.kind = LateralKind::Stanley;
  } else {
    b = load(opt, opt.against);
    if (a.seed != b.seed) {
      throw ConfigError(
        "compare: seeds differ (" + std::to_string(a.seed) + " vs " + std::to_string(b.seed) + ")");
    }
    if (!same_initial_conditions(a, b)) throw ConfigError("compare: initial conditions differ");
  }
  std::string label_a = short_name(a.lateral.kind);
  std::string label_b = short_name(b.lateral.kind);
  if (label_a == label_b) {
    label_a = "a";
    label_b = "b";
  }

  const fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  const TraceLog trace_a = run_scenario(a);
  const TraceLog trace_b = run_scenario(b);
  const MetricsReport ma = compute_metrics(trace_a);
  const MetricsReport mb = compute_metrics(trace_b);
  write_run(trace_a, ma, dir / ("trace_" + label_a + ".csv"), dir / ("metrics_" + label_a + ".csv"));
  write_run(trace_b, mb, dir / ("trace_" + label_b + ".csv"), dir / ("metrics_" + label_b + ".csv"));
  const ComparisonTable table = compare_runs(ma, mb, label_a, label_b);
  write_comparison_csv(table, dir / "comparison.csv");
  out << render_text(table);
  return kOk;
}

int cmd_analyze(const Options & opt, std::ostream & out)
{
  const ScenarioSpec spec = opt.scenario.empty() ? default_scenario() : load(opt, opt.scenario);
  const std::vector<TraceRecord> records = read_trace_csv(fs::path(opt.trace));
  const MetricsReport report = compute_metrics(records, analysis_settings(spec));
  if (!opt.out_dir.empty()) {
    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    export_csv(report, dir / "metrics.csv");
  }
  export_csv(report, out);
  return kOk;
}

int cmd_serve(const Options & opt, std::ostream & out)
{
  const ScenarioSpec spec = opt.scenario.empty() ? default_scenario() : load(opt, opt.scenario);
  ServerOptions so;
  so.address = opt.address;
  so.port = static_cast<unsigned short>(opt.port);
  if (!opt.static_dir.empty()) so.static_dir = fs::path(opt.static_dir);
  TeleopServer server(spec, so);
  out << "serving ws://" << so.address << ":" << server.port() << "/ at " << spec.controller_rate
      << " Hz" << std::endl;
  server.run();
  return kOk;
}

}  // namespace

fs::path resolve_scenario(const std::string & name_or_path)
{
  const fs::path given(name_or_path);
  if (fs::exists(given) || given.has_extension() || given.has_parent_path()) return given;
  const char * env = std::getenv("PLATOON_SCENARIO_DIR");
  const fs::path dir = env != nullptr ? fs::path(env) : fs::path(PLATOON_SCENARIO_DIR);
  return dir / (name_or_path + ".json");
}

int main(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Predecessor-following platoon simulator"};
  app.require_subcommand(1);
  Options opt;

  auto add_seed = [&opt](CLI::App * sub) {
    sub->add_option_function<std::uint64_t>(
      "--seed",
      [&opt](const std::uint64_t & s) {
        opt.seed = s;
        opt.has_seed = true;
      },
      "Override the scenario seed");
  };
  auto add_lateral = [&opt](CLI::App * sub) {
    sub->add_option("--lateral", opt.lateral, "Override the lateral controller")
      ->check(CLI::IsMember({"pp", "stanley"}));
  };

  CLI::App * run = app.add_subcommand("run", "Run one scenario; writes trace.csv and metrics.csv");
  run->add_option("--scenario", opt.scenario, "Scenario file or bundled scenario name")->required();
  run->add_option("--out", opt.out_dir, "Output directory")->required();
  add_lateral(run);
  add_seed(run);

  CLI::App * compare = app.add_subcommand(
    "compare", "Run Pure Pursuit and Stanley under identical conditions and compare them");
  compare->add_option("--scenario", opt.scenario, "Scenario file or bundled scenario name")->required();
  compare->add_option(
    "--against", opt.against,
    "Second scenario for run b; must share the seed and initial conditions");
  compare->add_option("--out", opt.out_dir, "Output directory")->required();
  add_seed(compare);

  CLI::App * analyze = app.add_subcommand("analyze", "Compute metrics from a trace.csv");
  analyze->add_option("--trace", opt.trace, "Trace CSV")->required();
  analyze->add_option("--scenario", opt.scenario, "Scenario the trace came from (maneuver start, cruise speed)");
  analyze->add_option("--out", opt.out_dir, "Directory for metrics.csv");

  CLI::App * serve = app.add_subcommand("serve", "Serve the realtime teleop session over WebSocket");
  serve->add_option("--scenario", opt.scenario, "Scenario file or bundled scenario name");
  serve->add_option("--address", opt.address, "Listen address");
  serve->add_option("--port", opt.port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--static", opt.static_dir, "Directory served to plain HTTP GETs");
  add_lateral(serve);
  add_seed(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(opt, out);
    if (*compare) return cmd_compare(opt, out);
    if (*analyze) return cmd_analyze(opt, out);
    return cmd_serve(opt, out);
  } catch (const ParseError & e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ValidationError & e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConfigError & e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace platoon::cli
