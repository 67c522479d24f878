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

#include "platoon/analysis.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "platoon/csv.hpp"

namespace platoon {

namespace {

using Series = std::vector<TraceRecord>;

template <typename Signal, typename Better>
Extremum scan(const Series & s, Signal signal, Better better)
{
  Extremum e;
  bool first = true;
  for (const auto & r : s) {
    const double v = signal(r);
    if (first || better(v, e.value)) {
      e = {v, r.t};
      first = false;
    }
  }
  return e;
}

std::optional<double> convergence_time(const Series & s, const AnalysisSettings & cfg)
{
  std::optional<double> run_start;
  for (const auto & r : s) {
    if (std::abs(r.v_actual - cfg.cruise_speed) <= cfg.speed_band) {
      if (!run_start) run_start = r.t;
      if (r.t - *run_start >= cfg.sustain - 1e-9) return run_start;
    } else {
      run_start.reset();
    }
  }
  return std::nullopt;
}

double steady_state_y(const Series & s, double t0, double t1, double fraction)
{
  const double from = t1 - fraction * (t1 - t0);
  double mean = 0;
  long n = 0;
  for (const auto & r : s) {
    if (r.t < from - 1e-9) continue;
    ++n;
    mean += (r.y - mean) / static_cast<double>(n);
  }
  return mean;
}

/// Time the lead's path length first reaches `start`.
std::optional<double> maneuver_start_time(const Series & lead, double start)
{
  double travelled = 0;
  for (std::size_t i = 0; i < lead.size(); ++i) {
    if (i > 0) {
      travelled += std::hypot(lead[i].x - lead[i - 1].x, lead[i].y - lead[i - 1].y);
    }
    if (travelled >= start) return lead[i].t;
  }
  return std::nullopt;
}

Extremum undershoot(const Series & s, std::optional<double> until)
{
  Extremum e;
  for (const auto & r : s) {
    if (until && r.t >= *until) break;
    const double depth = -std::min(0.0, r.y);
    if (depth > e.value) e = {depth, r.x};
  }
  return e;
}

std::optional<double> ratio(double follower, double lead)
{
  if (lead == 0.0) return std::nullopt;
  return std::abs(follower) / std::abs(lead);
}

std::string optional_text(const std::optional<double> & v)
{
  return v ? format_float(*v) : std::string("NA");
}

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

}  // namespace

double lateral_velocity(const TraceRecord & r) { return r.v_actual * std::sin(r.psi); }

AnalysisSettings analysis_settings(const ScenarioSpec & spec)
{
  AnalysisSettings s;
  s.cruise_speed = spec.maneuver.cruise_speed;
  if (spec.maneuver.kind == ManeuverKind::LaneChange) s.maneuver_start = spec.maneuver.start_x;
  for (const auto & v : spec.vehicles) s.vehicle_order.push_back(v.id);
  return s;
}

MetricsReport compute_metrics(const TraceLog & trace)
{
  return compute_metrics(trace.records, analysis_settings(trace.scenario));
}

MetricsReport compute_metrics(const std::vector<TraceRecord> & records, const AnalysisSettings & cfg)
{
  std::set<double> stamps;
  std::map<std::string, Series> by_vehicle;
  std::vector<std::string> order = cfg.vehicle_order;
  for (const auto & r : records) {
    stamps.insert(r.t);
    auto [it, inserted] = by_vehicle.try_emplace(r.vehicle_id);
    it->second.push_back(r);
    if (inserted && cfg.vehicle_order.empty()) order.push_back(r.vehicle_id);
  }
  if (stamps.size() < 10) {
    throw DegenerateTrace("trace has " + std::to_string(stamps.size()) + " ticks, need at least 10");
  }
  std::erase_if(order, [&](const std::string & id) { return !by_vehicle.contains(id); });
  for (auto & [id, series] : by_vehicle) {
    std::stable_sort(series.begin(), series.end(), [](const auto & a, const auto & b) { return a.t < b.t; });
  }

  const double t0 = *stamps.begin();
  const double t1 = *stamps.rbegin();
  std::optional<double> maneuver_time;
  if (cfg.maneuver_start && !order.empty()) {
    maneuver_time = maneuver_start_time(by_vehicle.at(order.front()), *cfg.maneuver_start);
  }

  MetricsReport report;
  for (const auto & id : order) {
    const Series & s = by_vehicle.at(id);
    VehicleMetrics m;
    m.vehicle_id = id;
    m.steady_state_y = steady_state_y(s, t0, t1, cfg.steady_fraction);
    m.speed_convergence_time = convergence_time(s, cfg);
    m.peak_vy = scan(s, lateral_velocity, std::greater<>{});
    m.min_vy_excursion = scan(s, lateral_velocity, std::less<>{});
    m.peak_yaw = scan(s, [](const TraceRecord & r) { return r.psi; }, std::greater<>{});
    m.min_yaw_excursion = scan(s, [](const TraceRecord & r) { return r.psi; }, std::less<>{});
    m.max_undershoot_y = undershoot(s, maneuver_time);
    report.vehicles.push_back(std::move(m));
  }
  if (!report.vehicles.empty()) {
    const VehicleMetrics & lead = report.vehicles.front();
    for (std::size_t i = 1; i < report.vehicles.size(); ++i) {
      report.amplification_vy.push_back(ratio(report.vehicles[i].peak_vy.value, lead.peak_vy.value));
      report.amplification_yaw.push_back(ratio(report.vehicles[i].peak_yaw.value, lead.peak_yaw.value));
    }
  }
  return report;
}

ComparisonTable compare_runs(
  const MetricsReport & a, const MetricsReport & b, std::string label_a, std::string label_b)
{
  if (a.vehicles.size() != b.vehicles.size()) {
    throw MismatchedVehicles("compare_runs: reports cover different vehicle counts");
  }
  for (std::size_t i = 0; i < a.vehicles.size(); ++i) {
    if (a.vehicles[i].vehicle_id != b.vehicles[i].vehicle_id) {
      throw MismatchedVehicles(
        "compare_runs: vehicle '" + a.vehicles[i].vehicle_id + "' vs '" + b.vehicles[i].vehicle_id + "'");
    }
  }

  ComparisonTable table;
  table.label_a = std::move(label_a);
  table.label_b = std::move(label_b);
  auto add = [&](const std::string & id, const char * metric, std::optional<double> va, std::optional<double> vb) {
    ComparisonRow row{id, metric, va, vb, std::nullopt, {}};
    if (va && vb) row.delta = *vb - *va;
    table.rows.push_back(std::move(row));
  };
  for (std::size_t i = 0; i < a.vehicles.size(); ++i) {
    const VehicleMetrics & ma = a.vehicles[i];
    const VehicleMetrics & mb = b.vehicles[i];
    const std::string & id = ma.vehicle_id;
    add(id, "steady_state_y", ma.steady_state_y, mb.steady_state_y);
    add(id, "speed_convergence_time", ma.speed_convergence_time, mb.speed_convergence_time);
    add(id, "peak_vy", ma.peak_vy.value, mb.peak_vy.value);
    add(id, "peak_yaw_deg", ma.peak_yaw.value * kDegPerRad, mb.peak_yaw.value * kDegPerRad);
    add(id, "min_vy_excursion", ma.min_vy_excursion.value, mb.min_vy_excursion.value);
    add(id, "min_yaw_excursion_deg", ma.min_yaw_excursion.value * kDegPerRad,
        mb.min_yaw_excursion.value * kDegPerRad);
    add(id, "max_undershoot_y", ma.max_undershoot_y.value, mb.max_undershoot_y.value);
    if (i > 0) {
      add(id, "amplification_vy", a.amplification_vy[i - 1], b.amplification_vy[i - 1]);
      add(id, "amplification_yaw", a.amplification_yaw[i - 1], b.amplification_yaw[i - 1]);
    }
  }

  if (a.vehicles.size() >= 2) {
    const VehicleMetrics & ta = a.vehicles.back();
    const VehicleMetrics & tb = b.vehicles.back();
    table.tail_vehicle = ta.vehicle_id;
    auto larger = [](double ea, double eb) {
      const double ma = std::max(0.0, -ea);
      const double mb = std::max(0.0, -eb);
      return ma > mb ? RunSide::A : (mb > ma ? RunSide::B : RunSide::Tie);
    };
    table.larger_vy_excursion = larger(ta.min_vy_excursion.value, tb.min_vy_excursion.value);
    table.larger_yaw_excursion = larger(ta.min_yaw_excursion.value, tb.min_yaw_excursion.value);
    auto label = [&](RunSide side) {
      return side == RunSide::A ? table.label_a : side == RunSide::B ? table.label_b : std::string("tie");
    };
    for (auto & row : table.rows) {
      if (row.vehicle_id != table.tail_vehicle) continue;
      if (row.metric == "min_vy_excursion") row.flag = "larger:" + label(*table.larger_vy_excursion);
      if (row.metric == "min_yaw_excursion_deg") row.flag = "larger:" + label(*table.larger_yaw_excursion);
    }
  }
  return table;
}

std::string render_text(const ComparisonTable & table)
{
  std::ostringstream out;
  auto cell = [](const std::optional<double> & v) {
    std::ostringstream c;
    if (v) {
      c << std::fixed << std::setprecision(4) << *v;
    } else {
      c << "NA";
    }
    return c.str();
  };
  out << std::left << std::setw(12) << "vehicle" << std::setw(24) << "metric" << std::right
      << std::setw(14) << table.label_a << std::setw(14) << table.label_b << std::setw(12) << "delta"
      << "  flag\n";
  for (const auto & row : table.rows) {
    out << std::left << std::setw(12) << row.vehicle_id << std::setw(24) << row.metric << std::right
        << std::setw(14) << cell(row.a) << std::setw(14) << cell(row.b) << std::setw(12)
        << cell(row.delta) << "  " << row.flag << '\n';
  }
  return out.str();
}

void write_comparison_csv(const ComparisonTable & table, std::ostream & out)
{
  out << "vehicle_id,metric," << table.label_a << ',' << table.label_b << ",delta,flag\n";
  for (const auto & row : table.rows) {
    out << row.vehicle_id << ',' << row.metric << ',' << optional_text(row.a) << ','
        << optional_text(row.b) << ',' << optional_text(row.delta) << ',' << row.flag << '\n';
  }
}

void write_comparison_csv(const ComparisonTable & table, const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing: " + std::strerror(errno));
  write_comparison_csv(table, out);
  if (!out.flush()) throw Error("write to " + path.string() + " failed");
}

void export_csv(const MetricsReport & report, std::ostream & out)
{
  out << "vehicle_id,metric,value,time_or_location\n";
  auto row = [&out](const std::string & id, const char * metric, const std::string & value,
                    const std::string & where) {
    out << id << ',' << metric << ',' << value << ',' << where << '\n';
  };
  for (const auto & m : report.vehicles) {
    row(m.vehicle_id, "steady_state_y", format_float(m.steady_state_y), "");
    row(m.vehicle_id, "speed_convergence_time", optional_text(m.speed_convergence_time), "");
    row(m.vehicle_id, "peak_vy", format_float(m.peak_vy.value), format_float(m.peak_vy.at));
    row(m.vehicle_id, "peak_yaw_deg", format_float(m.peak_yaw.value * kDegPerRad),
        format_float(m.peak_yaw.at));
    row(m.vehicle_id, "min_vy_excursion", format_float(m.min_vy_excursion.value),
        format_float(m.min_vy_excursion.at));
    row(m.vehicle_id, "min_yaw_excursion_deg", format_float(m.min_yaw_excursion.value * kDegPerRad),
        format_float(m.min_yaw_excursion.at));
    row(m.vehicle_id, "max_undershoot_y", format_float(m.max_undershoot_y.value),
        format_float(m.max_undershoot_y.at));
  }
  for (std::size_t i = 0; i + 1 < report.vehicles.size(); ++i) {
    const std::string & id = report.vehicles[i + 1].vehicle_id;
    if (i < report.amplification_vy.size() && report.amplification_vy[i]) {
      row(id, "amplification_vy", format_float(*report.amplification_vy[i]), "");
    }
    if (i < report.amplification_yaw.size() && report.amplification_yaw[i]) {
      row(id, "amplification_yaw", format_float(*report.amplification_yaw[i]), "");
    }
  }
}

void export_csv(const MetricsReport & report, const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing: " + std::strerror(errno));
  export_csv(report, out);
  if (!out.flush()) throw Error("write to " + path.string() + " failed");
}

}  // namespace platoon
