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

#ifndef PLATOON_ANALYSIS_HPP_
#define PLATOON_ANALYSIS_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "platoon/engine.hpp"

namespace platoon {

/// A signal extremum and where it happened (time, or x for undershoots).
struct Extremum
{
  double value = 0;
  double at = 0;

  bool operator==(const Extremum &) const = default;
};

struct VehicleMetrics
{
  std::string vehicle_id;
  double steady_state_y = 0;
  std::optional<double> speed_convergence_time;
  Extremum peak_vy;
  Extremum peak_yaw;
  Extremum min_vy_excursion;
  Extremum min_yaw_excursion;
  Extremum max_undershoot_y;  // `at` is the x location

  bool operator==(const VehicleMetrics &) const = default;
};

struct MetricsReport
{
  std::vector<VehicleMetrics> vehicles;  // lead first
  // One entry per follower: |follower peak| / |lead peak|; empty when the lead peak is zero.
  std::vector<std::optional<double>> amplification_vy;
  std::vector<std::optional<double>> amplification_yaw;

  bool operator==(const MetricsReport &) const = default;
};

/// Windows and thresholds used by compute_metrics.
struct AnalysisSettings
{
  double cruise_speed = 0.2;
  double speed_band = 0.03;
  double sustain = 2.0;           // seconds the speed must stay in band
  double steady_fraction = 0.1;   // tail of the run averaged for steady-state y
  std::optional<double> maneuver_start;  // lead travel where the maneuver begins
  std::vector<std::string> vehicle_order;  // empty: order of first appearance
};

AnalysisSettings analysis_settings(const ScenarioSpec & spec);

/// World-frame lateral velocity v * sin(psi) of one record.
double lateral_velocity(const TraceRecord & r);

MetricsReport compute_metrics(const TraceLog & trace);
MetricsReport compute_metrics(const std::vector<TraceRecord> & records, const AnalysisSettings & settings);

enum class RunSide { A, B, Tie };

struct ComparisonRow
{
  std::string vehicle_id;
  std::string metric;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> delta;  // b - a
  std::string flag;
};

struct ComparisonTable
{
  std::string label_a = "a";
  std::string label_b = "b";
  std::vector<ComparisonRow> rows;
  std::string tail_vehicle;  // vehicle the excursion flags refer to; empty without followers
  std::optional<RunSide> larger_vy_excursion;
  std::optional<RunSide> larger_yaw_excursion;
};

/// Side-by-side metrics of two runs over the same vehicles. Flags the run with
/// the larger negative lateral-velocity and yaw excursions on the last follower.
ComparisonTable compare_runs(
  const MetricsReport & a, const MetricsReport & b, std::string label_a = "a",
  std::string label_b = "b");

std::string render_text(const ComparisonTable & table);
void write_comparison_csv(const ComparisonTable & table, std::ostream & out);
void write_comparison_csv(const ComparisonTable & table, const std::filesystem::path & path);

/// `vehicle_id,metric,value,time_or_location`; yaw values in degrees.
void export_csv(const MetricsReport & report, std::ostream & out);
void export_csv(const MetricsReport & report, const std::filesystem::path & path);

}  // namespace platoon

#endif  // PLATOON_ANALYSIS_HPP_
