// End-effector trajectories and their on-disk form.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "legifield/types.hpp"

namespace legifield {

enum class PlannerTag { potential_field, baseline };

std::string_view to_string(PlannerTag tag);
/// Accepts "potential_field"/"pf" and "baseline". Throws ParseError.
PlannerTag planner_tag_from_string(std::string_view s);

struct Trajectory {
  std::vector<Vec3> waypoints;
  PlannerTag planner = PlannerTag::potential_field;
  ObjectId target = 0;
  bool converged = false;
};

double path_length(const std::vector<Vec3>& waypoints);
/// Cumulative arc length at each waypoint; front() == 0.
std::vector<double> cumulative_arc_length(const std::vector<Vec3>& waypoints);
double max_height(const std::vector<Vec3>& waypoints);

/// CSV with header `k,x,y,z`, 6 decimals, '\n' line endings.
void write_trajectory_csv(const std::vector<Vec3>& waypoints, const std::filesystem::path& path);
/// Throws ParseError on a malformed file.
std::vector<Vec3> read_trajectory_csv(const std::filesystem::path& path);

/// `run.csv` -> `run.meta.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

/// Writes the CSV plus a `.meta.json` sidecar holding planner tag, target,
/// converged flag, xi and the resolved run configuration.
void write_trajectory_files(const Trajectory& traj, double xi, const nlohmann::json& config,
                            const std::filesystem::path& csv_path);

struct SidecarInfo {
  PlannerTag planner;
  ObjectId target;
  bool converged;
};

/// Reads planner/target/converged from a sidecar if it exists.
std::optional<SidecarInfo> read_sidecar(const std::filesystem::path& csv_path);

} // namespace legifield
