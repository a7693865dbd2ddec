#include "legifield/trajectory.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "legifield/error.hpp"

namespace legifield {

std::string_view to_string(PlannerTag tag)
{
  switch (tag) {
  case PlannerTag::potential_field: return "potential_field";
  case PlannerTag::baseline: return "baseline";
  }
  return "unknown";
}

PlannerTag planner_tag_from_string(std::string_view s)
{
  if (s == "potential_field" || s == "pf") return PlannerTag::potential_field;
  if (s == "baseline") return PlannerTag::baseline;
  throw ParseError("unknown planner '" + std::string(s) + "'");
}

double path_length(const std::vector<Vec3>& waypoints)
{
  double len = 0.0;
  for (std::size_t k = 1; k < waypoints.size(); ++k) {
    len += (waypoints[k] - waypoints[k - 1]).norm();
  }
  return len;
}

std::vector<double> cumulative_arc_length(const std::vector<Vec3>& waypoints)
{
  std::vector<double> s(waypoints.size(), 0.0);
  for (std::size_t k = 1; k < waypoints.size(); ++k) {
    s[k] = s[k - 1] + (waypoints[k] - waypoints[k - 1]).norm();
  }
  return s;
}

double max_height(const std::vector<Vec3>& waypoints)
{
  double z = -std::numeric_limits<double>::infinity();
  for (const auto& w : waypoints) z = std::max(z, w.z());
  return z;
}

void write_trajectory_csv(const std::vector<Vec3>& waypoints, const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "k,x,y,z\n";
  char line[128];
  for (std::size_t k = 0; k < waypoints.size(); ++k) {
    const auto& w = waypoints[k];
    std::snprintf(line, sizeof line, "%zu,%.6f,%.6f,%.6f\n", k, w.x(), w.y(), w.z());
    out << line;
  }
}

std::vector<Vec3> read_trajectory_csv(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": file not found");
  std::string line;
  if (!std::getline(in, line) || line != "k,x,y,z") {
    throw ParseError(path.string() + ": expected header 'k,x,y,z'");
  }
  std::vector<Vec3> pts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(row, field, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(field, &used));
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad number '" +
                         field + "'");
      }
    }
    if (values.size() != 4) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected 4 columns");
    }
    pts.emplace_back(values[1], values[2], values[3]);
  }
  if (pts.empty()) throw ParseError(path.string() + ": no waypoints");
  return pts;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path)
{
  auto p = csv_path;
  p.replace_extension(".meta.json");
  return p;
}

void write_trajectory_files(const Trajectory& traj, double xi, const nlohmann::json& config,
                            const std::filesystem::path& csv_path)
{
  write_trajectory_csv(traj.waypoints, csv_path);
  const nlohmann::json meta = {{"planner", to_string(traj.planner)},
                               {"target", traj.target},
                               {"converged", traj.converged},
                               {"xi", xi},
                               {"waypoints", traj.waypoints.size()},
                               {"config", config}};
  std::ofstream out(sidecar_path(csv_path), std::ios::binary);
  if (!out) throw Error("cannot write " + sidecar_path(csv_path).string());
  out << meta.dump(2) << "\n";
}

std::optional<SidecarInfo> read_sidecar(const std::filesystem::path& csv_path)
{
  std::ifstream in(sidecar_path(csv_path));
  if (!in) return std::nullopt;
  try {
    const auto meta = nlohmann::json::parse(in);
    return SidecarInfo{planner_tag_from_string(meta.at("planner").get<std::string>()),
                       meta.at("target").get<ObjectId>(), meta.at("converged").get<bool>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(sidecar_path(csv_path).string() + ": " + e.what());
  }
}

} // namespace legifield
