// SVG rendering of scenes and trajectories: a top-down panel and a height
// profile panel (z against normalised arc length).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "legifield/scene.hpp"
#include "legifield/trajectory.hpp"

namespace legifield {

struct PlotTrace {
  std::vector<Vec3> waypoints;
  std::optional<PlannerTag> planner;
  std::string label;
};

/// Objects are drawn as circles (the only <circle> elements in the output),
/// trajectories as <polyline class="top ..."> and side profiles as <path class="side ...">.
std::string render_svg(const Scene& scene, const std::vector<PlotTrace>& traces,
                       std::optional<ObjectId> target);

} // namespace legifield
