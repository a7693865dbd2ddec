// Hover-and-drop reference planner: rise to a fixed hover height, traverse
// in a straight line above the target while decelerating, drop vertically.

#pragma once

#include "legifield/scene.hpp"
#include "legifield/trajectory.hpp"

namespace legifield {

struct BaselineConfig {
  double hover_height = 0.35; ///< m
  double step_len = 0.005;    ///< minimum waypoint spacing, m
  double speed_gain = 0.05;   ///< traverse step as a fraction of remaining planar distance

  /// Throws ValidationError.
  void validate(const Scene& scene, double clearance) const;
};

/// Throws UnknownTargetError, ValidationError.
Trajectory gen_baseline_traj(const Scene& scene, ObjectId target, const BaselineConfig& config,
                             double clearance = 0.02);

} // namespace legifield
