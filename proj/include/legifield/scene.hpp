// Table-top world model: workspace bounds, cylindrical objects, end-effector
// start, plus the scene file format and the procedural scene generators.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "legifield/types.hpp"

namespace legifield {

struct WorkspaceBounds {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 0.6;
  double z_max = 0.5;

  double width() const { return x_max - x_min; }
  double depth() const { return y_max - y_min; }
  double area() const { return width() * depth(); }
  Vec2 center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }

  void validate() const;
};

/// Vertical cylinder standing on the table. `grasp_height` is the height of
/// the point the end effector must reach, and also the cylinder's top.
struct SceneObject {
  ObjectId id = 0;
  Vec2 position = Vec2::Zero();
  double radius = 0.03;
  double grasp_height = 0.05;

  Vec3 grasp_point() const { return {position.x(), position.y(), grasp_height}; }
};

struct Scene {
  WorkspaceBounds bounds;
  std::vector<SceneObject> objects;
  Vec3 start = Vec3::Zero();

  /// Throws ValidationError naming the offending field or object ids.
  void validate() const;

  const SceneObject* find(ObjectId id) const;
  /// Throws UnknownTargetError.
  const SceneObject& at(ObjectId id) const;
  double max_radius() const;
};

inline constexpr double kDefaultRadius = 0.03;
inline constexpr double kDefaultGraspHeight = 0.05;

/// Default end-effector start: above the near (robot-side) table edge.
Vec3 default_start(const WorkspaceBounds& bounds);

Scene scene_from_json(const nlohmann::json& doc);
nlohmann::json scene_to_json(const Scene& scene);

/// Throws ParseError (including file not found) or ValidationError.
Scene load_scene(const std::filesystem::path& path);
void save_scene(const Scene& scene, const std::filesystem::path& path);

/// n objects evenly spaced along x, centered in the workspace.
Scene generate_uncluttered_scene(double spacing, int n,
                                 const WorkspaceBounds& bounds = {});

struct ClutterPlacement {
  /// Placement density std-dev as a fraction of the workspace extent, per axis.
  double sigma_fraction = 0.15;
  double radius = kDefaultRadius;
  long max_attempts_per_object = 20000;
};

/// n non-overlapping objects drawn by seeded rejection sampling from a
/// Gaussian centered in the workspace. Throws PlacementError.
Scene generate_cluttered_scene(int n, std::uint64_t seed, double min_gap,
                               const WorkspaceBounds& bounds = {},
                               const ClutterPlacement& placement = {});

struct NearestObject {
  ObjectId id;
  double distance;
};

/// Object whose grasp point is closest (3-D) to `point`; ties go to the lowest id.
NearestObject nearest_object(const Scene& scene, const Vec3& point);

} // namespace legifield
