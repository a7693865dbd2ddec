// Entropy-scaled potential-field planner.
//
// The target attracts the end effector quadratically; every other object
// repels it through a classical inverse-distance potential whose gain grows
// with scene clutter (low xi) and with how close the object sits to the
// straight start-to-target line. A second repulsive term tilts the field so
// that it is cheaper to pass obstacles higher up.
//
// Obstacle distance rho is measured to the object's axis segment, from the
// table up to the grasp height, so clearance above an object counts.

#pragma once

#include <vector>

#include "legifield/error.hpp"
#include "legifield/scene.hpp"
#include "legifield/trajectory.hpp"
#include "legifield/types.hpp"

namespace legifield {

struct FieldConfig {
  double k_att = 4.0;
  double k_rep = 0.01;
  double rho0 = 0.12;         ///< influence radius, m
  double k_update = 0.01;     ///< descent step size
  double epsilon = 0.01;      ///< termination distance to the grasp point, m
  int max_iters = 5000;
  double beta = 2.0;          ///< clutter amplification of the repulsive gain
  double sigma_line = 0.1;    ///< line-proximity length scale, m
  double z_lift = 0.5;        ///< weight of the upward repulsive term
  double clearance_margin = 0.02;
  double max_step = 0.02;     ///< per-iteration displacement cap, m

  /// Throws ValidationError. `max_radius` is the largest object radius.
  void validate(double max_radius) const;
};

/// Minimum-displacement threshold and window used to detect a stall.
inline constexpr double kStallDisplacement = 1e-5;
inline constexpr int kStallWindow = 50;
/// Obstacle distance below which the field is singular.
inline constexpr double kSingularDistance = 1e-6;

struct PotentialField {
  Scene scene;
  ObjectId target = 0;
  double xi = 1.0;
  /// Effective repulsive gain per scene object, same order as scene.objects.
  /// Zero for the target.
  std::vector<double> gains;
  FieldConfig config;

  Vec3 goal() const { return scene.at(target).grasp_point(); }
};

/// Thrown when descent stalls away from the target. Carries the (smoothed)
/// partial trajectory and the stall position.
class LocalMinimumError : public Error {
public:
  LocalMinimumError(const std::string& what, Trajectory partial, Vec3 stall)
      : Error(what), partial_(std::move(partial)), stall_(stall) {}
  const Trajectory& partial() const noexcept { return partial_; }
  const Vec3& stall_position() const noexcept { return stall_; }

private:
  Trajectory partial_;
  Vec3 stall_;
};

/// exp(-d^2 / sigma^2) with d the planar distance from the obstacle center to
/// the segment from the (projected) start to the target center.
double line_proximity(const SceneObject& obstacle, const Vec3& start, const SceneObject& target,
                      double sigma_line);

/// Throws UnknownTargetError, ValidationError.
PotentialField build_field(const Scene& scene, ObjectId target, double xi,
                           const FieldConfig& config);

/// Distance from `p` to the object's axis segment [0, grasp_height] and the
/// closest point on it.
struct AxisDistance {
  double rho;
  Vec3 closest;
};
AxisDistance axis_distance(const SceneObject& obj, const Vec3& p);

/// Projects onto the workspace box [x_min,x_max] x [y_min,y_max] x [0,z_max].
Vec3 clamp_to_workspace(const WorkspaceBounds& bounds, const Vec3& p);

/// Scalar potential U_total at `p` (clamped into the workspace).
double total_potential(const PotentialField& field, const Vec3& p);
/// Gradient of total_potential. Throws SingularityError.
Vec3 total_gradient(const PotentialField& field, const Vec3& p);

/// Runs gradient descent from scene.start toward the target's grasp point and
/// smooths the result. xi is computed from the scene (1 when the scene has a
/// single object). Throws UnknownTargetError, LocalMinimumError,
/// SingularityError. Hitting max_iters returns converged == false.
Trajectory gen_legible_traj(const Scene& scene, ObjectId target, const FieldConfig& config);
Trajectory gen_legible_traj(const Scene& scene, ObjectId target, const FieldConfig& config,
                            double xi);

/// Scene xi as used by the planner.
double planner_xi(const Scene& scene);

/// Margin pass: waypoints closer (planar) than radius + clearance_margin to a
/// non-target object are pushed radially out to exactly that clearance.
/// Height pass: z becomes the running maximum taken from the end, so it never
/// increases; x and y are untouched by this pass.
Trajectory smooth(Trajectory traj, const Scene& scene, const FieldConfig& config);

/// Height pass alone.
void monotone_height(std::vector<Vec3>& waypoints);

} // namespace legifield
