#include "legifield/potential_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "legifield/clutter.hpp"

namespace legifield {

namespace {

std::string fmt(const Vec3& p)
{
  std::ostringstream os;
  os << "(" << p.x() << ", " << p.y() << ", " << p.z() << ")";
  return os.str();
}

} // namespace

void FieldConfig::validate(double max_radius) const
{
  if (!(k_att > 0 && k_rep > 0 && k_update > 0 && beta > 0 && sigma_line > 0 && z_lift > 0 &&
        clearance_margin > 0 && max_step > 0)) {
    throw ValidationError("field config: all gains must be > 0");
  }
  if (!(rho0 > max_radius)) {
    throw ValidationError("field config: rho0 must exceed the largest object radius");
  }
  if (!(epsilon > 0 && epsilon < rho0)) {
    throw ValidationError("field config: epsilon must be in (0, rho0)");
  }
  if (max_iters < 1) throw ValidationError("field config: max_iters must be >= 1");
}

double line_proximity(const SceneObject& obstacle, const Vec3& start, const SceneObject& target,
                      double sigma_line)
{
  const Vec2 a = start.head<2>();
  const Vec2 b = target.position;
  const Vec2 p = obstacle.position;
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  const double d = (p - (a + t * ab)).norm();
  return std::exp(-(d * d) / (sigma_line * sigma_line));
}

PotentialField build_field(const Scene& scene, ObjectId target, double xi,
                           const FieldConfig& config)
{
  const SceneObject& tgt = scene.at(target);
  config.validate(scene.max_radius());

  PotentialField field{scene, target, xi, {}, config};
  const double clutter_scale = 1.0 + config.beta * (1.0 - xi);
  field.gains.reserve(scene.objects.size());
  for (const auto& o : scene.objects) {
    field.gains.push_back(o.id == target ? 0.0
                                         : config.k_rep * clutter_scale *
                                               line_proximity(o, scene.start, tgt,
                                                              config.sigma_line));
  }
  return field;
}

AxisDistance axis_distance(const SceneObject& obj, const Vec3& p)
{
  const Vec3 c(obj.position.x(), obj.position.y(), std::clamp(p.z(), 0.0, obj.grasp_height));
  return {(p - c).norm(), c};
}

Vec3 clamp_to_workspace(const WorkspaceBounds& b, const Vec3& p)
{
  return {std::clamp(p.x(), b.x_min, b.x_max), std::clamp(p.y(), b.y_min, b.y_max),
          std::clamp(p.z(), 0.0, b.z_max)};
}

// U = 1/2 k_att |p - goal|^2
//   + sum_i [ 1/2 g_i w_i^2 + z_lift g_i w_i (z_max - z) ]   for rho_i < rho0,
// with w_i = 1/rho_i - 1/rho0.
double total_potential(const PotentialField& field, const Vec3& point)
{
  const auto& cfg = field.config;
  const Vec3 p = clamp_to_workspace(field.scene.bounds, point);
  double u = 0.5 * cfg.k_att * (p - field.goal()).squaredNorm();
  const double height_slack = field.scene.bounds.z_max - p.z();
  for (std::size_t i = 0; i < field.scene.objects.size(); ++i) {
    const double g = field.gains[i];
    if (g == 0.0) continue;
    const double rho = axis_distance(field.scene.objects[i], p).rho;
    if (rho >= cfg.rho0) continue;
    const double w = 1.0 / std::max(rho, kSingularDistance) - 1.0 / cfg.rho0;
    u += g * w * (0.5 * w + cfg.z_lift * height_slack);
  }
  return u;
}

Vec3 total_gradient(const PotentialField& field, const Vec3& point)
{
  const auto& cfg = field.config;
  const Vec3 p = clamp_to_workspace(field.scene.bounds, point);
  Vec3 grad = cfg.k_att * (p - field.goal());
  const double height_slack = field.scene.bounds.z_max - p.z();
  for (std::size_t i = 0; i < field.scene.objects.size(); ++i) {
    const double g = field.gains[i];
    if (g == 0.0) continue;
    const auto& obj = field.scene.objects[i];
    const auto [rho, closest] = axis_distance(obj, p);
    if (rho >= cfg.rho0) continue;
    if (rho < kSingularDistance) {
      throw SingularityError("end effector on the axis of object " + std::to_string(obj.id) +
                             " at " + fmt(p));
    }
    const double w = 1.0 / rho - 1.0 / cfg.rho0;
    const Vec3 grad_inv_rho = -(p - closest) / (rho * rho * rho);
    grad += g * ((w + cfg.z_lift * height_slack) * grad_inv_rho - cfg.z_lift * w * Vec3::UnitZ());
  }
  return grad;
}

double planner_xi(const Scene& scene)
{
  return scene.objects.size() < 2 ? 1.0 : clutteredness(scene).xi;
}

Trajectory gen_legible_traj(const Scene& scene, ObjectId target, const FieldConfig& config)
{
  scene.at(target);
  return gen_legible_traj(scene, target, config, planner_xi(scene));
}

Trajectory gen_legible_traj(const Scene& scene, ObjectId target, const FieldConfig& config,
                            double xi)
{
  const PotentialField field = build_field(scene, target, xi, config);
  const Vec3 goal = field.goal();

  Trajectory traj;
  traj.planner = PlannerTag::potential_field;
  traj.target = target;

  Vec3 x = clamp_to_workspace(scene.bounds, scene.start);
  for (int iter = 0; (x - goal).norm() >= config.epsilon && iter < config.max_iters; ++iter) {
    traj.waypoints.push_back(x);
    Vec3 step = -config.k_update * total_gradient(field, x);
    const double len = step.norm();
    if (len > config.max_step) step *= config.max_step / len;
    x = clamp_to_workspace(scene.bounds, x + step);

    const auto n = traj.waypoints.size();
    if (n >= static_cast<std::size_t>(kStallWindow) &&
        (x - traj.waypoints[n - kStallWindow]).norm() < kStallDisplacement) {
      traj.waypoints.push_back(x);
      traj.converged = false;
      throw LocalMinimumError("descent stalled at " + fmt(x) + " after " +
                                  std::to_string(iter + 1) + " iterations, " +
                                  std::to_string((x - goal).norm()) + " m from target " +
                                  std::to_string(target),
                              smooth(std::move(traj), scene, config), x);
    }
  }
  traj.waypoints.push_back(x);
  traj.converged = (x - goal).norm() < config.epsilon;
  return smooth(std::move(traj), scene, config);
}

void monotone_height(std::vector<Vec3>& waypoints)
{
  double running = -std::numeric_limits<double>::infinity();
  for (auto it = waypoints.rbegin(); it != waypoints.rend(); ++it) {
    running = std::max(running, it->z());
    it->z() = running;
  }
}

Trajectory smooth(Trajectory traj, const Scene& scene, const FieldConfig& config)
{
  constexpr int kMaxSweeps = 32;
  for (auto& w : traj.waypoints) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      bool moved = false;
      for (const auto& o : scene.objects) {
        if (o.id == traj.target) continue;
        const double clearance = o.radius + config.clearance_margin;
        Vec2 d = w.head<2>() - o.position;
        const double dist = d.norm();
        if (dist >= clearance) continue;
        // Exactly on the axis: push away from the target.
        if (dist == 0.0) {
          d = o.position - scene.at(traj.target).position;
          if (d.norm() == 0.0) d = Vec2::UnitX();
        }
        w.head<2>() = o.position + d.normalized() * clearance;
        moved = true;
      }
      if (!moved) break;
    }
  }
  monotone_height(traj.waypoints);
  return traj;
}

} // namespace legifield
