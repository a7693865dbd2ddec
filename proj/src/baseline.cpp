#include "legifield/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "legifield/error.hpp"

namespace legifield {

namespace {

// Appends points from `from` (exclusive) to `to` (inclusive) along z.
void vertical_leg(std::vector<Vec3>& out, const Vec3& from, double z_to, double step_len)
{
  const double dz = z_to - from.z();
  const auto n = static_cast<int>(std::ceil(std::abs(dz) / step_len));
  for (int k = 1; k <= n; ++k) {
    Vec3 p = from;
    p.z() = k == n ? z_to : from.z() + std::copysign(k * step_len, dz);
    out.push_back(p);
  }
}

} // namespace

void BaselineConfig::validate(const Scene& scene, double clearance) const
{
  if (!(step_len > 0)) throw ValidationError("baseline config: step_len must be > 0");
  if (!(speed_gain > 0 && speed_gain < 1)) {
    throw ValidationError("baseline config: speed_gain must be in (0, 1)");
  }
  if (hover_height > scene.bounds.z_max) {
    throw ValidationError("baseline config: hover_height exceeds z_max");
  }
  double top = 0.0;
  for (const auto& o : scene.objects) top = std::max(top, o.grasp_height);
  if (!(hover_height > top + clearance)) {
    throw ValidationError("baseline config: hover_height must clear the tallest object");
  }
}

Trajectory gen_baseline_traj(const Scene& scene, ObjectId target, const BaselineConfig& config,
                             double clearance)
{
  const SceneObject& tgt = scene.at(target);
  config.validate(scene, clearance);

  Trajectory traj;
  traj.planner = PlannerTag::baseline;
  traj.target = target;
  traj.converged = true;

  auto& wp = traj.waypoints;
  wp.push_back(scene.start);
  vertical_leg(wp, scene.start, config.hover_height, config.step_len);

  const Vec2 from = wp.back().head<2>();
  const Vec2 to = tgt.position;
  const double total = (to - from).norm();
  double travelled = 0.0;
  while (travelled < total) {
    const double remaining = total - travelled;
    const double step = std::max(config.speed_gain * remaining, config.step_len);
    if (step >= remaining) {
      wp.emplace_back(to.x(), to.y(), config.hover_height);
      break;
    }
    travelled += step;
    const Vec2 p = from + (to - from) * (travelled / total);
    wp.emplace_back(p.x(), p.y(), config.hover_height);
  }

  vertical_leg(wp, wp.back(), tgt.grasp_height, config.step_len);
  return traj;
}

} // namespace legifield
