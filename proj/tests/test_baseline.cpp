#include <doctest.h>

#include "legifield/baseline.hpp"
#include "legifield/error.hpp"
#include "legifield/potential_field.hpp"

using namespace legifield;

namespace {

// indices of the first and last waypoint at hover height
std::pair<std::size_t, std::size_t> plateau(const Trajectory& t, double hover)
{
  std::size_t a = 0;
  while (t.waypoints[a].z() != hover) ++a;
  std::size_t b = t.waypoints.size() - 1;
  while (t.waypoints[b].z() != hover) --b;
  return {a, b};
}

} // namespace

TEST_CASE("start already above the target")
{
  Scene s;
  s.objects.push_back({0, {0.5, 0.3}, 0.03, 0.05});
  s.start = {0.5, 0.3, 0.2};
  BaselineConfig cfg;
  const auto t = gen_baseline_traj(s, 0, cfg);
  CHECK(t.converged);
  CHECK(t.planner == PlannerTag::baseline);
  for (const auto& w : t.waypoints) CHECK(w.head<2>() == Vec2(0.5, 0.3));
  CHECK(max_height(t.waypoints) == cfg.hover_height);
  CHECK(t.waypoints.back() == s.objects[0].grasp_point());
}

TEST_CASE("middle object of the uncluttered fixture")
{
  const Scene s = load_scene(LEGIFIELD_FIXTURES "/uncluttered.scene");
  BaselineConfig cfg;
  const auto t = gen_baseline_traj(s, 2, cfg);
  CHECK(max_height(t.waypoints) == cfg.hover_height);
  CHECK((t.waypoints.back() - s.at(2).grasp_point()).norm() < FieldConfig{}.epsilon);
}

TEST_CASE("shape: rise, plateau, drop, collinear traverse")
{
  const Scene s = generate_cluttered_scene(20, 7, 0.01);
  BaselineConfig cfg;
  for (const auto& o : s.objects) {
    const auto t = gen_baseline_traj(s, o.id, cfg);
    const auto& wp = t.waypoints;
    const auto [a, b] = plateau(t, cfg.hover_height);
    for (std::size_t k = 1; k <= a; ++k) CHECK(wp[k].z() >= wp[k - 1].z());
    for (std::size_t k = a; k <= b; ++k) CHECK(wp[k].z() == cfg.hover_height);
    for (std::size_t k = b + 1; k < wp.size(); ++k) CHECK(wp[k].z() <= wp[k - 1].z());

    const Vec2 p0 = s.start.head<2>();
    const Vec2 dir = o.position - p0;
    for (std::size_t k = a; k <= b; ++k) {
      const Vec2 d = wp[k].head<2>() - p0;
      CHECK(std::abs(dir.x() * d.y() - dir.y() * d.x()) <= 1e-9);
    }
    for (std::size_t k = a + 2; k <= b; ++k) {
      const double prev = (wp[k - 1] - wp[k - 2]).norm();
      CHECK((wp[k] - wp[k - 1]).norm() <= prev + 1e-12);
    }
  }
}

TEST_CASE("baseline config validation")
{
  const Scene s = generate_uncluttered_scene(0.15, 3);
  BaselineConfig c;
  c.hover_height = 0.6;
  CHECK_THROWS_AS(gen_baseline_traj(s, 0, c), ValidationError);
  c = {};
  c.hover_height = 0.06;
  CHECK_THROWS_AS(gen_baseline_traj(s, 0, c), ValidationError);
  c = {};
  c.step_len = 0;
  CHECK_THROWS_AS(gen_baseline_traj(s, 0, c), ValidationError);
  CHECK_THROWS_AS(gen_baseline_traj(s, 42, BaselineConfig{}), UnknownTargetError);
}
