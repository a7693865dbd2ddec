#include "legifield/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "legifield/error.hpp"

namespace legifield {

namespace {

using nlohmann::json;

std::string fmt_point(const Vec2& p)
{
  std::ostringstream os;
  os << "(" << p.x() << ", " << p.y() << ")";
  return os.str();
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where)
{
  if (!obj.is_object()) {
    throw ParseError(where + ": expected an object");
  }
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; })) {
      throw ParseError(where + ": unknown key '" + key + "'");
    }
  }
}

double number(const json& obj, const char* key, const std::string& where)
{
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing key '" + key + "'");
  }
  if (!it->is_number()) {
    throw ParseError(where + "." + key + ": expected a number");
  }
  return it->get<double>();
}

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations so generated scenes are portable.
double unit_uniform(std::mt19937_64& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::pair<double, double> standard_normal_pair(std::mt19937_64& rng)
{
  double u1 = 0.0;
  do {
    u1 = unit_uniform(rng);
  } while (u1 <= 0.0);
  const double u2 = unit_uniform(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

bool inside_inflated(const WorkspaceBounds& b, const Vec2& p, double r)
{
  return p.x() > b.x_min + r && p.x() < b.x_max - r && p.y() > b.y_min + r &&
         p.y() < b.y_max - r;
}

} // namespace

void WorkspaceBounds::validate() const
{
  if (!(x_min < x_max)) throw ValidationError("bounds: x_min must be < x_max");
  if (!(y_min < y_max)) throw ValidationError("bounds: y_min must be < y_max");
  if (!(z_max > 0.0)) throw ValidationError("bounds: z_max must be > 0");
  if (!(area() > 0.0)) throw ValidationError("bounds: area must be > 0");
}

void Scene::validate() const
{
  bounds.validate();
  if (objects.empty()) {
    throw ValidationError("objects: scene needs at least one object");
  }
  std::set<ObjectId> ids;
  for (const auto& o : objects) {
    const std::string name = "object " + std::to_string(o.id);
    if (!ids.insert(o.id).second) {
      throw ValidationError(name + ": duplicate id");
    }
    if (!(o.radius > 0.0)) throw ValidationError(name + ": radius must be > 0");
    if (!(o.grasp_height >= 0.0)) {
      throw ValidationError(name + ": grasp_height must be >= 0");
    }
    if (!inside_inflated(bounds, o.position, o.radius)) {
      throw ValidationError(name + ": position " + fmt_point(o.position) +
                            " not inside bounds inflated by radius");
    }
  }
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (std::size_t j = i + 1; j < objects.size(); ++j) {
      const auto& a = objects[i];
      const auto& b = objects[j];
      if ((a.position - b.position).norm() < a.radius + b.radius) {
        throw ValidationError("objects " + std::to_string(a.id) + " and " +
                              std::to_string(b.id) + " overlap");
      }
    }
  }
  if (!(start.z() > 0.0 && start.z() <= bounds.z_max)) {
    throw ValidationError("start: z must be in (0, z_max]");
  }
}

const SceneObject* Scene::find(ObjectId id) const
{
  auto it = std::find_if(objects.begin(), objects.end(),
                         [id](const SceneObject& o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

const SceneObject& Scene::at(ObjectId id) const
{
  if (const auto* o = find(id)) return *o;
  throw UnknownTargetError("unknown object id " + std::to_string(id));
}

double Scene::max_radius() const
{
  double r = 0.0;
  for (const auto& o : objects) r = std::max(r, o.radius);
  return r;
}

Vec3 default_start(const WorkspaceBounds& bounds)
{
  return {bounds.center().x(), bounds.y_min + 0.05, 0.25};
}

Scene scene_from_json(const json& doc)
{
  reject_unknown_keys(doc, {"bounds", "start", "objects"}, "scene");
  Scene scene;

  if (!doc.contains("bounds")) throw ParseError("scene: missing key 'bounds'");
  const auto& b = doc.at("bounds");
  reject_unknown_keys(b, {"x_min", "x_max", "y_min", "y_max", "z_max"}, "bounds");
  scene.bounds = {number(b, "x_min", "bounds"), number(b, "x_max", "bounds"),
                  number(b, "y_min", "bounds"), number(b, "y_max", "bounds"),
                  number(b, "z_max", "bounds")};

  if (!doc.contains("start")) throw ParseError("scene: missing key 'start'");
  const auto& s = doc.at("start");
  if (!s.is_array() || s.size() != 3 ||
      !std::all_of(s.begin(), s.end(), [](const json& v) { return v.is_number(); })) {
    throw ParseError("start: expected [x, y, z]");
  }
  scene.start = {s[0].get<double>(), s[1].get<double>(), s[2].get<double>()};

  if (!doc.contains("objects")) throw ParseError("scene: missing key 'objects'");
  const auto& objs = doc.at("objects");
  if (!objs.is_array()) throw ParseError("objects: expected an array");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const std::string where = "objects[" + std::to_string(i) + "]";
    const auto& o = objs[i];
    reject_unknown_keys(o, {"id", "x", "y", "radius", "grasp_height"}, where);
    if (!o.contains("id") || !o.at("id").is_number_integer()) {
      throw ParseError(where + ".id: expected an integer");
    }
    SceneObject obj;
    obj.id = o.at("id").get<int>();
    obj.position = {number(o, "x", where), number(o, "y", where)};
    obj.radius = number(o, "radius", where);
    obj.grasp_height = number(o, "grasp_height", where);
    scene.objects.push_back(obj);
  }

  scene.validate();
  return scene;
}

json scene_to_json(const Scene& scene)
{
  json objs = json::array();
  for (const auto& o : scene.objects) {
    objs.push_back({{"id", o.id},
                    {"x", o.position.x()},
                    {"y", o.position.y()},
                    {"radius", o.radius},
                    {"grasp_height", o.grasp_height}});
  }
  const auto& b = scene.bounds;
  return {{"bounds",
           {{"x_min", b.x_min}, {"x_max", b.x_max}, {"y_min", b.y_min},
            {"y_max", b.y_max}, {"z_max", b.z_max}}},
          {"start", {scene.start.x(), scene.start.y(), scene.start.z()}},
          {"objects", objs}};
}

Scene load_scene(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string() + ": file not found");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return scene_from_json(doc);
}

void save_scene(const Scene& scene, const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << scene_to_json(scene).dump(2) << "\n";
}

Scene generate_uncluttered_scene(double spacing, int n, const WorkspaceBounds& bounds)
{
  bounds.validate();
  if (n < 2) throw ValidationError("uncluttered: n must be >= 2");
  if (!(spacing > 2.0 * kDefaultRadius)) {
    throw ValidationError("uncluttered: spacing must exceed twice the object radius");
  }
  if (n * spacing > bounds.width()) {
    throw ValidationError("uncluttered: " + std::to_string(n) + " objects at spacing " +
                          std::to_string(spacing) + " do not fit the workspace width");
  }

  Scene scene;
  scene.bounds = bounds;
  scene.start = default_start(bounds);
  const Vec2 c = bounds.center();
  for (int i = 0; i < n; ++i) {
    const double offset = (i - 0.5 * (n - 1)) * spacing;
    scene.objects.push_back(
        {i, Vec2(c.x() + offset, c.y()), kDefaultRadius, kDefaultGraspHeight});
  }
  scene.validate();
  return scene;
}

Scene generate_cluttered_scene(int n, std::uint64_t seed, double min_gap,
                               const WorkspaceBounds& bounds,
                               const ClutterPlacement& placement)
{
  bounds.validate();
  if (n < 1) throw ValidationError("cluttered: n must be >= 1");
  if (!(min_gap >= 0.0)) throw ValidationError("cluttered: min_gap must be >= 0");

  std::mt19937_64 rng(seed);
  const Vec2 c = bounds.center();
  const Vec2 sigma(placement.sigma_fraction * bounds.width(),
                   placement.sigma_fraction * bounds.depth());

  Scene scene;
  scene.bounds = bounds;
  scene.start = default_start(bounds);
  long total_attempts = 0;
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (long a = 0; a < placement.max_attempts_per_object && !placed; ++a) {
      ++total_attempts;
      const auto [gx, gy] = standard_normal_pair(rng);
      const Vec2 p(c.x() + sigma.x() * gx, c.y() + sigma.y() * gy);
      if (!inside_inflated(bounds, p, placement.radius)) continue;
      const bool clear = std::all_of(
          scene.objects.begin(), scene.objects.end(), [&](const SceneObject& o) {
            return (o.position - p).norm() >= o.radius + placement.radius + min_gap;
          });
      if (clear) {
        scene.objects.push_back({i, p, placement.radius, kDefaultGraspHeight});
        placed = true;
      }
    }
    if (!placed) {
      throw PlacementError("cluttered: could not place object " + std::to_string(i) +
                               " of " + std::to_string(n) + " after " +
                               std::to_string(total_attempts) + " attempts",
                           total_attempts);
    }
  }
  scene.validate();
  return scene;
}

NearestObject nearest_object(const Scene& scene, const Vec3& point)
{
  NearestObject best{scene.objects.front().id,
                     (scene.objects.front().grasp_point() - point).norm()};
  for (const auto& o : scene.objects) {
    const double d = (o.grasp_point() - point).norm();
    if (d < best.distance || (d == best.distance && o.id < best.id)) {
      best = {o.id, d};
    }
  }
  return best;
}

} // namespace legifield
