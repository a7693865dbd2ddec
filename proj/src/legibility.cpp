#include "legifield/legibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>

#include <nlohmann/json.hpp>

#include "legifield/error.hpp"

namespace legifield {

std::string_view to_string(Observer observer)
{
  switch (observer) {
  case Observer::point_position: return "point-position";
  case Observer::velocity_extrapolation: return "velocity";
  }
  return "unknown";
}

Observer observer_from_string(std::string_view s)
{
  if (s == "point-position" || s == "point_position") return Observer::point_position;
  if (s == "velocity" || s == "velocity_extrapolation") return Observer::velocity_extrapolation;
  throw ParseError("unknown observer '" + std::string(s) + "'");
}

std::vector<std::vector<Vec3>> section_trajectory(const Trajectory& traj, int n_sections)
{
  const auto& wp = traj.waypoints;
  if (n_sections < 1) throw TooFewWaypointsError("n_sections must be >= 1");
  const auto n_sec = static_cast<std::size_t>(n_sections);
  if (wp.size() < n_sec) {
    throw TooFewWaypointsError("trajectory has " + std::to_string(wp.size()) +
                               " waypoints, fewer than " + std::to_string(n_sections) +
                               " sections");
  }

  const auto s = cumulative_arc_length(wp);
  const double total = s.back();
  std::vector<std::vector<Vec3>> prefixes;
  prefixes.reserve(n_sec);
  std::ptrdiff_t prev_end = -1;
  for (std::size_t k = 1; k <= n_sec; ++k) {
    std::ptrdiff_t end = static_cast<std::ptrdiff_t>(wp.size()) - 1;
    if (k < n_sec) {
      const double cut = total * static_cast<double>(k) / static_cast<double>(n_sec);
      const double tol = 1e-12 * std::max(1.0, total);
      // last waypoint whose arc length does not pass the cut
      const auto it = std::upper_bound(s.begin(), s.end(), cut + tol);
      end = std::distance(s.begin(), it) - 1;
      const auto latest = static_cast<std::ptrdiff_t>(wp.size() - 1 - (n_sec - k));
      end = std::clamp(end, prev_end + 1, latest);
    }
    prefixes.emplace_back(wp.begin(), wp.begin() + end + 1);
    prev_end = end;
  }
  return prefixes;
}

RankedGuess observer_rank(const Scene& scene, const std::vector<Vec3>& prefix, Observer observer,
                          int section)
{
  if (prefix.empty()) throw TooFewWaypointsError("observer needs a non-empty prefix");
  const Vec3& tip = prefix.back();

  Vec3 heading = Vec3::Zero();
  if (observer == Observer::velocity_extrapolation && prefix.size() >= 2) {
    heading = tip - prefix[prefix.size() - 2];
  }
  const bool use_ray = heading.norm() > 0.0;
  if (use_ray) heading.normalize();

  struct Key {
    double primary;
    double secondary;
    ObjectId id;
  };
  std::vector<Key> keys;
  keys.reserve(scene.objects.size());
  for (const auto& o : scene.objects) {
    const Vec3 q = o.grasp_point();
    const double to_tip = (q - tip).norm();
    double primary = to_tip;
    if (use_ray) {
      const double t = std::max(0.0, (q - tip).dot(heading));
      primary = (q - (tip + t * heading)).norm();
    }
    keys.push_back({primary, to_tip, o.id});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.primary != b.primary) return a.primary < b.primary;
    if (a.secondary != b.secondary) return a.secondary < b.secondary;
    return a.id < b.id;
  });

  RankedGuess guess;
  guess.section = section;
  const auto n = std::min(kMaxRankedGuesses, keys.size());
  for (std::size_t i = 0; i < n; ++i) guess.ranked.push_back(keys[i].id);
  return guess;
}

namespace {

struct Score {
  double distance;
  bool ranked;
};

Score score_guess(const Scene& scene, const RankedGuess& guess, ObjectId target)
{
  const Vec2 t = scene.at(target).position;
  double sum = 0.0;
  for (ObjectId id : guess.ranked) {
    if (id == target) return {sum, true};
    sum += (scene.at(id).position - t).norm();
  }
  return {sum, false};
}

std::string join_ids(const std::vector<ObjectId>& ids)
{
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ids[i]);
  }
  return s;
}

struct TargetResult {
  std::vector<ComparisonCell> cells;
  std::vector<ComparisonFailure> failures;
  std::vector<PlannedTrajectory> trajectories;
};

TargetResult evaluate_target(const Scene& scene, ObjectId target, double xi,
                             const CompareOptions& opt)
{
  TargetResult out;
  for (PlannerTag planner : {PlannerTag::potential_field, PlannerTag::baseline}) {
    try {
      Trajectory traj =
          planner == PlannerTag::potential_field
              ? gen_legible_traj(scene, target, opt.field, xi)
              : gen_baseline_traj(scene, target, opt.baseline, opt.field.clearance_margin);
      if (!traj.converged) {
        throw Error("planner did not converge within " + std::to_string(opt.field.max_iters) +
                    " iterations");
      }
      const auto prefixes = section_trajectory(traj, opt.n_sections);
      for (std::size_t k = 0; k < prefixes.size(); ++k) {
        const int section = static_cast<int>(k) + 1;
        const RankedGuess guess = observer_rank(scene, prefixes[k], opt.observer, section);
        const Score score = score_guess(scene, guess, target);
        out.cells.push_back(
            {target, planner, section, score.distance, guess.ranked, score.ranked});
      }
      out.trajectories.push_back({std::move(traj), xi});
    } catch (const Error& e) {
      out.failures.push_back({target, planner, e.what()});
    }
  }
  return out;
}

} // namespace

double rank_distance(const Scene& scene, const RankedGuess& guess, ObjectId target)
{
  const Score s = score_guess(scene, guess, target);
  if (!s.ranked) {
    throw TargetUnrankedError("target " + std::to_string(target) +
                              " not among ranked guesses [" + join_ids(guess.ranked) + "]");
  }
  return s.distance;
}

ComparisonReport compare_planners(const Scene& scene, const std::vector<ObjectId>& targets,
                                  const CompareOptions& options)
{
  if (targets.empty()) throw ValidationError("compare: no targets given");
  for (ObjectId t : targets) scene.at(t);
  const double xi = planner_xi(scene);

  std::vector<TargetResult> results(targets.size());
  if (options.parallel && targets.size() > 1) {
    std::vector<std::future<TargetResult>> jobs;
    jobs.reserve(targets.size());
    for (ObjectId t : targets) {
      jobs.push_back(std::async(std::launch::async, [&scene, t, xi, &options] {
        return evaluate_target(scene, t, xi, options);
      }));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < targets.size(); ++i) {
      results[i] = evaluate_target(scene, targets[i], xi, options);
    }
  }

  ComparisonReport report;
  report.observer = options.observer;
  report.n_sections = options.n_sections;
  for (auto& r : results) {
    std::move(r.cells.begin(), r.cells.end(), std::back_inserter(report.cells));
    std::move(r.failures.begin(), r.failures.end(), std::back_inserter(report.failures));
    std::move(r.trajectories.begin(), r.trajectories.end(),
              std::back_inserter(report.trajectories));
  }

  for (PlannerTag planner : {PlannerTag::potential_field, PlannerTag::baseline}) {
    for (int section = 1; section <= options.n_sections; ++section) {
      double sum = 0.0;
      int count = 0;
      for (const auto& c : report.cells) {
        if (c.planner == planner && c.section == section) {
          sum += c.rank_distance;
          ++count;
        }
      }
      report.summary.push_back(
          {planner, section, count ? sum / count : std::numeric_limits<double>::quiet_NaN(),
           count});
    }
  }
  return report;
}

double summary_mean(const ComparisonReport& report, PlannerTag planner, int section)
{
  for (const auto& row : report.summary) {
    if (row.planner == planner && row.section == section) return row.mean;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

nlohmann::json report_to_json(const ComparisonReport& report, const std::string& scene_path)
{
  using nlohmann::json;
  json cells = json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"target", c.target},
                     {"planner", to_string(c.planner)},
                     {"section", c.section},
                     {"rank_distance", c.rank_distance},
                     {"ranked_ids", c.ranked_ids},
                     {"target_ranked", c.target_ranked}});
  }
  json summary = json::array();
  for (const auto& s : report.summary) {
    summary.push_back({{"planner", to_string(s.planner)},
                       {"section", s.section},
                       {"mean", s.count ? json(s.mean) : json(nullptr)},
                       {"count", s.count}});
  }
  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back(
        {{"target", f.target}, {"planner", to_string(f.planner)}, {"error", f.error}});
  }
  return {{"scene", scene_path},
          {"observer", to_string(report.observer)},
          {"sections", report.n_sections},
          {"cells", cells},
          {"summary", summary},
          {"failures", failures}};
}

void print_report_table(const ComparisonReport& report, std::ostream& os)
{
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-16s %8s %12s %6s\n", "planner", "section", "mean [m]",
                "count");
  os << buf;
  for (const auto& s : report.summary) {
    std::snprintf(buf, sizeof buf, "%-16s %8d %12.6f %6d\n",
                  std::string(to_string(s.planner)).c_str(), s.section, s.mean, s.count);
    os << buf;
  }

  // per-target: one column per (planner, section)
  std::map<ObjectId, std::map<std::pair<int, int>, double>> by_target;
  for (const auto& c : report.cells) {
    by_target[c.target][{static_cast<int>(c.planner), c.section}] = c.rank_distance;
  }
  os << "\n";
  std::snprintf(buf, sizeof buf, "%-8s", "target");
  os << buf;
  for (PlannerTag p : {PlannerTag::potential_field, PlannerTag::baseline}) {
    for (int sec = 1; sec <= report.n_sections; ++sec) {
      std::snprintf(buf, sizeof buf, " %12s",
                    (std::string(p == PlannerTag::potential_field ? "pf" : "baseline") + "/s" +
                     std::to_string(sec))
                        .c_str());
      os << buf;
    }
  }
  os << "\n";
  for (const auto& [target, cols] : by_target) {
    std::snprintf(buf, sizeof buf, "%-8d", target);
    os << buf;
    for (PlannerTag p : {PlannerTag::potential_field, PlannerTag::baseline}) {
      for (int sec = 1; sec <= report.n_sections; ++sec) {
        auto it = cols.find({static_cast<int>(p), sec});
        if (it == cols.end()) {
          std::snprintf(buf, sizeof buf, " %12s", "-");
        } else {
          std::snprintf(buf, sizeof buf, " %12.6f", it->second);
        }
        os << buf;
      }
    }
    os << "\n";
  }
  for (const auto& f : report.failures) {
    os << "failed: target " << f.target << " (" << to_string(f.planner) << "): " << f.error
       << "\n";
  }
}

} // namespace legifield
