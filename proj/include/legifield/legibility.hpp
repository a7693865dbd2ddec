// Simulated-observer legibility evaluation.
//
// A trajectory is cut into cumulative arc-length sections. After each
// section a mechanical observer ranks the objects it believes are the
// target; the rank distance sums, over the wrong guesses made before the
// target is named, each guess's planar distance to the target.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "legifield/baseline.hpp"
#include "legifield/potential_field.hpp"
#include "legifield/scene.hpp"
#include "legifield/trajectory.hpp"

namespace legifield {

inline constexpr std::size_t kMaxRankedGuesses = 5;

enum class Observer { point_position, velocity_extrapolation };

std::string_view to_string(Observer observer);
/// Accepts "point-position" / "point_position" and "velocity" /
/// "velocity_extrapolation". Throws ParseError.
Observer observer_from_string(std::string_view s);

struct RankedGuess {
  int section = 0;
  std::vector<ObjectId> ranked; ///< rank 1 first, at most kMaxRankedGuesses
};

/// n_sections nested prefixes ending at equal arc-length fractions k/n (the
/// last waypoint not past the cut). Each prefix is strictly longer than the
/// previous; the last is the whole trajectory. Throws TooFewWaypointsError.
std::vector<std::vector<Vec3>> section_trajectory(const Trajectory& traj, int n_sections);

/// Ranks objects as seen after `prefix`. point_position: ascending 3-D
/// distance from the last waypoint to each grasp point. velocity_extrapolation:
/// ascending distance from each grasp point to the ray along the last step,
/// ties by distance to the last waypoint; falls back to point_position when
/// the prefix has no motion. Remaining ties go to the lowest id.
RankedGuess observer_rank(const Scene& scene, const std::vector<Vec3>& prefix, Observer observer,
                          int section = 0);

/// Throws TargetUnrankedError when the target is missing from the guess.
double rank_distance(const Scene& scene, const RankedGuess& guess, ObjectId target);

struct ComparisonCell {
  ObjectId target;
  PlannerTag planner;
  int section; ///< 1-based
  double rank_distance;
  std::vector<ObjectId> ranked_ids;
  /// False when the observer never named the target; rank_distance then sums
  /// every listed guess.
  bool target_ranked;
};

struct ComparisonFailure {
  ObjectId target;
  PlannerTag planner;
  std::string error;
};

struct SummaryRow {
  PlannerTag planner;
  int section;
  double mean;
  int count;
};

struct PlannedTrajectory {
  Trajectory trajectory;
  double xi;
};

struct ComparisonReport {
  Observer observer = Observer::point_position;
  int n_sections = 2;
  std::vector<ComparisonCell> cells;
  std::vector<ComparisonFailure> failures;
  std::vector<SummaryRow> summary;
  std::vector<PlannedTrajectory> trajectories; ///< every successful plan
};

struct CompareOptions {
  FieldConfig field;
  BaselineConfig baseline;
  int n_sections = 2;
  Observer observer = Observer::point_position;
  bool parallel = true;
};

/// Plans both planners for every target, sections, observes and scores.
/// Planner failures are recorded per (target, planner). Deterministic.
/// Throws UnknownTargetError for ids not in the scene, ValidationError for
/// an empty target list.
ComparisonReport compare_planners(const Scene& scene, const std::vector<ObjectId>& targets,
                                  const CompareOptions& options);

/// Mean score for (planner, section); NaN when there are no cells.
double summary_mean(const ComparisonReport& report, PlannerTag planner, int section);

nlohmann::json report_to_json(const ComparisonReport& report, const std::string& scene_path);
void print_report_table(const ComparisonReport& report, std::ostream& os);

} // namespace legifield
