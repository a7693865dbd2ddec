// Resolved run configuration: defaults < config file < command-line flags.

#pragma once

#include <cstdint>
#include <filesystem>

#include <nlohmann/json_fwd.hpp>

#include "legifield/baseline.hpp"
#include "legifield/legibility.hpp"
#include "legifield/potential_field.hpp"

namespace legifield {

inline constexpr std::uint64_t kDefaultSeed = 7;
inline constexpr const char* kSeedEnvVar = "LEGIFIELD_SEED";

struct RunConfig {
  FieldConfig field;
  BaselineConfig baseline;
  int sections = 2;
  Observer observer = Observer::point_position;
  std::uint64_t seed = kDefaultSeed;
  /// Minimum surface gap between generated cluttered objects, m.
  double min_gap = 0.06;
};

/// Defaults, with the seed taken from LEGIFIELD_SEED when set.
RunConfig default_run_config();

/// Overlays the keys present in `doc` onto `base`. Unknown keys are rejected
/// (ParseError).
RunConfig merge_run_config(RunConfig base, const nlohmann::json& doc);
RunConfig load_run_config(RunConfig base, const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& cfg);

} // namespace legifield
