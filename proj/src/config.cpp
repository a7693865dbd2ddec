#include "legifield/config.hpp"

#include <cstdlib>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "legifield/error.hpp"

namespace legifield {

namespace {

using nlohmann::json;

template <typename T> void take(const json& obj, const char* key, T& out, const std::string& where)
{
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + "." + key + ": wrong type");
  }
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where)
{
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [k, _] : obj.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw ParseError(where + ": unknown key '" + k + "'");
  }
}

} // namespace

RunConfig default_run_config()
{
  RunConfig cfg;
  if (const char* env = std::getenv(kSeedEnvVar); env && *env) {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw ParseError(std::string(kSeedEnvVar) + ": not an unsigned integer: " + env);
    }
  }
  return cfg;
}

RunConfig merge_run_config(RunConfig cfg, const json& doc)
{
  only_keys(doc, {"field", "baseline", "sections", "observer", "seed", "min_gap"}, "config");
  if (auto it = doc.find("field"); it != doc.end()) {
    only_keys(*it, {"k_att", "k_rep", "rho0", "k_update", "epsilon", "max_iters", "beta",
                    "sigma_line", "z_lift", "clearance_margin", "max_step"},
              "config.field");
    auto& f = cfg.field;
    take(*it, "k_att", f.k_att, "field");
    take(*it, "k_rep", f.k_rep, "field");
    take(*it, "rho0", f.rho0, "field");
    take(*it, "k_update", f.k_update, "field");
    take(*it, "epsilon", f.epsilon, "field");
    take(*it, "max_iters", f.max_iters, "field");
    take(*it, "beta", f.beta, "field");
    take(*it, "sigma_line", f.sigma_line, "field");
    take(*it, "z_lift", f.z_lift, "field");
    take(*it, "clearance_margin", f.clearance_margin, "field");
    take(*it, "max_step", f.max_step, "field");
  }
  if (auto it = doc.find("baseline"); it != doc.end()) {
    only_keys(*it, {"hover_height", "step_len", "speed_gain"}, "config.baseline");
    take(*it, "hover_height", cfg.baseline.hover_height, "baseline");
    take(*it, "step_len", cfg.baseline.step_len, "baseline");
    take(*it, "speed_gain", cfg.baseline.speed_gain, "baseline");
  }
  take(doc, "sections", cfg.sections, "config");
  take(doc, "seed", cfg.seed, "config");
  take(doc, "min_gap", cfg.min_gap, "config");
  if (auto it = doc.find("observer"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("config.observer: expected a string");
    cfg.observer = observer_from_string(it->get<std::string>());
  }
  return cfg;
}

RunConfig load_run_config(RunConfig base, const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": file not found");
  try {
    return merge_run_config(std::move(base), json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json to_json(const RunConfig& cfg)
{
  const auto& f = cfg.field;
  const auto& b = cfg.baseline;
  return {{"field",
           {{"k_att", f.k_att},
            {"k_rep", f.k_rep},
            {"rho0", f.rho0},
            {"k_update", f.k_update},
            {"epsilon", f.epsilon},
            {"max_iters", f.max_iters},
            {"beta", f.beta},
            {"sigma_line", f.sigma_line},
            {"z_lift", f.z_lift},
            {"clearance_margin", f.clearance_margin},
            {"max_step", f.max_step}}},
          {"baseline",
           {{"hover_height", b.hover_height},
            {"step_len", b.step_len},
            {"speed_gain", b.speed_gain}}},
          {"sections", cfg.sections},
          {"observer", to_string(cfg.observer)},
          {"seed", cfg.seed},
          {"min_gap", cfg.min_gap}};
}

} // namespace legifield
