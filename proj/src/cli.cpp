#include "legifield/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "legifield/baseline.hpp"
#include "legifield/clutter.hpp"
#include "legifield/config.hpp"
#include "legifield/error.hpp"
#include "legifield/legibility.hpp"
#include "legifield/plot.hpp"
#include "legifield/potential_field.hpp"
#include "legifield/scene.hpp"
#include "legifield/trajectory.hpp"

namespace legifield::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config_path;

  std::vector<std::string> measure_scenes;

  std::string scene;
  int target = 0;
  std::string planner = "pf";
  std::string out;

  std::string targets = "all";
  std::optional<int> sections;
  std::optional<std::string> observer;
  std::string report;
  std::string traj_dir;
  bool serial = false;

  std::vector<std::string> plot_csvs;

  std::string gen_kind;
  std::optional<int> gen_n;
  std::optional<std::uint64_t> seed;
  double spacing = 0.15;
  std::optional<double> min_gap;
  double width = 1.0;
  double depth = 0.6;
};

RunConfig resolve_config(const Options& opt)
{
  RunConfig cfg = default_run_config();
  if (!opt.config_path.empty()) cfg = load_run_config(cfg, opt.config_path);
  if (opt.sections) cfg.sections = *opt.sections;
  if (opt.observer) cfg.observer = observer_from_string(*opt.observer);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.min_gap) cfg.min_gap = *opt.min_gap;
  return cfg;
}

std::vector<ObjectId> parse_targets(const std::string& list, const Scene& scene)
{
  std::vector<ObjectId> ids;
  if (list == "all") {
    for (const auto& o : scene.objects) ids.push_back(o.id);
    return ids;
  }
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      ids.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("--targets: bad id '" + item + "'");
    }
  }
  if (ids.empty()) throw ParseError("--targets: empty list");
  return ids;
}

std::string xml_escape(const std::string& s)
{
  std::string r;
  for (char c : s) {
    switch (c) {
    case '&': r += "&amp;"; break;
    case '<': r += "&lt;"; break;
    case '>': r += "&gt;"; break;
    case '"': r += "&quot;"; break;
    default: r += c;
    }
  }
  return r;
}

void write_text(const fs::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

int cmd_measure(const Options& opt, std::ostream& out)
{
  for (const auto& path : opt.measure_scenes) {
    const Scene scene = load_scene(path);
    const auto r = clutteredness(scene);
    char buf[64];
    std::snprintf(buf, sizeof buf, " xi=%.6f D=%.6f", r.xi, r.divergence);
    out << "scene=" << path << buf << "\n";
  }
  return kExitOk;
}

int cmd_plan(const Options& opt, const RunConfig& cfg, std::ostream& err)
{
  const Scene scene = load_scene(opt.scene);
  scene.at(opt.target);
  const PlannerTag tag = planner_tag_from_string(opt.planner);
  const double xi = planner_xi(scene);
  const auto cfg_json = to_json(cfg);

  if (tag == PlannerTag::baseline) {
    const auto traj =
        gen_baseline_traj(scene, opt.target, cfg.baseline, cfg.field.clearance_margin);
    write_trajectory_files(traj, xi, cfg_json, opt.out);
    return kExitOk;
  }
  try {
    const auto traj = gen_legible_traj(scene, opt.target, cfg.field, xi);
    write_trajectory_files(traj, xi, cfg_json, opt.out);
    if (!traj.converged) {
      err << "error: planner did not converge within " << cfg.field.max_iters
          << " iterations\n";
      return kExitNoConvergence;
    }
    return kExitOk;
  } catch (const LocalMinimumError& e) {
    write_trajectory_files(e.partial(), xi, cfg_json, opt.out);
    err << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  }
}

int cmd_compare(const Options& opt, const RunConfig& cfg, std::ostream& out)
{
  const Scene scene = load_scene(opt.scene);
  CompareOptions copt;
  copt.field = cfg.field;
  copt.baseline = cfg.baseline;
  copt.n_sections = cfg.sections;
  copt.observer = cfg.observer;
  copt.parallel = !opt.serial;
  if (copt.n_sections < 1) throw ValidationError("--sections must be >= 1");

  const auto report = compare_planners(scene, parse_targets(opt.targets, scene), copt);
  auto doc = report_to_json(report, opt.scene);
  doc["config"] = to_json(cfg);
  write_text(opt.report, doc.dump(2) + "\n");

  if (!opt.traj_dir.empty()) {
    fs::create_directories(opt.traj_dir);
    const auto cfg_json = to_json(cfg);
    for (const auto& p : report.trajectories) {
      const auto name = "target" + std::to_string(p.trajectory.target) + "_" +
                        std::string(to_string(p.trajectory.planner)) + ".csv";
      write_trajectory_files(p.trajectory, p.xi, cfg_json, fs::path(opt.traj_dir) / name);
    }
  }

  print_report_table(report, out);
  return report.cells.empty() ? kExitNoConvergence : kExitOk;
}

int cmd_plot(const Options& opt, std::ostream& out)
{
  const Scene scene = load_scene(opt.scene);
  std::vector<PlotTrace> traces;
  std::optional<ObjectId> target;
  for (const auto& csv : opt.plot_csvs) {
    PlotTrace tr;
    tr.waypoints = read_trajectory_csv(csv);
    const auto meta = read_sidecar(csv);
    if (meta) {
      tr.planner = meta->planner;
      if (!target) target = meta->target;
    }
    tr.label = xml_escape(fs::path(csv).filename().string() + " (" +
                          (meta ? std::string(to_string(meta->planner)) : "unknown") + ")");
    traces.push_back(std::move(tr));
  }
  write_text(opt.out, render_svg(scene, traces, target));
  out << "wrote " << opt.out << "\n";
  return kExitOk;
}

int cmd_gen(const Options& opt, const RunConfig& cfg, std::ostream& out)
{
  WorkspaceBounds bounds;
  bounds.x_max = opt.width;
  bounds.y_max = opt.depth;
  bounds.validate();
  Scene scene;
  if (opt.gen_kind == "uncluttered") {
    scene = generate_uncluttered_scene(opt.spacing, opt.gen_n.value_or(5), bounds);
  } else {
    scene = generate_cluttered_scene(opt.gen_n.value_or(20), cfg.seed, cfg.min_gap, bounds);
  }
  save_scene(scene, opt.out);
  out << "wrote " << opt.out << " (" << scene.objects.size() << " objects)\n";
  return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Clutteredness measure and legible grasp trajectory planning", "legifield"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--config", opt.config_path, "JSON run configuration")->check(CLI::ExistingFile);

  auto* measure = app.add_subcommand("measure", "Print the clutteredness of scenes");
  measure->add_option("scenes", opt.measure_scenes, "Scene files")->required();

  auto* plan = app.add_subcommand("plan", "Plan a trajectory to one target");
  plan->add_option("scene", opt.scene, "Scene file")->required();
  plan->add_option("--target", opt.target, "Target object id")->required();
  plan->add_option("--planner", opt.planner, "pf or baseline")
      ->check(CLI::IsMember({"pf", "potential_field", "baseline"}));
  plan->add_option("--out", opt.out, "Output CSV")->required();

  auto* compare = app.add_subcommand("compare", "Compare planners with a simulated observer");
  compare->add_option("scene", opt.scene, "Scene file")->required();
  compare->add_option("--targets", opt.targets, "Comma-separated ids or 'all'");
  compare->add_option("--sections", opt.sections, "Number of trajectory sections");
  compare->add_option("--observer", opt.observer, "point-position or velocity")
      ->check(CLI::IsMember({"point-position", "velocity"}));
  compare->add_option("--report", opt.report, "Output JSON report")->required();
  compare->add_option("--traj-dir", opt.traj_dir, "Also write every planned trajectory here");
  compare->add_flag("--serial", opt.serial, "Evaluate targets on one thread");

  auto* plot = app.add_subcommand("plot", "Render trajectories to SVG");
  plot->add_option("trajectories", opt.plot_csvs, "Trajectory CSV files")->required();
  plot->add_option("--scene", opt.scene, "Scene file")->required();
  plot->add_option("--out", opt.out, "Output SVG")->required();

  auto* gen = app.add_subcommand("gen", "Generate a fixture scene");
  gen->add_option("kind", opt.gen_kind, "uncluttered or cluttered")
      ->required()
      ->check(CLI::IsMember({"uncluttered", "cluttered"}));
  gen->add_option("--n", opt.gen_n, "Object count");
  gen->add_option("--seed", opt.seed, "Random seed (cluttered)");
  gen->add_option("--spacing", opt.spacing, "Object spacing, m (uncluttered)");
  gen->add_option("--min-gap", opt.min_gap, "Minimum surface gap, m (cluttered)");
  gen->add_option("--width", opt.width, "Table width along x, m");
  gen->add_option("--depth", opt.depth, "Table depth along y, m");
  gen->add_option("--out", opt.out, "Output scene file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    const RunConfig cfg = resolve_config(opt);
    if (measure->parsed()) return cmd_measure(opt, out);
    if (plan->parsed()) return cmd_plan(opt, cfg, err);
    if (compare->parsed()) return cmd_compare(opt, cfg, out);
    if (plot->parsed()) return cmd_plot(opt, out);
    return cmd_gen(opt, cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

} // namespace legifield::cli
