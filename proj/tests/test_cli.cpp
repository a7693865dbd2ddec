#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <regex>
#include <sstream>

#include "legifield/cli.hpp"
#include "legifield/scene.hpp"
#include "legifield/trajectory.hpp"

using namespace legifield;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args)
{
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name)
{
  const auto d = fs::temp_directory_path() / ("legifield_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

const std::string kUncluttered = LEGIFIELD_FIXTURES "/uncluttered.scene";
const std::string kCluttered = LEGIFIELD_FIXTURES "/cluttered_seed7.scene";

std::vector<double> side_y(const std::string& svg, const std::string& tag)
{
  std::vector<double> ys;
  const std::regex path("<path class=\"side " + tag + "\"[^>]* d=\"([^\"]*)\"");
  std::smatch m;
  if (!std::regex_search(svg, m, path)) return ys;
  const std::regex pt("[ML]([0-9.]+),([0-9.]+)");
  const std::string d = m[1];
  for (auto it = std::sregex_iterator(d.begin(), d.end(), pt); it != std::sregex_iterator(); ++it)
    ys.push_back(std::stod((*it)[2]));
  return ys;
}

std::size_t count(const std::string& s, const std::string& needle)
{
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

} // namespace

TEST_CASE("measure")
{
  const auto r = run_cli({"measure", kCluttered});
  CHECK(r.code == cli::kExitOk);
  const std::regex line("scene=\\S+ xi=([0-9]\\.[0-9]{6}) D=([0-9]+\\.[0-9]{6})\n");
  std::smatch m;
  REQUIRE(std::regex_match(r.out, m, line));
  CHECK(std::stod(m[1]) < 0.5);

  const auto two = run_cli({"measure", kCluttered, kUncluttered});
  CHECK(count(two.out, "scene=") == 2);

  const auto missing = run_cli({"measure", "missing.scene"});
  CHECK(missing.code == cli::kExitInputError);
  CHECK(missing.err.find("file not found") != std::string::npos);
}

TEST_CASE("plan")
{
  const auto dir = scratch_dir("plan");
  SUBCASE("single-object scene, monotone z")
  {
    Scene s;
    s.start = {0.5, 0.05, 0.25};
    s.objects.push_back({0, {0.5, 0.4}, 0.03, 0.05});
    save_scene(s, dir / "one.scene");
    const auto r = run_cli({"plan", (dir / "one.scene").string(), "--target", "0", "--planner", "pf",
                        "--out", (dir / "one.csv").string()});
    CHECK(r.code == cli::kExitOk);
    const auto wp = read_trajectory_csv(dir / "one.csv");
    for (std::size_t k = 1; k < wp.size(); ++k) CHECK(wp[k].z() <= wp[k - 1].z() + 1e-9);
    CHECK(slurp(dir / "one.csv").rfind("k,x,y,z\n0,", 0) == 0);
    const auto meta = nlohmann::json::parse(slurp(dir / "one.meta.json"));
    CHECK(meta.at("planner") == "potential_field");
    CHECK(meta.at("converged") == true);
    CHECK(meta.contains("xi"));
    CHECK(meta.at("config").at("field").at("k_att") == 4.0);
  }
  SUBCASE("unknown target")
  {
    const auto r = run_cli({"plan", kUncluttered, "--target", "99", "--out", (dir / "x.csv").string()});
    CHECK(r.code == cli::kExitInputError);
  }
  SUBCASE("both planners on the cluttered fixture")
  {
    const auto pf = dir / "pf.csv";
    const auto bl = dir / "bl.csv";
    CHECK(run_cli({"plan", kCluttered, "--target", "4", "--planner", "pf", "--out", pf.string()}).code == 0);
    CHECK(run_cli({"plan", kCluttered, "--target", "4", "--planner", "baseline", "--out", bl.string()}).code == 0);
    CHECK(max_height(read_trajectory_csv(bl)) > max_height(read_trajectory_csv(pf)));
  }
  SUBCASE("non-convergence exits 3 and still writes")
  {
    std::ofstream(dir / "tight.json") << R"({"field": {"max_iters": 5}})";
    const auto out = dir / "partial.csv";
    const auto r = run_cli({"--config", (dir / "tight.json").string(), "plan", kCluttered,
                        "--target", "4", "--out", out.string()});
    CHECK(r.code == cli::kExitNoConvergence);
    CHECK(fs::exists(out));
    CHECK(nlohmann::json::parse(slurp(sidecar_path(out))).at("converged") == false);
  }
  SUBCASE("bad planner name")
  {
    CHECK(run_cli({"plan", kUncluttered, "--target", "0", "--planner", "rrt", "--out", "x.csv"}).code ==
          cli::kExitInputError);
  }
}

TEST_CASE("compare")
{
  const auto dir = scratch_dir("compare");
  const auto report = dir / "r.json";
  const auto r = run_cli({"compare", kUncluttered, "--targets", "0,2", "--sections", "2", "--observer",
                      "point-position", "--report", report.string()});
  CHECK(r.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(slurp(report));
  CHECK(doc.at("cells").size() == 8);
  for (const auto& c : doc.at("cells")) {
    for (const char* key : {"target", "planner", "section", "rank_distance", "ranked_ids"})
      CHECK(c.contains(key));
  }
  for (const auto& s : doc.at("summary")) {
    for (const char* key : {"planner", "section", "mean", "count"}) CHECK(s.contains(key));
  }
  CHECK(r.out.find("mean") != std::string::npos);

  CHECK(run_cli({"compare", kUncluttered, "--targets", "0,x", "--report", report.string()}).code ==
        cli::kExitInputError);
  CHECK(run_cli({"compare", kUncluttered, "--targets", "12", "--report", report.string()}).code ==
        cli::kExitInputError);
  CHECK(run_cli({"compare", kUncluttered, "--observer", "oracle", "--report", report.string()}).code ==
        cli::kExitInputError);
}

TEST_CASE("plot")
{
  const auto dir = scratch_dir("plot");
  const auto pf = (dir / "pf.csv").string();
  const auto bl = (dir / "bl.csv").string();
  REQUIRE(run_cli({"plan", kCluttered, "--target", "4", "--planner", "pf", "--out", pf}).code == 0);
  REQUIRE(run_cli({"plan", kCluttered, "--target", "4", "--planner", "baseline", "--out", bl}).code == 0);
  const Scene scene = load_scene(kCluttered);

  SUBCASE("one trajectory")
  {
    const auto svg_path = dir / "one.svg";
    REQUIRE(run_cli({"plot", pf, "--scene", kCluttered, "--out", svg_path.string()}).code == 0);
    const auto svg = slurp(svg_path);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "<polyline") == 1);
    CHECK(count(svg, "<circle") == scene.objects.size());
    CHECK(count(svg, "fill=\"#ff7f0e\"") == 1);
  }
  SUBCASE("two trajectories, distinct styles, baseline plateau above")
  {
    const auto svg_path = dir / "two.svg";
    REQUIRE(run_cli({"plot", pf, bl, "--scene", kCluttered, "--out", svg_path.string()}).code == 0);
    const auto svg = slurp(svg_path);
    CHECK(count(svg, "<polyline") == 2);
    std::regex style("<polyline[^>]* stroke=\"([^\"]+)\"[^>]* stroke-dasharray=\"([^\"]+)\"");
    std::vector<std::string> styles;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), style); it != std::sregex_iterator(); ++it)
      styles.push_back((*it)[1].str() + "|" + (*it)[2].str());
    REQUIRE(styles.size() == 2);
    CHECK(styles[0] != styles[1]);

    // screen y grows downward: higher z means smaller y
    const auto pf_y = side_y(svg, "potential_field");
    const auto bl_y = side_y(svg, "baseline");
    REQUIRE_FALSE(pf_y.empty());
    REQUIRE_FALSE(bl_y.empty());
    CHECK(*std::min_element(bl_y.begin(), bl_y.end()) < *std::min_element(pf_y.begin(), pf_y.end()));
  }
  SUBCASE("malformed csv")
  {
    std::ofstream(dir / "bad.csv") << "k,x,y,z\n0,1,oops\n";
    CHECK(run_cli({"plot", (dir / "bad.csv").string(), "--scene", kCluttered, "--out",
               (dir / "bad.svg").string()}).code == cli::kExitInputError);
  }
}

TEST_CASE("gen")
{
  const auto dir = scratch_dir("gen");
  const auto a = dir / "a.scene";
  const auto b = dir / "b.scene";
  CHECK(run_cli({"gen", "cluttered", "--n", "20", "--seed", "7", "--min-gap", "0.06", "--width", "2.0",
             "--depth", "1.2", "--out", a.string()}).code == 0);
  CHECK(slurp(a) == slurp(kCluttered));
  CHECK(run_cli({"gen", "uncluttered", "--n", "5", "--spacing", "0.15", "--width", "2.0", "--depth",
             "1.2", "--out", b.string()}).code == 0);
  CHECK(slurp(b) == slurp(kUncluttered));
  CHECK(run_cli({"gen", "uncluttered", "--spacing", "1.0", "--out", b.string()}).code ==
        cli::kExitInputError);
  CHECK(run_cli({"gen", "scattered", "--out", b.string()}).code == cli::kExitInputError);
}

TEST_CASE("every subcommand is idempotent")
{
  const auto dir = scratch_dir("idem");
  const auto run_all = [&](const std::string& tag) {
    const auto d = dir / tag;
    fs::create_directories(d);
    run_cli({"gen", "cluttered", "--n", "10", "--seed", "3", "--out", (d / "s.scene").string()});
    const auto m = run_cli({"measure", (d / "s.scene").string()});
    run_cli({"plan", (d / "s.scene").string(), "--target", "2", "--out", (d / "p.csv").string()});
    run_cli({"compare", (d / "s.scene").string(), "--report", (d / "r.json").string(), "--traj-dir",
         (d / "traj").string()});
    run_cli({"plot", (d / "p.csv").string(), "--scene", (d / "s.scene").string(), "--out",
         (d / "p.svg").string()});
    return m.out.substr(m.out.find(" xi="));
  };
  CHECK(run_all("a") == run_all("b"));
  for (const auto& e : fs::recursive_directory_iterator(dir / "a")) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), dir / "a");
    auto a = slurp(e.path());
    auto b = slurp(dir / "b" / rel);
    // the report and sidecars embed the scene path
    if (rel.extension() == ".json") {
      a = std::regex_replace(a, std::regex("idem/a/"), "idem/X/");
      b = std::regex_replace(b, std::regex("idem/b/"), "idem/X/");
    }
    CHECK_MESSAGE(a == b, rel.string());
  }
}
