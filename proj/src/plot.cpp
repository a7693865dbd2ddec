#include "legifield/plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace legifield {

namespace {

constexpr double kTopWidth = 500.0;
constexpr double kSideWidth = 360.0;
constexpr double kPanelHeight = 300.0;
constexpr double kMargin = 30.0;

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string colour_for(const std::optional<PlannerTag>& tag)
{
  if (!tag) return "#d62728";
  return *tag == PlannerTag::potential_field ? "#1f77b4" : "#7f7f7f";
}

constexpr std::array<const char*, 4> kDashes = {"none", "8 4", "3 3", "12 4 3 4"};

} // namespace

std::string render_svg(const Scene& scene, const std::vector<PlotTrace>& traces,
                       std::optional<ObjectId> target)
{
  const auto& b = scene.bounds;
  // top-down: uniform scale, table y grows upward on screen
  const double scale = std::min(kTopWidth / b.width(), kPanelHeight / b.depth());
  const auto tx = [&](double x) { return kMargin + (x - b.x_min) * scale; };
  const auto ty = [&](double y) { return kMargin + (b.y_max - y) * scale; };
  const double side_x0 = 2 * kMargin + kTopWidth + kMargin;
  const auto sx = [&](double frac) { return side_x0 + frac * kSideWidth; };
  const auto sz = [&](double z) { return kMargin + (1.0 - z / b.z_max) * kPanelHeight; };

  const double width = side_x0 + kSideWidth + kMargin;
  const double height = kPanelHeight + 2 * kMargin + 20;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  svg << "<rect x=\"" << num(tx(b.x_min)) << "\" y=\"" << num(ty(b.y_max)) << "\" width=\""
      << num(b.width() * scale) << "\" height=\"" << num(b.depth() * scale)
      << "\" fill=\"#f7f3ea\" stroke=\"#333\"/>\n";
  svg << "<rect x=\"" << num(sx(0)) << "\" y=\"" << num(sz(b.z_max)) << "\" width=\""
      << num(kSideWidth) << "\" height=\"" << num(kPanelHeight)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  svg << "<text x=\"" << num(tx(b.x_min)) << "\" y=\"" << num(height - 8)
      << "\" font-size=\"12\">top view (x, y)</text>\n";
  svg << "<text x=\"" << num(sx(0)) << "\" y=\"" << num(height - 8)
      << "\" font-size=\"12\">height z vs arc length</text>\n";

  for (const auto& o : scene.objects) {
    const bool is_target = target && o.id == *target;
    svg << "<circle cx=\"" << num(tx(o.position.x())) << "\" cy=\"" << num(ty(o.position.y()))
        << "\" r=\"" << num(o.radius * scale) << "\" fill=\""
        << (is_target ? "#ff7f0e" : "#2ca02c") << "\" data-id=\"" << o.id << "\"/>\n";
  }
  const Vec3& s = scene.start;
  svg << "<rect x=\"" << num(tx(s.x()) - 4) << "\" y=\"" << num(ty(s.y()) - 4)
      << "\" width=\"8\" height=\"8\" fill=\"#000\"/>\n";

  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& tr = traces[i];
    const std::string colour = colour_for(tr.planner);
    const std::string dash = kDashes[i % kDashes.size()];
    const std::string tag = tr.planner ? std::string(to_string(*tr.planner)) : "unknown";
    const std::string style = "fill=\"none\" stroke=\"" + colour +
                              "\" stroke-width=\"2\" stroke-dasharray=\"" + dash + "\"";

    svg << "<polyline class=\"top " << tag << "\" data-trace=\"" << i << "\" " << style
        << " points=\"";
    for (std::size_t k = 0; k < tr.waypoints.size(); ++k) {
      svg << (k ? " " : "") << num(tx(tr.waypoints[k].x())) << ","
          << num(ty(tr.waypoints[k].y()));
    }
    svg << "\"/>\n";

    const auto arc = cumulative_arc_length(tr.waypoints);
    const double total = arc.back() > 0 ? arc.back() : 1.0;
    svg << "<path class=\"side " << tag << "\" data-trace=\"" << i << "\" " << style
        << " d=\"";
    for (std::size_t k = 0; k < tr.waypoints.size(); ++k) {
      svg << (k ? " L" : "M") << num(sx(arc[k] / total)) << "," << num(sz(tr.waypoints[k].z()));
    }
    svg << "\"/>\n";

    svg << "<text x=\"" << num(sx(0) + 6) << "\" y=\"" << num(sz(b.z_max) + 14 + 14 * i)
        << "\" font-size=\"11\" fill=\"" << colour << "\">" << tr.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

} // namespace legifield
