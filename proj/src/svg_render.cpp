#include "svbev/svg_render.hpp"

#include <cmath>
#include <cstdio>

namespace svbev {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kScale = 64.0;  // pixels per meter
constexpr double kRange = 6.0;   // meters drawn from center to edge

// Ego footprint drawn as context (matches the sampler's ego hull).
constexpr double kEgoXMin = -1.0;
constexpr double kEgoXMax = 3.8;
constexpr double kEgoHalfW = 0.95;

const char* type_color(const std::string& type_name) {
  if (type_name == "car") return "#4e79a7";
  if (type_name == "suv") return "#f28e2b";
  if (type_name == "mpv") return "#e15759";
  if (type_name == "van") return "#76b7b2";
  if (type_name == "pickup") return "#59a14f";
  if (type_name == "bus") return "#edc948";
  if (type_name == "truck") return "#b07aa1";
  if (type_name == "minicar") return "#ff9da7";
  return "#9c755f";
}

void append_f2(std::string& out, double v) {
  if (v == 0.0) v = 0.0 * std::abs(v);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  out += buf;
}

/// Ego (x fwd, y left) -> SVG (x right, y down): forward up, left leftwards.
void append_svg_xy(std::string& out, GroundPoint p) {
  append_f2(out, kCanvas / 2.0 - kScale * p.y);
  out += ',';
  append_f2(out, kCanvas / 2.0 - kScale * p.x);
}

void append_polygon(std::string& out, std::initializer_list<GroundPoint> points,
                    const char* fill, const char* stroke) {
  out += "<polygon points=\"";
  bool first = true;
  for (const GroundPoint& p : points) {
    if (!first) out += ' ';
    first = false;
    append_svg_xy(out, p);
  }
  out += "\" fill=\"";
  out += fill;
  out += "\" stroke=\"";
  out += stroke;
  out += "\" stroke-width=\"2\"/>\n";
}

}  // namespace

std::string render_frame_svg(const BevMapFrame& frame) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"#fafafa\"/>\n";

  // Meter grid.
  for (int m = -static_cast<int>(kRange); m <= static_cast<int>(kRange); ++m) {
    const double offset = kCanvas / 2.0 + kScale * m;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.2f\" y1=\"0\" x2=\"%.2f\" y2=\"800\" stroke=\"%s\" "
                  "stroke-width=\"1\"/>\n",
                  offset, offset, m == 0 ? "#c0c0c0" : "#e8e8e8");
    out += buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"0\" y1=\"%.2f\" x2=\"800\" y2=\"%.2f\" stroke=\"%s\" "
                  "stroke-width=\"1\"/>\n",
                  offset, offset, m == 0 ? "#c0c0c0" : "#e8e8e8");
    out += buf;
  }

  // Ego marker: footprint plus a forward wedge at the origin.
  append_polygon(out,
                 {{kEgoXMax, kEgoHalfW}, {kEgoXMin, kEgoHalfW}, {kEgoXMin, -kEgoHalfW},
                  {kEgoXMax, -kEgoHalfW}},
                 "#d0d8e8", "#506080");
  append_polygon(out, {{kEgoXMax + 0.45, 0.0}, {kEgoXMax - 0.25, 0.35}, {kEgoXMax - 0.25, -0.35}},
                 "#506080", "#506080");

  for (const BevBox& t : frame.targets) {
    append_polygon(out, {t.a, t.b, t.d, t.c}, "none", type_color(t.type_name));
    // Heading arrow from the center toward the front edge.
    const Vec2 dir = heading_dir(t.heading);
    const double len = 0.45 * distance(t.a, t.b);
    const GroundPoint tip = offset(t.center, len, dir);
    out += "<line x1=\"";
    append_f2(out, kCanvas / 2.0 - kScale * t.center.y);
    out += "\" y1=\"";
    append_f2(out, kCanvas / 2.0 - kScale * t.center.x);
    out += "\" x2=\"";
    append_f2(out, kCanvas / 2.0 - kScale * tip.y);
    out += "\" y2=\"";
    append_f2(out, kCanvas / 2.0 - kScale * tip.x);
    out += "\" stroke=\"";
    out += type_color(t.type_name);
    out += "\" stroke-width=\"2\"/>\n";
    const GroundPoint barb_l = offset(offset(tip, -0.3, dir), 0.18, left_dir(t.heading));
    const GroundPoint barb_r = offset(offset(tip, -0.3, dir), -0.18, left_dir(t.heading));
    append_polygon(out, {tip, barb_l, barb_r}, type_color(t.type_name), type_color(t.type_name));

    out += "<text x=\"";
    append_f2(out, kCanvas / 2.0 - kScale * t.center.y + 6.0);
    out += "\" y=\"";
    append_f2(out, kCanvas / 2.0 - kScale * t.center.x - 6.0);
    out += "\" font-family=\"monospace\" font-size=\"14\" fill=\"#303030\">";
    out += std::to_string(t.obj_id);
    out += "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_frame_text(const BevMapFrame& frame) {
  std::string out = "frame " + std::to_string(frame.frame_id) + "\n";
  out += "  id  type      p_x      p_y  heading_deg\n";
  char buf[128];
  for (const BevBox& t : frame.targets) {
    std::snprintf(buf, sizeof(buf), "%4llu  %-8s %7.3f  %7.3f  %+9.3f\n",
                  static_cast<unsigned long long>(t.obj_id), t.type_name.c_str(), t.center.x,
                  t.center.y, rad_to_deg(t.heading));
    out += buf;
  }
  return out;
}

}  // namespace svbev
