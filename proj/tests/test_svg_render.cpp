#include <doctest.h>

#include "helpers.hpp"
#include "svbev/bev_generator.hpp"
#include "svbev/svg_render.hpp"

using namespace svbev;

namespace {

BevMapFrame one_box_frame() {
  BevMapFrame frame;
  frame.frame_id = 0;
  const auto spec = svbev::test::default_catalog().lookup("car").value();
  PoseEstimate pose;
  pose.center = {1.0, -1.0};
  pose.heading = 0.0;
  frame.targets.push_back(corners_from_pose(pose, spec, 1, "car"));
  return frame;
}

size_t count_occurrences(const std::string& text, const std::string& needle) {
  size_t count = 0;
  for (size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("render_frame_svg: one box yields a rectangle, an arrow, and a label") {
  const std::string svg = render_frame_svg(one_box_frame());
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // Ego footprint + wedge are 2 polygons; the target adds its rectangle and
  // the arrowhead; the arrow shaft is a line beyond the grid lines.
  CHECK(count_occurrences(svg, "<polygon") == 4);
  CHECK(count_occurrences(svg, "<text") == 1);
  CHECK(svg.find(">1</text>") != std::string::npos);
}

TEST_CASE("render_frame_svg: empty frame shows the ego marker only") {
  BevMapFrame frame;
  frame.frame_id = 3;
  const std::string svg = render_frame_svg(frame);
  CHECK(count_occurrences(svg, "<polygon") == 2);
  CHECK(count_occurrences(svg, "<text") == 0);
}

TEST_CASE("render_frame_svg: deterministic bytes") {
  const std::string a = render_frame_svg(one_box_frame());
  const std::string b = render_frame_svg(one_box_frame());
  CHECK(a == b);
}

TEST_CASE("render_frame_text lists targets") {
  const std::string text = render_frame_text(one_box_frame());
  CHECK(text.find("frame 0") != std::string::npos);
  CHECK(text.find("car") != std::string::npos);
}
