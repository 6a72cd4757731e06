#pragma once

#include <string>

#include "svbev/stream_io.hpp"

namespace svbev {

/// Deterministic SVG of one BEV frame: ego marker at the origin, one rotated
/// rectangle per target with a heading arrow and the obj_id label. Ego x
/// (forward) points up, ego y (left) points left.
std::string render_frame_svg(const BevMapFrame& frame);

/// Plain-text listing of the same frame.
std::string render_frame_text(const BevMapFrame& frame);

}  // namespace svbev
