#include "svbev/stream_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json_util.hpp"

namespace svbev {

namespace {

using detail::json;

void append_f6(std::string& out, double v) {
  if (v == 0.0) v = 0.0 * std::abs(v);  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  out += buf;
}

void append_u64(std::string& out, uint64_t v) { out += std::to_string(v); }

void append_bbox(std::string& out, const BBox& b) {
  out += '[';
  append_f6(out, b.x);
  out += ',';
  append_f6(out, b.y);
  out += ',';
  append_f6(out, b.w);
  out += ',';
  append_f6(out, b.l);
  out += ']';
}

void append_point(std::string& out, GroundPoint p) {
  out += '[';
  append_f6(out, p.x);
  out += ',';
  append_f6(out, p.y);
  out += ']';
}

BBox parse_bbox(const json& node, const char* ctx) {
  if (!node.is_array() || node.size() != 4) {
    throw ConfigError(ConfigError::Kind::BadValue,
                      std::string(ctx) + ": bbox must be [x, y, w, l]");
  }
  return {node[0].get<double>(), node[1].get<double>(), node[2].get<double>(),
          node[3].get<double>()};
}

GroundPoint parse_point(const json& node, const char* ctx) {
  if (!node.is_array() || node.size() != 2) {
    throw ConfigError(ConfigError::Kind::BadValue, std::string(ctx) + ": expected [x, y]");
  }
  return {node[0].get<double>(), node[1].get<double>()};
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

json parse_header(const std::vector<std::string>& lines, const char* ctx,
                  const char* format, int version) {
  if (lines.empty()) {
    throw ConfigError(ConfigError::Kind::BadFormat, std::string(ctx) + ": empty document");
  }
  json header = detail::parse_document(lines.front(), ctx);
  detail::check_format(header, ctx, format, version);
  return header;
}

}  // namespace

std::string write_detection_stream(const std::vector<DetectionFrame>& frames) {
  std::string out = "{\"format\":\"svbev-detections\",\"version\":1}\n";
  for (const DetectionFrame& frame : frames) {
    for (Channel channel : kAllChannels) {
      const DetectionRecord& r = frame.records[static_cast<size_t>(channel_index(channel))];
      if (r.boxes.empty() && r.type_labels.empty() && r.heading_estimates.empty()) continue;
      out += "{\"frame_id\":";
      append_u64(out, frame.frame_id);
      out += ",\"channel\":\"";
      out += channel_name(channel);
      out += "\",\"boxes\":[";
      for (size_t i = 0; i < r.boxes.size(); ++i) {
        if (i) out += ',';
        out += "{\"class\":\"";
        out += part_class_name(r.boxes[i].cls);
        out += "\",\"bbox\":";
        append_bbox(out, r.boxes[i].bbox);
        out += ",\"score\":";
        append_f6(out, r.boxes[i].score);
        out += '}';
      }
      out += "],\"type_labels\":[";
      for (size_t i = 0; i < r.type_labels.size(); ++i) {
        if (i) out += ',';
        out += "{\"vehicle_bbox\":";
        append_bbox(out, r.type_labels[i].vehicle_bbox);
        out += ",\"type_name\":\"";
        out += r.type_labels[i].type_name;
        out += "\",\"score\":";
        append_f6(out, r.type_labels[i].score);
        out += '}';
      }
      out += "],\"heading_estimates\":[";
      for (size_t i = 0; i < r.heading_estimates.size(); ++i) {
        if (i) out += ',';
        out += "{\"vehicle_bbox\":";
        append_bbox(out, r.heading_estimates[i].vehicle_bbox);
        out += ",\"heading_deg\":";
        append_f6(out, rad_to_deg(r.heading_estimates[i].heading));
        out += ",\"score\":";
        append_f6(out, r.heading_estimates[i].score);
        out += '}';
      }
      out += "]}\n";
    }
  }
  return out;
}

std::vector<DetectionFrame> read_detection_stream(const std::string& text) {
  const auto lines = split_lines(text);
  parse_header(lines, "detection stream", "svbev-detections", 1);
  std::vector<DetectionFrame> frames;

  for (size_t li = 1; li < lines.size(); ++li) {
    json node = detail::parse_document(lines[li], "detection stream");
    detail::require_keys(node, "detection record",
                         {"frame_id", "channel", "boxes", "type_labels", "heading_estimates"});
    DetectionRecord record;
    record.frame_id = node["frame_id"].get<uint64_t>();
    const auto channel = channel_from_name(detail::get_string(node, "record", "channel"));
    if (!channel) {
      throw ConfigError(ConfigError::Kind::BadValue, "detection record: unknown channel");
    }
    record.channel = *channel;

    for (const json& b : detail::get_array(node, "record", "boxes")) {
      detail::require_keys(b, "box", {"class", "bbox", "score"});
      const auto cls = part_class_from_name(detail::get_string(b, "box", "class"));
      if (!cls) throw ConfigError(ConfigError::Kind::BadValue, "box: unknown class");
      record.boxes.push_back(
          {*cls, parse_bbox(b["bbox"], "box"), detail::get_number(b, "box", "score")});
    }
    for (const json& t : detail::get_array(node, "record", "type_labels")) {
      detail::require_keys(t, "type label", {"vehicle_bbox", "type_name", "score"});
      record.type_labels.push_back({parse_bbox(t["vehicle_bbox"], "type label"),
                                    detail::get_string(t, "type label", "type_name"),
                                    detail::get_number(t, "type label", "score")});
    }
    for (const json& h : detail::get_array(node, "record", "heading_estimates")) {
      detail::require_keys(h, "heading estimate", {"vehicle_bbox", "heading_deg", "score"});
      record.heading_estimates.push_back(
          {parse_bbox(h["vehicle_bbox"], "heading estimate"),
           wrap_angle(deg_to_rad(detail::get_number(h, "heading estimate", "heading_deg"))),
           detail::get_number(h, "heading estimate", "score")});
    }
    const auto violations = validate_detection_record(record);
    if (!violations.empty()) {
      throw ConfigError(ConfigError::Kind::BadValue,
                        "detection record (line " + std::to_string(li + 1) +
                            "): " + violations.front());
    }

    if (frames.empty() || frames.back().frame_id != record.frame_id) {
      if (!frames.empty() && record.frame_id < frames.back().frame_id) {
        throw ConfigError(ConfigError::Kind::BadValue,
                          "detection stream: frame ids must be ascending");
      }
      DetectionFrame frame;
      frame.frame_id = record.frame_id;
      for (Channel c : kAllChannels) {
        auto& r = frame.records[static_cast<size_t>(channel_index(c))];
        r.channel = c;
        r.frame_id = record.frame_id;
      }
      frames.push_back(std::move(frame));
    }
    frames.back().records[static_cast<size_t>(channel_index(record.channel))] =
        std::move(record);
  }
  return frames;
}

std::string write_truth(const TruthDocument& doc) {
  std::string out = "{\"format\":\"svbev-truth\",\"version\":1,\"noise\":{\"pixel_sigma\":";
  append_f6(out, doc.noise.pixel_sigma);
  out += ",\"quantize\":";
  out += doc.noise.quantize ? "true" : "false";
  out += ",\"drop_probability\":";
  append_f6(out, doc.noise.drop_probability);
  out += ",\"slope_gradient\":";
  append_f6(out, doc.noise.slope_gradient);
  out += ",\"seed\":";
  append_u64(out, doc.noise.seed);
  out += "}}\n";

  for (const TruthFrame& frame : doc.frames) {
    out += "{\"frame_id\":";
    append_u64(out, frame.frame_id);
    out += ",\"vehicles\":[";
    for (size_t i = 0; i < frame.vehicles.size(); ++i) {
      const TruthVehicle& tv = frame.vehicles[i];
      if (i) out += ',';
      out += "{\"id\":";
      append_u64(out, tv.vehicle.id);
      out += ",\"x\":";
      append_f6(out, tv.vehicle.position.x);
      out += ",\"y\":";
      append_f6(out, tv.vehicle.position.y);
      out += ",\"heading_deg\":";
      append_f6(out, rad_to_deg(tv.vehicle.heading));
      out += ",\"type_name\":\"";
      out += tv.vehicle.type_name;
      out += "\",\"visible\":";
      out += tv.visible ? "true" : "false";
      out += ",\"channels\":[";
      for (size_t c = 0; c < tv.channels.size(); ++c) {
        if (c) out += ',';
        out += '"';
        out += channel_name(tv.channels[c]);
        out += '"';
      }
      out += "]}";
    }
    out += "]}\n";
  }
  return out;
}

TruthDocument read_truth(const std::string& text) {
  const auto lines = split_lines(text);
  json header = parse_header(lines, "truth sidecar", "svbev-truth", 1);
  detail::require_keys(header, "truth sidecar", {"format", "version", "noise"});
  const json& noise = detail::get_object(header, "truth sidecar", "noise");
  detail::require_keys(noise, "truth sidecar.noise",
                       {"pixel_sigma", "quantize", "drop_probability", "slope_gradient", "seed"});
  TruthDocument doc;
  doc.noise.pixel_sigma = detail::get_number(noise, "noise", "pixel_sigma");
  doc.noise.quantize = noise["quantize"].get<bool>();
  doc.noise.drop_probability = detail::get_number(noise, "noise", "drop_probability");
  doc.noise.slope_gradient = detail::get_number(noise, "noise", "slope_gradient");
  doc.noise.seed = noise["seed"].get<uint64_t>();

  for (size_t li = 1; li < lines.size(); ++li) {
    json node = detail::parse_document(lines[li], "truth sidecar");
    detail::require_keys(node, "truth frame", {"frame_id", "vehicles"});
    TruthFrame frame;
    frame.frame_id = node["frame_id"].get<uint64_t>();
    for (const json& v : detail::get_array(node, "truth frame", "vehicles")) {
      detail::require_keys(v, "truth vehicle",
                           {"id", "x", "y", "heading_deg", "type_name", "visible", "channels"});
      TruthVehicle tv;
      tv.vehicle.id = v["id"].get<uint64_t>();
      tv.vehicle.position = {detail::get_number(v, "vehicle", "x"),
                             detail::get_number(v, "vehicle", "y")};
      tv.vehicle.heading = wrap_angle(deg_to_rad(detail::get_number(v, "vehicle", "heading_deg")));
      tv.vehicle.type_name = detail::get_string(v, "vehicle", "type_name");
      tv.visible = v["visible"].get<bool>();
      for (const json& c : detail::get_array(v, "vehicle", "channels")) {
        const auto channel = channel_from_name(c.get<std::string>());
        if (!channel) {
          throw ConfigError(ConfigError::Kind::BadValue, "truth vehicle: unknown channel");
        }
        tv.channels.push_back(*channel);
      }
      frame.vehicles.push_back(std::move(tv));
    }
    doc.frames.push_back(std::move(frame));
  }
  return doc;
}

std::string write_bev_map(const std::vector<BevMapFrame>& frames) {
  std::string out = "{\"format\":\"svbev-bev-map\",\"version\":1,\"angle_unit\":\"deg\"}\n";
  for (const BevMapFrame& frame : frames) {
    out += "{\"frame_id\":";
    append_u64(out, frame.frame_id);
    out += ",\"targets\":[";
    for (size_t i = 0; i < frame.targets.size(); ++i) {
      const BevBox& t = frame.targets[i];
      if (i) out += ',';
      out += "{\"obj_id\":";
      append_u64(out, t.obj_id);
      out += ",\"type\":\"";
      out += t.type_name;
      out += "\",\"p\":";
      append_point(out, t.center);
      out += ",\"heading_deg\":";
      append_f6(out, rad_to_deg(t.heading));
      out += ",\"corners\":{\"A\":";
      append_point(out, t.a);
      out += ",\"B\":";
      append_point(out, t.b);
      out += ",\"C\":";
      append_point(out, t.c);
      out += ",\"D\":";
      append_point(out, t.d);
      out += "}}";
    }
    out += "]}\n";
  }
  return out;
}

std::vector<BevMapFrame> read_bev_map(const std::string& text) {
  const auto lines = split_lines(text);
  json header = parse_header(lines, "bev map", "svbev-bev-map", 1);
  detail::require_keys(header, "bev map", {"format", "version", "angle_unit"});
  if (detail::get_string(header, "bev map", "angle_unit") != "deg") {
    throw ConfigError(ConfigError::Kind::BadValue, "bev map: angle_unit must be 'deg'");
  }
  std::vector<BevMapFrame> frames;
  for (size_t li = 1; li < lines.size(); ++li) {
    json node = detail::parse_document(lines[li], "bev map");
    detail::require_keys(node, "bev frame", {"frame_id", "targets"});
    BevMapFrame frame;
    frame.frame_id = node["frame_id"].get<uint64_t>();
    for (const json& t : detail::get_array(node, "bev frame", "targets")) {
      detail::require_keys(t, "target", {"obj_id", "type", "p", "heading_deg", "corners"});
      BevBox box;
      box.obj_id = t["obj_id"].get<uint64_t>();
      box.type_name = detail::get_string(t, "target", "type");
      box.center = parse_point(t["p"], "target.p");
      box.heading = wrap_angle(deg_to_rad(detail::get_number(t, "target", "heading_deg")));
      const json& corners = detail::get_object(t, "target", "corners");
      detail::require_keys(corners, "target.corners", {"A", "B", "C", "D"});
      box.a = parse_point(corners["A"], "corner A");
      box.b = parse_point(corners["B"], "corner B");
      box.c = parse_point(corners["C"], "corner C");
      box.d = parse_point(corners["D"], "corner D");
      frame.targets.push_back(std::move(box));
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

std::string write_scene(const std::vector<SceneFrame>& frames) {
  std::string out = "{\"format\":\"svbev-scene\",\"version\":1,\"frames\":[";
  for (size_t f = 0; f < frames.size(); ++f) {
    if (f) out += ',';
    out += "{\"frame_id\":";
    append_u64(out, frames[f].frame_id);
    out += ",\"vehicles\":[";
    for (size_t i = 0; i < frames[f].vehicles.size(); ++i) {
      const GroundTruthVehicle& v = frames[f].vehicles[i];
      if (i) out += ',';
      out += "{\"id\":";
      append_u64(out, v.id);
      out += ",\"x\":";
      append_f6(out, v.position.x);
      out += ",\"y\":";
      append_f6(out, v.position.y);
      out += ",\"heading_deg\":";
      append_f6(out, rad_to_deg(v.heading));
      out += ",\"type_name\":\"";
      out += v.type_name;
      out += "\"}";
    }
    out += "]}";
  }
  out += "]}\n";
  return out;
}

std::vector<SceneFrame> read_scene(const std::string& text) {
  json doc = detail::parse_document(text, "scene");
  detail::check_format(doc, "scene", "svbev-scene", 1);
  detail::require_keys(doc, "scene", {"format", "version", "frames"});
  std::vector<SceneFrame> frames;
  for (const json& f : detail::get_array(doc, "scene", "frames")) {
    detail::require_keys(f, "scene frame", {"frame_id", "vehicles"});
    SceneFrame frame;
    frame.frame_id = f["frame_id"].get<uint64_t>();
    for (const json& v : detail::get_array(f, "scene frame", "vehicles")) {
      detail::require_keys(v, "scene vehicle", {"id", "x", "y", "heading_deg", "type_name"});
      GroundTruthVehicle gt;
      gt.id = v["id"].get<uint64_t>();
      gt.position = {detail::get_number(v, "vehicle", "x"),
                     detail::get_number(v, "vehicle", "y")};
      gt.heading = wrap_angle(deg_to_rad(detail::get_number(v, "vehicle", "heading_deg")));
      gt.type_name = detail::get_string(v, "vehicle", "type_name");
      frame.vehicles.push_back(std::move(gt));
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

void EvalDocument::append_frame(uint64_t frame_id, const ErrorReport& report) {
  ++frame_count;
  for (const TargetError& t : report.matched) targets.emplace_back(frame_id, t);
  for (uint64_t id : report.missed_truth_ids) misses.emplace_back(frame_id, id);
  for (uint64_t id : report.false_positive_ids) false_positives.emplace_back(frame_id, id);
}

size_t EvalDocument::x_qualified_count() const {
  return static_cast<size_t>(std::count_if(
      targets.begin(), targets.end(), [](const auto& t) { return t.second.x_qualified; }));
}

double EvalDocument::x_rate() const {
  if (targets.empty()) return 1.0;
  return static_cast<double>(x_qualified_count()) / static_cast<double>(targets.size());
}

std::array<size_t, 3> EvalDocument::y_counts() const {
  std::array<size_t, 3> out{};
  for (const auto& t : targets) ++out[static_cast<size_t>(t.second.interval)];
  return out;
}

std::array<size_t, 3> EvalDocument::y_qualified() const {
  std::array<size_t, 3> out{};
  for (const auto& t : targets) {
    if (t.second.y_qualified) ++out[static_cast<size_t>(t.second.interval)];
  }
  return out;
}

std::array<double, 3> EvalDocument::y_rates() const {
  const auto counts = y_counts();
  const auto qualified = y_qualified();
  std::array<double, 3> out{};
  for (size_t i = 0; i < 3; ++i) {
    out[i] = counts[i] == 0 ? 1.0
                            : static_cast<double>(qualified[i]) / static_cast<double>(counts[i]);
  }
  return out;
}

std::string write_eval_report_json(const EvalDocument& doc) {
  std::string out = "{\"format\":\"svbev-eval-report\",\"version\":1,\"thresholds\":{";
  out += "\"x_gate_m\":";
  append_f6(out, doc.thresholds.x_gate_m);
  out += ",\"y_gates_m\":[";
  for (size_t i = 0; i < 3; ++i) {
    if (i) out += ',';
    append_f6(out, doc.thresholds.y_gates_m[i]);
  }
  out += "],\"interval_bounds_m\":[";
  for (size_t i = 0; i < 2; ++i) {
    if (i) out += ',';
    append_f6(out, doc.thresholds.interval_bounds_m[i]);
  }
  out += "],\"match_gate_m\":";
  append_f6(out, doc.thresholds.match_gate_m);
  out += "},\"summary\":{\"frames\":";
  append_u64(out, doc.frame_count);
  out += ",\"matched\":";
  append_u64(out, doc.targets.size());
  out += ",\"misses\":";
  append_u64(out, doc.misses.size());
  out += ",\"false_positives\":";
  append_u64(out, doc.false_positives.size());
  out += ",\"x_qualified\":";
  append_u64(out, doc.x_qualified_count());
  out += ",\"x_rate\":";
  append_f6(out, doc.x_rate());
  out += ",\"y_counts\":[";
  const auto yc = doc.y_counts();
  for (size_t i = 0; i < 3; ++i) {
    if (i) out += ',';
    append_u64(out, yc[i]);
  }
  out += "],\"y_qualified\":[";
  const auto yq = doc.y_qualified();
  for (size_t i = 0; i < 3; ++i) {
    if (i) out += ',';
    append_u64(out, yq[i]);
  }
  out += "],\"y_rates\":[";
  const auto yr = doc.y_rates();
  for (size_t i = 0; i < 3; ++i) {
    if (i) out += ',';
    append_f6(out, yr[i]);
  }
  out += "]},\"targets\":[";
  for (size_t i = 0; i < doc.targets.size(); ++i) {
    const auto& [frame_id, t] = doc.targets[i];
    if (i) out += ',';
    out += "{\"frame_id\":";
    append_u64(out, frame_id);
    out += ",\"truth_id\":";
    append_u64(out, t.truth_id);
    out += ",\"estimate_id\":";
    append_u64(out, t.estimate_id);
    out += ",\"distance_m\":";
    append_f6(out, t.distance_m);
    out += ",\"x_error_m\":";
    append_f6(out, t.x_error_m);
    out += ",\"y_error_m\":";
    append_f6(out, t.y_error_m);
    out += ",\"heading_error_deg\":";
    append_f6(out, rad_to_deg(t.heading_error_rad));
    out += ",\"interval\":";
    out += std::to_string(t.interval);
    out += ",\"x_qualified\":";
    out += t.x_qualified ? "true" : "false";
    out += ",\"y_qualified\":";
    out += t.y_qualified ? "true" : "false";
    out += '}';
  }
  out += "],\"misses\":[";
  for (size_t i = 0; i < doc.misses.size(); ++i) {
    if (i) out += ',';
    out += "{\"frame_id\":";
    append_u64(out, doc.misses[i].first);
    out += ",\"truth_id\":";
    append_u64(out, doc.misses[i].second);
    out += '}';
  }
  out += "],\"false_positives\":[";
  for (size_t i = 0; i < doc.false_positives.size(); ++i) {
    if (i) out += ',';
    out += "{\"frame_id\":";
    append_u64(out, doc.false_positives[i].first);
    out += ",\"estimate_id\":";
    append_u64(out, doc.false_positives[i].second);
    out += '}';
  }
  out += "]}\n";
  return out;
}

EvalDocument read_eval_report_json(const std::string& text) {
  json doc = detail::parse_document(text, "eval report");
  detail::check_format(doc, "eval report", "svbev-eval-report", 1);
  detail::require_keys(doc, "eval report",
                       {"format", "version", "thresholds", "summary", "targets", "misses",
                        "false_positives"});
  EvalDocument out;
  const json& th = detail::get_object(doc, "eval report", "thresholds");
  detail::require_keys(th, "thresholds",
                       {"x_gate_m", "y_gates_m", "interval_bounds_m", "match_gate_m"});
  out.thresholds.x_gate_m = detail::get_number(th, "thresholds", "x_gate_m");
  const json& gates = detail::get_array(th, "thresholds", "y_gates_m");
  for (size_t i = 0; i < 3; ++i) out.thresholds.y_gates_m[i] = gates[i].get<double>();
  const json& bounds = detail::get_array(th, "thresholds", "interval_bounds_m");
  for (size_t i = 0; i < 2; ++i) out.thresholds.interval_bounds_m[i] = bounds[i].get<double>();
  out.thresholds.match_gate_m = detail::get_number(th, "thresholds", "match_gate_m");

  const json& summary = detail::get_object(doc, "eval report", "summary");
  out.frame_count = summary["frames"].get<uint64_t>();

  for (const json& t : detail::get_array(doc, "eval report", "targets")) {
    detail::require_keys(t, "target",
                         {"frame_id", "truth_id", "estimate_id", "distance_m", "x_error_m",
                          "y_error_m", "heading_error_deg", "interval", "x_qualified",
                          "y_qualified"});
    TargetError te;
    te.truth_id = t["truth_id"].get<uint64_t>();
    te.estimate_id = t["estimate_id"].get<uint64_t>();
    te.distance_m = detail::get_number(t, "target", "distance_m");
    te.x_error_m = detail::get_number(t, "target", "x_error_m");
    te.y_error_m = detail::get_number(t, "target", "y_error_m");
    te.heading_error_rad = deg_to_rad(detail::get_number(t, "target", "heading_error_deg"));
    te.interval = t["interval"].get<int>();
    te.x_qualified = t["x_qualified"].get<bool>();
    te.y_qualified = t["y_qualified"].get<bool>();
    out.targets.emplace_back(t["frame_id"].get<uint64_t>(), te);
  }
  for (const json& m : detail::get_array(doc, "eval report", "misses")) {
    detail::require_keys(m, "miss", {"frame_id", "truth_id"});
    out.misses.emplace_back(m["frame_id"].get<uint64_t>(), m["truth_id"].get<uint64_t>());
  }
  for (const json& f : detail::get_array(doc, "eval report", "false_positives")) {
    detail::require_keys(f, "false positive", {"frame_id", "estimate_id"});
    out.false_positives.emplace_back(f["frame_id"].get<uint64_t>(),
                                     f["estimate_id"].get<uint64_t>());
  }
  return out;
}

std::string write_eval_report_text(const EvalDocument& doc) {
  char buf[256];
  std::string out = "BEV positioning evaluation\n";
  std::snprintf(buf, sizeof(buf),
                "gates: x <= %.2f m; y <= %.2f/%.2f/%.2f m over 0-%.0f/%.0f-%.0f/%.0f+ m; "
                "match gate %.2f m\n",
                doc.thresholds.x_gate_m, doc.thresholds.y_gates_m[0],
                doc.thresholds.y_gates_m[1], doc.thresholds.y_gates_m[2],
                doc.thresholds.interval_bounds_m[0], doc.thresholds.interval_bounds_m[0],
                doc.thresholds.interval_bounds_m[1], doc.thresholds.interval_bounds_m[1],
                doc.thresholds.match_gate_m);
  out += buf;
  std::snprintf(buf, sizeof(buf), "frames: %llu  matched: %zu  misses: %zu  false positives: %zu\n",
                static_cast<unsigned long long>(doc.frame_count), doc.targets.size(),
                doc.misses.size(), doc.false_positives.size());
  out += buf;
  std::snprintf(buf, sizeof(buf), "x qualification: %zu/%zu (%.4f)\n", doc.x_qualified_count(),
                doc.targets.size(), doc.x_rate());
  out += buf;
  const auto yc = doc.y_counts();
  const auto yq = doc.y_qualified();
  const auto yr = doc.y_rates();
  for (size_t i = 0; i < 3; ++i) {
    std::snprintf(buf, sizeof(buf), "y qualification interval %zu: %zu/%zu (%.4f)\n", i, yq[i],
                  yc[i], yr[i]);
    out += buf;
  }
  out += "frame  truth  est   dist_m   x_err_m   y_err_m  hdg_err_deg  xq yq\n";
  for (const auto& [frame_id, t] : doc.targets) {
    std::snprintf(buf, sizeof(buf), "%5llu  %5llu  %3llu  %7.3f  %+8.3f  %+8.3f  %+11.3f  %c %c\n",
                  static_cast<unsigned long long>(frame_id),
                  static_cast<unsigned long long>(t.truth_id),
                  static_cast<unsigned long long>(t.estimate_id), t.distance_m, t.x_error_m,
                  t.y_error_m, rad_to_deg(t.heading_error_rad), t.x_qualified ? 'y' : 'n',
                  t.y_qualified ? 'y' : 'n');
    out += buf;
  }
  return out;
}

}  // namespace svbev
