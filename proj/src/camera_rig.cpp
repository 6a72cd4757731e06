#include "svbev/camera_rig.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace svbev {

namespace {

using detail::json;

DistortionModel parse_distortion(const json& node, const FisheyeCamera& cam,
                                 const std::string& ctx_str) {
  const char* ctx = ctx_str.c_str();
  const std::string kind = detail::get_string(node, ctx, "kind");

  auto parse_coeffs = [&]() {
    std::vector<double> coeffs;
    for (const auto& c : detail::get_array(node, ctx, "coefficients")) {
      if (!c.is_number()) {
        throw ConfigError(ConfigError::Kind::BadValue, ctx_str + ": coefficients must be numbers");
      }
      coeffs.push_back(c.get<double>());
    }
    return coeffs;
  };
  auto parse_table = [&](std::vector<double>& thetas, std::vector<double>& rhos) {
    const json& rows = detail::get_array(node, ctx, "table");
    if (rows.size() < 2) {
      throw ConfigError(ConfigError::Kind::BadValue, ctx_str + ": table needs at least 2 knots");
    }
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
        throw ConfigError(ConfigError::Kind::BadValue,
                          ctx_str + ": table rows must be [theta_rad, radius_px]");
      }
      thetas.push_back(row[0].get<double>());
      // Stored normalized so one code path serves both representations.
      rhos.push_back(row[1].get<double>() / cam.mean_focal());
    }
    if (thetas.front() != 0.0 || rhos.front() != 0.0) {
      throw ConfigError(ConfigError::Kind::BadValue, ctx_str + ": table must start at [0, 0]");
    }
    for (size_t i = 1; i < thetas.size(); ++i) {
      if (thetas[i] <= thetas[i - 1]) {
        throw ConfigError(ConfigError::Kind::BadValue, ctx_str + ": table thetas must increase");
      }
      if (rhos[i] <= rhos[i - 1]) {
        throw ConfigError(ConfigError::Kind::NonMonotoneDistortion,
                          ctx_str + ": table radii must be strictly increasing");
      }
    }
    if (thetas.back() + 1e-12 < cam.fov_half_angle) {
      throw ConfigError(ConfigError::Kind::BadValue,
                        ctx_str + ": table does not cover fov_half_angle");
    }
  };

  if (kind == "poly") {
    detail::require_keys(node, ctx, {"kind", "coefficients"});
    return DistortionModel::polynomial(parse_coeffs());
  }
  if (kind == "table") {
    detail::require_keys(node, ctx, {"kind", "table"});
    std::vector<double> thetas, rhos;
    parse_table(thetas, rhos);
    return DistortionModel::table(std::move(thetas), std::move(rhos));
  }
  if (kind == "poly_table") {
    detail::require_keys(node, ctx, {"kind", "coefficients", "table", "table_tolerance_px"});
    auto coeffs = parse_coeffs();
    std::vector<double> thetas, rhos;
    parse_table(thetas, rhos);
    const double tol_px = detail::get_number(node, ctx, "table_tolerance_px");
    DistortionModel poly = DistortionModel::polynomial(coeffs);
    for (size_t i = 0; i < thetas.size(); ++i) {
      const double err_px = std::abs(poly.forward(thetas[i]) - rhos[i]) * cam.mean_focal();
      if (err_px > tol_px) {
        throw ConfigError(ConfigError::Kind::BadValue,
                          ctx_str + ": table disagrees with polynomial at knot " +
                              std::to_string(i) + " by " + std::to_string(err_px) + " px");
      }
    }
    return poly;  // polynomial is authoritative when both are present
  }
  throw ConfigError(ConfigError::Kind::BadValue, ctx_str + ": unknown distortion kind '" + kind + "'");
}

FisheyeCamera parse_camera(const json& node) {
  detail::require_keys(node, "calibration.cameras[]",
                       {"channel", "focal", "principal_point", "distortion", "rotation",
                        "translation", "fov_half_angle_deg"});
  FisheyeCamera cam;
  const std::string name = detail::get_string(node, "camera", "channel");
  const auto channel = channel_from_name(name);
  if (!channel) {
    throw ConfigError(ConfigError::Kind::BadValue, "camera: unknown channel '" + name + "'");
  }
  cam.channel = *channel;
  const std::string ctx_str = std::string("camera '") + name + "'";
  const char* ctx = ctx_str.c_str();

  const json& focal = detail::get_array(node, ctx, "focal");
  if (focal.size() != 2) {
    throw ConfigError(ConfigError::Kind::BadValue, ctx_str + ": focal must have 2 entries");
  }
  cam.fx = focal[0].get<double>();
  cam.fy = focal[1].get<double>();

  const json& pp = detail::get_array(node, ctx, "principal_point");
  if (pp.size() != 2) {
    throw ConfigError(ConfigError::Kind::BadValue, ctx_str + ": principal_point must have 2 entries");
  }
  cam.principal = {pp[0].get<double>(), pp[1].get<double>()};

  const json& rot = detail::get_array(node, ctx, "rotation");
  if (rot.size() != 9) {
    throw ConfigError(ConfigError::Kind::BadValue, ctx_str + ": rotation must have 9 entries (row-major)");
  }
  for (int i = 0; i < 9; ++i) cam.rotation.m[static_cast<size_t>(i)] = rot[static_cast<size_t>(i)].get<double>();

  const json& trans = detail::get_array(node, ctx, "translation");
  if (trans.size() != 3) {
    throw ConfigError(ConfigError::Kind::BadValue, ctx_str + ": translation must have 3 entries");
  }
  cam.translation = {trans[0].get<double>(), trans[1].get<double>(), trans[2].get<double>()};

  cam.fov_half_angle = deg_to_rad(detail::get_number(node, ctx, "fov_half_angle_deg"));
  cam.distortion = parse_distortion(detail::get_object(node, ctx, "distortion"), cam,
                                    ctx_str + ".distortion");

  if (cam.rotation.orthonormality_error() > 1e-9 || cam.rotation.det() < 0.0) {
    throw ConfigError(ConfigError::Kind::NonOrthonormalRotation,
                      ctx_str + ": rotation is not a proper orthonormal matrix");
  }
  for (const std::string& v : camera_violations(cam)) {
    if (v.find("strictly increasing") != std::string::npos) {
      throw ConfigError(ConfigError::Kind::NonMonotoneDistortion, ctx_str + ": " + v);
    }
    throw ConfigError(ConfigError::Kind::BadValue, ctx_str + ": " + v);
  }
  return cam;
}

}  // namespace

CameraRig load_calibration(const std::string& json_text) {
  json doc = detail::parse_document(json_text, "calibration");
  detail::check_format(doc, "calibration", "svbev-calibration", 1);
  detail::require_keys(doc, "calibration", {"format", "version", "frame", "cameras"});
  if (detail::get_string(doc, "calibration", "frame") != kEgoFrameDecl) {
    throw ConfigError(ConfigError::Kind::BadValue,
                      std::string("calibration: frame must be '") + kEgoFrameDecl + "'");
  }

  std::array<bool, kChannelCount> seen{};
  CameraRig rig;
  for (const auto& node : detail::get_array(doc, "calibration", "cameras")) {
    FisheyeCamera cam = parse_camera(node);
    const int idx = channel_index(cam.channel);
    if (seen[static_cast<size_t>(idx)]) {
      throw ConfigError(ConfigError::Kind::DuplicateChannel,
                        std::string("calibration: duplicate channel '") +
                            channel_name(cam.channel) + "'");
    }
    seen[static_cast<size_t>(idx)] = true;
    rig.cameras[static_cast<size_t>(idx)] = std::move(cam);
  }
  for (Channel c : kAllChannels) {
    if (!seen[static_cast<size_t>(channel_index(c))]) {
      throw ConfigError(ConfigError::Kind::MissingChannel,
                        std::string("calibration: missing channel '") + channel_name(c) + "'");
    }
  }
  return rig;
}

CameraRig load_calibration_file(const std::string& path) {
  return load_calibration(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(ConfigError::Kind::ParseError, "cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError(ConfigError::Kind::ParseError, "cannot open file for writing: " + path);
  }
  out << content;
  if (!out) {
    throw ConfigError(ConfigError::Kind::ParseError, "write failed: " + path);
  }
}

}  // namespace svbev
