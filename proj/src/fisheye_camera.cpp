#include "svbev/fisheye_camera.hpp"

#include <algorithm>
#include <cmath>

namespace svbev {

const char* err_name(Err e) {
  switch (e) {
    case Err::AngleOutOfFov: return "AngleOutOfFov";
    case Err::RadiusOutOfRange: return "RadiusOutOfRange";
    case Err::BehindCamera: return "BehindCamera";
    case Err::OutOfFov: return "OutOfFov";
    case Err::RayParallelToGround: return "RayParallelToGround";
    case Err::RayHitsAboveHorizon: return "RayHitsAboveHorizon";
    case Err::WheelsCoincident: return "WheelsCoincident";
    case Err::PointsCoincident: return "PointsCoincident";
    case Err::DegenerateSide: return "DegenerateSide";
    case Err::MissingRegressedHeading: return "MissingRegressedHeading";
    case Err::InsufficientGeometry: return "InsufficientGeometry";
    case Err::ConflictingGeometry: return "ConflictingGeometry";
    case Err::UnknownVehicleType: return "UnknownVehicleType";
  }
  return "UnknownError";
}

const char* channel_name(Channel c) {
  switch (c) {
    case Channel::Front: return "front";
    case Channel::Rear: return "rear";
    case Channel::Left: return "left";
    case Channel::Right: return "right";
  }
  return "invalid";
}

std::optional<Channel> channel_from_name(std::string_view name) {
  for (Channel c : kAllChannels) {
    if (name == channel_name(c)) return c;
  }
  return std::nullopt;
}

DistortionModel DistortionModel::equidistant() { return DistortionModel{}; }

DistortionModel DistortionModel::polynomial(std::vector<double> coeffs) {
  DistortionModel m;
  m.coeffs_ = std::move(coeffs);
  return m;
}

DistortionModel DistortionModel::table(std::vector<double> knot_theta,
                                       std::vector<double> knot_rho) {
  DistortionModel m;
  m.knot_theta_ = std::move(knot_theta);
  m.knot_rho_ = std::move(knot_rho);
  m.table_driven_ = true;
  return m;
}

double DistortionModel::polynomial_forward(double theta) const {
  const double t2 = theta * theta;
  double term = theta * t2;  // theta^3
  double rho = theta;
  for (double k : coeffs_) {
    rho += k * term;
    term *= t2;
  }
  return rho;
}

double DistortionModel::forward(double theta) const {
  if (!table_driven_) return polynomial_forward(theta);
  // Piecewise-linear interpolation; clamp at the last knot.
  const auto& ts = knot_theta_;
  const auto& rs = knot_rho_;
  if (theta <= ts.front()) return rs.front();
  if (theta >= ts.back()) return rs.back();
  auto it = std::upper_bound(ts.begin(), ts.end(), theta);
  size_t i = static_cast<size_t>(it - ts.begin());
  double w = (theta - ts[i - 1]) / (ts[i] - ts[i - 1]);
  return rs[i - 1] + w * (rs[i] - rs[i - 1]);
}

double DistortionModel::inverse(double rho, double theta_max) const {
  if (table_driven_) {
    const auto& ts = knot_theta_;
    const auto& rs = knot_rho_;
    if (rho <= rs.front()) return ts.front();
    if (rho >= rs.back()) return ts.back();
    auto it = std::upper_bound(rs.begin(), rs.end(), rho);
    size_t i = static_cast<size_t>(it - rs.begin());
    double w = (rho - rs[i - 1]) / (rs[i] - rs[i - 1]);
    return ts[i - 1] + w * (ts[i] - ts[i - 1]);
  }
  // Bracketed bisection on the strictly monotone polynomial.
  double lo = 0.0;
  double hi = theta_max;
  if (rho <= 0.0) return 0.0;
  if (polynomial_forward(hi) <= rho) return hi;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (polynomial_forward(mid) < rho) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Result<double> FisheyeCamera::distort(double incidence_angle) const {
  if (incidence_angle < 0.0 || incidence_angle > fov_half_angle) {
    return Err::AngleOutOfFov;
  }
  return mean_focal() * distortion.forward(incidence_angle);
}

Result<double> FisheyeCamera::undistort(double image_radius_px) const {
  if (image_radius_px < 0.0 || image_radius_px > max_radius_px() + 1e-9) {
    return Err::RadiusOutOfRange;
  }
  return distortion.inverse(image_radius_px / mean_focal(), fov_half_angle);
}

Result<PixelPoint> FisheyeCamera::project_point(const Vec3& p) const {
  const Vec3 pc = rotation.apply_transposed(p - translation);
  const double lateral = std::hypot(pc.x, pc.y);
  const double range = std::hypot(lateral, pc.z);
  if (range < 1e-12) return Err::BehindCamera;
  const double theta = std::atan2(lateral, pc.z);
  if (theta > fov_half_angle) {
    return pc.z <= 0.0 ? Err::BehindCamera : Err::OutOfFov;
  }
  const double rho = distortion.forward(theta);
  double cos_psi = 1.0;
  double sin_psi = 0.0;
  if (lateral > 1e-15) {
    cos_psi = pc.x / lateral;
    sin_psi = pc.y / lateral;
  }
  return PixelPoint{principal.u + fx * rho * cos_psi, principal.v + fy * rho * sin_psi};
}

Result<PixelPoint> FisheyeCamera::project_ground_to_pixel(const GroundPoint& p) const {
  return project_point(Vec3{p.x, p.y, 0.0});
}

Result<GroundPoint> FisheyeCamera::pixel_to_ground(const PixelPoint& px) const {
  const double mx = (px.u - principal.u) / fx;
  const double my = (px.v - principal.v) / fy;
  const double rho = std::hypot(mx, my);
  if (rho > distortion.forward(fov_half_angle) + 1e-12) return Err::RadiusOutOfRange;
  const double theta = distortion.inverse(rho, fov_half_angle);
  double cos_psi = 1.0;
  double sin_psi = 0.0;
  if (rho > 1e-15) {
    cos_psi = mx / rho;
    sin_psi = my / rho;
  }
  const Vec3 dir_cam{std::sin(theta) * cos_psi, std::sin(theta) * sin_psi, std::cos(theta)};
  const Vec3 dir = rotation.apply(dir_cam);
  // Descent test: the ray must head toward z = 0 from above.
  if (dir.z >= -1e-12) {
    return dir.z > 1e-12 ? Err::RayHitsAboveHorizon : Err::RayParallelToGround;
  }
  const double s = -translation.z / dir.z;
  return GroundPoint{translation.x + s * dir.x, translation.y + s * dir.y};
}

std::vector<std::string> camera_violations(const FisheyeCamera& cam) {
  std::vector<std::string> out;
  if (cam.rotation.orthonormality_error() > 1e-9 || cam.rotation.det() < 0.0) {
    out.push_back("rotation is not a proper orthonormal matrix");
  }
  if (!(cam.translation.z > 0.0)) {
    out.push_back("camera height above ground must be positive");
  }
  if (!(cam.fx > 0.0) || !(cam.fy > 0.0)) {
    out.push_back("focal lengths must be positive");
  }
  if (!(cam.fov_half_angle > 0.0) || cam.fov_half_angle >= kPi) {
    out.push_back("fov_half_angle out of (0, pi)");
  }
  // Strict monotonicity of the radial mapping over [0, fov_half_angle].
  const int kSamples = 2048;
  double prev = cam.distortion.forward(0.0);
  bool monotone = prev == 0.0 || std::abs(prev) < 1e-12;
  for (int i = 1; i <= kSamples && monotone; ++i) {
    const double theta = cam.fov_half_angle * static_cast<double>(i) / kSamples;
    const double rho = cam.distortion.forward(theta);
    if (rho <= prev) monotone = false;
    prev = rho;
  }
  if (!monotone) {
    out.push_back("distortion mapping is not strictly increasing on [0, fov_half_angle]");
  }
  return out;
}

}  // namespace svbev
