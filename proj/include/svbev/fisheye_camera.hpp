#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svbev/geometry.hpp"
#include "svbev/result.hpp"

namespace svbev {

enum class Channel { Front, Rear, Left, Right };

inline constexpr int kChannelCount = 4;
inline constexpr std::array<Channel, kChannelCount> kAllChannels = {
    Channel::Front, Channel::Rear, Channel::Left, Channel::Right};

const char* channel_name(Channel c);
std::optional<Channel> channel_from_name(std::string_view name);
inline int channel_index(Channel c) { return static_cast<int>(c); }

/// Radial mapping between incidence angle theta (from the optical axis) and
/// the normalized image radius rho. Two representations:
///   - equidistant base plus odd polynomial: rho = theta + k1 th^3 + k2 th^5 + ...
///   - sampled lookup table with linear interpolation between knots.
/// When both are configured the polynomial drives the math and the table is
/// validated against it at load time.
class DistortionModel {
 public:
  /// rho = theta (pure equidistant).
  static DistortionModel equidistant();
  /// Odd polynomial in theta; coeffs are k1, k2, ... for theta^3, theta^5, ...
  static DistortionModel polynomial(std::vector<double> coeffs);
  /// Sampled (theta, rho) knots; theta and rho strictly increasing, first knot (0, 0).
  static DistortionModel table(std::vector<double> knot_theta, std::vector<double> knot_rho);

  bool table_driven() const { return table_driven_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  const std::vector<double>& knot_thetas() const { return knot_theta_; }
  const std::vector<double>& knot_rhos() const { return knot_rho_; }

  /// Normalized radius for an incidence angle. Caller guards the domain.
  double forward(double theta) const;
  /// Incidence angle for a normalized radius in [0, forward(theta_max)].
  /// Polynomial form is inverted by bracketed bisection to 1e-12 rad, table
  /// form by piecewise-linear interpolation.
  double inverse(double rho, double theta_max) const;

  /// Evaluates just the polynomial (used for table cross-validation).
  double polynomial_forward(double theta) const;

 private:
  std::vector<double> coeffs_;
  std::vector<double> knot_theta_;
  std::vector<double> knot_rho_;
  bool table_driven_ = false;
};

/// One fisheye camera of the surround rig. rotation maps camera coordinates
/// (x right, y down, z along the optical axis) into the ego frame; translation
/// is the camera center in the ego frame, so translation.z is the mount height.
struct FisheyeCamera {
  Channel channel = Channel::Front;
  double fx = 0.0;
  double fy = 0.0;
  PixelPoint principal;
  DistortionModel distortion = DistortionModel::equidistant();
  Mat3 rotation = Mat3::identity();
  Vec3 translation;
  double fov_half_angle = 0.0;  // radians

  double mean_focal() const { return 0.5 * (fx + fy); }
  /// Image radius of the FoV boundary in pixels.
  double max_radius_px() const { return mean_focal() * distortion.forward(fov_half_angle); }

  /// Incidence angle -> image radius in pixels.
  Result<double> distort(double incidence_angle) const;
  /// Image radius in pixels -> incidence angle.
  Result<double> undistort(double image_radius_px) const;

  /// Forward projection of an ego-frame ground point into the image.
  Result<PixelPoint> project_ground_to_pixel(const GroundPoint& p) const;
  /// Forward projection of an arbitrary ego-frame 3D point (synthetic rendering).
  Result<PixelPoint> project_point(const Vec3& p) const;
  /// Inverse perspective mapping: pixel -> ray -> intersection with z = 0.
  Result<GroundPoint> pixel_to_ground(const PixelPoint& px) const;
};

/// Structural checks for a loaded camera; empty when all invariants hold.
std::vector<std::string> camera_violations(const FisheyeCamera& cam);

}  // namespace svbev
