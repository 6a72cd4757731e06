#pragma once

#include <array>
#include <cmath>

namespace svbev {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Normalizes an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) {
    a += 2.0 * kPi;
  } else if (a > kPi) {
    a -= 2.0 * kPi;
  }
  return a;
}

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

/// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> m{};

  static Mat3 identity() {
    Mat3 r;
    r.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return r;
  }

  Vec3 apply(Vec3 v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  /// Applies the transpose (inverse for orthonormal matrices).
  Vec3 apply_transposed(Vec3 v) const {
    return {m[0] * v.x + m[3] * v.y + m[6] * v.z,
            m[1] * v.x + m[4] * v.y + m[7] * v.z,
            m[2] * v.x + m[5] * v.y + m[8] * v.z};
  }

  double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) -
           m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }

  /// Max absolute entry of R^T R - I.
  double orthonormality_error() const {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double v = 0.0;
        for (int k = 0; k < 3; ++k) v += m[k * 3 + i] * m[k * 3 + j];
        if (i == j) v -= 1.0;
        worst = std::max(worst, std::abs(v));
      }
    }
    return worst;
  }
};

/// Point on the ground plane of the ego frame (x forward, y left, z up,
/// origin at the ground under the rear-axle center). z is 0 by construction.
struct GroundPoint {
  double x = 0.0;
  double y = 0.0;
};

struct PixelPoint {
  double u = 0.0;
  double v = 0.0;
};

inline double distance(GroundPoint a, GroundPoint b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline double pixel_distance(PixelPoint a, PixelPoint b) {
  return std::hypot(a.u - b.u, a.v - b.v);
}

/// Unit vector along a heading angle.
inline Vec2 heading_dir(double phi) { return {std::cos(phi), std::sin(phi)}; }

/// Unit vector pointing to the left of a heading angle.
inline Vec2 left_dir(double phi) { return {-std::sin(phi), std::cos(phi)}; }

inline GroundPoint offset(GroundPoint p, double s, Vec2 dir) {
  return {p.x + s * dir.x, p.y + s * dir.y};
}

/// Bearing of a point as seen from the ego origin, in (-pi, pi].
inline double azimuth_of(GroundPoint p) { return wrap_angle(std::atan2(p.y, p.x)); }

}  // namespace svbev
