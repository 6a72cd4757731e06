#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "helpers.hpp"
#include "svbev/fisheye_camera.hpp"

using namespace svbev;
using svbev::test::pitched_test_camera;

namespace {

/// Independent scalar evaluation of the odd-polynomial radial model.
double poly_oracle(double theta, const std::vector<double>& coeffs, double focal) {
  double rho = theta;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    rho += coeffs[i] * std::pow(theta, static_cast<double>(2 * i + 3));
  }
  return focal * rho;
}

}  // namespace

TEST_CASE("distort: optical axis maps to zero radius") {
  const FisheyeCamera cam = pitched_test_camera();
  const auto r = cam.distort(0.0);
  REQUIRE(r.ok());
  CHECK(r.value() == 0.0);
}

TEST_CASE("distort: equidistant model r = f * theta") {
  const FisheyeCamera cam = pitched_test_camera();  // f = 300
  const auto r = cam.distort(0.5);
  REQUIRE(r.ok());
  CHECK(r.value() == doctest::Approx(150.0).epsilon(1e-12));
}

TEST_CASE("distort: rejects angles beyond the FoV") {
  const FisheyeCamera cam = pitched_test_camera(45.0, 300.0, 60.0);
  const auto r = cam.distort(deg_to_rad(61.0));
  REQUIRE(!r.ok());
  CHECK(r.error() == Err::AngleOutOfFov);
  CHECK(!cam.distort(-0.1).ok());
}

TEST_CASE("distort: shipped polynomial matches an independent evaluator") {
  const FisheyeCamera& cam = svbev::test::default_rig().camera(Channel::Front);
  REQUIRE(!cam.distortion.table_driven());
  const std::vector<double>& coeffs = cam.distortion.coefficients();
  for (double theta : {0.1, 0.5, 1.0, 1.5}) {
    const auto r = cam.distort(theta);
    REQUIRE(r.ok());
    CHECK(r.value() ==
          doctest::Approx(poly_oracle(theta, coeffs, cam.mean_focal())).epsilon(1e-12));
  }
}

TEST_CASE("distort: strictly increasing over the FoV") {
  const FisheyeCamera& cam = svbev::test::default_rig().camera(Channel::Left);
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double theta = cam.fov_half_angle * i / 1000.0;
    const auto r = cam.distort(theta);
    REQUIRE(r.ok());
    CHECK(r.value() > prev);
    prev = r.value();
  }
}

TEST_CASE("undistort: image center and equidistant inverse") {
  const FisheyeCamera cam = pitched_test_camera();
  REQUIRE(cam.undistort(0.0).ok());
  CHECK(cam.undistort(0.0).value() == 0.0);
  const auto theta = cam.undistort(150.0);
  REQUIRE(theta.ok());
  CHECK(theta.value() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("undistort: rejects radii beyond the FoV radius") {
  const FisheyeCamera cam = pitched_test_camera();
  const auto bad = cam.undistort(cam.max_radius_px() + 1.0);
  REQUIRE(!bad.ok());
  CHECK(bad.error() == Err::RadiusOutOfRange);
  CHECK(!cam.undistort(-1.0).ok());
}

TEST_CASE("undistort(distort(theta)) round-trips within 1e-9 rad") {
  const FisheyeCamera& poly_cam = svbev::test::default_rig().camera(Channel::Front);
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const double theta = rng.uniform(0.0, poly_cam.fov_half_angle);
    const auto r = poly_cam.distort(theta);
    REQUIRE(r.ok());
    const auto back = poly_cam.undistort(r.value());
    REQUIRE(back.ok());
    CHECK(std::abs(back.value() - theta) < 1e-9);
  }
}

TEST_CASE("project_ground_to_pixel: optical-axis ray hits the principal point") {
  // Camera 1 m up, pitched 45 degrees down: the axis pierces the ground at x = 1.
  const FisheyeCamera cam = pitched_test_camera(45.0);
  const auto px = cam.project_ground_to_pixel({1.0, 0.0});
  REQUIRE(px.ok());
  CHECK(px.value().u == doctest::Approx(cam.principal.u).epsilon(1e-9));
  CHECK(px.value().v == doctest::Approx(cam.principal.v).epsilon(1e-9));
}

TEST_CASE("project_ground_to_pixel: behind-camera and out-of-FoV classification") {
  const FisheyeCamera wide = pitched_test_camera(45.0, 300.0, 95.0);
  const auto behind = wide.project_ground_to_pixel({-5.0, 0.0});
  REQUIRE(!behind.ok());
  CHECK(behind.error() == Err::BehindCamera);

  const FisheyeCamera narrow = pitched_test_camera(45.0, 300.0, 30.0);
  const auto out = narrow.project_ground_to_pixel({8.0, 0.0});  // ~38 deg off axis
  REQUIRE(!out.ok());
  CHECK(out.error() == Err::OutOfFov);
}

TEST_CASE("project_ground_to_pixel: FoV boundary compares inclusively") {
  // Straight-down camera, FoV half angle exactly atan2(1, 1): a ground point
  // at distance 1 sits exactly on the boundary and must still project.
  FisheyeCamera cam = pitched_test_camera(90.0);
  cam.fov_half_angle = std::atan2(1.0, 1.0);
  const auto on_boundary = cam.project_ground_to_pixel({1.0, 0.0});
  CHECK(on_boundary.ok());
  const auto outside = cam.project_ground_to_pixel({1.001, 0.0});
  REQUIRE(!outside.ok());
  CHECK(outside.error() == Err::OutOfFov);
}

TEST_CASE("pixel_to_ground: principal point of the 45-degree camera lands at (1, 0)") {
  const FisheyeCamera cam = pitched_test_camera(45.0);
  const auto p = cam.pixel_to_ground(cam.principal);
  REQUIRE(p.ok());
  CHECK(p.value().x == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.value().y == doctest::Approx(0.0).epsilon(1e-9));
  // GroundPoint carries no z: the z = 0 invariant holds by construction.
}

TEST_CASE("pixel_to_ground: horizon and above-horizon rays are rejected") {
  const FisheyeCamera cam = pitched_test_camera(45.0);
  // 45 degrees image-up from the axis is exactly horizontal.
  const PixelPoint horizon{cam.principal.u, cam.principal.v - 300.0 * (kPi / 4.0)};
  const auto flat = cam.pixel_to_ground(horizon);
  REQUIRE(!flat.ok());
  CHECK(flat.error() == Err::RayParallelToGround);

  const PixelPoint sky{cam.principal.u, cam.principal.v - 300.0 * 1.0};
  const auto up = cam.pixel_to_ground(sky);
  REQUIRE(!up.ok());
  CHECK(up.error() == Err::RayHitsAboveHorizon);
}

TEST_CASE("pixel_to_ground: radius beyond the FoV is rejected") {
  const FisheyeCamera cam = pitched_test_camera(45.0);
  const PixelPoint px{cam.principal.u + cam.max_radius_px() + 5.0, cam.principal.v};
  const auto p = cam.pixel_to_ground(px);
  REQUIRE(!p.ok());
  CHECK(p.error() == Err::RadiusOutOfRange);
}

TEST_CASE("round trip: ground -> pixel -> ground within 1e-6 m over the rig") {
  Rng rng(99);
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    const GroundPoint p{rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)};
    for (Channel c : kAllChannels) {
      const FisheyeCamera& cam = svbev::test::default_rig().camera(c);
      const auto px = cam.project_ground_to_pixel(p);
      if (!px.ok()) continue;
      const auto back = cam.pixel_to_ground(px.value());
      REQUIRE(back.ok());
      CHECK(std::abs(back.value().x - p.x) < 1e-6);
      CHECK(std::abs(back.value().y - p.y) < 1e-6);
      ++accepted;
    }
  }
  CHECK(accepted > 1000);  // the rig covers most of the sampled ring
}

TEST_CASE("ordering: nearer ground points sit farther from the horizon pixel") {
  const FisheyeCamera cam = pitched_test_camera(45.0);
  const PixelPoint horizon{cam.principal.u, cam.principal.v - 300.0 * (kPi / 4.0)};
  double prev_gap = std::numeric_limits<double>::infinity();
  for (double d : {0.3, 0.7, 1.5, 3.0, 6.0, 12.0}) {
    const auto px = cam.project_ground_to_pixel({d, 0.0});
    REQUIRE(px.ok());
    const double gap = pixel_distance(px.value(), horizon);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("table-driven camera: knots echo and 1e-3 round trip") {
  // Build a sampled table from the shipped polynomial camera.
  const FisheyeCamera& poly_cam = svbev::test::default_rig().camera(Channel::Front);
  std::vector<double> thetas, rhos;
  const int knots = 512;
  for (int i = 0; i <= knots; ++i) {
    const double theta = poly_cam.fov_half_angle * i / knots;
    thetas.push_back(theta);
    rhos.push_back(poly_cam.distortion.forward(theta));
  }
  FisheyeCamera table_cam = poly_cam;
  table_cam.distortion = DistortionModel::table(thetas, rhos);

  // Exact at knots.
  const auto r = table_cam.distort(thetas[100]);
  REQUIRE(r.ok());
  CHECK(r.value() == doctest::Approx(rhos[100] * table_cam.mean_focal()).epsilon(1e-12));

  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const GroundPoint p{rng.uniform(0.5, 8.0), rng.uniform(-4.0, 4.0)};
    const auto px = table_cam.project_ground_to_pixel(p);
    if (!px.ok()) continue;
    const auto back = table_cam.pixel_to_ground(px.value());
    REQUIRE(back.ok());
    CHECK(std::abs(back.value().x - p.x) < 1e-3);
    CHECK(std::abs(back.value().y - p.y) < 1e-3);
  }
}

TEST_CASE("camera_violations flags broken cameras") {
  FisheyeCamera cam = pitched_test_camera();
  CHECK(camera_violations(cam).empty());

  FisheyeCamera sunk = cam;
  sunk.translation.z = -0.5;
  CHECK(!camera_violations(sunk).empty());

  FisheyeCamera skewed = cam;
  skewed.rotation.m[0] = 0.5;
  CHECK(!camera_violations(skewed).empty());
}
