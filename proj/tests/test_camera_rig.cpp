#include <doctest.h>

#include <json.hpp>

#include "helpers.hpp"
#include "svbev/camera_rig.hpp"

using namespace svbev;
using nlohmann::json;

namespace {

json default_doc() {
  return json::parse(read_text_file(svbev::test::data_path("calibration_default.json")));
}

template <typename Mutate>
void expect_load_failure(Mutate mutate, ConfigError::Kind kind) {
  json doc = default_doc();
  mutate(doc);
  try {
    load_calibration(doc.dump());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == kind);
  }
}

}  // namespace

TEST_CASE("load_calibration: complete document yields a 4-camera rig") {
  const CameraRig rig = load_calibration_file(svbev::test::data_path("calibration_default.json"));
  for (Channel c : kAllChannels) {
    CHECK(rig.camera(c).channel == c);
    CHECK(camera_violations(rig.camera(c)).empty());
  }
  const FisheyeCamera& front = rig.camera(Channel::Front);
  CHECK(front.fx == 320.0);
  CHECK(front.fy == 320.0);
  CHECK(front.principal.u == 640.0);
  CHECK(front.principal.v == 400.0);
  CHECK(front.translation.x == 3.55);
  CHECK(front.fov_half_angle == doctest::Approx(deg_to_rad(95.0)).epsilon(1e-15));
}

TEST_CASE("load_calibration is pure: same document, identical rig") {
  const std::string text = read_text_file(svbev::test::data_path("calibration_default.json"));
  const CameraRig a = load_calibration(text);
  const CameraRig b = load_calibration(text);
  for (Channel c : kAllChannels) {
    const FisheyeCamera& ca = a.camera(c);
    const FisheyeCamera& cb = b.camera(c);
    CHECK(ca.fx == cb.fx);
    CHECK(ca.fov_half_angle == cb.fov_half_angle);
    for (int i = 0; i < 9; ++i) CHECK(ca.rotation.m[size_t(i)] == cb.rotation.m[size_t(i)]);
    CHECK(ca.translation.x == cb.translation.x);
    CHECK(ca.translation.y == cb.translation.y);
    CHECK(ca.translation.z == cb.translation.z);
  }
}

TEST_CASE("load_calibration: reflection (det = -1) is rejected") {
  expect_load_failure(
      [](json& doc) {
        // Negate one column of the front rotation: still orthogonal, improper.
        auto& rot = doc["cameras"][0]["rotation"];
        for (int row = 0; row < 3; ++row) {
          rot[size_t(row * 3)] = -rot[size_t(row * 3)].get<double>();
        }
      },
      ConfigError::Kind::NonOrthonormalRotation);
}

TEST_CASE("load_calibration: non-orthonormal rotation is rejected") {
  expect_load_failure([](json& doc) { doc["cameras"][0]["rotation"][0] = 0.3; },
                      ConfigError::Kind::NonOrthonormalRotation);
}

TEST_CASE("load_calibration: decreasing distortion table is rejected") {
  expect_load_failure(
      [](json& doc) {
        doc["cameras"][1]["distortion"] = {
            {"kind", "table"},
            {"table", {{0.0, 0.0}, {0.5, 160.0}, {1.0, 150.0}, {1.6581, 500.0}}}};
      },
      ConfigError::Kind::NonMonotoneDistortion);
}

TEST_CASE("load_calibration: missing channel is rejected") {
  expect_load_failure([](json& doc) { doc["cameras"].erase(3); },
                      ConfigError::Kind::MissingChannel);
}

TEST_CASE("load_calibration: duplicate channel is rejected") {
  expect_load_failure([](json& doc) { doc["cameras"][3]["channel"] = "front"; },
                      ConfigError::Kind::DuplicateChannel);
}

TEST_CASE("load_calibration: unknown fields are rejected") {
  expect_load_failure([](json& doc) { doc["cameras"][0]["extra_knob"] = 1.0; },
                      ConfigError::Kind::UnknownField);
  expect_load_failure([](json& doc) { doc["comment"] = "hello"; },
                      ConfigError::Kind::UnknownField);
}

TEST_CASE("load_calibration: wrong frame declaration is rejected") {
  expect_load_failure([](json& doc) { doc["frame"] = "z-down"; }, ConfigError::Kind::BadValue);
}

TEST_CASE("load_calibration: negative camera height is rejected") {
  expect_load_failure([](json& doc) { doc["cameras"][2]["translation"][2] = -1.0; },
                      ConfigError::Kind::BadValue);
}

TEST_CASE("load_calibration: malformed JSON reports a parse error") {
  try {
    load_calibration("{ not json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigError::Kind::ParseError);
  }
}

TEST_CASE("load_calibration: poly_table validates the table against the polynomial") {
  json doc = default_doc();
  auto& cam = doc["cameras"][0];
  const double f = 320.0;
  // Sample the shipped polynomial at a few knots (within tolerance).
  auto poly = [](double theta) {
    return theta - 0.018 * std::pow(theta, 3.0) + 0.0024 * std::pow(theta, 5.0);
  };
  json table = json::array();
  for (double theta : {0.0, 0.4, 0.8, 1.2, 1.6581}) {
    table.push_back({theta, f * poly(theta)});
  }
  cam["distortion"] = {{"kind", "poly_table"},
                       {"coefficients", {-0.018, 0.0024, 0.0, 0.0}},
                       {"table", table},
                       {"table_tolerance_px", 0.5}};
  CHECK_NOTHROW(load_calibration(doc.dump()));

  cam["distortion"]["table"][2][1] = f * poly(0.8) + 3.0;  // break one knot
  try {
    load_calibration(doc.dump());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigError::Kind::BadValue);
  }
}

TEST_CASE("load_calibration: table must cover the FoV and start at the origin") {
  expect_load_failure(
      [](json& doc) {
        doc["cameras"][0]["distortion"] = {
            {"kind", "table"}, {"table", {{0.0, 0.0}, {0.8, 250.0}}}};  // stops short of FoV
      },
      ConfigError::Kind::BadValue);
  expect_load_failure(
      [](json& doc) {
        doc["cameras"][0]["distortion"] = {
            {"kind", "table"}, {"table", {{0.1, 10.0}, {1.7, 520.0}}}};  // no (0, 0) knot
      },
      ConfigError::Kind::BadValue);
}
