#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "svbev/reid_fusion.hpp"

using namespace svbev;
using svbev::test::make_contact;

namespace {

MultidimensionalVector vec_with(Channel channel, const BBox& bbox,
                                std::initializer_list<ContactPoint> contacts) {
  MultidimensionalVector v;
  v.channel = channel;
  v.bbox = bbox;
  for (const ContactPoint& c : contacts) v.set_contact(c);
  v.azimuth = compute_azimuth(v);
  return v;
}

const BBox kBox1{10.0, 10.0, 100.0, 80.0};
const BBox kBox2{300.0, 10.0, 100.0, 80.0};

}  // namespace

TEST_CASE("vector_contact_distance: same-kind minimum, cross-kind fallback") {
  const auto a = vec_with(Channel::Front, kBox1,
                          {make_contact(ContactPointKind::FW, {1.0, 0.0}),
                           make_contact(ContactPointKind::RW, {3.0, 0.0})});
  const auto b = vec_with(Channel::Left, kBox2,
                          {make_contact(ContactPointKind::FW, {1.0, 0.4}),
                           make_contact(ContactPointKind::RW, {3.0, 5.0})});
  CHECK(vector_contact_distance(a, b) == doctest::Approx(0.4).epsilon(1e-12));

  // No shared kind: fall back to the cross-kind minimum.
  const auto c = vec_with(Channel::Left, kBox2, {make_contact(ContactPointKind::RB, {3.2, 0.0})});
  CHECK(vector_contact_distance(a, c) == doctest::Approx(0.2).epsilon(1e-12));

  const MultidimensionalVector empty;
  CHECK(std::isinf(vector_contact_distance(a, empty)));
}

TEST_CASE("fuse_branches: same bbox merges contact, type, and heading branches") {
  auto contact = vec_with(Channel::Front, kBox1, {make_contact(ContactPointKind::FW, {1.0, 0.5})});
  contact.scores.vehicle = 0.95;

  MultidimensionalVector type_vec;
  type_vec.channel = Channel::Front;
  type_vec.bbox = kBox1;
  type_vec.vehicle_type = "suv";
  type_vec.dims = Dimensions{4.8, 1.9, 1.7};
  type_vec.overhangs = Overhangs{0.9, 1.0};
  type_vec.scores.type = 0.8;

  MultidimensionalVector heading_vec;
  heading_vec.channel = Channel::Front;
  heading_vec.bbox = kBox1;
  heading_vec.heading_regressed = 0.4;
  heading_vec.scores.heading = 0.7;

  const auto fused = fuse_branches({{contact}, {type_vec}, {heading_vec}});
  REQUIRE(fused.ok());
  REQUIRE(fused.value().size() == 1);
  const MultidimensionalVector& v = fused.value().front();
  CHECK(v.contact(ContactPointKind::FW).has_value());
  CHECK(v.vehicle_type == "suv");
  CHECK(v.dims->l == 4.8);
  CHECK(v.heading_regressed == 0.4);
  CHECK(validate_vector(v).empty());
}

TEST_CASE("fuse_branches: single branch passes through unchanged") {
  const auto contact = vec_with(Channel::Front, kBox1,
                                {make_contact(ContactPointKind::RW, {2.0, 0.0})});
  const auto fused = fuse_branches({{contact}});
  REQUIRE(fused.ok());
  REQUIRE(fused.value().size() == 1);
  CHECK(fused.value().front().bbox == kBox1);
  CHECK(fused.value().front().contact_count() == 1);
}

TEST_CASE("fuse_branches: different bboxes stay separate") {
  const auto a = vec_with(Channel::Front, kBox1, {make_contact(ContactPointKind::FW, {1.0, 0.0})});
  MultidimensionalVector b;
  b.channel = Channel::Front;
  b.bbox = kBox2;
  b.vehicle_type = "car";
  b.dims = Dimensions{4.6, 1.8, 1.5};
  b.overhangs = Overhangs{0.9, 1.0};
  const auto fused = fuse_branches({{a}, {b}});
  REQUIRE(fused.ok());
  CHECK(fused.value().size() == 2);
}

TEST_CASE("fuse_branches: conflicting same-kind geometry is an error") {
  const auto a = vec_with(Channel::Front, kBox1, {make_contact(ContactPointKind::FW, {1.0, 0.0})});
  const auto b = vec_with(Channel::Front, kBox1, {make_contact(ContactPointKind::FW, {1.1, 0.0})});
  const auto fused = fuse_branches({{a}, {b}});
  REQUIRE(!fused.ok());
  CHECK(fused.error() == Err::ConflictingGeometry);
}

TEST_CASE("assign_channel_ids: proximity gate at 50 cm") {
  IdAllocator allocator;
  const FusionConfig config;
  // 0.3 m apart: one id. 0.6 m apart: two ids.
  auto near1 = vec_with(Channel::Front, kBox1, {make_contact(ContactPointKind::RW, {2.0, 0.0})});
  auto near2 = vec_with(Channel::Front, kBox2, {make_contact(ContactPointKind::RW, {2.3, 0.0})});
  auto ids = assign_channel_ids({near1, near2}, {}, config, allocator);
  REQUIRE(ids.size() == 2);
  CHECK(*ids[0].obj_id == *ids[1].obj_id);

  auto far1 = vec_with(Channel::Front, kBox1, {make_contact(ContactPointKind::RW, {2.0, 0.0})});
  auto far2 = vec_with(Channel::Front, kBox2, {make_contact(ContactPointKind::RW, {2.6, 0.0})});
  ids = assign_channel_ids({far1, far2}, {}, config, allocator);
  REQUIRE(ids.size() == 2);
  CHECK(*ids[0].obj_id != *ids[1].obj_id);
}

TEST_CASE("assign_channel_ids: empty input, empty output") {
  IdAllocator allocator;
  CHECK(assign_channel_ids({}, {}, FusionConfig{}, allocator).empty());
}

TEST_CASE("assign_channel_ids: ids persist from the prior frame under the gate") {
  IdAllocator allocator;
  const FusionConfig config;
  auto prior = vec_with(Channel::Front, kBox1, {make_contact(ContactPointKind::RW, {2.0, 0.0})});
  prior.obj_id = 7;
  allocator.reset(8);

  auto moved = vec_with(Channel::Front, kBox1, {make_contact(ContactPointKind::RW, {2.3, 0.0})});
  auto ids = assign_channel_ids({moved}, {prior}, config, allocator);
  REQUIRE(ids.size() == 1);
  CHECK(*ids[0].obj_id == 7);

  auto jumped = vec_with(Channel::Front, kBox1, {make_contact(ContactPointKind::RW, {2.8, 0.0})});
  ids = assign_channel_ids({jumped}, {prior}, config, allocator);
  REQUIRE(ids.size() == 1);
  CHECK(*ids[0].obj_id == 8);  // fresh, monotone

  auto next = vec_with(Channel::Front, kBox2, {make_contact(ContactPointKind::RW, {9.0, 0.0})});
  ids = assign_channel_ids({next}, {}, config, allocator);
  CHECK(*ids[0].obj_id == 9);
}

TEST_CASE("merge_bev_targets: weighted channel fusion is the exact midpoint at 0.5/0.5") {
  auto a = vec_with(Channel::Left, kBox1, {make_contact(ContactPointKind::FW, {1.0, 2.0},
                                                        Channel::Left)});
  a.obj_id = 1;
  auto b = vec_with(Channel::Front, kBox2, {make_contact(ContactPointKind::FW, {1.2, 2.0},
                                                         Channel::Front)});
  b.obj_id = 2;
  const auto merged = merge_bev_targets({{b}, {}, {a}, {}}, FusionConfig{});
  REQUIRE(merged.size() == 1);
  const auto& fw = merged.front().contact(ContactPointKind::FW);
  REQUIRE(fw.has_value());
  CHECK(fw->physical.x == 0.5 * 1.0 + 0.5 * 1.2);
  CHECK(fw->physical.x == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(fw->physical.y == 2.0);
  CHECK(*merged.front().obj_id == 1);  // smallest member id
}

TEST_CASE("merge_bev_targets: weighted fusion is a convex combination") {
  FusionConfig config;
  config.alpha = 0.7;
  config.beta = 0.3;
  auto a = vec_with(Channel::Left, kBox1, {make_contact(ContactPointKind::RW, {1.0, 1.0})});
  a.obj_id = 1;
  auto b = vec_with(Channel::Front, kBox2, {make_contact(ContactPointKind::RW, {1.3, 0.8})});
  b.obj_id = 2;
  const auto merged = merge_bev_targets({{b}, {}, {a}, {}}, config);
  REQUIRE(merged.size() == 1);
  const auto& rw = merged.front().contact(ContactPointKind::RW);
  // Member order is channel order: front (b) first, then left (a).
  CHECK(rw->physical.x == doctest::Approx(0.7 * 1.3 + 0.3 * 1.0).epsilon(1e-15));
  CHECK(rw->physical.y == doctest::Approx(0.7 * 0.8 + 0.3 * 1.0).epsilon(1e-15));
  // On the segment between the inputs.
  CHECK(rw->physical.x >= 1.0);
  CHECK(rw->physical.x <= 1.3);
}

TEST_CASE("merge_bev_targets: category fusion copies single-member kinds") {
  auto wheels = vec_with(Channel::Left, kBox1,
                         {make_contact(ContactPointKind::FW, {2.0, 1.0}),
                          make_contact(ContactPointKind::RW, {0.5, 1.2})});
  wheels.obj_id = 3;
  auto bumper = vec_with(Channel::Rear, kBox2, {make_contact(ContactPointKind::RB, {0.4, 1.0})});
  bumper.obj_id = 5;
  const auto merged = merge_bev_targets({{}, {bumper}, {wheels}, {}}, FusionConfig{});
  REQUIRE(merged.size() == 1);
  CHECK(merged.front().contact_count() == 3);
  CHECK(merged.front().contact(ContactPointKind::FW)->physical.x == 2.0);
  CHECK(merged.front().contact(ContactPointKind::RB)->physical.x == 0.4);
  CHECK(*merged.front().obj_id == 3);
}

TEST_CASE("merge_bev_targets: single-channel vector passes through with its id") {
  auto only = vec_with(Channel::Right, kBox1, {make_contact(ContactPointKind::RW, {2.0, -1.0})});
  only.obj_id = 11;
  only.vehicle_type = "car";
  only.dims = Dimensions{4.6, 1.8, 1.5};
  only.overhangs = Overhangs{0.9, 1.0};
  const auto merged = merge_bev_targets({{}, {}, {}, {only}}, FusionConfig{});
  REQUIRE(merged.size() == 1);
  CHECK(*merged.front().obj_id == 11);
  CHECK(merged.front().vehicle_type == "car");
  CHECK(merged.front().contact(ContactPointKind::RW)->physical.y == -1.0);
}

TEST_CASE("merge_bev_targets: idempotent and never increases the count") {
  auto a = vec_with(Channel::Left, kBox1, {make_contact(ContactPointKind::FW, {1.0, 2.0})});
  a.obj_id = 1;
  auto b = vec_with(Channel::Front, kBox2, {make_contact(ContactPointKind::FW, {1.2, 2.0})});
  b.obj_id = 2;
  auto c = vec_with(Channel::Right, kBox1, {make_contact(ContactPointKind::RW, {-3.0, -3.0})});
  c.obj_id = 4;

  const auto once = merge_bev_targets({{b}, {}, {a}, {c}}, FusionConfig{});
  CHECK(once.size() <= 3);

  // Re-split by channel and merge again: nothing changes.
  std::vector<std::vector<MultidimensionalVector>> regrouped(kChannelCount);
  for (const auto& v : once) regrouped[size_t(channel_index(v.channel))].push_back(v);
  const auto twice = merge_bev_targets(regrouped, FusionConfig{});
  REQUIRE(twice.size() == once.size());
  for (size_t i = 0; i < once.size(); ++i) {
    CHECK(*twice[i].obj_id == *once[i].obj_id);
    for (ContactPointKind k : kAllContactKinds) {
      const auto& p1 = once[i].contact(k);
      const auto& p2 = twice[i].contact(k);
      REQUIRE(p1.has_value() == p2.has_value());
      if (p1) {
        CHECK(p1->physical.x == p2->physical.x);
        CHECK(p1->physical.y == p2->physical.y);
      }
    }
  }
}

TEST_CASE("merge_bev_targets: output ids are unique") {
  std::vector<std::vector<MultidimensionalVector>> per_channel(kChannelCount);
  Rng rng(3);
  uint64_t id = 1;
  for (Channel ch : kAllChannels) {
    for (int i = 0; i < 5; ++i) {
      auto v = vec_with(ch, kBox1,
                        {make_contact(ContactPointKind::RW,
                                      {rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)}, ch)});
      v.obj_id = id++;
      per_channel[size_t(channel_index(ch))].push_back(std::move(v));
    }
  }
  const auto merged = merge_bev_targets(per_channel, FusionConfig{});
  std::vector<uint64_t> ids;
  for (const auto& v : merged) ids.push_back(*v.obj_id);
  std::sort(ids.begin(), ids.end());
  CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
  CHECK(merged.size() <= 20);
}

TEST_CASE("fusion_config_violations enforces the alpha/beta simplex") {
  FusionConfig config;
  CHECK(fusion_config_violations(config).empty());
  config.alpha = 0.6;
  CHECK(!fusion_config_violations(config).empty());
  config.beta = 0.4;
  CHECK(fusion_config_violations(config).empty());
  config.proximity_gate_m = 0.0;
  CHECK(!fusion_config_violations(config).empty());
}
