#pragma once

#include <cstdint>
#include <vector>

#include "svbev/result.hpp"
#include "svbev/vector_types.hpp"

namespace svbev {

struct FusionConfig {
  double proximity_gate_m = 0.5;       // "same target" gate on contact points
  double alpha = 0.5;                  // channel-fusion weight, first member
  double beta = 0.5;                   // channel-fusion weight, second member
  double max_cluster_diameter_m = 2.0; // bound on transitive-closure chains
};

std::vector<std::string> fusion_config_violations(const FusionConfig& config);

/// Monotone id source shared by all channels so per-channel ids never collide.
class IdAllocator {
 public:
  uint64_t fresh() { return next_++; }
  uint64_t peek() const { return next_; }
  void reset(uint64_t next = 1) { next_ = next; }

 private:
  uint64_t next_ = 1;
};

/// Distance between two vectors: minimum over same-kind contact point pairs;
/// when no kind is shared, minimum over all cross-kind pairs; infinity when
/// either vector has no contact points.
double vector_contact_distance(const MultidimensionalVector& a,
                               const MultidimensionalVector& b);

/// ReID stage 1: vectors from different branches with the same bounding box
/// (exact pixel equality) merge field-wise; branch priority is list order
/// (contact > type > heading). Fails with ConflictingGeometry when two merged
/// vectors carry same-kind physical points more than 1e-6 m apart.
Result<std::vector<MultidimensionalVector>> fuse_branches(
    const std::vector<std::vector<MultidimensionalVector>>& branches);

/// ReID stage 2: one channel's fused vectors get ids. Vectors closer than the
/// proximity gate share an id (connected components); ids persist from the
/// prior frame by nearest-neighbor under the same gate; fresh ids come from
/// the shared allocator in input order.
std::vector<MultidimensionalVector> assign_channel_ids(
    std::vector<MultidimensionalVector> vectors,
    const std::vector<MultidimensionalVector>& prior_frame, const FusionConfig& config,
    IdAllocator& allocator);

/// ReID stage 3: cross-channel groups under the same gate (transitive closure,
/// chains bounded by max_cluster_diameter_m). Same-kind contact points merge
/// as the weighted mean alpha*p1 + beta*p2; kinds present in only one member
/// are copied; scalars resolve complementary-first, then by score. The merged
/// id is the smallest member id, so ids stay stable while memberships persist.
std::vector<MultidimensionalVector> merge_bev_targets(
    const std::vector<std::vector<MultidimensionalVector>>& per_channel,
    const FusionConfig& config);

}  // namespace svbev
