#include "svbev/reid_fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace svbev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGeometryConflictTol = 1e-6;  // meters

/// Union-find with path compression.
class DisjointSet {
 public:
  explicit DisjointSet(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }
  size_t find(size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void unite(size_t a, size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<size_t> parent_;
};

/// Picks the member whose optional field should win: complementary when only
/// one has it, otherwise the highest score (earliest member on ties).
template <typename HasField, typename Score>
std::optional<size_t> resolve_field(const std::vector<const MultidimensionalVector*>& members,
                                    HasField has_field, Score score) {
  std::optional<size_t> best;
  double best_score = -kInf;
  for (size_t i = 0; i < members.size(); ++i) {
    if (!has_field(*members[i])) continue;
    const double s = score(*members[i]);
    if (!best || s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return best;
}

/// Chain-bounding distance: the same-kind spread between two vectors. Pairs
/// with no shared kind contribute nothing; their separation is the vehicle's
/// own geometry (wheel to bumper), not chain drift.
double same_kind_spread(const MultidimensionalVector& a, const MultidimensionalVector& b) {
  double spread = 0.0;
  for (ContactPointKind k : kAllContactKinds) {
    const auto& ca = a.contact(k);
    const auto& cb = b.contact(k);
    if (ca && cb) spread = std::max(spread, distance(ca->physical, cb->physical));
  }
  return spread;
}

/// Groups indices by pairwise distance below the gate (transitive closure).
/// Unions are applied in ascending distance order and skipped when they would
/// push the cluster's same-kind spread past the bound, so over-merging chains
/// stop.
std::vector<std::vector<size_t>> gated_components(
    const std::vector<const MultidimensionalVector*>& items, const FusionConfig& config,
    bool cross_channel_only) {
  const size_t n = items.size();
  DisjointSet ds(n);

  struct Pair {
    double dist;
    size_t i, j;
  };
  std::vector<Pair> pairs;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (cross_channel_only && items[i]->channel == items[j]->channel) continue;
      const double d = vector_contact_distance(*items[i], *items[j]);
      if (d < config.proximity_gate_m) pairs.push_back({d, i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  auto members_of = [&](size_t root) {
    std::vector<size_t> out;
    for (size_t k = 0; k < n; ++k) {
      if (ds.find(k) == root) out.push_back(k);
    }
    return out;
  };
  for (const Pair& p : pairs) {
    const size_t ra = ds.find(p.i);
    const size_t rb = ds.find(p.j);
    if (ra == rb) continue;
    double diameter = 0.0;
    const auto ma = members_of(ra);
    const auto mb = members_of(rb);
    for (size_t a : ma) {
      for (size_t b : mb) {
        diameter = std::max(diameter, same_kind_spread(*items[a], *items[b]));
      }
    }
    if (diameter <= config.max_cluster_diameter_m) ds.unite(ra, rb);
  }

  std::vector<std::vector<size_t>> components;
  std::vector<bool> seen(n, false);
  for (size_t i = 0; i < n; ++i) {
    const size_t root = ds.find(i);
    if (seen[root]) continue;
    seen[root] = true;
    components.push_back(members_of(root));
  }
  return components;
}

}  // namespace

std::vector<std::string> fusion_config_violations(const FusionConfig& config) {
  std::vector<std::string> out;
  if (std::abs(config.alpha + config.beta - 1.0) > 1e-12) {
    out.push_back("alpha + beta must equal 1");
  }
  if (config.alpha < 0.0 || config.alpha > 1.0 || config.beta < 0.0 || config.beta > 1.0) {
    out.push_back("alpha and beta must lie in [0, 1]");
  }
  if (!(config.proximity_gate_m > 0.0)) out.push_back("proximity_gate must be positive");
  if (config.max_cluster_diameter_m < config.proximity_gate_m) {
    out.push_back("max_cluster_diameter must be >= proximity_gate");
  }
  return out;
}

double vector_contact_distance(const MultidimensionalVector& a,
                               const MultidimensionalVector& b) {
  double same_kind = kInf;
  double any_kind = kInf;
  bool shared = false;
  for (ContactPointKind ka : kAllContactKinds) {
    const auto& ca = a.contact(ka);
    if (!ca) continue;
    for (ContactPointKind kb : kAllContactKinds) {
      const auto& cb = b.contact(kb);
      if (!cb) continue;
      const double d = distance(ca->physical, cb->physical);
      any_kind = std::min(any_kind, d);
      if (ka == kb) {
        shared = true;
        same_kind = std::min(same_kind, d);
      }
    }
  }
  return shared ? same_kind : any_kind;
}

Result<std::vector<MultidimensionalVector>> fuse_branches(
    const std::vector<std::vector<MultidimensionalVector>>& branches) {
  std::vector<MultidimensionalVector> out;
  for (const auto& branch : branches) {
    for (const MultidimensionalVector& v : branch) {
      auto it = std::find_if(out.begin(), out.end(), [&v](const MultidimensionalVector& held) {
        return held.bbox == v.bbox;
      });
      if (it == out.end()) {
        out.push_back(v);
        continue;
      }
      // Same bounding box: append one to the other, dropping duplicates.
      // Earlier branches have priority, so existing scalar fields stand.
      for (ContactPointKind kind : kAllContactKinds) {
        const auto& incoming = v.contact(kind);
        if (!incoming) continue;
        const auto& held = it->contact(kind);
        if (!held) {
          it->set_contact(*incoming);
        } else if (distance(held->physical, incoming->physical) > kGeometryConflictTol) {
          return Err::ConflictingGeometry;
        }
      }
      if (!it->vehicle_type && v.vehicle_type) {
        it->vehicle_type = v.vehicle_type;
        it->dims = v.dims;
        it->overhangs = v.overhangs;
        it->scores.type = v.scores.type;
      }
      if (!it->heading_regressed && v.heading_regressed) {
        it->heading_regressed = v.heading_regressed;
        it->scores.heading = v.scores.heading;
      }
      if (!it->scores.vehicle) it->scores.vehicle = v.scores.vehicle;
      if (!it->obj_id) it->obj_id = v.obj_id;
      it->azimuth = compute_azimuth(*it);
    }
  }
  return out;
}

std::vector<MultidimensionalVector> assign_channel_ids(
    std::vector<MultidimensionalVector> vectors,
    const std::vector<MultidimensionalVector>& prior_frame, const FusionConfig& config,
    IdAllocator& allocator) {
  std::vector<const MultidimensionalVector*> ptrs;
  ptrs.reserve(vectors.size());
  for (const auto& v : vectors) ptrs.push_back(&v);
  std::vector<std::vector<size_t>> components = gated_components(ptrs, config, false);
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  // Continuity: match components against the prior frame, nearest first.
  struct Candidate {
    double dist;
    size_t comp;
    size_t prior;
  };
  std::vector<Candidate> candidates;
  for (size_t c = 0; c < components.size(); ++c) {
    for (size_t p = 0; p < prior_frame.size(); ++p) {
      if (!prior_frame[p].obj_id) continue;
      double best = kInf;
      for (size_t m : components[c]) {
        best = std::min(best, vector_contact_distance(vectors[m], prior_frame[p]));
      }
      if (best < config.proximity_gate_m) candidates.push_back({best, c, p});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.comp != b.comp) return a.comp < b.comp;
    return a.prior < b.prior;
  });

  std::vector<std::optional<uint64_t>> comp_id(components.size());
  std::vector<bool> prior_claimed(prior_frame.size(), false);
  for (const Candidate& cand : candidates) {
    if (comp_id[cand.comp] || prior_claimed[cand.prior]) continue;
    comp_id[cand.comp] = *prior_frame[cand.prior].obj_id;
    prior_claimed[cand.prior] = true;
  }
  for (size_t c = 0; c < components.size(); ++c) {
    if (!comp_id[c]) comp_id[c] = allocator.fresh();
    for (size_t m : components[c]) vectors[m].obj_id = comp_id[c];
  }
  return vectors;
}

std::vector<MultidimensionalVector> merge_bev_targets(
    const std::vector<std::vector<MultidimensionalVector>>& per_channel,
    const FusionConfig& config) {
  std::vector<const MultidimensionalVector*> flat;
  for (const auto& channel_vectors : per_channel) {
    for (const auto& v : channel_vectors) flat.push_back(&v);
  }
  if (flat.empty()) return {};

  // Cross-channel closure under the gate, then stitch same-channel vectors
  // that stage 2 already declared to be one target.
  const std::vector<std::vector<size_t>> gate_components = gated_components(flat, config, true);
  DisjointSet ds(flat.size());
  for (const auto& comp : gate_components) {
    for (size_t k = 1; k < comp.size(); ++k) ds.unite(comp[0], comp[k]);
  }
  for (size_t i = 0; i < flat.size(); ++i) {
    for (size_t j = i + 1; j < flat.size(); ++j) {
      if (flat[i]->channel == flat[j]->channel && flat[i]->obj_id && flat[j]->obj_id &&
          *flat[i]->obj_id == *flat[j]->obj_id) {
        ds.unite(i, j);
      }
    }
  }
  std::vector<std::vector<size_t>> components;
  std::vector<std::optional<size_t>> root_slot(flat.size());
  for (size_t i = 0; i < flat.size(); ++i) {
    const size_t root = ds.find(i);
    if (!root_slot[root]) {
      root_slot[root] = components.size();
      components.emplace_back();
    }
    components[*root_slot[root]].push_back(i);
  }

  std::vector<MultidimensionalVector> out;
  out.reserve(components.size());
  for (auto& comp : components) {
    std::sort(comp.begin(), comp.end());
    std::vector<const MultidimensionalVector*> members;
    for (size_t m : comp) members.push_back(flat[m]);

    MultidimensionalVector merged = *members.front();

    // Channel fusion: same-kind points combine as the weighted mean, folded
    // pairwise in member order. Category fusion: single-member kinds copy in.
    for (ContactPointKind kind : kAllContactKinds) {
      std::optional<ContactPoint> acc;
      for (const MultidimensionalVector* m : members) {
        const auto& c = m->contact(kind);
        if (!c) continue;
        if (!acc) {
          acc = *c;
        } else {
          acc->physical.x = config.alpha * acc->physical.x + config.beta * c->physical.x;
          acc->physical.y = config.alpha * acc->physical.y + config.beta * c->physical.y;
        }
      }
      merged.contact_points[static_cast<size_t>(contact_kind_index(kind))] = acc;
    }

    const auto type_winner = resolve_field(
        members, [](const MultidimensionalVector& m) { return m.vehicle_type.has_value(); },
        [](const MultidimensionalVector& m) { return m.scores.type.value_or(-1.0); });
    if (type_winner) {
      const MultidimensionalVector& w = *members[*type_winner];
      merged.vehicle_type = w.vehicle_type;
      merged.dims = w.dims;
      merged.overhangs = w.overhangs;
      merged.scores.type = w.scores.type;
    }
    const auto heading_winner = resolve_field(
        members, [](const MultidimensionalVector& m) { return m.heading_regressed.has_value(); },
        [](const MultidimensionalVector& m) { return m.scores.heading.value_or(-1.0); });
    if (heading_winner) {
      merged.heading_regressed = members[*heading_winner]->heading_regressed;
      merged.scores.heading = members[*heading_winner]->scores.heading;
    }

    uint64_t min_id = std::numeric_limits<uint64_t>::max();
    bool any_id = false;
    for (const MultidimensionalVector* m : members) {
      if (m->obj_id) {
        any_id = true;
        min_id = std::min(min_id, *m->obj_id);
      }
    }
    if (any_id) merged.obj_id = min_id;
    merged.azimuth = compute_azimuth(merged);
    out.push_back(std::move(merged));
  }

  std::sort(out.begin(), out.end(),
            [](const MultidimensionalVector& a, const MultidimensionalVector& b) {
              return a.obj_id.value_or(0) < b.obj_id.value_or(0);
            });
  return out;
}

}  // namespace svbev
