#include "core/flexitrack.hpp"

#include <algorithm>
#include <cmath>

#include "core/common.hpp"
#include "core/hungarian.hpp"

namespace omni {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Vec encode_box(const PanoBox& b, int dims) {
  Vec enc(dims, 0.0);
  const double coords[4] = {b.cu, b.cv, b.w, b.h};
  const int per_coord = dims / 4;
  const int pairs = per_coord / 2;
  for (int c = 0; c < 4; ++c) {
    for (int k = 0; k < pairs; ++k) {
      const double phase = kTwoPi * static_cast<double>(k + 1) * coords[c];
      enc[c * per_coord + 2 * k] = std::sin(phase);
      enc[c * per_coord + 2 * k + 1] = std::cos(phase);
    }
  }
  return enc;
}

std::vector<FlexiTrackInstance> make_instances(const std::vector<InstanceSource>& sources,
                                               const MoeParams& moe, int c_s, bool use_memory) {
  std::vector<FlexiTrackInstance> out;
  out.reserve(sources.size());
  for (const InstanceSource& src : sources) {
    FlexiTrackInstance inst;
    inst.track_id = src.id;
    inst.feature = use_memory ? enhance(*src.bank, src.query, moe) : src.query;
    inst.anchor_box = src.predicted;
    inst.anchor_enc = encode_box(src.predicted, c_s);
    inst.score = src.score;
    out.push_back(std::move(inst));
  }
  return out;
}

FlexiTrackInstance perturb(const FlexiTrackInstance& inst, double sigma_x, double sigma_y,
                           Rng& rng) {
  if (sigma_x < 0.0 || sigma_y < 0.0) throw InputError("perturb: negative sigma");
  FlexiTrackInstance out = inst;
  if (sigma_x > 0.0)
    for (double& v : out.feature) v += sigma_x * rng.normal();
  if (sigma_y > 0.0) {
    const PanoBox& b = inst.anchor_box;
    out.anchor_box = PanoBox::make(b.cu + sigma_y * rng.normal(), b.cv + sigma_y * rng.normal(),
                                   b.w + sigma_y * rng.normal(), b.h + sigma_y * rng.normal());
    out.anchor_enc = encode_box(out.anchor_box, static_cast<int>(inst.anchor_enc.size()));
  }
  return out;
}

ClaimedDetections claim_detections(const std::vector<FlexiTrackInstance>& instances,
                                   const std::vector<Detection>& dets, double gate, double w_iou,
                                   double w_app, bool cyclic) {
  const int ni = static_cast<int>(instances.size());
  const int nd = static_cast<int>(dets.size());
  ClaimedDetections out;
  if (ni == 0 || nd == 0) {
    for (int j = 0; j < nd; ++j) out.unclaimed.push_back(j);
    return out;
  }

  // Same hybrid distance as the association stage, computed against the
  // instance anchors; this path never builds an association cost matrix.
  Mat cost(ni, nd);
  Mat sim(ni, nd);
  for (int i = 0; i < ni; ++i) {
    for (int j = 0; j < nd; ++j) {
      const double iou = cyclic ? cyclic_iou(instances[i].anchor_box, dets[j].box)
                                : clamped_iou(instances[i].anchor_box, dets[j].box);
      double cos = 0.0;
      if (!instances[i].feature.empty() && !dets[j].embedding.empty())
        cos = cosine(instances[i].feature, dets[j].embedding);
      const double c = w_iou * (1.0 - iou) + w_app * (1.0 - cos) / 2.0;
      sim(i, j) = 1.0 - c;
      cost(i, j) = (iou == 0.0 && cos < 0.3) ? kForbiddenCost : c;
    }
  }

  const std::vector<int> col4row = min_cost_assignment(cost);
  std::vector<char> taken(nd, 0);
  for (int i = 0; i < ni; ++i) {
    const int j = col4row[i];
    if (j < 0 || cost(i, j) >= kForbiddenCost || sim(i, j) < gate) continue;
    out.claimed.push_back(
        {instances[i].track_id, j, dets[j].score * sim(i, j), sim(i, j)});
    taken[j] = 1;
  }
  for (int j = 0; j < nd; ++j)
    if (!taken[j]) out.unclaimed.push_back(j);
  return out;
}

}  // namespace omni
