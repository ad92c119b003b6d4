#pragma once

#include <vector>

#include "core/expert_memory.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

namespace omni {

// Trajectory token carried from frame t-1 into frame t: a feature vector and
// an anchor, in both geometric and encoded form.
struct FlexiTrackInstance {
  long long track_id = -1;
  Vec feature;         // X, memory-enhanced appearance
  PanoBox anchor_box;  // Y, motion-predicted box
  Vec anchor_enc;      // Y encoded into the feature space
  double score = 0.0;
};

// Sinusoidal positional encoding of (cu, cv, w, h) into dims. Frequencies
// are integer multiples of one turn, so the azimuth encoding is continuous
// across the stitching seam. Dims not divisible by 8 are zero-padded.
Vec encode_box(const PanoBox& b, int dims);

// View of one live track, as needed to build its instance.
struct InstanceSource {
  long long id = -1;
  Vec query;               // most recent appearance embedding
  const MemoryBank* bank;  // may be empty, never null
  PanoBox predicted;
  double score = 0.0;
};

// One instance per source. With use_memory the feature is the ExpertTrack
// enhancement of the query; otherwise the raw query passes through.
std::vector<FlexiTrackInstance> make_instances(const std::vector<InstanceSource>& sources,
                                               const MoeParams& moe, int c_s, bool use_memory);

// Denoising-style perturbation: Gaussian noise on the feature and, in box
// space, on the anchor (which is then re-encoded). Zero sigmas return the
// input unchanged, bit for bit.
FlexiTrackInstance perturb(const FlexiTrackInstance& inst, double sigma_x, double sigma_y,
                           Rng& rng);

// Detections split by whether a trajectory instance claimed them.
struct ClaimedDetections {
  struct Claim {
    long long track_id;
    int det_index;
    double score;       // detection score * similarity
    double similarity;  // 1 - hybrid cost, in [0, 1]
  };
  std::vector<Claim> claimed;   // D^F
  std::vector<int> unclaimed;   // D^L, indices into the frame's detections
};

// Deterministic decoder stand-in: one-to-one assignment between instances
// and detections minimizing the hybrid distance; pairs whose similarity
// reaches the gate are claimed, everything else stays unclaimed.
ClaimedDetections claim_detections(const std::vector<FlexiTrackInstance>& instances,
                                   const std::vector<Detection>& dets, double gate,
                                   double w_iou = 0.6, double w_app = 0.4, bool cyclic = true);

}  // namespace omni
