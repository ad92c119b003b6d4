#pragma once

#include <utility>
#include <vector>

#include "core/types.hpp"

namespace omni {

// Track-side view for distance calculation: the motion-predicted box plus the
// memory-enhanced appearance embedding.
struct TrackView {
  PanoBox box;
  Vec embedding;
};

// Hybrid distance table between tracks (rows) and detections (columns).
// forbidden marks pairs gated out entirely.
struct CostMatrix {
  Mat costs;
  std::vector<std::vector<char>> forbidden;
  int rows() const { return costs.rows(); }
  int cols() const { return costs.cols(); }
};

struct AssignmentResult {
  std::vector<std::pair<int, int>> matches;  // (track index, detection index)
  std::vector<int> unmatched_tracks;
  std::vector<int> unmatched_detections;
  double total_cost = 0.0;
};

// Counts distance-calculation work; the E2E paradigm must leave this at zero.
struct AssocDiagnostics {
  long long cost_matrices_built = 0;
};

struct AssocConfig {
  double w_iou = 0.6;
  double w_app = 0.4;
  double max_cost = 0.8;
  double tau_split = 0.5;
  bool cyclic = true;  // ablation hook: false falls back to seam-blind IoU
};

// cost = w_iou * (1 - iou) + w_app * (1 - cosine) / 2, all in [0, 1].
// Pairs with zero overlap and cosine < 0.3 are gated (forbidden). Weights
// must be non-negative and sum to 1 (ConfigError otherwise). When either
// embedding is missing the cosine term falls back to 0.
CostMatrix hybrid_cost(const std::vector<TrackView>& tracks, const std::vector<Detection>& dets,
                       double w_iou, double w_app, bool cyclic = true,
                       AssocDiagnostics* diag = nullptr);

// Minimum-total-cost one-to-one assignment over unforbidden cells; matches
// costing more than max_cost are dissolved into the unmatched sets.
AssignmentResult solve_assignment(const CostMatrix& c, double max_cost);

// Confidence-staged matching: stage 1 runs the hybrid cost against
// detections scoring >= tau_split; stage 2 matches the leftovers against
// low-confidence detections on IoU alone. Indices in the result refer to the
// original detection list.
AssignmentResult staged_associate(const std::vector<TrackView>& tracks,
                                  const std::vector<Detection>& dets, double tau_split,
                                  const AssocConfig& cfg, AssocDiagnostics* diag = nullptr);

}  // namespace omni
