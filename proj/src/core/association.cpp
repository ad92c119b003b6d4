#include "core/association.hpp"

#include <algorithm>
#include <cmath>

#include "core/common.hpp"
#include "core/hungarian.hpp"

namespace omni {

CostMatrix hybrid_cost(const std::vector<TrackView>& tracks, const std::vector<Detection>& dets,
                       double w_iou, double w_app, bool cyclic, AssocDiagnostics* diag) {
  if (w_iou < 0.0 || w_app < 0.0 || std::abs(w_iou + w_app - 1.0) > 1e-9)
    throw ConfigError("hybrid_cost: weights must be non-negative and sum to 1");

  const int nt = static_cast<int>(tracks.size());
  const int nd = static_cast<int>(dets.size());
  CostMatrix cm;
  cm.costs = Mat(nt, nd);
  cm.forbidden.assign(nt, std::vector<char>(nd, 0));
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < nd; ++j) {
      const double iou = cyclic ? cyclic_iou(tracks[i].box, dets[j].box)
                                : clamped_iou(tracks[i].box, dets[j].box);
      double cos = 0.0;
      if (!tracks[i].embedding.empty() && !dets[j].embedding.empty())
        cos = cosine(tracks[i].embedding, dets[j].embedding);
      cm.costs(i, j) = w_iou * (1.0 - iou) + w_app * (1.0 - cos) / 2.0;
      cm.forbidden[i][j] = (iou == 0.0 && cos < 0.3) ? 1 : 0;
    }
  }
  if (diag) ++diag->cost_matrices_built;
  return cm;
}

AssignmentResult solve_assignment(const CostMatrix& c, double max_cost) {
  AssignmentResult res;
  const int nt = c.rows();
  const int nd = c.cols();
  if (nt == 0 || nd == 0) {
    for (int i = 0; i < nt; ++i) res.unmatched_tracks.push_back(i);
    for (int j = 0; j < nd; ++j) res.unmatched_detections.push_back(j);
    return res;
  }

  Mat work(nt, nd);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nd; ++j) work(i, j) = c.forbidden[i][j] ? kForbiddenCost : c.costs(i, j);

  const std::vector<int> col4row = min_cost_assignment(work);
  std::vector<char> det_taken(nd, 0);
  for (int i = 0; i < nt; ++i) {
    const int j = col4row[i];
    if (j >= 0 && !c.forbidden[i][j] && c.costs(i, j) <= max_cost) {
      res.matches.emplace_back(i, j);
      res.total_cost += c.costs(i, j);
      det_taken[j] = 1;
    } else {
      res.unmatched_tracks.push_back(i);
    }
  }
  for (int j = 0; j < nd; ++j)
    if (!det_taken[j]) res.unmatched_detections.push_back(j);
  return res;
}

AssignmentResult staged_associate(const std::vector<TrackView>& tracks,
                                  const std::vector<Detection>& dets, double tau_split,
                                  const AssocConfig& cfg, AssocDiagnostics* diag) {
  std::vector<int> high, low;
  for (int j = 0; j < static_cast<int>(dets.size()); ++j)
    (dets[j].score >= tau_split ? high : low).push_back(j);

  AssignmentResult merged;
  std::vector<int> track_pool(tracks.size());
  for (std::size_t i = 0; i < tracks.size(); ++i) track_pool[i] = static_cast<int>(i);

  auto run_stage = [&](const std::vector<int>& det_idx, double w_iou, double w_app) {
    if (track_pool.empty() || det_idx.empty()) {
      for (int j : det_idx) merged.unmatched_detections.push_back(j);
      return;
    }
    std::vector<TrackView> stage_tracks;
    stage_tracks.reserve(track_pool.size());
    for (int t : track_pool) stage_tracks.push_back(tracks[t]);
    std::vector<Detection> stage_dets;
    stage_dets.reserve(det_idx.size());
    for (int j : det_idx) stage_dets.push_back(dets[j]);

    const CostMatrix cm = hybrid_cost(stage_tracks, stage_dets, w_iou, w_app, cfg.cyclic, diag);
    const AssignmentResult sr = solve_assignment(cm, cfg.max_cost);

    std::vector<int> next_pool;
    std::vector<char> matched_track(track_pool.size(), 0);
    for (const auto& [ti, dj] : sr.matches) {
      merged.matches.emplace_back(track_pool[ti], det_idx[dj]);
      merged.total_cost += cm.costs(ti, dj);
      matched_track[ti] = 1;
    }
    for (std::size_t ti = 0; ti < track_pool.size(); ++ti)
      if (!matched_track[ti]) next_pool.push_back(track_pool[ti]);
    for (int dj : sr.unmatched_detections) merged.unmatched_detections.push_back(det_idx[dj]);
    track_pool = std::move(next_pool);
  };

  run_stage(high, cfg.w_iou, cfg.w_app);
  run_stage(low, 1.0, 0.0);

  merged.unmatched_tracks = track_pool;
  std::sort(merged.unmatched_detections.begin(), merged.unmatched_detections.end());
  std::sort(merged.matches.begin(), merged.matches.end());
  return merged;
}

}  // namespace omni
