#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "core/types.hpp"

namespace omni {

enum class MotionRegime { smooth, gait, pitch };

const char* to_string(MotionRegime r);
MotionRegime regime_from_string(const std::string& s);  // ConfigError on unknown

// Scenario knobs for the synthetic panoramic benchmark. Targets drift around
// the cylinder at constant angular velocity plus a small random walk; the
// platform injects vertical (gait) or pitch oscillation; detections are the
// visible ground truth with jitter, dropout and clutter; embeddings separate
// by identity with noise growing away from the horizon.
struct ScenarioConfig {
  int n_targets = 12;
  int seq_len = 600;
  MotionRegime regime = MotionRegime::gait;

  double gait_amp = 0.02;
  double gait_freq = 0.1;  // cycles per frame
  double pitch_amp = 0.03;
  double pitch_freq = 0.05;

  double p_miss = 0.1;
  double clutter_rate = 1.0;     // expected clutter boxes per frame
  double jitter_sigma = 0.002;   // detection noise; also scales ego jitter

  int embed_dim = 32;
  double embed_noise = 0.25;      // per-vector appearance noise scale
  double distortion_gain = 1.0;   // extra noise per unit |cv - 0.5|

  double speed_min = -0.004;  // azimuth turns per frame
  double speed_max = 0.004;
  double walk_sigma = 0.0005;

  // Fraction of the sequence over which targets enter the scene (0 = all
  // present from frame 1). Target i appears at floor(stagger*seq_len*i/n).
  double entry_stagger = 0.0;

  double score_lo = 0.75;
  double score_hi = 0.98;
  double clutter_score_lo = 0.50;
  double clutter_score_hi = 0.65;

  double occlusion_iou = 0.6;  // farther target suppressed above this overlap

  std::uint64_t seed = 7;
};

struct SyntheticSequence {
  Sequence gt;
  DetectionFrames detections;
  std::vector<std::vector<long long>> det_true_ids;  // -1 for clutter
};

// Platform-induced (vertical displacement, pitch angle) at frame t. Pure in
// (t, cfg): the jitter stream is keyed on the frame index.
std::pair<double, double> ego_noise(int t, const ScenarioConfig& cfg);

SyntheticSequence generate(const ScenarioConfig& cfg);

// Seam crossings of one ground-truth identity (azimuth jumps > 0.5 between
// consecutive frames).
int count_wrap_events(const Sequence& gt, long long id);

}  // namespace omni
