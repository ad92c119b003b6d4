#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/panogeom.hpp"

namespace omni {

enum class TrackMode { e2e, tbd, ensemble, auto_select };

const char* to_string(TrackMode m);
TrackMode track_mode_from_string(const std::string& s);  // ConfigError on unknown

struct TrackerConfig {
  TrackMode mode = TrackMode::auto_select;

  // Lifecycle thresholds; both compared strictly (score > tau).
  double tau_init = 0.5;
  double tau_update = 0.5;
  int max_age = 30;

  // Association.
  double w_iou = 0.6;
  double w_app = 0.4;
  double max_cost = 0.8;
  double tau_split = 0.5;

  // Trajectory-instance decoding.
  double claim_gate = 0.5;
  bool flexi_instances = true;
  double perturb_sigma_x = 0.0;
  double perturb_sigma_y = 0.0;

  // ExpertTrack memory.
  bool memory_enabled = true;
  int n_m = 8;
  int k_r = 4;
  int n_e = 4;
  double theta_sim = 0.7;
  double temperature = 1.0;
  double lambda = 0.5;

  // Feature handling.
  int embed_dim = 32;  // c_s
  bool dssm_enabled = false;
  std::string param_file;

  // Geometry ablation: false degrades IoU to the seam-blind variant.
  bool cyclic_geometry = true;

  bool emit_lost = false;
  std::uint64_t seed = 1;

  ProcessNoise process_noise;
  MeasurementNoise measurement_noise;

  void validate() const;  // throws ConfigError
};

// Flat key=value file; '#' comments and blank lines are skipped.
// Unknown keys and unparseable values raise ConfigError.
TrackerConfig load_config(const std::string& path);
void apply_config_kv(TrackerConfig& cfg, const std::string& key, const std::string& value);

// Stable key order, suitable for manifests and round-trips.
std::vector<std::pair<std::string, std::string>> config_to_kv(const TrackerConfig& cfg);

}  // namespace omni
