#pragma once

#include <vector>

#include "core/association.hpp"
#include "core/config.hpp"
#include "core/dssm.hpp"
#include "core/flexitrack.hpp"

namespace omni {

enum class TrackState { active, lost, removed };
enum class Provenance { e2e, tbd, ensemble };

const char* to_string(Provenance p);

struct Tracklet {
  long long id = 0;
  TrackState state = TrackState::active;
  CyclicKalmanState kalman;
  MemoryBank bank;
  long long hits = 0;
  int time_since_update = 0;
  double last_score = 0.0;
  Vec last_embedding;
  Provenance provenance = Provenance::e2e;
};

struct TrackOutput {
  long long id = 0;
  PanoBox box;
  double score = 0.0;
  Provenance provenance = Provenance::e2e;
  long long hits = 0;
};

struct FrameDiag {
  bool ran_e2e = false;
  bool ran_tbd = false;
  int updates = 0;
  int inits = 0;
  int removed = 0;
  int claimed = 0;
  int unclaimed = 0;
};

struct FrameResult {
  int frame = 0;
  std::vector<TrackOutput> outputs;
  FrameDiag diag;
};

// ---- Branch controller and thresholding, exposed as pure helpers ----

struct BranchSet {
  bool e2e = false;
  bool tbd = false;
};

// Fixed modes map directly; auto picks E2E once >= 80% of the live tracks
// claimed a detection this frame, TBD below 50%, and both in between. The
// returned set is never empty.
BranchSet branch_select(int claimed_count, int track_count, TrackMode mode);

enum class ThresholdDecision { update, initialize, discard };

// Claimed detections update their track when score > tau_update; unclaimed
// ones initialize a track when score > tau_init; everything else is dropped.
ThresholdDecision e2e_claimed_decision(double score, double tau_update);
ThresholdDecision e2e_unclaimed_decision(double score, double tau_init);

struct E2eDecisions {
  std::vector<ClaimedDetections::Claim> updates;
  std::vector<int> inits;     // detection indices
  std::vector<int> discards;  // detection indices
};

E2eDecisions e2e_threshold(const ClaimedDetections& claimed, const std::vector<Detection>& dets,
                           double tau_update, double tau_init);

// TBD branch body as decisions: matched pairs update, unmatched detections
// above tau_init initialize, unmatched tracks age.
struct TbdDecisions {
  std::vector<std::pair<int, int>> updates;  // (track index, detection index)
  std::vector<int> inits;                    // detection indices
  std::vector<int> aged;                     // track indices
};

TbdDecisions tbd_step(const AssignmentResult& assoc, const std::vector<Detection>& dets,
                      double tau_init);

// Output-level fusion of the two branch results for one frame. Outputs whose
// boxes overlap with cyclic IoU >= 0.7 merge into one: the id with the longer
// history survives (ties: smaller id), box and score come from the
// higher-scoring branch (ties: TBD). Disjoint outputs are unioned; if the
// same id surfaces in both branches without overlapping itself, the
// higher-scoring copy wins so ids stay unique.
// Throws InputError when the frame indices differ.
FrameResult ensemble(const FrameResult& tbd, const FrameResult& e2e);

// Stateful per-sequence tracker running the full loop: instance feedback,
// detection claiming, branch control, association or thresholding, ensemble
// fusion, lifecycle sweep and memory write-back. One instance per sequence;
// frames must arrive in increasing order.
class Tracker {
 public:
  explicit Tracker(TrackerConfig cfg);

  FrameResult step(int frame, const std::vector<Detection>& detections);

  struct Stats {
    long long frames = 0;
    long long updates = 0;
    long long inits = 0;
    long long removed = 0;
    long long cost_matrices = 0;  // distance calculations by the TBD branch
  };

  const Stats& stats() const { return stats_; }
  const std::vector<Tracklet>& tracklets() const { return tracks_; }
  const TrackerConfig& config() const { return cfg_; }

 private:
  TrackerConfig cfg_;
  MoeParams moe_;
  DssmBlock dssm_;
  std::vector<Tracklet> tracks_;
  long long next_id_ = 1;
  int last_frame_ = 0;
  Stats stats_;
  AssocDiagnostics assoc_diag_;
  Rng perturb_rng_;

  Vec refine_embedding(const Vec& e) const;
};

}  // namespace omni
