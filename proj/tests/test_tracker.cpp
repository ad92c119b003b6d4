#include <cmath>

#include <doctest.h>

#include "core/common.hpp"
#include <algorithm>

#include "core/synth.hpp"
#include "core/tracker.hpp"

using namespace omni;

namespace {

Vec unit_axis(int dim, int axis) {
  Vec v(dim, 0.0);
  v[axis] = 1.0;
  return v;
}

Detection det_at(double cu, double score, int axis, int dim = 32) {
  return {PanoBox::make(cu, 0.5, 0.08, 0.2), score, unit_axis(dim, axis)};
}

TrackerConfig base_config(TrackMode mode) {
  TrackerConfig cfg;
  cfg.mode = mode;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST_CASE("branch selection per mode and auto thresholds") {
  CHECK(branch_select(0, 10, TrackMode::e2e).e2e);
  CHECK(!branch_select(0, 10, TrackMode::e2e).tbd);
  CHECK(branch_select(10, 10, TrackMode::tbd).tbd);
  CHECK(!branch_select(10, 10, TrackMode::tbd).e2e);
  CHECK(branch_select(0, 0, TrackMode::ensemble).e2e);
  CHECK(branch_select(0, 0, TrackMode::ensemble).tbd);

  const BranchSet all_claimed = branch_select(10, 10, TrackMode::auto_select);
  CHECK((all_claimed.e2e && !all_claimed.tbd));
  const BranchSet boundary = branch_select(8, 10, TrackMode::auto_select);
  CHECK((boundary.e2e && !boundary.tbd));
  const BranchSet low = branch_select(3, 10, TrackMode::auto_select);
  CHECK((!low.e2e && low.tbd));
  const BranchSet mid = branch_select(6, 10, TrackMode::auto_select);
  CHECK((mid.e2e && mid.tbd));
}

TEST_CASE("thresholding decisions follow the strict comparisons") {
  CHECK(e2e_claimed_decision(0.6, 0.5) == ThresholdDecision::update);
  CHECK(e2e_claimed_decision(0.5, 0.5) == ThresholdDecision::discard);
  CHECK(e2e_unclaimed_decision(0.51, 0.5) == ThresholdDecision::initialize);
  CHECK(e2e_unclaimed_decision(0.4, 0.5) == ThresholdDecision::discard);

  ClaimedDetections claimed;
  claimed.claimed.push_back({7, 0, 0.6, 0.8});
  claimed.claimed.push_back({8, 1, 0.5, 0.9});
  claimed.unclaimed = {2, 3};
  std::vector<Detection> dets = {det_at(0.1, 0.7, 0), det_at(0.3, 0.6, 1), det_at(0.5, 0.51, 2),
                                 det_at(0.7, 0.4, 3)};
  const E2eDecisions dec = e2e_threshold(claimed, dets, 0.5, 0.5);
  REQUIRE(dec.updates.size() == 1);
  CHECK(dec.updates[0].track_id == 7);
  CHECK(dec.inits == std::vector<int>{2});
  CHECK(dec.discards == std::vector<int>{1, 3});
}

TEST_CASE("tbd decisions replay the assignment plus threshold rules") {
  // Crafted 3-track / 4-detection frame: two clean matches, one gated-out
  // track, one strong new detection and one weak one.
  std::vector<TrackView> tracks(3);
  tracks[0] = {PanoBox::make(0.2, 0.5, 0.08, 0.2), unit_axis(8, 0)};
  tracks[1] = {PanoBox::make(0.5, 0.5, 0.08, 0.2), unit_axis(8, 1)};
  tracks[2] = {PanoBox::make(0.8, 0.2, 0.08, 0.2), unit_axis(8, 2)};
  std::vector<Detection> dets = {
      {PanoBox::make(0.205, 0.5, 0.08, 0.2), 0.9, unit_axis(8, 0)},
      {PanoBox::make(0.505, 0.5, 0.08, 0.2), 0.85, unit_axis(8, 1)},
      {PanoBox::make(0.35, 0.8, 0.08, 0.2), 0.8, unit_axis(8, 5)},   // new target
      {PanoBox::make(0.65, 0.8, 0.08, 0.2), 0.3, unit_axis(8, 6)},   // weak clutter
  };
  AssocConfig acfg;
  const AssignmentResult assoc = staged_associate(tracks, dets, 0.5, acfg);
  const TbdDecisions dec = tbd_step(assoc, dets, 0.5);
  CHECK(dec.updates == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  CHECK(dec.inits == std::vector<int>{2});
  CHECK(dec.aged == std::vector<int>{2});

  // Exhaustive replay: the matched pairs must form the minimum-cost
  // assignment over the unforbidden high-confidence cells.
  const CostMatrix cm = hybrid_cost(tracks, {dets[0], dets[1], dets[2]}, acfg.w_iou, acfg.w_app);
  double best = 1e18;
  std::vector<std::pair<int, int>> best_pairs;
  int perm[3] = {0, 1, 2};
  std::sort(perm, perm + 3);
  do {
    double total = 0.0;
    std::vector<std::pair<int, int>> pairs;
    for (int t = 0; t < 3; ++t) {
      if (cm.forbidden[t][perm[t]] || cm.costs(t, perm[t]) > acfg.max_cost) {
        total += 10.0;  // unmatched penalty dominates any real cost
      } else {
        total += cm.costs(t, perm[t]);
        pairs.emplace_back(t, perm[t]);
      }
    }
    if (total < best) {
      best = total;
      best_pairs = pairs;
    }
  } while (std::next_permutation(perm, perm + 3));
  CHECK(dec.updates == best_pairs);
}

TEST_CASE("ensemble is idempotent on identical branch results") {
  FrameResult r;
  r.frame = 4;
  r.outputs.push_back({1, PanoBox::make(0.2, 0.5, 0.1, 0.2), 0.9, Provenance::tbd, 5});
  r.outputs.push_back({2, PanoBox::make(0.6, 0.5, 0.1, 0.2), 0.8, Provenance::tbd, 3});
  const FrameResult fused = ensemble(r, r);
  REQUIRE(fused.outputs.size() == 2);
  CHECK(fused.outputs[0].id == 1);
  CHECK(fused.outputs[1].id == 2);
  CHECK(fused.outputs[0].score == 0.9);
}

TEST_CASE("ensemble unions disjoint outputs and keeps the longer-history id on conflicts") {
  FrameResult tbd, e2e;
  tbd.frame = e2e.frame = 9;
  tbd.outputs.push_back({1, PanoBox::make(0.2, 0.5, 0.1, 0.2), 0.9, Provenance::tbd, 10});
  tbd.outputs.push_back({3, PanoBox::make(0.8, 0.5, 0.1, 0.2), 0.7, Provenance::tbd, 2});
  e2e.outputs.push_back({2, PanoBox::make(0.21, 0.5, 0.1, 0.2), 0.95, Provenance::e2e, 2});
  e2e.outputs.push_back({4, PanoBox::make(0.5, 0.5, 0.1, 0.2), 0.6, Provenance::e2e, 1});

  const FrameResult fused = ensemble(tbd, e2e);
  REQUIRE(fused.outputs.size() == 3);
  // Conflicting pair (1 vs 2): id 1 has the 10-frame history; box/score come
  // from the higher-scoring branch.
  CHECK(fused.outputs[0].id == 1);
  CHECK(fused.outputs[0].score == 0.95);
  CHECK(fused.outputs[0].provenance == Provenance::ensemble);
  CHECK(fused.outputs[1].id == 3);
  CHECK(fused.outputs[2].id == 4);

  e2e.frame = 10;
  CHECK_THROWS_AS(ensemble(tbd, e2e), InputError);
}

TEST_CASE("cold start initializes tracks with fresh sequential ids") {
  Tracker tracker(base_config(TrackMode::tbd));
  const FrameResult r = tracker.step(1, {det_at(0.2, 0.9, 0), det_at(0.6, 0.8, 1)});
  REQUIRE(r.outputs.size() == 2);
  CHECK(r.outputs[0].id == 1);
  CHECK(r.outputs[1].id == 2);
  CHECK(r.diag.inits == 2);

  // A detection-free frame ages both tracks and suppresses output.
  const FrameResult r2 = tracker.step(2, {});
  CHECK(r2.outputs.empty());
  REQUIRE(tracker.tracklets().size() == 2);
  for (const Tracklet& t : tracker.tracklets()) {
    CHECK(t.time_since_update == 1);
    CHECK(t.state == TrackState::lost);
  }
}

TEST_CASE("below-threshold detections are discarded, above-threshold initialize") {
  TrackerConfig cfg = base_config(TrackMode::e2e);
  Tracker tracker(cfg);
  const FrameResult r = tracker.step(1, {det_at(0.2, 0.4, 0), det_at(0.6, 0.51, 1)});
  REQUIRE(r.outputs.size() == 1);
  CHECK(r.outputs[0].score == 0.51);
  CHECK(tracker.tracklets().size() == 1);
}

TEST_CASE("frames must strictly increase") {
  Tracker tracker(base_config(TrackMode::tbd));
  tracker.step(1, {det_at(0.2, 0.9, 0)});
  CHECK_THROWS_AS(tracker.step(1, {}), InputError);
  tracker.step(2, {});
  CHECK_THROWS_AS(tracker.step(1, {}), InputError);
}

TEST_CASE("a steady target is followed and updated") {
  Tracker tracker(base_config(TrackMode::tbd));
  long long id = -1;
  for (int f = 1; f <= 20; ++f) {
    const double cu = 0.1 + 0.004 * f;
    const FrameResult r = tracker.step(f, {det_at(cu, 0.9, 0)});
    REQUIRE(r.outputs.size() == 1);
    if (id < 0) id = r.outputs[0].id;
    CHECK(r.outputs[0].id == id);
  }
  CHECK(tracker.stats().updates == 19);
  CHECK(tracker.stats().inits == 1);
}

TEST_CASE("lifecycle: time_since_update resets on update, increments otherwise, removal is final") {
  TrackerConfig cfg = base_config(TrackMode::tbd);
  cfg.max_age = 3;
  Tracker tracker(cfg);
  tracker.step(1, {det_at(0.2, 0.9, 0)});
  tracker.step(2, {det_at(0.204, 0.9, 0)});
  CHECK(tracker.tracklets()[0].time_since_update == 0);
  CHECK(tracker.tracklets()[0].hits == 2);
  for (int f = 3; f <= 5; ++f) {
    tracker.step(f, {});
    CHECK(tracker.tracklets()[0].time_since_update == f - 2);
  }
  // One more empty frame pushes past max_age and removes the track.
  const FrameResult r = tracker.step(6, {});
  CHECK(r.diag.removed == 1);
  CHECK(tracker.tracklets().empty());

  // A new detection gets a fresh id, never a recycled one.
  const FrameResult r2 = tracker.step(7, {det_at(0.2, 0.9, 0)});
  REQUIRE(r2.outputs.size() == 1);
  CHECK(r2.outputs[0].id == 2);
}

TEST_CASE("output ids are unique within every frame") {
  ScenarioConfig scfg;
  scfg.n_targets = 8;
  scfg.seq_len = 120;
  scfg.seed = 21;
  const SyntheticSequence seq = generate(scfg);
  Tracker tracker(base_config(TrackMode::ensemble));
  for (int f = 0; f < scfg.seq_len; ++f) {
    const FrameResult r = tracker.step(f + 1, seq.detections[f]);
    for (std::size_t i = 1; i < r.outputs.size(); ++i)
      CHECK(r.outputs[i - 1].id < r.outputs[i].id);
  }
}

TEST_CASE("identical streams give bitwise identical results in every mode") {
  ScenarioConfig scfg;
  scfg.n_targets = 6;
  scfg.seq_len = 80;
  scfg.seed = 13;
  const SyntheticSequence seq = generate(scfg);
  for (const TrackMode mode :
       {TrackMode::e2e, TrackMode::tbd, TrackMode::ensemble, TrackMode::auto_select}) {
    Tracker a(base_config(mode));
    Tracker b(base_config(mode));
    for (int f = 0; f < scfg.seq_len; ++f) {
      const FrameResult ra = a.step(f + 1, seq.detections[f]);
      const FrameResult rb = b.step(f + 1, seq.detections[f]);
      REQUIRE(ra.outputs.size() == rb.outputs.size());
      for (std::size_t i = 0; i < ra.outputs.size(); ++i) {
        CHECK(ra.outputs[i].id == rb.outputs[i].id);
        CHECK(ra.outputs[i].box.cu == rb.outputs[i].box.cu);
        CHECK(ra.outputs[i].score == rb.outputs[i].score);
      }
    }
  }
}

TEST_CASE("e2e mode never builds a cost matrix; tbd does") {
  ScenarioConfig scfg;
  scfg.n_targets = 5;
  scfg.seq_len = 40;
  scfg.seed = 3;
  const SyntheticSequence seq = generate(scfg);

  Tracker e2e(base_config(TrackMode::e2e));
  Tracker tbd(base_config(TrackMode::tbd));
  for (int f = 0; f < scfg.seq_len; ++f) {
    e2e.step(f + 1, seq.detections[f]);
    tbd.step(f + 1, seq.detections[f]);
  }
  CHECK(e2e.stats().cost_matrices == 0);
  CHECK(tbd.stats().cost_matrices > 0);
}

TEST_CASE("auto mode runs the e2e branch when claims are stable") {
  // Clean, well-separated detections: instances claim everything, so the
  // claimed fraction is 1 and auto stays on the E2E branch after warmup.
  Tracker tracker(base_config(TrackMode::auto_select));
  for (int f = 1; f <= 10; ++f) {
    const FrameResult r = tracker.step(
        f, {det_at(0.1 + 0.002 * f, 0.9, 0), det_at(0.5 + 0.002 * f, 0.9, 1)});
    if (f > 1) {
      CHECK(r.diag.ran_e2e);
      CHECK(!r.diag.ran_tbd);
    }
  }
  CHECK(tracker.stats().cost_matrices == 0);
}

TEST_CASE("ensemble mode: a TBD match absorbs the detection the E2E branch would initialize") {
  // Warm up one track, then feed a detection that sits at moderate distance:
  // similarity below the claim gate (so the E2E branch sees it unclaimed and
  // wants a fresh track) while the association cost stays below max_cost (so
  // the TBD branch updates the existing track). The merged decision must
  // update, not fork a second identity.
  TrackerConfig cfg = base_config(TrackMode::ensemble);
  cfg.w_iou = 1.0;
  cfg.w_app = 0.0;
  cfg.claim_gate = 0.5;
  cfg.max_cost = 0.8;
  Tracker tracker(cfg);
  tracker.step(1, {det_at(0.500, 0.9, 0)});
  tracker.step(2, {det_at(0.500, 0.9, 0)});

  // IoU about 0.45 against the predicted box: cost ~0.55 in (0.5, 0.8].
  const FrameResult r = tracker.step(3, {det_at(0.530, 0.9, 0)});
  REQUIRE(r.outputs.size() == 1);
  CHECK(r.outputs[0].id == 1);
  CHECK(r.diag.inits == 0);
  CHECK(r.diag.updates == 1);
  CHECK(r.outputs[0].provenance == Provenance::tbd);
  CHECK(tracker.tracklets().size() == 1);
}

TEST_CASE("ensemble mode: agreeing branches mark the update as ensemble-fused") {
  Tracker tracker(base_config(TrackMode::ensemble));
  tracker.step(1, {det_at(0.3, 0.9, 0)});
  const FrameResult r = tracker.step(2, {det_at(0.302, 0.9, 0)});
  REQUIRE(r.outputs.size() == 1);
  CHECK(r.outputs[0].provenance == Provenance::ensemble);
  CHECK(r.diag.ran_e2e);
  CHECK(r.diag.ran_tbd);
}

TEST_CASE("tracking works on geometry alone when detections carry no embeddings") {
  for (const TrackMode mode : {TrackMode::tbd, TrackMode::e2e, TrackMode::ensemble}) {
    Tracker tracker(base_config(mode));
    long long id = -1;
    for (int f = 1; f <= 15; ++f) {
      Detection d;
      d.box = PanoBox::make(0.97 + 0.004 * f, 0.5, 0.08, 0.2);  // crosses the seam
      d.score = 0.9;
      const FrameResult r = tracker.step(f, {d});
      REQUIRE(r.outputs.size() == 1);
      if (id < 0) id = r.outputs[0].id;
      CHECK(r.outputs[0].id == id);
    }
    for (const Tracklet& t : tracker.tracklets()) CHECK(t.bank.empty());
  }
}

TEST_CASE("emit_lost keeps coasting tracks in the output") {
  TrackerConfig cfg = base_config(TrackMode::tbd);
  cfg.emit_lost = true;
  Tracker tracker(cfg);
  tracker.step(1, {det_at(0.3, 0.9, 0)});
  const FrameResult r = tracker.step(2, {});
  REQUIRE(r.outputs.size() == 1);
  CHECK(r.outputs[0].id == 1);
}
