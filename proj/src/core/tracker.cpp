#include "core/tracker.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>

#include "core/common.hpp"
#include "core/hungarian.hpp"
#include "core/params.hpp"

namespace omni {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::e2e: return "e2e";
    case Provenance::tbd: return "tbd";
    case Provenance::ensemble: return "ensemble";
  }
  return "e2e";
}

BranchSet branch_select(int claimed_count, int track_count, TrackMode mode) {
  switch (mode) {
    case TrackMode::e2e: return {true, false};
    case TrackMode::tbd: return {false, true};
    case TrackMode::ensemble: return {true, true};
    case TrackMode::auto_select: break;
  }
  const double frac =
      static_cast<double>(claimed_count) / static_cast<double>(std::max(1, track_count));
  if (frac >= 0.8) return {true, false};
  if (frac < 0.5) return {false, true};
  return {true, true};
}

ThresholdDecision e2e_claimed_decision(double score, double tau_update) {
  return score > tau_update ? ThresholdDecision::update : ThresholdDecision::discard;
}

ThresholdDecision e2e_unclaimed_decision(double score, double tau_init) {
  return score > tau_init ? ThresholdDecision::initialize : ThresholdDecision::discard;
}

E2eDecisions e2e_threshold(const ClaimedDetections& claimed, const std::vector<Detection>& dets,
                           double tau_update, double tau_init) {
  E2eDecisions out;
  for (const auto& claim : claimed.claimed) {
    if (e2e_claimed_decision(claim.score, tau_update) == ThresholdDecision::update)
      out.updates.push_back(claim);
    else
      out.discards.push_back(claim.det_index);
  }
  for (int dj : claimed.unclaimed) {
    if (e2e_unclaimed_decision(dets[dj].score, tau_init) == ThresholdDecision::initialize)
      out.inits.push_back(dj);
    else
      out.discards.push_back(dj);
  }
  return out;
}

TbdDecisions tbd_step(const AssignmentResult& assoc, const std::vector<Detection>& dets,
                      double tau_init) {
  TbdDecisions out;
  out.updates = assoc.matches;
  out.aged = assoc.unmatched_tracks;
  for (int dj : assoc.unmatched_detections)
    if (dets[dj].score > tau_init) out.inits.push_back(dj);
  return out;
}

FrameResult ensemble(const FrameResult& tbd, const FrameResult& e2e) {
  if (tbd.frame != e2e.frame) throw InputError("ensemble: frame index mismatch");

  const int nt = static_cast<int>(tbd.outputs.size());
  const int ne = static_cast<int>(e2e.outputs.size());
  Mat cost(nt, ne);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < ne; ++j) {
      const double iou = cyclic_iou(tbd.outputs[i].box, e2e.outputs[j].box);
      cost(i, j) = iou >= 0.7 ? 1.0 - iou : kForbiddenCost;
    }
  const std::vector<int> col4row = (nt && ne) ? min_cost_assignment(cost) : std::vector<int>(nt, -1);

  std::vector<char> tbd_used(nt, 0), e2e_used(ne, 0);
  std::vector<TrackOutput> merged;
  for (int i = 0; i < nt; ++i) {
    const int j = col4row[i];
    if (j < 0 || cost(i, j) >= kForbiddenCost) continue;
    const TrackOutput& a = tbd.outputs[i];
    const TrackOutput& b = e2e.outputs[j];
    TrackOutput m;
    const bool a_id = a.hits != b.hits ? a.hits > b.hits : a.id <= b.id;
    m.id = a_id ? a.id : b.id;
    m.hits = std::max(a.hits, b.hits);
    const TrackOutput& src = (b.score > a.score) ? b : a;
    m.box = src.box;
    m.score = src.score;
    m.provenance = Provenance::ensemble;
    merged.push_back(m);
    tbd_used[i] = 1;
    e2e_used[j] = 1;
  }

  // Union the rest; on an id collision the higher-scoring copy survives.
  std::map<long long, TrackOutput> by_id;
  auto put = [&](const TrackOutput& o) {
    auto it = by_id.find(o.id);
    if (it == by_id.end() || o.score > it->second.score) by_id[o.id] = o;
  };
  for (const TrackOutput& o : merged) put(o);
  for (int i = 0; i < nt; ++i)
    if (!tbd_used[i]) put(tbd.outputs[i]);
  for (int j = 0; j < ne; ++j)
    if (!e2e_used[j]) put(e2e.outputs[j]);

  FrameResult out;
  out.frame = tbd.frame;
  for (const auto& [id, o] : by_id) out.outputs.push_back(o);
  out.diag.ran_e2e = tbd.diag.ran_e2e || e2e.diag.ran_e2e;
  out.diag.ran_tbd = tbd.diag.ran_tbd || e2e.diag.ran_tbd;
  out.diag.updates = std::max(tbd.diag.updates, e2e.diag.updates);
  out.diag.inits = std::max(tbd.diag.inits, e2e.diag.inits);
  out.diag.removed = std::max(tbd.diag.removed, e2e.diag.removed);
  out.diag.claimed = std::max(tbd.diag.claimed, e2e.diag.claimed);
  out.diag.unclaimed = std::max(tbd.diag.unclaimed, e2e.diag.unclaimed);
  return out;
}

Tracker::Tracker(TrackerConfig cfg)
    : cfg_(std::move(cfg)), perturb_rng_(Rng::stream(cfg_.seed, 0x504552ULL)) {
  cfg_.validate();
  moe_ = make_moe_params(cfg_.embed_dim, cfg_.n_e, cfg_.k_r, cfg_.lambda, cfg_.temperature,
                         cfg_.seed);
  const int channels = 1;
  dssm_ = make_dssm_block(channels, cfg_.seed);
  if (!cfg_.param_file.empty()) {
    const ParamStore store = load_params(cfg_.param_file);
    apply_param_overrides(moe_, store);
    apply_param_overrides(dssm_, store);
  }
}

Vec Tracker::refine_embedding(const Vec& e) const {
  if (e.empty()) return e;
  const int dim = static_cast<int>(e.size());
  const int h = (dim % 4 == 0 && dim >= 8) ? 4 : 1;
  FeatureMap fm(1, h, dim / h);
  fm.data = e;
  return dssm_.apply(fm).data;
}

FrameResult Tracker::step(int frame, const std::vector<Detection>& detections) {
  if (frame <= last_frame_) throw InputError("step: frame indices must strictly increase");
  last_frame_ = frame;

  std::vector<Detection> dets = detections;
  if (cfg_.dssm_enabled)
    for (Detection& d : dets) d.embedding = refine_embedding(d.embedding);

  for (Tracklet& t : tracks_)
    t.kalman = kalman_predict(t.kalman, cfg_.process_noise, cfg_.cyclic_geometry);

  const int nt = static_cast<int>(tracks_.size());

  // Enhanced appearance per track, shared by the decoder stand-in and the
  // TBD distance calculation.
  std::vector<Vec> enhanced(nt);
  for (int i = 0; i < nt; ++i) {
    const Tracklet& t = tracks_[i];
    enhanced[i] = (cfg_.memory_enabled && !t.last_embedding.empty())
                      ? enhance(t.bank, t.last_embedding, moe_)
                      : t.last_embedding;
  }

  std::vector<FlexiTrackInstance> instances;
  if (cfg_.flexi_instances) {
    instances.reserve(nt);
    for (int i = 0; i < nt; ++i) {
      const Tracklet& t = tracks_[i];
      FlexiTrackInstance inst;
      inst.track_id = t.id;
      inst.feature = enhanced[i];
      inst.anchor_box = t.kalman.box();
      inst.anchor_enc = encode_box(inst.anchor_box, cfg_.embed_dim);
      inst.score = t.last_score;
      if (cfg_.perturb_sigma_x > 0.0 || cfg_.perturb_sigma_y > 0.0)
        inst = perturb(inst, cfg_.perturb_sigma_x, cfg_.perturb_sigma_y, perturb_rng_);
      instances.push_back(std::move(inst));
    }
  }

  const ClaimedDetections claimed = claim_detections(instances, dets, cfg_.claim_gate, cfg_.w_iou,
                                                     cfg_.w_app, cfg_.cyclic_geometry);
  const BranchSet branches =
      branch_select(static_cast<int>(claimed.claimed.size()), nt, cfg_.mode);
  // Exactly one of {e2e}, {tbd}, {both} runs every frame; an empty set is
  // impossible by construction.
  assert(branches.e2e || branches.tbd);

  FrameDiag diag;
  diag.claimed = static_cast<int>(claimed.claimed.size());
  diag.unclaimed = static_cast<int>(claimed.unclaimed.size());

  struct Candidate {
    int det = -1;
    double score = 0.0;
    bool from_e2e = false;
    bool from_tbd = false;
  };
  std::vector<std::vector<Candidate>> cands(nt);
  std::vector<unsigned> init_flag(dets.size(), 0);  // bit 0: e2e, bit 1: tbd

  std::map<long long, int> id_to_idx;
  for (int i = 0; i < nt; ++i) id_to_idx[tracks_[i].id] = i;

  if (branches.e2e) {
    diag.ran_e2e = true;
    const E2eDecisions dec = e2e_threshold(claimed, dets, cfg_.tau_update, cfg_.tau_init);
    for (const auto& claim : dec.updates)
      cands[id_to_idx.at(claim.track_id)].push_back({claim.det_index, claim.score, true, false});
    for (int dj : dec.inits) init_flag[dj] |= 1u;
  }

  if (branches.tbd) {
    diag.ran_tbd = true;
    std::vector<TrackView> views(nt);
    for (int i = 0; i < nt; ++i) views[i] = {tracks_[i].kalman.box(), enhanced[i]};
    AssocConfig acfg;
    acfg.w_iou = cfg_.w_iou;
    acfg.w_app = cfg_.w_app;
    acfg.max_cost = cfg_.max_cost;
    acfg.tau_split = cfg_.tau_split;
    acfg.cyclic = cfg_.cyclic_geometry;
    const TbdDecisions dec = tbd_step(
        staged_associate(views, dets, cfg_.tau_split, acfg, &assoc_diag_), dets, cfg_.tau_init);
    for (const auto& [ti, dj] : dec.updates)
      cands[ti].push_back({dj, dets[dj].score, false, true});
    for (int dj : dec.inits) init_flag[dj] |= 2u;
  }

  // Merge branch proposals. Tracks claim detections in priority order
  // (longer history first), so when branches disagree about a detection the
  // older track keeps it.
  std::vector<int> order(nt);
  for (int i = 0; i < nt; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (tracks_[a].hits != tracks_[b].hits) return tracks_[a].hits > tracks_[b].hits;
    return tracks_[a].id < tracks_[b].id;
  });

  struct Accepted {
    int det;
    double score;
    Provenance prov;
  };
  std::vector<std::optional<Accepted>> accepted(nt);
  std::vector<char> det_taken(dets.size(), 0);
  for (int i : order) {
    auto& list = cands[i];
    if (list.empty()) continue;
    if (list.size() == 2 && list[0].det == list[1].det) {
      list[0].score = std::max(list[0].score, list[1].score);
      list[0].from_e2e |= list[1].from_e2e;
      list[0].from_tbd |= list[1].from_tbd;
      list.pop_back();
    }
    std::sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.from_tbd > b.from_tbd;
    });
    for (const Candidate& c : list) {
      if (det_taken[c.det]) continue;
      const Provenance prov = (c.from_e2e && c.from_tbd) ? Provenance::ensemble
                              : c.from_e2e               ? Provenance::e2e
                                                         : Provenance::tbd;
      accepted[i] = Accepted{c.det, c.score, prov};
      det_taken[c.det] = 1;
      break;
    }
  }

  // Commit updates and ages.
  for (int i = 0; i < nt; ++i) {
    Tracklet& t = tracks_[i];
    if (accepted[i]) {
      const Detection& d = dets[accepted[i]->det];
      t.kalman = kalman_update(t.kalman, d.box, cfg_.measurement_noise, cfg_.cyclic_geometry);
      if (!d.embedding.empty()) {
        t.bank.capacity = cfg_.n_m;
        t.bank = admit(std::move(t.bank), {d.embedding, d.score, frame}, cfg_.theta_sim);
        t.last_embedding = d.embedding;
      }
      ++t.hits;
      t.time_since_update = 0;
      t.state = TrackState::active;
      t.last_score = accepted[i]->score;
      t.provenance = accepted[i]->prov;
      ++diag.updates;
    } else {
      ++t.time_since_update;
      t.state = TrackState::lost;
    }
  }

  // Initialize from detections no branch consumed.
  for (std::size_t dj = 0; dj < dets.size(); ++dj) {
    if (!init_flag[dj] || det_taken[dj]) continue;
    const Detection& d = dets[dj];
    Tracklet t;
    t.id = next_id_++;
    t.kalman = CyclicKalmanState::from_box(d.box);
    t.bank.capacity = cfg_.n_m;
    if (!d.embedding.empty()) {
      t.bank = admit(std::move(t.bank), {d.embedding, d.score, frame}, cfg_.theta_sim);
      t.last_embedding = d.embedding;
    }
    t.hits = 1;
    t.time_since_update = 0;
    t.state = TrackState::active;
    t.last_score = d.score;
    t.provenance = init_flag[dj] == 3u ? Provenance::ensemble
                   : init_flag[dj] == 1u ? Provenance::e2e
                                         : Provenance::tbd;
    tracks_.push_back(std::move(t));
    ++diag.inits;
  }

  // Lifecycle sweep; Removed is absorbing (the tracklet is dropped and its
  // id never reused).
  diag.removed = static_cast<int>(
      std::erase_if(tracks_, [&](const Tracklet& t) { return t.time_since_update > cfg_.max_age; }));

  FrameResult fr;
  fr.frame = frame;
  fr.diag = diag;
  for (const Tracklet& t : tracks_) {
    if (t.time_since_update == 0 || cfg_.emit_lost)
      fr.outputs.push_back({t.id, t.kalman.box(), t.last_score, t.provenance, t.hits});
  }
  std::sort(fr.outputs.begin(), fr.outputs.end(),
            [](const TrackOutput& a, const TrackOutput& b) { return a.id < b.id; });

  ++stats_.frames;
  stats_.updates += diag.updates;
  stats_.inits += diag.inits;
  stats_.removed += diag.removed;
  stats_.cost_matrices = assoc_diag_.cost_matrices_built;
  return fr;
}

}  // namespace omni
