#include "omnitrack/omnitrack.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/config.hpp"
#include "core/feedback.hpp"
#include "core/manifest.hpp"
#include "core/metrics.hpp"
#include "core/mot_io.hpp"
#include "core/synth.hpp"
#include "core/tracker.hpp"

namespace {

thread_local std::string g_error;

template <typename Fn>
ot_status guarded(Fn&& fn) {
  try {
    fn();
    g_error.clear();
    return OT_OK;
  } catch (const omni::ConfigError& e) {
    g_error = e.what();
    return OT_ERR_CONFIG;
  } catch (const omni::InputError& e) {
    g_error = e.what();
    return OT_ERR_INPUT;
  } catch (const std::exception& e) {
    g_error = e.what();
    return OT_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw omni::InputError(what);
}

std::string fnv_hex(const std::string& path) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(omni::fnv1a_file(path)));
  return buf;
}

}  // namespace

struct ot_config {
  omni::TrackerConfig cfg;
};

struct ot_sequence {
  // Boxes with identities plus an aligned (possibly empty) embedding per
  // record; detections carry id -1.
  omni::Sequence seq;
  std::vector<std::vector<omni::Vec>> embeds;  // embeds[f][i] matches seq.frames[f][i]

  void sync_embed_shape() {
    embeds.resize(seq.frames.size());
    for (std::size_t f = 0; f < seq.frames.size(); ++f) embeds[f].resize(seq.frames[f].size());
  }
  bool has_embeddings() const {
    for (const auto& f : embeds)
      for (const auto& e : f)
        if (!e.empty()) return true;
    return false;
  }
  omni::DetectionFrames detection_view() const {
    omni::DetectionFrames out(seq.frames.size());
    for (std::size_t f = 0; f < seq.frames.size(); ++f)
      for (std::size_t i = 0; i < seq.frames[f].size(); ++i)
        out[f].push_back({seq.frames[f][i].box, seq.frames[f][i].score, embeds[f][i]});
    return out;
  }
};

struct ot_tracker {
  omni::Tracker tracker;
  omni::FrameResult last;
};

struct ot_results {
  std::vector<omni::FrameResult> frames;
  long long cost_matrices = 0;
};

extern "C" {

const char* ot_version(void) { return "0.1.0"; }

const char* ot_last_error(void) { return g_error.c_str(); }

ot_config* ot_config_new(void) { return new ot_config(); }

void ot_config_free(ot_config* cfg) { delete cfg; }

ot_status ot_config_load(ot_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg && path, "ot_config_load: null argument");
    cfg->cfg = omni::load_config(path);
  });
}

ot_status ot_config_set(ot_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg && key && value, "ot_config_set: null argument");
    omni::apply_config_kv(cfg->cfg, key, value);
  });
}

ot_status ot_config_validate(const ot_config* cfg) {
  return guarded([&] {
    require(cfg != nullptr, "ot_config_validate: null argument");
    cfg->cfg.validate();
  });
}

ot_status ot_sequence_read_mot(const char* mot_path, const char* embed_path, ot_sequence** out) {
  return guarded([&] {
    require(mot_path && out, "ot_sequence_read_mot: null argument");
    auto seq = std::make_unique<ot_sequence>();
    if (embed_path) {
      const omni::DetectionFrames dets =
          omni::read_mot_detections(mot_path, std::string(embed_path));
      seq->seq.frames.resize(dets.size());
      seq->embeds.resize(dets.size());
      for (std::size_t f = 0; f < dets.size(); ++f)
        for (const omni::Detection& d : dets[f]) {
          seq->seq.frames[f].push_back({-1, d.box, d.score});
          seq->embeds[f].push_back(d.embedding);
        }
    } else {
      seq->seq = omni::read_mot_sequence(mot_path);
      seq->sync_embed_shape();
    }
    *out = seq.release();
  });
}

ot_status ot_sequence_write_mot(const ot_sequence* seq, const char* mot_path,
                                const char* embed_path) {
  return guarded([&] {
    require(seq && mot_path, "ot_sequence_write_mot: null argument");
    omni::write_mot_sequence(seq->seq, mot_path);
    if (embed_path) omni::write_embedding_sidecar(seq->detection_view(), embed_path);
  });
}

void ot_sequence_free(ot_sequence* seq) { delete seq; }

int ot_sequence_frames(const ot_sequence* seq) { return seq ? seq->seq.n_frames() : 0; }

long long ot_sequence_records(const ot_sequence* seq) {
  if (!seq) return 0;
  long long n = 0;
  for (const auto& f : seq->seq.frames) n += static_cast<long long>(f.size());
  return n;
}

void ot_synth_config_init(ot_synth_config* cfg) {
  const omni::ScenarioConfig d;
  cfg->n_targets = d.n_targets;
  cfg->seq_len = d.seq_len;
  cfg->regime = 1;
  cfg->gait_amp = d.gait_amp;
  cfg->gait_freq = d.gait_freq;
  cfg->pitch_amp = d.pitch_amp;
  cfg->pitch_freq = d.pitch_freq;
  cfg->p_miss = d.p_miss;
  cfg->clutter_rate = d.clutter_rate;
  cfg->jitter_sigma = d.jitter_sigma;
  cfg->embed_dim = d.embed_dim;
  cfg->embed_noise = d.embed_noise;
  cfg->distortion_gain = d.distortion_gain;
  cfg->speed_min = d.speed_min;
  cfg->speed_max = d.speed_max;
  cfg->walk_sigma = d.walk_sigma;
  cfg->entry_stagger = d.entry_stagger;
  cfg->score_lo = d.score_lo;
  cfg->score_hi = d.score_hi;
  cfg->clutter_score_lo = d.clutter_score_lo;
  cfg->clutter_score_hi = d.clutter_score_hi;
  cfg->occlusion_iou = d.occlusion_iou;
  cfg->seed = d.seed;
}

ot_status ot_synth_generate(const ot_synth_config* cfg, ot_sequence** gt_out,
                            ot_sequence** dets_out) {
  return guarded([&] {
    require(cfg && gt_out && dets_out, "ot_synth_generate: null argument");
    require(cfg->regime >= 0 && cfg->regime <= 2, "ot_synth_generate: bad regime");
    omni::ScenarioConfig sc;
    sc.n_targets = cfg->n_targets;
    sc.seq_len = cfg->seq_len;
    sc.regime = static_cast<omni::MotionRegime>(cfg->regime);
    sc.gait_amp = cfg->gait_amp;
    sc.gait_freq = cfg->gait_freq;
    sc.pitch_amp = cfg->pitch_amp;
    sc.pitch_freq = cfg->pitch_freq;
    sc.p_miss = cfg->p_miss;
    sc.clutter_rate = cfg->clutter_rate;
    sc.jitter_sigma = cfg->jitter_sigma;
    sc.embed_dim = cfg->embed_dim;
    sc.embed_noise = cfg->embed_noise;
    sc.distortion_gain = cfg->distortion_gain;
    sc.speed_min = cfg->speed_min;
    sc.speed_max = cfg->speed_max;
    sc.walk_sigma = cfg->walk_sigma;
    sc.entry_stagger = cfg->entry_stagger;
    sc.score_lo = cfg->score_lo;
    sc.score_hi = cfg->score_hi;
    sc.clutter_score_lo = cfg->clutter_score_lo;
    sc.clutter_score_hi = cfg->clutter_score_hi;
    sc.occlusion_iou = cfg->occlusion_iou;
    sc.seed = cfg->seed;

    const omni::SyntheticSequence made = omni::generate(sc);
    auto gt = std::make_unique<ot_sequence>();
    gt->seq = made.gt;
    gt->sync_embed_shape();
    auto dets = std::make_unique<ot_sequence>();
    dets->seq.frames.resize(made.detections.size());
    dets->embeds.resize(made.detections.size());
    for (std::size_t f = 0; f < made.detections.size(); ++f)
      for (const omni::Detection& d : made.detections[f]) {
        dets->seq.frames[f].push_back({-1, d.box, d.score});
        dets->embeds[f].push_back(d.embedding);
      }
    *gt_out = gt.release();
    *dets_out = dets.release();
  });
}

ot_status ot_tracker_new(const ot_config* cfg, ot_tracker** out) {
  return guarded([&] {
    require(cfg && out, "ot_tracker_new: null argument");
    *out = new ot_tracker{omni::Tracker(cfg->cfg), {}};
  });
}

void ot_tracker_free(ot_tracker* t) { delete t; }

ot_status ot_tracker_step(ot_tracker* t, int frame, const double* boxes, const double* scores,
                          const double* embeddings, int n, int embed_dim) {
  return guarded([&] {
    require(t != nullptr, "ot_tracker_step: null tracker");
    require(n >= 0, "ot_tracker_step: negative count");
    require(n == 0 || (boxes && scores), "ot_tracker_step: null detection arrays");
    require(!embeddings || embed_dim > 0, "ot_tracker_step: embeddings need a dimension");
    std::vector<omni::Detection> dets(n);
    for (int i = 0; i < n; ++i) {
      dets[i].box = omni::PanoBox::make(boxes[4 * i], boxes[4 * i + 1], boxes[4 * i + 2],
                                        boxes[4 * i + 3]);
      dets[i].score = scores[i];
      if (embeddings)
        dets[i].embedding.assign(embeddings + static_cast<std::size_t>(i) * embed_dim,
                                 embeddings + static_cast<std::size_t>(i + 1) * embed_dim);
    }
    t->last = t->tracker.step(frame, dets);
  });
}

int ot_tracker_output_count(const ot_tracker* t) {
  return t ? static_cast<int>(t->last.outputs.size()) : 0;
}

ot_status ot_tracker_output(const ot_tracker* t, int index, long long* id, double box[4],
                            double* score, int* provenance) {
  return guarded([&] {
    require(t != nullptr, "ot_tracker_output: null tracker");
    require(index >= 0 && index < static_cast<int>(t->last.outputs.size()),
            "ot_tracker_output: index out of range");
    const omni::TrackOutput& o = t->last.outputs[index];
    if (id) *id = o.id;
    if (box) {
      box[0] = o.box.cu;
      box[1] = o.box.cv;
      box[2] = o.box.w;
      box[3] = o.box.h;
    }
    if (score) *score = o.score;
    if (provenance) *provenance = static_cast<int>(o.provenance);
  });
}

void ot_tracker_stats_get(const ot_tracker* t, ot_tracker_stats* out) {
  if (!t || !out) return;
  const omni::Tracker::Stats& s = t->tracker.stats();
  out->frames = s.frames;
  out->updates = s.updates;
  out->inits = s.inits;
  out->removed = s.removed;
  out->cost_matrices = s.cost_matrices;
}

namespace {

ot_results* run_over(omni::Tracker& tracker, const ot_sequence& dets) {
  auto res = std::make_unique<ot_results>();
  const omni::DetectionFrames frames = dets.detection_view();
  for (std::size_t f = 0; f < frames.size(); ++f)
    res->frames.push_back(tracker.step(static_cast<int>(f) + 1, frames[f]));
  res->cost_matrices = tracker.stats().cost_matrices;
  return res.release();
}

omni::Sequence results_sequence(const ot_results& r) {
  omni::Sequence seq;
  seq.frames.resize(r.frames.size());
  for (std::size_t f = 0; f < r.frames.size(); ++f)
    for (const omni::TrackOutput& o : r.frames[f].outputs)
      seq.frames[f].push_back({o.id, o.box, o.score});
  return seq;
}

void write_diag_csv(const ot_results& r, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "wb");
  if (!out) throw omni::InputError("cannot open " + path + " for writing");
  std::fputs("frame,branch,outputs,claimed,unclaimed,updates,inits,removed\n", out);
  for (const omni::FrameResult& fr : r.frames) {
    const char* branch = fr.diag.ran_e2e && fr.diag.ran_tbd ? "both"
                         : fr.diag.ran_e2e                  ? "e2e"
                         : fr.diag.ran_tbd                  ? "tbd"
                                                            : "none";
    std::fprintf(out, "%d,%s,%zu,%d,%d,%d,%d,%d\n", fr.frame, branch, fr.outputs.size(),
                 fr.diag.claimed, fr.diag.unclaimed, fr.diag.updates, fr.diag.inits,
                 fr.diag.removed);
  }
  std::fclose(out);
}

long long track_count_of(const ot_results& r) {
  long long max_id = 0;
  for (const auto& fr : r.frames)
    for (const auto& o : fr.outputs) max_id = std::max(max_id, o.id);
  return max_id;
}

}  // namespace

ot_status ot_tracker_run(ot_tracker* t, const ot_sequence* dets, ot_results** out) {
  return guarded([&] {
    require(t && dets && out, "ot_tracker_run: null argument");
    *out = run_over(t->tracker, *dets);
    t->last = (*out)->frames.empty() ? omni::FrameResult{} : (*out)->frames.back();
  });
}

void ot_results_free(ot_results* r) { delete r; }

ot_status ot_results_write_mot(const ot_results* r, const char* path) {
  return guarded([&] {
    require(r && path, "ot_results_write_mot: null argument");
    omni::write_mot_sequence(results_sequence(*r), path);
  });
}

ot_status ot_results_write_diag(const ot_results* r, const char* path) {
  return guarded([&] {
    require(r && path, "ot_results_write_diag: null argument");
    write_diag_csv(*r, path);
  });
}

ot_status ot_results_as_sequence(const ot_results* r, ot_sequence** out) {
  return guarded([&] {
    require(r && out, "ot_results_as_sequence: null argument");
    auto seq = std::make_unique<ot_sequence>();
    seq->seq = results_sequence(*r);
    seq->sync_embed_shape();
    *out = seq.release();
  });
}

long long ot_results_track_count(const ot_results* r) { return r ? track_count_of(*r) : 0; }

ot_status ot_track_file(const ot_config* cfg, const char* dets_path, const char* embeds_path,
                        const char* out_path, const char* diag_path, const char* manifest_path,
                        ot_tracker_stats* stats) {
  return guarded([&] {
    require(cfg && dets_path && out_path, "ot_track_file: null argument");
    const auto t0 = std::chrono::steady_clock::now();

    const omni::DetectionFrames dets = omni::read_mot_detections(
        dets_path, embeds_path ? std::optional<std::string>(embeds_path) : std::nullopt);
    omni::Tracker tracker(cfg->cfg);
    ot_results res;
    for (std::size_t f = 0; f < dets.size(); ++f)
      res.frames.push_back(tracker.step(static_cast<int>(f) + 1, dets[f]));
    res.cost_matrices = tracker.stats().cost_matrices;

    omni::write_mot_sequence(results_sequence(res), out_path);
    if (diag_path) write_diag_csv(res, diag_path);

    if (manifest_path) {
      omni::RunManifest m;
      m.tool_version = ot_version();
      m.config = omni::config_to_kv(cfg->cfg);
      m.seed = cfg->cfg.seed;
      m.inputs.emplace_back(dets_path, fnv_hex(dets_path));
      if (embeds_path) m.inputs.emplace_back(embeds_path, fnv_hex(embeds_path));
      m.outputs.emplace_back(out_path, fnv_hex(out_path));
      if (diag_path) m.outputs.emplace_back(diag_path, fnv_hex(diag_path));
      m.frames = static_cast<long long>(res.frames.size());
      m.tracks = track_count_of(res);
      m.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
      omni::write_manifest(m, manifest_path);
    }

    if (stats) {
      const omni::Tracker::Stats& s = tracker.stats();
      stats->frames = s.frames;
      stats->updates = s.updates;
      stats->inits = s.inits;
      stats->removed = s.removed;
      stats->cost_matrices = s.cost_matrices;
    }
  });
}

ot_status ot_eval(const ot_sequence* gt, const ot_sequence* pred, double iou_thresh,
                  double ospa_cutoff, double ospa_order, ot_metrics* out) {
  return guarded([&] {
    require(gt && pred && out, "ot_eval: null argument");
    require(pred->seq.n_frames() <= gt->seq.n_frames(),
            "ot_eval: prediction frames exceed the ground-truth range");
    const omni::MetricReport rep =
        omni::evaluate_all(gt->seq, pred->seq, iou_thresh, ospa_cutoff, ospa_order);
    out->hota = rep.hota;
    out->deta = rep.deta;
    out->assa = rep.assa;
    out->mota = rep.mota;
    out->idf1 = rep.idf1;
    out->ospa = rep.ospa;
    out->tp = rep.counts.tp;
    out->fp = rep.counts.fp;
    out->fn = rep.counts.fn;
    out->idsw = rep.counts.idsw;
  });
}

ot_status ot_entropy(const double* p, int n, double* out) {
  return guarded([&] {
    require(p && out && n >= 0, "ot_entropy: null argument");
    *out = omni::entropy(omni::Vec(p, p + n));
  });
}

ot_status ot_conditional_entropy(const double* joint, int rows, int cols, double* out) {
  return guarded([&] {
    require(joint && out && rows > 0 && cols > 0, "ot_conditional_entropy: bad arguments");
    omni::Mat m(rows, cols);
    m.data().assign(joint, joint + static_cast<std::size_t>(rows) * cols);
    *out = omni::conditional_entropy(m);
  });
}

ot_status ot_feedback_gain(const double* joints, int count, int rows, int cols, double* out) {
  return guarded([&] {
    require(joints && out && count > 0 && rows > 0 && cols > 0, "ot_feedback_gain: bad arguments");
    std::vector<omni::Mat> tables;
    for (int t = 0; t < count; ++t) {
      omni::Mat m(rows, cols);
      const double* base = joints + static_cast<std::size_t>(t) * rows * cols;
      m.data().assign(base, base + static_cast<std::size_t>(rows) * cols);
      tables.push_back(std::move(m));
    }
    *out = omni::feedback_gain(tables);
  });
}

}  // extern "C"
