/*
 * omnitrack - panoramic multi-object tracking engine.
 *
 * C API over the C++ core: opaque handles, integer status codes, no
 * exceptions across the boundary. Status codes double as process exit codes
 * (0 ok, 2 bad input, 3 bad configuration). On any non-zero status,
 * ot_last_error() returns a thread-local message describing the failure.
 */

#ifndef OMNITRACK_OMNITRACK_H
#define OMNITRACK_OMNITRACK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OT_API __declspec(dllexport)
#else
#define OT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ot_status {
  OT_OK = 0,
  OT_ERR_INPUT = 2,
  OT_ERR_CONFIG = 3,
  OT_ERR_INTERNAL = 4
} ot_status;

OT_API const char* ot_version(void);
OT_API const char* ot_last_error(void);

/* ---- configuration ------------------------------------------------- */

typedef struct ot_config ot_config;

OT_API ot_config* ot_config_new(void);
OT_API void ot_config_free(ot_config* cfg);
/* Flat key=value file; see README for the key list. */
OT_API ot_status ot_config_load(ot_config* cfg, const char* path);
OT_API ot_status ot_config_set(ot_config* cfg, const char* key, const char* value);
/* Validates the full configuration (also done implicitly by consumers). */
OT_API ot_status ot_config_validate(const ot_config* cfg);

/* ---- sequences ------------------------------------------------------ */

/*
 * A frame-indexed box sequence in MOTChallenge layout. Ground truth and
 * tracker output carry ids; detections carry id -1 and may have an
 * embedding sidecar (one comma-separated line per detection record).
 */
typedef struct ot_sequence ot_sequence;

OT_API ot_status ot_sequence_read_mot(const char* mot_path, const char* embed_path /* nullable */,
                                      ot_sequence** out);
OT_API ot_status ot_sequence_write_mot(const ot_sequence* seq, const char* mot_path,
                                       const char* embed_path /* nullable */);
OT_API void ot_sequence_free(ot_sequence* seq);
OT_API int ot_sequence_frames(const ot_sequence* seq);
OT_API long long ot_sequence_records(const ot_sequence* seq);

/* ---- synthetic benchmark -------------------------------------------- */

typedef struct ot_synth_config {
  int n_targets;
  int seq_len;
  int regime; /* 0 smooth, 1 gait, 2 pitch */
  double gait_amp, gait_freq;
  double pitch_amp, pitch_freq;
  double p_miss;
  double clutter_rate;
  double jitter_sigma;
  int embed_dim;
  double embed_noise;
  double distortion_gain;
  double speed_min, speed_max, walk_sigma;
  double entry_stagger;
  double score_lo, score_hi;
  double clutter_score_lo, clutter_score_hi;
  double occlusion_iou;
  uint64_t seed;
} ot_synth_config;

OT_API void ot_synth_config_init(ot_synth_config* cfg);
/* Deterministic in cfg (bit-identical regeneration for equal seeds). */
OT_API ot_status ot_synth_generate(const ot_synth_config* cfg, ot_sequence** gt_out,
                                   ot_sequence** dets_out);

/* ---- tracker --------------------------------------------------------- */

typedef struct ot_tracker ot_tracker;

typedef struct ot_tracker_stats {
  long long frames;
  long long updates;
  long long inits;
  long long removed;
  long long cost_matrices; /* distance calculations made by the TBD branch */
} ot_tracker_stats;

OT_API ot_status ot_tracker_new(const ot_config* cfg, ot_tracker** out);
OT_API void ot_tracker_free(ot_tracker* t);
/*
 * Advance one frame. boxes is n*4 doubles (cu, cv, w, h per detection),
 * scores is n doubles, embeddings is n*embed_dim doubles or NULL. Frame
 * indices must strictly increase and start at >= 1.
 */
OT_API ot_status ot_tracker_step(ot_tracker* t, int frame, const double* boxes,
                                 const double* scores, const double* embeddings, int n,
                                 int embed_dim);
/* Outputs of the most recent step. provenance: 0 e2e, 1 tbd, 2 ensemble. */
OT_API int ot_tracker_output_count(const ot_tracker* t);
OT_API ot_status ot_tracker_output(const ot_tracker* t, int index, long long* id, double box[4],
                                   double* score, int* provenance);
OT_API void ot_tracker_stats_get(const ot_tracker* t, ot_tracker_stats* out);

/* ---- whole-sequence runs --------------------------------------------- */

typedef struct ot_results ot_results;

OT_API ot_status ot_tracker_run(ot_tracker* t, const ot_sequence* dets, ot_results** out);
OT_API void ot_results_free(ot_results* r);
OT_API ot_status ot_results_write_mot(const ot_results* r, const char* path);
/* Per-frame diagnostics CSV: branch decision and lifecycle counts. */
OT_API ot_status ot_results_write_diag(const ot_results* r, const char* path);
OT_API ot_status ot_results_as_sequence(const ot_results* r, ot_sequence** out);
OT_API long long ot_results_track_count(const ot_results* r);

/*
 * File-level tracking run: read detections (+ optional embeddings), run the
 * tracker, write MOT results and, when the paths are non-NULL, a per-frame
 * diagnostics CSV and a JSON run manifest. stats may be NULL.
 */
OT_API ot_status ot_track_file(const ot_config* cfg, const char* dets_path,
                               const char* embeds_path, const char* out_path,
                               const char* diag_path, const char* manifest_path,
                               ot_tracker_stats* stats);

/* ---- evaluation ------------------------------------------------------ */

typedef struct ot_metrics {
  double hota, deta, assa;
  double mota;
  double idf1;
  double ospa;
  long long tp, fp, fn, idsw;
} ot_metrics;

OT_API ot_status ot_eval(const ot_sequence* gt, const ot_sequence* pred, double iou_thresh,
                         double ospa_cutoff, double ospa_order, ot_metrics* out);

/* ---- trajectory-feedback entropy ------------------------------------- */

/* H(p) in nats; p must be a distribution (mass 1 within 1e-9). */
OT_API ot_status ot_entropy(const double* p, int n, double* out);
/* H(x|y) for a row-major joint table over (x rows, y columns). */
OT_API ot_status ot_conditional_entropy(const double* joint, int rows, int cols, double* out);
/*
 * Sum over `count` joint tables of H(x) - H(x|y): the uncertainty removed
 * by per-frame trajectory feedback. Non-negative; zero iff independent.
 */
OT_API ot_status ot_feedback_gain(const double* joints, int count, int rows, int cols,
                                  double* out);

#ifdef __cplusplus
}
#endif

#endif /* OMNITRACK_OMNITRACK_H */
