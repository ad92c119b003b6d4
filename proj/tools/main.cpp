// omnitrack command-line interface. Links only the public C API.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omnitrack/omnitrack.h"
#include "svg.hpp"

namespace {

int fail(ot_status st) {
  std::cerr << "error: " << ot_last_error() << "\n";
  return st == OT_ERR_CONFIG ? 3 : 2;
}

#define OT_TRY(call)                       \
  do {                                     \
    const ot_status st_ = (call);          \
    if (st_ != OT_OK) return fail(st_);    \
  } while (0)

struct SeqHandle {
  ot_sequence* p = nullptr;
  ~SeqHandle() { ot_sequence_free(p); }
};
struct CfgHandle {
  ot_config* p = nullptr;
  CfgHandle() : p(ot_config_new()) {}
  ~CfgHandle() { ot_config_free(p); }
};
struct ResHandle {
  ot_results* p = nullptr;
  ~ResHandle() { ot_results_free(p); }
};
struct TrkHandle {
  ot_tracker* p = nullptr;
  ~TrkHandle() { ot_tracker_free(p); }
};

// Local generator for the entropy self-check tables (splitmix64).
struct MiniRng {
  std::uint64_t state;
  explicit MiniRng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// ---- synth scenario presets -------------------------------------------

void apply_preset(ot_synth_config& sc, const std::string& preset) {
  if (preset == "custom") return;
  if (preset == "golden" || preset == "occlusion") {
    // Occlusion-heavy gait benchmark; `golden` pins seed 7.
    sc.n_targets = 12;
    sc.seq_len = 600;
    sc.regime = 1;
    sc.p_miss = 0.1;
    sc.clutter_rate = 1.0;
    if (preset == "golden") sc.seed = 7;
    return;
  }
  if (preset == "seam") {
    // One target circling the cylinder three times, noiseless detections.
    sc.n_targets = 1;
    sc.seq_len = 300;
    sc.regime = 0;
    sc.speed_min = sc.speed_max = 0.01;
    sc.walk_sigma = 0.0;
    sc.p_miss = 0.0;
    sc.clutter_rate = 0.0;
    sc.jitter_sigma = 0.0;
    sc.embed_noise = 0.0;
    sc.distortion_gain = 0.0;
    return;
  }
  throw CLI::ValidationError("--preset", "unknown preset: " + preset);
}

void write_scenario_snapshot(const ot_synth_config& sc, const std::string& path) {
  std::ofstream out(path);
  out << "n_targets=" << sc.n_targets << "\nseq_len=" << sc.seq_len << "\nregime="
      << (sc.regime == 0 ? "smooth" : sc.regime == 1 ? "gait" : "pitch")
      << "\ngait_amp=" << sc.gait_amp << "\ngait_freq=" << sc.gait_freq
      << "\npitch_amp=" << sc.pitch_amp << "\npitch_freq=" << sc.pitch_freq
      << "\np_miss=" << sc.p_miss << "\nclutter_rate=" << sc.clutter_rate
      << "\njitter_sigma=" << sc.jitter_sigma << "\nembed_dim=" << sc.embed_dim
      << "\nembed_noise=" << sc.embed_noise << "\ndistortion_gain=" << sc.distortion_gain
      << "\nspeed_min=" << sc.speed_min << "\nspeed_max=" << sc.speed_max
      << "\nwalk_sigma=" << sc.walk_sigma << "\nentry_stagger=" << sc.entry_stagger
      << "\nocclusion_iou=" << sc.occlusion_iou
      << "\nseed=" << sc.seed << "\n";
}

// ---- eval helpers ------------------------------------------------------

const std::vector<std::string> kMetricNames = {"hota", "deta", "assa", "mota", "idf1", "ospa"};

double metric_value(const ot_metrics& m, const std::string& name) {
  if (name == "hota") return m.hota;
  if (name == "deta") return m.deta;
  if (name == "assa") return m.assa;
  if (name == "mota") return m.mota;
  if (name == "idf1") return m.idf1;
  return m.ospa;
}

// ---- ablation harness ---------------------------------------------------

struct RunMetrics {
  double hota = 0, idf1 = 0, ospa = 0, mota = 0;
};

int tracked_eval(const ot_synth_config& sc, ot_config* cfg, ot_metrics* out) {
  SeqHandle gt, dets, pred;
  OT_TRY(ot_synth_generate(&sc, &gt.p, &dets.p));
  TrkHandle tracker;
  OT_TRY(ot_tracker_new(cfg, &tracker.p));
  ResHandle res;
  OT_TRY(ot_tracker_run(tracker.p, dets.p, &res.p));
  OT_TRY(ot_results_as_sequence(res.p, &pred.p));
  OT_TRY(ot_eval(gt.p, pred.p, 0.5, 1.0, 1.0, out));
  return 0;
}

int averaged_eval(const ot_synth_config& base, const std::map<std::string, std::string>& overrides,
                  int seeds, RunMetrics* out) {
  RunMetrics acc;
  for (int s = 0; s < seeds; ++s) {
    ot_synth_config sc = base;
    sc.seed = base.seed + static_cast<std::uint64_t>(s);
    CfgHandle cfg;
    for (const auto& [k, v] : overrides) OT_TRY(ot_config_set(cfg.p, k.c_str(), v.c_str()));
    char seed_buf[32];
    std::snprintf(seed_buf, sizeof(seed_buf), "%" PRIu64, sc.seed);
    OT_TRY(ot_config_set(cfg.p, "seed", seed_buf));
    ot_metrics m{};
    const int rc = tracked_eval(sc, cfg.p, &m);
    if (rc) return rc;
    acc.hota += m.hota;
    acc.idf1 += m.idf1;
    acc.ospa += m.ospa;
    acc.mota += m.mota;
  }
  out->hota = acc.hota / seeds;
  out->idf1 = acc.idf1 / seeds;
  out->ospa = acc.ospa / seeds;
  out->mota = acc.mota / seeds;
  return 0;
}

ot_synth_config benchmark_scenario(std::uint64_t seed) {
  ot_synth_config sc;
  ot_synth_config_init(&sc);
  sc.n_targets = 12;
  sc.seq_len = 600;
  sc.regime = 1;  // gait
  sc.p_miss = 0.1;
  sc.clutter_rate = 1.0;
  sc.seed = seed;
  return sc;
}

int run_components_suite(const std::string& dir, int seeds, const std::string& mode) {
  struct Row {
    const char* name;
    std::map<std::string, std::string> overrides;
  };
  const std::vector<Row> rows = {
      {"baseline", {{"memory_enabled", "0"}, {"dssm_enabled", "0"}}},
      {"+etm", {{"memory_enabled", "1"}, {"dssm_enabled", "0"}}},
      {"+dssm", {{"memory_enabled", "0"}, {"dssm_enabled", "1"}}},
      {"+etm+dssm", {{"memory_enabled", "1"}, {"dssm_enabled", "1"}}},
  };
  std::ofstream csv(dir + "/components.csv");
  csv << "config,hota,idf1,ospa,mota,d_hota,d_idf1\n";
  std::printf("%-12s %8s %8s %8s %8s\n", "config", "HOTA", "IDF1", "OSPA", "MOTA");
  RunMetrics base{};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto overrides = rows[i].overrides;
    overrides["mode"] = mode;
    RunMetrics m{};
    const int rc = averaged_eval(benchmark_scenario(100), overrides, seeds, &m);
    if (rc) return rc;
    if (i == 0) base = m;
    csv << rows[i].name << ',' << m.hota << ',' << m.idf1 << ',' << m.ospa << ',' << m.mota << ','
        << m.hota - base.hota << ',' << m.idf1 - base.idf1 << '\n';
    std::printf("%-12s %8.4f %8.4f %8.4f %8.4f\n", rows[i].name, m.hota, m.idf1, m.ospa, m.mota);
  }
  return 0;
}

int run_flexitrack_suite(const std::string& dir, int seeds) {
  struct Row {
    const char* name;
    std::map<std::string, std::string> overrides;
  };
  const std::vector<Row> rows = {
      {"none", {{"flexi_instances", "0"}, {"memory_enabled", "0"}}},
      {"perturbed", {{"flexi_instances", "1"}, {"memory_enabled", "0"},
                     {"perturb_sigma_x", "0.05"}, {"perturb_sigma_y", "0.02"}}},
      {"clean", {{"flexi_instances", "1"}, {"memory_enabled", "0"}}},
      {"clean+memory", {{"flexi_instances", "1"}, {"memory_enabled", "1"}}},
  };
  std::ofstream csv(dir + "/flexitrack.csv");
  csv << "config,hota,idf1,ospa,mota\n";
  std::printf("%-14s %8s %8s %8s %8s\n", "config", "HOTA", "IDF1", "OSPA", "MOTA");
  for (const Row& row : rows) {
    auto overrides = row.overrides;
    overrides["mode"] = "e2e";
    RunMetrics m{};
    const int rc = averaged_eval(benchmark_scenario(200), overrides, seeds, &m);
    if (rc) return rc;
    csv << row.name << ',' << m.hota << ',' << m.idf1 << ',' << m.ospa << ',' << m.mota << '\n';
    std::printf("%-14s %8.4f %8.4f %8.4f %8.4f\n", row.name, m.hota, m.idf1, m.ospa, m.mota);
  }
  return 0;
}

int run_thresholds_suite(const std::string& dir, int seeds) {
  ot_synth_config sc = benchmark_scenario(300);
  sc.seq_len = 300;
  sc.clutter_rate = 2.0;
  sc.clutter_score_lo = 0.3;
  sc.entry_stagger = 0.6;
  sc.score_lo = 0.55;

  std::vector<std::vector<double>> grid(11, std::vector<double>(11, 0.0));
  std::vector<double> ticks;
  for (int i = 0; i <= 10; ++i) ticks.push_back(0.1 * i);

  std::ofstream csv(dir + "/thresholds.csv");
  csv << "tau_init,tau_update,hota\n";
  for (int i = 0; i <= 10; ++i) {
    for (int u = 0; u <= 10; ++u) {
      char ti[16], tu[16];
      std::snprintf(ti, sizeof(ti), "%.1f", 0.1 * i);
      std::snprintf(tu, sizeof(tu), "%.1f", 0.1 * u);
      // A permissive claim gate leaves the update threshold as the operative
      // filter, which is the sweep's whole point.
      const std::map<std::string, std::string> overrides = {
          {"mode", "e2e"}, {"claim_gate", "0.2"}, {"tau_init", ti}, {"tau_update", tu}};
      RunMetrics m{};
      const int rc = averaged_eval(sc, overrides, seeds, &m);
      if (rc) return rc;
      grid[i][u] = m.hota;
      csv << ti << ',' << tu << ',' << m.hota << '\n';
    }
    std::printf("tau_init=%.1f done\n", 0.1 * i);
    std::fflush(stdout);
  }
  cli::write_svg_heatmap(dir + "/thresholds.svg", grid, ticks, ticks, "tau_update", "tau_init",
                         "HOTA over initialize/update thresholds");

  // Report the argmax for a quick read.
  int bi = 0, bu = 0;
  for (int i = 0; i <= 10; ++i)
    for (int u = 0; u <= 10; ++u)
      if (grid[i][u] > grid[bi][bu]) {
        bi = i;
        bu = u;
      }
  std::printf("best HOTA %.4f at tau_init=%.1f tau_update=%.1f\n", grid[bi][bu], 0.1 * bi,
              0.1 * bu);
  return 0;
}

// ---- subcommand runners --------------------------------------------------

int run_track(const std::string& dets, const std::string& embeds, const std::string& config,
              const std::string& mode, const std::string& out, long long seed,
              std::string diag, std::string manifest) {
  CfgHandle cfg;
  if (!config.empty()) OT_TRY(ot_config_load(cfg.p, config.c_str()));
  if (!mode.empty()) OT_TRY(ot_config_set(cfg.p, "mode", mode.c_str()));
  if (seed >= 0) OT_TRY(ot_config_set(cfg.p, "seed", std::to_string(seed).c_str()));
  OT_TRY(ot_config_validate(cfg.p));

  if (diag.empty()) diag = out + ".diag.csv";
  if (manifest.empty()) manifest = out + ".manifest.json";

  ot_tracker_stats stats{};
  OT_TRY(ot_track_file(cfg.p, dets.c_str(), embeds.empty() ? nullptr : embeds.c_str(),
                       out.c_str(), diag.c_str(), manifest.c_str(), &stats));
  std::printf("tracked %lld frames: %lld updates, %lld inits, %lld removed, %lld cost matrices\n",
              stats.frames, stats.updates, stats.inits, stats.removed, stats.cost_matrices);
  std::printf("results: %s\ndiagnostics: %s\nmanifest: %s\n", out.c_str(), diag.c_str(),
              manifest.c_str());
  return 0;
}

int run_eval(const std::string& gt_path, const std::string& pred_path,
             const std::string& metrics_list, const std::string& out, double iou_thresh,
             double ospa_cutoff, double ospa_order) {
  std::vector<std::string> wanted;
  std::string cur;
  for (char c : metrics_list + ",") {
    if (c == ',') {
      if (!cur.empty()) wanted.push_back(cur);
      cur.clear();
    } else {
      cur += static_cast<char>(std::tolower(c));
    }
  }
  for (const std::string& name : wanted) {
    if (std::find(kMetricNames.begin(), kMetricNames.end(), name) == kMetricNames.end()) {
      std::cerr << "error: unknown metric: " << name << "\n";
      return 3;
    }
  }

  SeqHandle gt, pred;
  OT_TRY(ot_sequence_read_mot(gt_path.c_str(), nullptr, &gt.p));
  OT_TRY(ot_sequence_read_mot(pred_path.c_str(), nullptr, &pred.p));
  ot_metrics m{};
  OT_TRY(ot_eval(gt.p, pred.p, iou_thresh, ospa_cutoff, ospa_order, &m));

  std::printf("%-8s %10s\n", "metric", "value");
  for (const std::string& name : wanted)
    std::printf("%-8s %10.6f\n", name.c_str(), metric_value(m, name));
  std::printf("counts: tp=%lld fp=%lld fn=%lld idsw=%lld\n", m.tp, m.fp, m.fn, m.idsw);

  if (!out.empty()) {
    std::ofstream csv(out);
    csv << "metric,value\n";
    for (const std::string& name : wanted) csv << name << ',' << metric_value(m, name) << '\n';
    csv << "tp," << m.tp << "\nfp," << m.fp << "\nfn," << m.fn << "\nidsw," << m.idsw << '\n';
  }
  return 0;
}

int run_synth(const ot_synth_config& sc, const std::string& dir) {
  std::filesystem::create_directories(dir);
  SeqHandle gt, dets;
  OT_TRY(ot_synth_generate(&sc, &gt.p, &dets.p));
  OT_TRY(ot_sequence_write_mot(gt.p, (dir + "/gt.txt").c_str(), nullptr));
  OT_TRY(ot_sequence_write_mot(dets.p, (dir + "/det.txt").c_str(),
                               (dir + "/det_embed.txt").c_str()));
  write_scenario_snapshot(sc, dir + "/scenario.txt");
  std::printf("wrote %d frames, %lld ground-truth boxes, %lld detections to %s\n",
              ot_sequence_frames(gt.p), ot_sequence_records(gt.p), ot_sequence_records(dets.p),
              dir.c_str());
  return 0;
}

int run_entropy_check(int tables, std::uint64_t seed) {
  MiniRng rng(seed);
  const int n = 4;
  double min_gain = 1e300;
  int violations = 0;
  std::vector<double> joint(n * n);
  for (int t = 0; t < tables; ++t) {
    double total = 0.0;
    for (double& v : joint) total += (v = rng.uniform());
    for (double& v : joint) v /= total;
    double gain = 0.0;
    OT_TRY(ot_feedback_gain(joint.data(), 1, n, n, &gain));
    min_gain = std::min(min_gain, gain);
    if (gain < -1e-9) ++violations;
  }
  std::printf("%-34s %s (min gain %.3e over %d tables)\n",
              "feedback gain non-negative:", violations == 0 ? "PASS" : "FAIL", min_gain, tables);

  // Factorized tables carry no information.
  double max_abs_factorized = 0.0;
  for (int t = 0; t < 100; ++t) {
    double px[n], py[n], sx = 0, sy = 0;
    for (int i = 0; i < n; ++i) sx += (px[i] = 0.05 + rng.uniform());
    for (int i = 0; i < n; ++i) sy += (py[i] = 0.05 + rng.uniform());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) joint[i * n + j] = (px[i] / sx) * (py[j] / sy);
    double gain = 0.0;
    OT_TRY(ot_feedback_gain(joint.data(), 1, n, n, &gain));
    max_abs_factorized = std::max(max_abs_factorized, std::abs(gain));
  }
  std::printf("%-34s %s (max |gain| %.3e)\n",
              "independent frames give zero:", max_abs_factorized <= 1e-9 ? "PASS" : "FAIL",
              max_abs_factorized);

  // Deterministic coupling over T frames gains exactly T ln n.
  const int frames = 12;
  std::vector<double> coupled(frames * n * n, 0.0);
  for (int t = 0; t < frames; ++t)
    for (int i = 0; i < n; ++i) coupled[t * n * n + i * n + (i + t) % n] = 1.0 / n;
  double gain = 0.0;
  OT_TRY(ot_feedback_gain(coupled.data(), frames, n, n, &gain));
  const double expect = frames * std::log(static_cast<double>(n));
  std::printf("%-34s %s (got %.9f, expected %.9f)\n",
              "deterministic coupling = T ln n:", std::abs(gain - expect) <= 1e-9 ? "PASS" : "FAIL",
              gain, expect);

  const bool ok = violations == 0 && max_abs_factorized <= 1e-9 && std::abs(gain - expect) <= 1e-9;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"omnitrack: panoramic multi-object tracking engine"};
  app.require_subcommand(1);

  // track
  auto* track = app.add_subcommand("track", "Run the tracker over a detection file");
  std::string t_dets, t_embeds, t_config, t_mode, t_out, t_diag, t_manifest;
  long long t_seed = -1;
  track->add_option("--dets", t_dets, "MOT detection file")->required();
  track->add_option("--embeds", t_embeds, "embedding sidecar");
  track->add_option("--config", t_config, "key=value config file");
  track->add_option("--mode", t_mode, "e2e|tbd|ensemble|auto");
  track->add_option("--out", t_out, "output MOT file")->required();
  track->add_option("--seed", t_seed, "seed override");
  track->add_option("--diag", t_diag, "diagnostics CSV (default OUT.diag.csv)");
  track->add_option("--manifest", t_manifest, "run manifest (default OUT.manifest.json)");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate predictions against ground truth");
  std::string e_gt, e_pred, e_metrics = "hota,deta,assa,mota,idf1,ospa", e_out;
  double e_iou = 0.5, e_cutoff = 1.0, e_order = 1.0;
  eval->add_option("--gt", e_gt, "ground-truth MOT file")->required();
  eval->add_option("--pred", e_pred, "prediction MOT file")->required();
  eval->add_option("--metrics", e_metrics, "comma-separated metric list");
  eval->add_option("--out", e_out, "CSV report path");
  eval->add_option("--iou-thresh", e_iou, "match threshold for MOTA/IDF1");
  eval->add_option("--ospa-cutoff", e_cutoff, "OSPA cutoff c");
  eval->add_option("--ospa-order", e_order, "OSPA order p");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic panoramic sequence");
  ot_synth_config sc;
  ot_synth_config_init(&sc);
  std::string s_out, s_preset = "custom", s_regime;
  long long s_seed = -1;
  synth->add_option("--out", s_out, "output directory")->required();
  synth->add_option("--preset", s_preset, "golden|occlusion|seam|custom");
  synth->add_option("--targets", sc.n_targets, "number of targets");
  synth->add_option("--frames", sc.seq_len, "sequence length");
  synth->add_option("--regime", s_regime, "smooth|gait|pitch");
  synth->add_option("--p-miss", sc.p_miss, "detection dropout probability");
  synth->add_option("--clutter", sc.clutter_rate, "expected clutter per frame");
  synth->add_option("--jitter", sc.jitter_sigma, "detection jitter sigma");
  synth->add_option("--embed-dim", sc.embed_dim, "embedding dimension");
  synth->add_option("--embed-noise", sc.embed_noise, "embedding noise scale");
  synth->add_option("--distortion-gain", sc.distortion_gain, "off-horizon noise gain");
  synth->add_option("--gait-amp", sc.gait_amp, "gait amplitude");
  synth->add_option("--gait-freq", sc.gait_freq, "gait frequency (cycles/frame)");
  synth->add_option("--pitch-amp", sc.pitch_amp, "pitch amplitude");
  synth->add_option("--pitch-freq", sc.pitch_freq, "pitch frequency");
  synth->add_option("--speed-min", sc.speed_min, "min angular speed");
  synth->add_option("--speed-max", sc.speed_max, "max angular speed");
  synth->add_option("--walk-sigma", sc.walk_sigma, "random-walk sigma");
  synth->add_option("--entry-stagger", sc.entry_stagger, "fraction of sequence over which targets enter");
  synth->add_option("--seed", s_seed, "scenario seed");

  // ablate
  auto* ablate = app.add_subcommand("ablate", "Run an ablation suite on the synthetic benchmark");
  std::string a_suite, a_out, a_mode = "tbd";
  int a_seeds = 3;
  ablate->add_option("--suite", a_suite, "components|flexitrack|thresholds")->required();
  ablate->add_option("--seeds", a_seeds, "seeds per configuration");
  ablate->add_option("--out", a_out, "output directory")->required();
  ablate->add_option("--mode", a_mode, "tracker mode for the components suite");

  // entropy-check
  auto* entropy = app.add_subcommand("entropy-check", "Verify the feedback entropy accounting");
  int n_tables = 1000;
  std::uint64_t n_seed = 1;
  entropy->add_option("--tables", n_tables, "number of random joint tables");
  entropy->add_option("--seed", n_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (track->parsed()) {
      if (!t_mode.empty() && t_mode != "e2e" && t_mode != "tbd" && t_mode != "ensemble" &&
          t_mode != "auto") {
        std::cerr << "error: unknown mode: " << t_mode << "\n";
        return 3;
      }
      return run_track(t_dets, t_embeds, t_config, t_mode, t_out, t_seed, t_diag, t_manifest);
    }
    if (eval->parsed()) return run_eval(e_gt, e_pred, e_metrics, e_out, e_iou, e_cutoff, e_order);
    if (synth->parsed()) {
      apply_preset(sc, s_preset);
      if (!s_regime.empty()) {
        if (s_regime == "smooth") sc.regime = 0;
        else if (s_regime == "gait") sc.regime = 1;
        else if (s_regime == "pitch") sc.regime = 2;
        else {
          std::cerr << "error: unknown regime: " << s_regime << "\n";
          return 3;
        }
      }
      if (s_seed >= 0) sc.seed = static_cast<std::uint64_t>(s_seed);
      return run_synth(sc, s_out);
    }
    if (ablate->parsed()) {
      std::filesystem::create_directories(a_out);
      if (a_suite == "components") return run_components_suite(a_out, a_seeds, a_mode);
      if (a_suite == "flexitrack") return run_flexitrack_suite(a_out, a_seeds);
      if (a_suite == "thresholds") return run_thresholds_suite(a_out, a_seeds);
      std::cerr << "error: unknown suite: " << a_suite << "\n";
      return 3;
    }
    if (entropy->parsed()) return run_entropy_check(n_tables, n_seed);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
