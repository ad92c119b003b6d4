#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <doctest.h>

#include "omnitrack/omnitrack.h"

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("omnitrack_capi_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(std::string(ot_version()) == "0.1.0");
  CHECK(ot_last_error() != nullptr);
}

TEST_CASE("config set/load and error codes") {
  ot_config* cfg = ot_config_new();
  REQUIRE(cfg);
  CHECK(ot_config_set(cfg, "mode", "tbd") == OT_OK);
  CHECK(ot_config_set(cfg, "tau_init", "0.6") == OT_OK);
  CHECK(ot_config_set(cfg, "no_such_key", "1") == OT_ERR_CONFIG);
  CHECK(std::string(ot_last_error()).find("no_such_key") != std::string::npos);
  CHECK(ot_config_set(cfg, "tau_init", "wat") == OT_ERR_CONFIG);
  CHECK(ot_config_validate(cfg) == OT_OK);
  CHECK(ot_config_set(cfg, "n_m", "7") == OT_OK);
  CHECK(ot_config_validate(cfg) == OT_ERR_CONFIG);
  ot_config_free(cfg);

  ot_config* cfg2 = ot_config_new();
  CHECK(ot_config_load(cfg2, "/nonexistent/path.cfg") == OT_ERR_CONFIG);
  ot_config_free(cfg2);
}

TEST_CASE("synthetic generation, tracking and evaluation through the C API") {
  ot_synth_config sc;
  ot_synth_config_init(&sc);
  sc.n_targets = 6;
  sc.seq_len = 120;
  sc.seed = 42;

  ot_sequence* gt = nullptr;
  ot_sequence* dets = nullptr;
  REQUIRE(ot_synth_generate(&sc, &gt, &dets) == OT_OK);
  CHECK(ot_sequence_frames(gt) == 120);
  CHECK(ot_sequence_records(dets) > 0);

  ot_config* cfg = ot_config_new();
  REQUIRE(ot_config_set(cfg, "mode", "tbd") == OT_OK);
  ot_tracker* tracker = nullptr;
  REQUIRE(ot_tracker_new(cfg, &tracker) == OT_OK);

  ot_results* res = nullptr;
  REQUIRE(ot_tracker_run(tracker, dets, &res) == OT_OK);
  CHECK(ot_results_track_count(res) >= 6);

  ot_tracker_stats stats{};
  ot_tracker_stats_get(tracker, &stats);
  CHECK(stats.frames == 120);
  CHECK(stats.cost_matrices > 0);

  ot_sequence* pred = nullptr;
  REQUIRE(ot_results_as_sequence(res, &pred) == OT_OK);
  ot_metrics m{};
  REQUIRE(ot_eval(gt, pred, 0.5, 1.0, 1.0, &m) == OT_OK);
  CHECK(m.hota > 0.2);
  CHECK(m.hota <= 1.0);
  CHECK(m.ospa >= 0.0);

  ot_sequence_free(pred);
  ot_results_free(res);
  ot_tracker_free(tracker);
  ot_config_free(cfg);
  ot_sequence_free(gt);
  ot_sequence_free(dets);
}

TEST_CASE("stepwise tracking with raw arrays") {
  ot_config* cfg = ot_config_new();
  REQUIRE(ot_config_set(cfg, "mode", "e2e") == OT_OK);
  ot_tracker* tracker = nullptr;
  REQUIRE(ot_tracker_new(cfg, &tracker) == OT_OK);

  const int dim = 32;
  std::vector<double> embed(2 * dim, 0.0);
  embed[0] = 1.0;
  embed[dim + 1] = 1.0;
  const double boxes[8] = {0.2, 0.5, 0.08, 0.2, 0.6, 0.5, 0.08, 0.2};
  const double scores[2] = {0.9, 0.8};
  REQUIRE(ot_tracker_step(tracker, 1, boxes, scores, embed.data(), 2, dim) == OT_OK);
  CHECK(ot_tracker_output_count(tracker) == 2);

  long long id = 0;
  double box[4] = {0, 0, 0, 0};
  double score = 0;
  int prov = -1;
  REQUIRE(ot_tracker_output(tracker, 0, &id, box, &score, &prov) == OT_OK);
  CHECK(id == 1);
  CHECK(box[0] == doctest::Approx(0.2));
  CHECK(score == doctest::Approx(0.9));
  CHECK(prov == 0);  // e2e
  CHECK(ot_tracker_output(tracker, 5, &id, box, &score, &prov) == OT_ERR_INPUT);

  // Out-of-order frame is an input error.
  CHECK(ot_tracker_step(tracker, 1, boxes, scores, nullptr, 2, 0) == OT_ERR_INPUT);

  ot_tracker_stats stats{};
  ot_tracker_stats_get(tracker, &stats);
  CHECK(stats.cost_matrices == 0);

  ot_tracker_free(tracker);
  ot_config_free(cfg);
}

TEST_CASE("sequence round trip through files") {
  TempDir dir;
  ot_synth_config sc;
  ot_synth_config_init(&sc);
  sc.n_targets = 4;
  sc.seq_len = 30;
  sc.seed = 9;
  ot_sequence* gt = nullptr;
  ot_sequence* dets = nullptr;
  REQUIRE(ot_synth_generate(&sc, &gt, &dets) == OT_OK);

  const std::string det_path = dir.file("det.txt");
  const std::string embed_path = dir.file("embed.txt");
  REQUIRE(ot_sequence_write_mot(dets, det_path.c_str(), embed_path.c_str()) == OT_OK);

  ot_sequence* loaded = nullptr;
  REQUIRE(ot_sequence_read_mot(det_path.c_str(), embed_path.c_str(), &loaded) == OT_OK);
  CHECK(ot_sequence_records(loaded) == ot_sequence_records(dets));
  CHECK(ot_sequence_frames(loaded) == ot_sequence_frames(dets));

  CHECK(ot_sequence_read_mot(dir.file("missing.txt").c_str(), nullptr, &loaded) == OT_ERR_INPUT);

  ot_sequence_free(loaded);
  ot_sequence_free(gt);
  ot_sequence_free(dets);
}

TEST_CASE("file-level tracking emits results, diagnostics and a manifest") {
  TempDir dir;
  ot_synth_config sc;
  ot_synth_config_init(&sc);
  sc.n_targets = 5;
  sc.seq_len = 60;
  sc.seed = 77;
  ot_sequence* gt = nullptr;
  ot_sequence* dets = nullptr;
  REQUIRE(ot_synth_generate(&sc, &gt, &dets) == OT_OK);
  const std::string det_path = dir.file("det.txt");
  const std::string embed_path = dir.file("embed.txt");
  REQUIRE(ot_sequence_write_mot(dets, det_path.c_str(), embed_path.c_str()) == OT_OK);

  ot_config* cfg = ot_config_new();
  ot_tracker_stats stats{};
  const std::string out = dir.file("out.txt");
  const std::string diag = dir.file("diag.csv");
  const std::string manifest = dir.file("run.json");
  REQUIRE(ot_track_file(cfg, det_path.c_str(), embed_path.c_str(), out.c_str(), diag.c_str(),
                        manifest.c_str(), &stats) == OT_OK);
  CHECK(stats.frames == 60);
  CHECK(fs::exists(out));
  CHECK(fs::exists(diag));
  CHECK(fs::exists(manifest));

  std::ifstream diag_in(diag);
  std::string header;
  std::getline(diag_in, header);
  CHECK(header == "frame,branch,outputs,claimed,unclaimed,updates,inits,removed");

  ot_config_free(cfg);
  ot_sequence_free(gt);
  ot_sequence_free(dets);
}

TEST_CASE("frame-range mismatch in evaluation is an input error") {
  ot_synth_config sc;
  ot_synth_config_init(&sc);
  sc.n_targets = 2;
  sc.seq_len = 10;
  ot_sequence *gt = nullptr, *dets = nullptr;
  REQUIRE(ot_synth_generate(&sc, &gt, &dets) == OT_OK);
  sc.seq_len = 20;
  ot_sequence *gt_long = nullptr, *dets_long = nullptr;
  REQUIRE(ot_synth_generate(&sc, &gt_long, &dets_long) == OT_OK);

  ot_metrics m{};
  CHECK(ot_eval(gt, gt_long, 0.5, 1.0, 1.0, &m) == OT_ERR_INPUT);
  CHECK(ot_eval(gt_long, gt, 0.5, 1.0, 1.0, &m) == OT_OK);

  ot_sequence_free(gt);
  ot_sequence_free(dets);
  ot_sequence_free(gt_long);
  ot_sequence_free(dets_long);
}

TEST_CASE("entropy helpers mirror the library semantics") {
  const double uniform[4] = {0.25, 0.25, 0.25, 0.25};
  double h = 0.0;
  REQUIRE(ot_entropy(uniform, 4, &h) == OT_OK);
  CHECK(h == doctest::Approx(std::log(4.0)).epsilon(1e-12));

  const double bad[2] = {0.7, 0.2};
  CHECK(ot_entropy(bad, 2, &h) == OT_ERR_INPUT);

  // Independent joint: H(x|y) = H(x); gain 0.
  const double joint[4] = {0.25, 0.25, 0.25, 0.25};
  double hc = 0.0;
  REQUIRE(ot_conditional_entropy(joint, 2, 2, &hc) == OT_OK);
  CHECK(hc == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  double gain = -1.0;
  REQUIRE(ot_feedback_gain(joint, 1, 2, 2, &gain) == OT_OK);
  CHECK(std::abs(gain) <= 1e-12);

  // Deterministic coupling over 3 frames: 3 ln 2.
  const double coupled[12] = {0.5, 0.0, 0.0, 0.5, 0.5, 0.0, 0.0, 0.5, 0.5, 0.0, 0.0, 0.5};
  REQUIRE(ot_feedback_gain(coupled, 3, 2, 2, &gain) == OT_OK);
  CHECK(gain == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("null arguments are rejected, not crashed on") {
  CHECK(ot_config_load(nullptr, "x") == OT_ERR_INPUT);
  CHECK(ot_sequence_read_mot(nullptr, nullptr, nullptr) == OT_ERR_INPUT);
  ot_metrics m{};
  CHECK(ot_eval(nullptr, nullptr, 0.5, 1.0, 1.0, &m) == OT_ERR_INPUT);
  double out = 0.0;
  CHECK(ot_entropy(nullptr, 3, &out) == OT_ERR_INPUT);
  CHECK(ot_tracker_new(nullptr, nullptr) == OT_ERR_INPUT);
}
