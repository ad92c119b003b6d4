#include "core/synth.hpp"

#include <algorithm>
#include <cmath>

#include "core/common.hpp"
#include "core/rng.hpp"

namespace omni {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Stream ids; fixed so regenerated sequences are bit-identical.
constexpr std::uint64_t kEgoStream = 0x45474F00ULL;
constexpr std::uint64_t kTargetStream = 0x54475400ULL;
constexpr std::uint64_t kFrameStream = 0x46524D00ULL;

double sin_turns(double turns) {
  // Reduces the phase before calling sin so exact half-turn multiples land
  // on clean values.
  return std::sin(kTwoPi * (turns - std::floor(turns)));
}

Vec noisy_vector(const Vec& mean, double sigma, Rng& rng) {
  Vec v = mean;
  const double per_dim = sigma / std::sqrt(static_cast<double>(mean.size()));
  for (double& x : v) x += per_dim * rng.normal();
  return v;
}

Vec random_unit(int dim, Rng& rng) {
  Vec v(dim);
  for (double& x : v) x = rng.normal();
  const double n = norm(v);
  for (double& x : v) x /= (n > 1e-12 ? n : 1.0);
  return v;
}

}  // namespace

const char* to_string(MotionRegime r) {
  switch (r) {
    case MotionRegime::smooth: return "smooth";
    case MotionRegime::gait: return "gait";
    case MotionRegime::pitch: return "pitch";
  }
  return "smooth";
}

MotionRegime regime_from_string(const std::string& s) {
  if (s == "smooth") return MotionRegime::smooth;
  if (s == "gait") return MotionRegime::gait;
  if (s == "pitch") return MotionRegime::pitch;
  throw ConfigError("unknown motion regime: " + s);
}

std::pair<double, double> ego_noise(int t, const ScenarioConfig& cfg) {
  if (cfg.regime == MotionRegime::smooth) return {0.0, 0.0};
  Rng rng = Rng::stream(cfg.seed, kEgoStream + static_cast<std::uint64_t>(t));
  const double jitter = cfg.jitter_sigma > 0.0 ? cfg.jitter_sigma * rng.normal() : 0.0;
  if (cfg.regime == MotionRegime::gait)
    return {cfg.gait_amp * sin_turns(cfg.gait_freq * t) + jitter, 0.0};
  return {0.0, cfg.pitch_amp * sin_turns(cfg.pitch_freq * t) + jitter};
}

SyntheticSequence generate(const ScenarioConfig& cfg) {
  if (cfg.n_targets < 0 || cfg.seq_len < 1) throw ConfigError("generate: bad scenario shape");

  struct Target {
    double cu0, speed, cv0, w, h, depth;
    Vec mean_embedding;
    Rng walk;
  };
  std::vector<Target> targets;
  targets.reserve(cfg.n_targets);
  for (int i = 0; i < cfg.n_targets; ++i) {
    Rng rng = Rng::stream(cfg.seed, kTargetStream + static_cast<std::uint64_t>(i));
    Target t{rng.uniform(), rng.uniform(cfg.speed_min, cfg.speed_max), rng.uniform(0.42, 0.58),
             rng.uniform(0.03, 0.07), rng.uniform(0.10, 0.18), rng.uniform(1.0, 10.0),
             random_unit(cfg.embed_dim, rng),
             Rng::stream(cfg.seed, kTargetStream + 0x10000ULL + static_cast<std::uint64_t>(i))};
    targets.push_back(std::move(t));
  }

  SyntheticSequence out;
  out.gt.frames.resize(cfg.seq_len);
  out.detections.resize(cfg.seq_len);
  out.det_true_ids.resize(cfg.seq_len);

  std::vector<double> walk(cfg.n_targets, 0.0);
  for (int f = 0; f < cfg.seq_len; ++f) {
    const auto [dz, pitch] = ego_noise(f, cfg);

    // True boxes this frame, before occlusion.
    struct Candidate {
      long long id;
      PanoBox box;
      double depth;
    };
    std::vector<Candidate> cands;
    cands.reserve(cfg.n_targets);
    for (int i = 0; i < cfg.n_targets; ++i) {
      Target& t = targets[i];
      walk[i] += cfg.walk_sigma * t.walk.normal();
      const int birth =
          static_cast<int>(cfg.entry_stagger * cfg.seq_len * i / std::max(1, cfg.n_targets));
      if (f < birth) continue;
      const double cu = wrap_unit(t.cu0 + t.speed * f + walk[i]);
      // Pitch shears the horizon: vertical displacement depends on azimuth.
      double cv = t.cv0 + dz + pitch * std::cos(kTwoPi * cu);
      cv = std::clamp(cv, t.h / 2.0, 1.0 - t.h / 2.0);
      cands.push_back({i + 1, PanoBox::make(cu, cv, t.w, t.h), t.depth});
    }

    // Depth-ordered occlusion: the farther of two heavily overlapping
    // targets is invisible this frame.
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.depth < b.depth; });
    std::vector<Candidate> visible;
    for (const Candidate& c : cands) {
      bool occluded = false;
      for (const Candidate& v : visible)
        if (cyclic_iou(c.box, v.box) > cfg.occlusion_iou) {
          occluded = true;
          break;
        }
      if (!occluded) visible.push_back(c);
    }
    std::sort(visible.begin(), visible.end(),
              [](const Candidate& a, const Candidate& b) { return a.id < b.id; });

    for (const Candidate& c : visible) out.gt.frames[f].push_back({c.id, c.box, 1.0});

    // Detections: jittered visible targets with dropout, then clutter.
    Rng rng = Rng::stream(cfg.seed, kFrameStream + static_cast<std::uint64_t>(f));
    for (const Candidate& c : visible) {
      if (cfg.p_miss > 0.0 && rng.uniform() < cfg.p_miss) continue;
      PanoBox box = c.box;
      if (cfg.jitter_sigma > 0.0) {
        box = PanoBox::make(box.cu + cfg.jitter_sigma * rng.normal(),
                            box.cv + cfg.jitter_sigma * rng.normal(),
                            box.w + cfg.jitter_sigma * rng.normal(),
                            box.h + cfg.jitter_sigma * rng.normal());
      }
      Detection d;
      d.box = box;
      d.score = rng.uniform(cfg.score_lo, cfg.score_hi);
      const Target& t = targets[c.id - 1];
      const double sigma =
          cfg.embed_noise + cfg.distortion_gain * std::abs(box.cv - 0.5);
      d.embedding = noisy_vector(t.mean_embedding, sigma, rng);
      out.detections[f].push_back(std::move(d));
      out.det_true_ids[f].push_back(c.id);
    }

    const int n_clutter = cfg.clutter_rate > 0.0 ? rng.poisson(cfg.clutter_rate) : 0;
    for (int k = 0; k < n_clutter; ++k) {
      Detection d;
      d.box = PanoBox::make(rng.uniform(), rng.uniform(0.2, 0.8), rng.uniform(0.02, 0.08),
                            rng.uniform(0.08, 0.2));
      d.score = rng.uniform(cfg.clutter_score_lo, cfg.clutter_score_hi);
      d.embedding = noisy_vector(random_unit(cfg.embed_dim, rng), cfg.embed_noise, rng);
      out.detections[f].push_back(std::move(d));
      out.det_true_ids[f].push_back(-1);
    }
  }
  return out;
}

int count_wrap_events(const Sequence& gt, long long id) {
  int wraps = 0;
  bool have_prev = false;
  double prev = 0.0;
  for (const auto& frame : gt.frames) {
    for (const TrackedBox& b : frame) {
      if (b.id != id) continue;
      if (have_prev && std::abs(b.box.cu - prev) > 0.5) ++wraps;
      prev = b.box.cu;
      have_prev = true;
    }
  }
  return wraps;
}

}  // namespace omni
