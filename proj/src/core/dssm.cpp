#include "core/dssm.hpp"

#include <cmath>

#include "core/common.hpp"

namespace omni {

ChannelMap ChannelMap::identity(int channels) {
  return {Mat::identity(channels), Vec(channels, 0.0)};
}

namespace {

void check_channel_map(const ChannelMap& m, int channels, const char* what) {
  if (m.weight.rows() != channels || m.weight.cols() != channels ||
      static_cast<int>(m.bias.size()) != channels)
    throw ConfigError(std::string(what) + ": weight shape incompatible with channel count");
}

Vec channel_vec(const FeatureMap& f, int y, int x) {
  Vec v(f.channels);
  for (int c = 0; c < f.channels; ++c) v[c] = f.at(c, y, x);
  return v;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

// Symmetric reflection for the vertical axis; a single row reflects onto
// itself, so degenerate maps need no special casing.
int reflect(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

int wrap(int i, int n) {
  i %= n;
  return i < 0 ? i + n : i;
}

}  // namespace

DistortionScalePair estimate_distortion_scale(const FeatureMap& f, const EstimatorWeights& w) {
  check_channel_map(w.d_map, f.channels, "estimate_distortion_scale d_map");
  check_channel_map(w.s_map, f.channels, "estimate_distortion_scale s_map");
  DistortionScalePair out{FeatureMap(f.channels, f.height, f.width),
                          FeatureMap(f.channels, f.height, f.width)};
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      const Vec v = channel_vec(f, y, x);
      const Vec d = mat_vec(w.d_map.weight, v);
      const Vec s = mat_vec(w.s_map.weight, v);
      for (int c = 0; c < f.channels; ++c) {
        out.d.at(c, y, x) = d[c] + w.d_map.bias[c];
        out.s.at(c, y, x) = sigmoid(s[c] + w.s_map.bias[c]);
      }
    }
  }
  return out;
}

FeatureMap dynamic_modulate(const DistortionScalePair& ds, const FeatureMap& f) {
  if (!ds.d.same_shape(f) || !ds.s.same_shape(f))
    throw ConfigError("dynamic_modulate: shape mismatch");
  FeatureMap gained(f.channels, f.height, f.width);
  for (std::size_t i = 0; i < f.data.size(); ++i)
    gained.data[i] = f.data[i] * (1.0 + ds.d.data[i] * ds.s.data[i]);

  FeatureMap out(f.channels, f.height, f.width);
  for (int c = 0; c < f.channels; ++c) {
    for (int y = 0; y < f.height; ++y) {
      for (int x = 0; x < f.width; ++x) {
        double sum = 0.0;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx)
            sum += gained.at(c, reflect(y + dy, f.height), wrap(x + dx, f.width));
        out.at(c, y, x) = sum / 9.0;
      }
    }
  }
  return out;
}

namespace {

struct ScanAxis {
  bool horizontal;
  bool reversed;
};

ScanAxis axis_of(ScanDirection dir) {
  switch (dir) {
    case ScanDirection::l2r: return {true, false};
    case ScanDirection::r2l: return {true, true};
    case ScanDirection::t2b: return {false, false};
    case ScanDirection::b2t: return {false, true};
  }
  return {true, false};
}

}  // namespace

FeatureMap directional_scan(const FeatureMap& z, ScanDirection dir, const SsmParams& p) {
  const int ch = z.channels;
  if (p.delta_proj.rows() != ch || p.delta_proj.cols() != ch || p.b_proj.rows() != ch ||
      p.b_proj.cols() != ch || p.c_proj.rows() != ch || p.c_proj.cols() != ch)
    throw ConfigError("directional_scan: projection shape incompatible with channels");
  if (!(p.a < 0.0)) throw ConfigError("directional_scan: decay a must be negative");

  const ScanAxis ax = axis_of(dir);
  const int lines = ax.horizontal ? z.height : z.width;
  const int steps = ax.horizontal ? z.width : z.height;

  FeatureMap out(z.channels, z.height, z.width);
  Vec h(ch);
  for (int line = 0; line < lines; ++line) {
    std::fill(h.begin(), h.end(), 0.0);
    for (int s = 0; s < steps; ++s) {
      const int t = ax.reversed ? steps - 1 - s : s;
      const int y = ax.horizontal ? line : t;
      const int x = ax.horizontal ? t : line;
      const Vec xt = channel_vec(z, y, x);
      const Vec dt = mat_vec(p.delta_proj, xt);
      const Vec bt = mat_vec(p.b_proj, xt);
      for (int c = 0; c < ch; ++c) {
        const double delta = softplus(dt[c]);
        h[c] = std::exp(p.a * delta) * h[c] + delta * bt[c];
      }
      const Vec yt = mat_vec(p.c_proj, h);
      for (int c = 0; c < ch; ++c) out.at(c, y, x) = yt[c];
    }
  }
  return out;
}

FeatureMap multi_directional(const FeatureMap& z, const SsmParams& p) {
  if (p.directions != 1 && p.directions != 2 && p.directions != 4)
    throw ConfigError("multi_directional: directions must be 1, 2 or 4");
  static constexpr ScanDirection kOrder[4] = {ScanDirection::l2r, ScanDirection::r2l,
                                              ScanDirection::t2b, ScanDirection::b2t};
  FeatureMap acc(z.channels, z.height, z.width);
  for (int d = 0; d < p.directions; ++d) {
    const FeatureMap y = directional_scan(z, kOrder[d], p);
    for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += y.data[i];
  }
  const double inv = 1.0 / p.directions;
  for (double& v : acc.data) v *= inv;
  return acc;
}

FeatureMap fuse(const FeatureMap& residual, const FeatureMap& z_star, const ChannelMap& w) {
  if (!residual.same_shape(z_star)) throw ConfigError("fuse: shape mismatch");
  check_channel_map(w, residual.channels, "fuse");
  FeatureMap out(residual.channels, residual.height, residual.width);
  for (int y = 0; y < residual.height; ++y) {
    for (int x = 0; x < residual.width; ++x) {
      Vec v(residual.channels);
      for (int c = 0; c < residual.channels; ++c) v[c] = residual.at(c, y, x) + z_star.at(c, y, x);
      const Vec f = mat_vec(w.weight, v);
      for (int c = 0; c < residual.channels; ++c) out.at(c, y, x) = f[c] + w.bias[c];
    }
  }
  return out;
}

FeatureMap DssmBlock::apply(const FeatureMap& f) const {
  const DistortionScalePair ds = estimate_distortion_scale(f, est);
  const FeatureMap z = dynamic_modulate(ds, f);
  const FeatureMap z_star = multi_directional(z, ssm);
  return fuse(f, z_star, fuse_proj);
}

}  // namespace omni
