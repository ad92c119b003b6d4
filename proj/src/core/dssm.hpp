#pragma once

#include <vector>

#include "core/linalg.hpp"

namespace omni {

// Dense (C, H, W) feature volume used by the DynamicSSM block. Small and
// synthetic by design; the horizontal axis is the panoramic (wrapping) one.
struct FeatureMap {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<double> data;

  FeatureMap() = default;
  FeatureMap(int c, int h, int w)
      : channels(c), height(h), width(w), data(static_cast<std::size_t>(c) * h * w, 0.0) {}

  double& at(int c, int y, int x) {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  double at(int c, int y, int x) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  bool same_shape(const FeatureMap& o) const {
    return channels == o.channels && height == o.height && width == o.width;
  }
};

// Channel projection applied per spatial location.
struct ChannelMap {
  Mat weight;  // out_channels x in_channels
  Vec bias;    // out_channels

  static ChannelMap identity(int channels);
};

struct EstimatorWeights {
  ChannelMap d_map;  // distortion head
  ChannelMap s_map;  // scale head (sigmoid-activated)
};

struct DistortionScalePair {
  FeatureMap d;
  FeatureMap s;  // entries in (0, 1)
};

enum class ScanDirection { l2r, r2l, t2b, b2t };

// Per-channel scalar-state selective scan. The gate projections mix channels
// at each step; the decay a is a fixed negative scalar.
struct SsmParams {
  double a = -1.0;
  Mat delta_proj;  // channels x channels
  Mat b_proj;
  Mat c_proj;
  int directions = 4;  // 1, 2 or 4, applied in order l2r, r2l, t2b, b2t
};

// D = d_map(f), S = sigmoid(s_map(f)), computed per location.
DistortionScalePair estimate_distortion_scale(const FeatureMap& f, const EstimatorWeights& w);

// Z = 3x3 mean of f * (1 + D*S); vertical borders reflect, horizontal
// borders wrap around the panorama.
FeatureMap dynamic_modulate(const DistortionScalePair& ds, const FeatureMap& f);

// One directional pass: delta = softplus(delta_proj x), h = exp(a*delta)*h +
// delta*(b_proj x), y = c_proj h, with h starting at zero on every scan line.
FeatureMap directional_scan(const FeatureMap& z, ScanDirection dir, const SsmParams& p);

// Mean of the first p.directions directional scans.
FeatureMap multi_directional(const FeatureMap& z, const SsmParams& p);

// F = fuse_weights(residual + z_star), channel projection per location.
FeatureMap fuse(const FeatureMap& residual, const FeatureMap& z_star, const ChannelMap& w);

// The four stages chained, with the input itself as the residual branch.
struct DssmBlock {
  EstimatorWeights est;
  SsmParams ssm;
  ChannelMap fuse_proj;

  FeatureMap apply(const FeatureMap& f) const;
};

}  // namespace omni
