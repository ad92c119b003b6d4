#pragma once

#include <vector>

#include "core/linalg.hpp"
#include "core/panogeom.hpp"

namespace omni {

// One detector output: box on the cylinder, confidence, optional appearance
// embedding (empty when the source provides none).
struct Detection {
  PanoBox box;
  double score = 0.0;
  Vec embedding;
};

// One identity-carrying box, as found in ground truth and tracker output.
struct TrackedBox {
  long long id = -1;
  PanoBox box;
  double score = 1.0;
};

// Frame-indexed sequence; frames[k] holds frame k+1 (MOT frames start at 1).
struct Sequence {
  std::vector<std::vector<TrackedBox>> frames;
  int n_frames() const { return static_cast<int>(frames.size()); }
};

using DetectionFrames = std::vector<std::vector<Detection>>;

}  // namespace omni
