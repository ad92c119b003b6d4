#pragma once

#include <optional>
#include <vector>

#include "core/linalg.hpp"

namespace omni {

struct MemorySlot {
  Vec embedding;
  double confidence = 0.0;
  long long frame = 0;
};

// Per-track hierarchical memory bank. The first half of the capacity is the
// Stable Identity Memory (SIM): confidence-selected keyframes kept sorted by
// descending confidence (ties keep the older slot first). The second half is
// the Dynamic Interaction Memory (DIM): a FIFO of recent embeddings.
struct MemoryBank {
  std::vector<MemorySlot> sim;
  std::vector<MemorySlot> dim;
  int capacity = 8;  // n_m, even; each half holds capacity/2

  int half() const { return capacity / 2; }
  bool empty() const { return sim.empty() && dim.empty(); }
  int size() const { return static_cast<int>(sim.size() + dim.size()); }
};

// Admission policy: confidence >= theta_sim targets SIM, evicting the
// lowest-confidence keyframe only when the newcomer beats it (the newcomer
// drops to DIM otherwise); everything else enters DIM with FIFO eviction.
MemoryBank admit(MemoryBank bank, const MemorySlot& slot, double theta_sim);

// Top-k slots across SIM and DIM by cosine similarity to q, descending.
// Ties break toward higher confidence, then lower frame index.
std::vector<MemorySlot> route(const Vec& q, const MemoryBank& bank, int k);

enum class Activation { relu, tanh, identity };

// Feed-forward expert: affine -> activation -> affine, square in c_s.
struct Expert {
  Mat w1;
  Vec b1;
  Mat w2;
  Vec b2;
};

struct MoeParams {
  std::vector<Expert> experts;
  std::vector<Vec> keys;  // one routing key per expert
  double lambda = 0.5;    // fusion balance between shared and personalized
  int top_k = 4;          // router width K_r
  double temperature = 1.0;
  Activation activation = Activation::relu;
};

Vec expert_apply(const Expert& e, Activation act, const Vec& q);

// Softmax routing weights over scaled key dot-products; always sums to 1.
Vec moe_weights(const Vec& q, const MoeParams& p);

// Shared mixture response: sum_k alpha_k * E_k(q).
Vec moe_forward(const Vec& q, const MoeParams& p);

// Temperature-controlled soft attention over the given slots; nullopt on an
// empty slot list ("cold memory" - callers fall back to q itself).
std::optional<Vec> gated_select(const std::vector<MemorySlot>& slots, const Vec& q,
                                double temperature);

// lambda * f_sh + (1 - lambda) * f_pl. Throws InputError on length mismatch.
Vec fuse_embeddings(const Vec& f_sh, const Vec& f_pl, double lambda);

// Full pipeline: route top-K_r, shared MoE response, gated personalized
// retrieval over the routed subset, lambda fusion. A cold bank blends the
// MoE response with q itself.
Vec enhance(const MemoryBank& bank, const Vec& q, const MoeParams& p);

}  // namespace omni
