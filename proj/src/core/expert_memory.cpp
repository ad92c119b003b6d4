#include "core/expert_memory.hpp"

#include <algorithm>
#include <cmath>

#include "core/common.hpp"

namespace omni {

namespace {

void sim_insert(std::vector<MemorySlot>& sim, const MemorySlot& slot) {
  auto pos = std::find_if(sim.begin(), sim.end(),
                          [&](const MemorySlot& s) { return s.confidence < slot.confidence; });
  sim.insert(pos, slot);
}

void dim_push(std::vector<MemorySlot>& dim, const MemorySlot& slot, int cap) {
  dim.push_back(slot);
  if (static_cast<int>(dim.size()) > cap) dim.erase(dim.begin());
}

}  // namespace

MemoryBank admit(MemoryBank bank, const MemorySlot& slot, double theta_sim) {
  const int half = bank.half();
  if (half <= 0) return bank;
  if (slot.confidence >= theta_sim) {
    if (static_cast<int>(bank.sim.size()) < half) {
      sim_insert(bank.sim, slot);
      return bank;
    }
    if (slot.confidence > bank.sim.back().confidence) {
      bank.sim.pop_back();
      sim_insert(bank.sim, slot);
      return bank;
    }
    // Qualified but not better than any keyframe: treat as a recent update.
  }
  dim_push(bank.dim, slot, half);
  return bank;
}

std::vector<MemorySlot> route(const Vec& q, const MemoryBank& bank, int k) {
  struct Scored {
    double sim;
    const MemorySlot* slot;
  };
  std::vector<Scored> all;
  all.reserve(bank.size());
  for (const MemorySlot& s : bank.sim) all.push_back({cosine(q, s.embedding), &s});
  for (const MemorySlot& s : bank.dim) all.push_back({cosine(q, s.embedding), &s});
  std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    if (a.slot->confidence != b.slot->confidence) return a.slot->confidence > b.slot->confidence;
    return a.slot->frame < b.slot->frame;
  });
  std::vector<MemorySlot> out;
  const int n = std::min<int>(k, static_cast<int>(all.size()));
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(*all[i].slot);
  return out;
}

Vec expert_apply(const Expert& e, Activation act, const Vec& q) {
  Vec h = mat_vec(e.w1, q);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] += e.b1[i];
  switch (act) {
    case Activation::relu:
      for (double& v : h) v = v > 0.0 ? v : 0.0;
      break;
    case Activation::tanh:
      for (double& v : h) v = std::tanh(v);
      break;
    case Activation::identity:
      break;
  }
  Vec out = mat_vec(e.w2, h);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += e.b2[i];
  return out;
}

Vec moe_weights(const Vec& q, const MoeParams& p) {
  const double scale = std::sqrt(static_cast<double>(q.size())) * p.temperature;
  Vec scores(p.keys.size());
  for (std::size_t k = 0; k < p.keys.size(); ++k) scores[k] = dot(q, p.keys[k]) / scale;
  const double mx = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (double& s : scores) {
    s = std::exp(s - mx);
    sum += s;
  }
  for (double& s : scores) s /= sum;
  return scores;
}

Vec moe_forward(const Vec& q, const MoeParams& p) {
  if (p.experts.empty() || p.experts.size() != p.keys.size())
    throw ConfigError("moe_forward: experts/keys misconfigured");
  const Vec alpha = moe_weights(q, p);
  Vec out(q.size(), 0.0);
  for (std::size_t k = 0; k < p.experts.size(); ++k) {
    const Vec ek = expert_apply(p.experts[k], p.activation, q);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += alpha[k] * ek[i];
  }
  return out;
}

std::optional<Vec> gated_select(const std::vector<MemorySlot>& slots, const Vec& q,
                                double temperature) {
  if (slots.empty()) return std::nullopt;
  Vec w(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i)
    w[i] = cosine(q, slots[i].embedding) / temperature;
  const double mx = *std::max_element(w.begin(), w.end());
  double sum = 0.0;
  for (double& v : w) {
    v = std::exp(v - mx);
    sum += v;
  }
  Vec out(q.size(), 0.0);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const double wi = w[i] / sum;
    for (std::size_t d = 0; d < out.size(); ++d) out[d] += wi * slots[i].embedding[d];
  }
  return out;
}

Vec fuse_embeddings(const Vec& f_sh, const Vec& f_pl, double lambda) {
  if (f_sh.size() != f_pl.size()) throw InputError("fuse_embeddings: length mismatch");
  Vec out(f_sh.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = lambda * f_sh[i] + (1.0 - lambda) * f_pl[i];
  return out;
}

Vec enhance(const MemoryBank& bank, const Vec& q, const MoeParams& p) {
  const std::vector<MemorySlot> routed = route(q, bank, p.top_k);
  const Vec f_sh = moe_forward(q, p);
  const std::optional<Vec> f_pl = gated_select(routed, q, p.temperature);
  return fuse_embeddings(f_sh, f_pl ? *f_pl : q, p.lambda);
}

}  // namespace omni
