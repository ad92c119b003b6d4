#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/dssm.hpp"
#include "core/expert_memory.hpp"

namespace omni {

// Named real arrays with declared shapes. Text format, whitespace separated:
//
//   omnitrack-params v1
//   <name> <ndim> <dim0> [<dim1> ...] <value> <value> ...
//
// '#' starts a comment that runs to end of line. See README for the array
// names the tracker understands.
struct NamedArray {
  std::vector<int> shape;
  std::vector<double> values;
};
using ParamStore = std::map<std::string, NamedArray>;

ParamStore load_params(const std::string& path);
void save_params(const ParamStore& store, const std::string& path);

// Deterministic seeded defaults. Experts start near identity (perturbed by
// per-expert noise so they can specialize) with the relu shift folded out of
// the output bias; keys are random unit vectors.
MoeParams make_moe_params(int c_s, int n_e, int k_r, double lambda, double temperature,
                          std::uint64_t seed);

// Near-identity block: small estimation heads, gentle scan gates, identity
// fusion. channels is the reshaped embedding channel count.
DssmBlock make_dssm_block(int channels, std::uint64_t seed);

// Applies file overrides on top of the seeded defaults. Recognized names are
// validated for shape (ConfigError on mismatch); unknown names are ignored so
// one file can serve several consumers.
void apply_param_overrides(MoeParams& moe, const ParamStore& store);
void apply_param_overrides(DssmBlock& block, const ParamStore& store);

}  // namespace omni
