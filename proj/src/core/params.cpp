#include "core/params.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/common.hpp"
#include "core/rng.hpp"

namespace omni {

ParamStore load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("load_params: cannot open " + path);

  std::string text, line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    text += line;
    text += '\n';
  }
  std::istringstream tok(text);
  std::string magic, version;
  if (!(tok >> magic >> version) || magic != "omnitrack-params" || version != "v1")
    throw InputError("load_params: bad header in " + path);

  ParamStore store;
  std::string name;
  while (tok >> name) {
    int ndim = 0;
    if (!(tok >> ndim) || ndim < 1 || ndim > 4)
      throw InputError("load_params: bad rank for array " + name);
    NamedArray arr;
    std::size_t count = 1;
    for (int i = 0; i < ndim; ++i) {
      int d = 0;
      if (!(tok >> d) || d < 1) throw InputError("load_params: bad shape for array " + name);
      arr.shape.push_back(d);
      count *= static_cast<std::size_t>(d);
    }
    arr.values.resize(count);
    for (std::size_t i = 0; i < count; ++i)
      if (!(tok >> arr.values[i])) throw InputError("load_params: truncated values for " + name);
    store[name] = std::move(arr);
  }
  return store;
}

void save_params(const ParamStore& store, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("save_params: cannot open " + path);
  out << "omnitrack-params v1\n";
  char buf[32];
  for (const auto& [name, arr] : store) {
    out << name << ' ' << arr.shape.size();
    for (int d : arr.shape) out << ' ' << d;
    for (double v : arr.values) {
      std::snprintf(buf, sizeof(buf), " %.17g", v);
      out << buf;
    }
    out << '\n';
  }
}

namespace {

Mat near_identity(int n, double eps, Rng& rng) {
  Mat m = Mat::identity(n);
  const double scale = eps / std::sqrt(static_cast<double>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) += scale * rng.normal();
  return m;
}

Vec unit_vector(int n, Rng& rng) {
  Vec v(n);
  for (double& x : v) x = rng.normal();
  const double nv = norm(v);
  for (double& x : v) x /= (nv > 1e-12 ? nv : 1.0);
  return v;
}

Mat mat_from(const NamedArray& a, int rows, int cols, const std::string& name) {
  if (a.shape.size() != 2 || a.shape[0] != rows || a.shape[1] != cols)
    throw ConfigError("param " + name + ": expected shape " + std::to_string(rows) + "x" +
                      std::to_string(cols));
  Mat m(rows, cols);
  m.data() = a.values;
  return m;
}

Vec vec_from(const NamedArray& a, int len, const std::string& name) {
  if (a.shape.size() != 1 || a.shape[0] != len)
    throw ConfigError("param " + name + ": expected length " + std::to_string(len));
  return a.values;
}

}  // namespace

MoeParams make_moe_params(int c_s, int n_e, int k_r, double lambda, double temperature,
                          std::uint64_t seed) {
  MoeParams p;
  p.lambda = lambda;
  p.top_k = k_r;
  p.temperature = temperature;
  p.activation = Activation::relu;
  for (int k = 0; k < n_e; ++k) {
    Rng rng = Rng::stream(seed, 0x4D6F4500ULL + static_cast<std::uint64_t>(k));
    Expert e;
    e.w1 = near_identity(c_s, 0.15, rng);
    e.b1 = Vec(c_s, 3.0);  // shifts the relu into its linear region
    e.w2 = near_identity(c_s, 0.15, rng);
    e.b2 = Vec(c_s, 0.0);
    const Vec shift = mat_vec(e.w2, e.b1);
    for (int i = 0; i < c_s; ++i) e.b2[i] = -shift[i];
    p.experts.push_back(std::move(e));
    p.keys.push_back(unit_vector(c_s, rng));
  }
  return p;
}

DssmBlock make_dssm_block(int channels, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, 0x44535Dull);
  DssmBlock b;
  const double head_scale = 0.05 / std::sqrt(static_cast<double>(channels));
  b.est.d_map.weight = Mat(channels, channels);
  b.est.s_map.weight = Mat(channels, channels);
  for (int r = 0; r < channels; ++r)
    for (int c = 0; c < channels; ++c) {
      b.est.d_map.weight(r, c) = head_scale * rng.normal();
      b.est.s_map.weight(r, c) = head_scale * rng.normal();
    }
  b.est.d_map.bias = Vec(channels, 0.0);
  b.est.s_map.bias = Vec(channels, 0.0);

  b.ssm.a = -1.0;
  b.ssm.directions = 4;
  b.ssm.delta_proj = near_identity(channels, 0.1, rng);
  b.ssm.b_proj = near_identity(channels, 0.1, rng);
  b.ssm.c_proj = near_identity(channels, 0.1, rng);
  for (double& v : b.ssm.delta_proj.data()) v *= 0.5;
  for (double& v : b.ssm.b_proj.data()) v *= 0.5;
  for (double& v : b.ssm.c_proj.data()) v *= 0.5;

  b.fuse_proj = ChannelMap::identity(channels);
  return b;
}

void apply_param_overrides(MoeParams& moe, const ParamStore& store) {
  const int c_s = moe.experts.empty() ? 0 : moe.experts[0].w1.rows();
  for (std::size_t k = 0; k < moe.experts.size(); ++k) {
    const std::string base = "moe.expert" + std::to_string(k) + ".";
    if (auto it = store.find(base + "w1"); it != store.end())
      moe.experts[k].w1 = mat_from(it->second, c_s, c_s, base + "w1");
    if (auto it = store.find(base + "b1"); it != store.end())
      moe.experts[k].b1 = vec_from(it->second, c_s, base + "b1");
    if (auto it = store.find(base + "w2"); it != store.end())
      moe.experts[k].w2 = mat_from(it->second, c_s, c_s, base + "w2");
    if (auto it = store.find(base + "b2"); it != store.end())
      moe.experts[k].b2 = vec_from(it->second, c_s, base + "b2");
    const std::string key = "moe.key" + std::to_string(k);
    if (auto it = store.find(key); it != store.end())
      moe.keys[k] = vec_from(it->second, c_s, key);
  }
}

void apply_param_overrides(DssmBlock& block, const ParamStore& store) {
  const int ch = block.est.d_map.weight.rows();
  auto override_map = [&](ChannelMap& m, const std::string& base) {
    if (auto it = store.find(base + ".weight"); it != store.end())
      m.weight = mat_from(it->second, ch, ch, base + ".weight");
    if (auto it = store.find(base + ".bias"); it != store.end())
      m.bias = vec_from(it->second, ch, base + ".bias");
  };
  override_map(block.est.d_map, "dssm.d");
  override_map(block.est.s_map, "dssm.s");
  override_map(block.fuse_proj, "dssm.fuse");
  if (auto it = store.find("dssm.a"); it != store.end())
    block.ssm.a = vec_from(it->second, 1, "dssm.a")[0];
  if (auto it = store.find("dssm.delta_proj"); it != store.end())
    block.ssm.delta_proj = mat_from(it->second, ch, ch, "dssm.delta_proj");
  if (auto it = store.find("dssm.b_proj"); it != store.end())
    block.ssm.b_proj = mat_from(it->second, ch, ch, "dssm.b_proj");
  if (auto it = store.find("dssm.c_proj"); it != store.end())
    block.ssm.c_proj = mat_from(it->second, ch, ch, "dssm.c_proj");
}

}  // namespace omni
