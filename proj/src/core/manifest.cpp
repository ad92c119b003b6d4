#include "core/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "core/common.hpp"

namespace omni {

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("fnv1a_file: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  return h;
}

void write_manifest(const RunManifest& m, const std::string& path) {
  nlohmann::json j;
  j["tool_version"] = m.tool_version;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : m.config) cfg[k] = v;
  j["config"] = cfg;
  j["seed"] = m.seed;
  auto files = [](const std::vector<std::pair<std::string, std::string>>& fs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [p, h] : fs) arr.push_back({{"path", p}, {"fnv1a", h}});
    return arr;
  };
  j["inputs"] = files(m.inputs);
  j["outputs"] = files(m.outputs);
  j["frames"] = m.frames;
  j["tracks"] = m.tracks;
  j["wall_ms"] = m.wall_ms;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("write_manifest: cannot open " + path);
  out << j.dump(2) << '\n';
}

}  // namespace omni
