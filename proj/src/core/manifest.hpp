#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace omni {

// FNV-1a over a file's bytes; used to fingerprint run inputs and outputs.
std::uint64_t fnv1a_file(const std::string& path);

// One manifest per tracking run: the config snapshot, seed, inputs and
// outputs with hashes, and timing. JSON, one file per run.
struct RunManifest {
  std::string tool_version;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, hash (hex)
  std::vector<std::pair<std::string, std::string>> outputs;  // path, hash (hex)
  long long frames = 0;
  long long tracks = 0;
  double wall_ms = 0.0;
};

void write_manifest(const RunManifest& m, const std::string& path);

}  // namespace omni
