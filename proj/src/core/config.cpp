#include "core/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "core/common.hpp"

namespace omni {

const char* to_string(TrackMode m) {
  switch (m) {
    case TrackMode::e2e: return "e2e";
    case TrackMode::tbd: return "tbd";
    case TrackMode::ensemble: return "ensemble";
    case TrackMode::auto_select: return "auto";
  }
  return "auto";
}

TrackMode track_mode_from_string(const std::string& s) {
  if (s == "e2e") return TrackMode::e2e;
  if (s == "tbd") return TrackMode::tbd;
  if (s == "ensemble") return TrackMode::ensemble;
  if (s == "auto") return TrackMode::auto_select;
  throw ConfigError("unknown mode: " + s);
}

void TrackerConfig::validate() const {
  auto unit = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(name) + " must be in [0,1]");
  };
  unit(tau_init, "tau_init");
  unit(tau_update, "tau_update");
  unit(tau_split, "tau_split");
  unit(claim_gate, "claim_gate");
  unit(max_cost, "max_cost");
  unit(lambda, "lambda");
  unit(theta_sim, "theta_sim");
  if (max_age < 1) throw ConfigError("max_age must be >= 1");
  if (w_iou < 0.0 || w_app < 0.0 || std::abs(w_iou + w_app - 1.0) > 1e-9)
    throw ConfigError("w_iou + w_app must equal 1 with non-negative parts");
  if (n_m < 2 || n_m % 2 != 0) throw ConfigError("n_m must be a positive even number");
  if (k_r < 1) throw ConfigError("K_r must be >= 1");
  if (n_e < 1) throw ConfigError("n_e must be >= 1");
  if (temperature <= 0.0) throw ConfigError("temperature must be positive");
  if (embed_dim < 4) throw ConfigError("embed_dim must be >= 4");
  if (perturb_sigma_x < 0.0 || perturb_sigma_y < 0.0)
    throw ConfigError("perturb sigmas must be >= 0");
}

namespace {

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("bad boolean for " + key + ": " + v);
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": " + v);
  }
}

long long parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": " + v);
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_kv(TrackerConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "mode") cfg.mode = track_mode_from_string(value);
  else if (key == "tau_init") cfg.tau_init = parse_double(value, key);
  else if (key == "tau_update") cfg.tau_update = parse_double(value, key);
  else if (key == "max_age") cfg.max_age = static_cast<int>(parse_int(value, key));
  else if (key == "w_iou") cfg.w_iou = parse_double(value, key);
  else if (key == "w_app") cfg.w_app = parse_double(value, key);
  else if (key == "max_cost") cfg.max_cost = parse_double(value, key);
  else if (key == "tau_split") cfg.tau_split = parse_double(value, key);
  else if (key == "claim_gate") cfg.claim_gate = parse_double(value, key);
  else if (key == "flexi_instances") cfg.flexi_instances = parse_bool(value, key);
  else if (key == "perturb_sigma_x") cfg.perturb_sigma_x = parse_double(value, key);
  else if (key == "perturb_sigma_y") cfg.perturb_sigma_y = parse_double(value, key);
  else if (key == "memory_enabled") cfg.memory_enabled = parse_bool(value, key);
  else if (key == "n_m") cfg.n_m = static_cast<int>(parse_int(value, key));
  else if (key == "K_r" || key == "k_r") cfg.k_r = static_cast<int>(parse_int(value, key));
  else if (key == "n_e") cfg.n_e = static_cast<int>(parse_int(value, key));
  else if (key == "theta_sim") cfg.theta_sim = parse_double(value, key);
  else if (key == "temperature") cfg.temperature = parse_double(value, key);
  else if (key == "lambda") cfg.lambda = parse_double(value, key);
  else if (key == "embed_dim") cfg.embed_dim = static_cast<int>(parse_int(value, key));
  else if (key == "dssm_enabled") cfg.dssm_enabled = parse_bool(value, key);
  else if (key == "param_file") cfg.param_file = value;
  else if (key == "cyclic_iou") cfg.cyclic_geometry = parse_bool(value, key);
  else if (key == "emit_lost") cfg.emit_lost = parse_bool(value, key);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(value, key));
  else throw ConfigError("unknown config key: " + key);
}

TrackerConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  TrackerConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    apply_config_kv(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

std::vector<std::pair<std::string, std::string>> config_to_kv(const TrackerConfig& cfg) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return std::string(buf);
  };
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("mode", to_string(cfg.mode));
  kv.emplace_back("tau_init", fmt(cfg.tau_init));
  kv.emplace_back("tau_update", fmt(cfg.tau_update));
  kv.emplace_back("max_age", std::to_string(cfg.max_age));
  kv.emplace_back("w_iou", fmt(cfg.w_iou));
  kv.emplace_back("w_app", fmt(cfg.w_app));
  kv.emplace_back("max_cost", fmt(cfg.max_cost));
  kv.emplace_back("tau_split", fmt(cfg.tau_split));
  kv.emplace_back("claim_gate", fmt(cfg.claim_gate));
  kv.emplace_back("flexi_instances", cfg.flexi_instances ? "1" : "0");
  kv.emplace_back("perturb_sigma_x", fmt(cfg.perturb_sigma_x));
  kv.emplace_back("perturb_sigma_y", fmt(cfg.perturb_sigma_y));
  kv.emplace_back("memory_enabled", cfg.memory_enabled ? "1" : "0");
  kv.emplace_back("n_m", std::to_string(cfg.n_m));
  kv.emplace_back("K_r", std::to_string(cfg.k_r));
  kv.emplace_back("n_e", std::to_string(cfg.n_e));
  kv.emplace_back("theta_sim", fmt(cfg.theta_sim));
  kv.emplace_back("temperature", fmt(cfg.temperature));
  kv.emplace_back("lambda", fmt(cfg.lambda));
  kv.emplace_back("embed_dim", std::to_string(cfg.embed_dim));
  kv.emplace_back("dssm_enabled", cfg.dssm_enabled ? "1" : "0");
  kv.emplace_back("param_file", cfg.param_file);
  kv.emplace_back("cyclic_iou", cfg.cyclic_geometry ? "1" : "0");
  kv.emplace_back("emit_lost", cfg.emit_lost ? "1" : "0");
  kv.emplace_back("seed", std::to_string(cfg.seed));
  return kv;
}

}  // namespace omni
