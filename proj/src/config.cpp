#include "tfi/config.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "tfi/scenes.hpp"
#include "tfi/stack_io.hpp"

namespace tfi {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(size_t line, const std::string& msg) {
  throw Error(Err::BadConfig,
              "config line " + std::to_string(line) + ": " + msg);
}

double parse_real(const std::string& v, size_t line) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) bad(line, "bad number '" + v + "'");
    return d;
  } catch (const std::logic_error&) {
    bad(line, "bad number '" + v + "'");
  }
}

uint64_t parse_uint(const std::string& v, size_t line) {
  try {
    size_t pos = 0;
    const unsigned long long u = std::stoull(v, &pos);
    if (pos != v.size()) bad(line, "bad integer '" + v + "'");
    return u;
  } catch (const std::logic_error&) {
    bad(line, "bad integer '" + v + "'");
  }
}

bool parse_bool(const std::string& v, size_t line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad(line, "bad boolean '" + v + "'");
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string raw;
  size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) bad(lineno, "empty key");
    if (val.empty()) bad(lineno, "empty value for '" + key + "'");

    if (key == "scene") {
      cfg.scene = val;
    } else if (key == "scene_size") {
      cfg.scene_size = uint32_t(parse_uint(val, lineno));
    } else if (key == "channels") {
      const uint64_t c = parse_uint(val, lineno);
      if (c != 1 && c != 3) bad(lineno, "channels must be 1 or 3");
      cfg.channels = uint8_t(c);
    } else if (key == "illum_mean") {
      cfg.model.illumination.mean_intensity = parse_real(val, lineno);
    } else if (key == "illum_cells") {
      cfg.model.illumination.coherence_cells =
          uint32_t(parse_uint(val, lineno));
    } else if (key == "illum_fluctuating") {
      cfg.model.illumination.fluctuating = parse_bool(val, lineno);
    } else if (key == "turb_jitter_sigma") {
      cfg.model.turbulence.jitter_sigma = parse_real(val, lineno);
    } else if (key == "turb_blur_lo") {
      cfg.model.turbulence.blur_sigma_lo = parse_real(val, lineno);
    } else if (key == "turb_blur_hi") {
      cfg.model.turbulence.blur_sigma_hi = parse_real(val, lineno);
    } else if (key == "turb_gain_sigma") {
      cfg.model.turbulence.gain_sigma = parse_real(val, lineno);
    } else if (key == "turb_placement") {
      if (val == "pre")
        cfg.model.placement = TurbulencePlacement::Pre;
      else if (val == "post")
        cfg.model.placement = TurbulencePlacement::Post;
      else if (val == "both")
        cfg.model.placement = TurbulencePlacement::Both;
      else
        bad(lineno, "turb_placement must be pre, post or both");
    } else if (key == "sensor_qe") {
      cfg.model.sensor.quantum_efficiency = parse_real(val, lineno);
    } else if (key == "sensor_shot_noise") {
      cfg.model.sensor.shot_noise = parse_bool(val, lineno);
    } else if (key == "sensor_read_noise") {
      cfg.model.sensor.read_noise_sigma = parse_real(val, lineno);
    } else if (key == "sensor_bit_depth") {
      const uint64_t d = parse_uint(val, lineno);
      if (d != 8 && d != 16) bad(lineno, "sensor_bit_depth must be 8 or 16");
      cfg.model.sensor.bit_depth = uint8_t(d);
    } else if (key == "seed") {
      cfg.model.seed = parse_uint(val, lineno);
    } else if (key == "m") {
      const uint64_t m = parse_uint(val, lineno);
      if (m < 1) bad(lineno, "m must be >= 1");
      cfg.m = uint32_t(m);
    } else if (key == "mode") {
      if (val == "ac")
        cfg.mode = PairingMode::AC;
      else if (val == "cc")
        cfg.mode = PairingMode::CC;
      else
        bad(lineno, "mode must be ac or cc");
    } else if (key == "out_stack") {
      cfg.out_stack = val;
    } else if (key == "out_image") {
      cfg.out_image = val;
    } else {
      bad(lineno, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Err::IoError, "cannot open config file " + path);
  return parse_config(in);
}

Scene make_scene(const RunConfig& cfg) {
  if (is_builtin_scene(cfg.scene))
    return builtin_scene(cfg.scene, cfg.scene_size, cfg.channels);
  return scene_from_image(read_image(cfg.scene));
}

}  // namespace tfi
