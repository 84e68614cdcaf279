#pragma once

#include <iosfwd>
#include <string>

#include "tfi/reconstruct.hpp"
#include "tfi/simulate.hpp"

namespace tfi {

/// Run configuration, parsed from flat "key = value" text (one pair per
/// line, '#' starts a comment). Unknown keys are rejected; missing keys
/// keep the defaults below.
struct RunConfig {
  std::string scene = "letter";  // builtin name (letter|bars[:N]|checker[:N]) or image path
  uint32_t scene_size = 64;      // builtin scenes only
  uint8_t channels = 1;          // builtin scenes only, 1 or 3
  SimModel model;
  PairingMode mode = PairingMode::AC;
  uint32_t m = 100;
  std::string out_stack;
  std::string out_image;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Builds the configured scene (builtin or loaded from an image file).
Scene make_scene(const RunConfig& cfg);

}  // namespace tfi
