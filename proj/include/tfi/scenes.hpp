#pragma once

#include <string>

#include "tfi/types.hpp"

namespace tfi {

/// True if `name` names a builtin test scene ("letter", "bars", "checker",
/// optionally with a ":N" detail suffix, e.g. "bars:8").
bool is_builtin_scene(const std::string& name);

/// Builds a builtin scene at the requested size.
///   letter   - soft-edged letter Q from an embedded grayscale bitmap
///   bars:N   - vertical stripes, period N px (default 16), 50% duty
///   checker:N - checkerboard, N px cells (default 8)
/// channels=3 tints the pattern per channel so the planes differ.
Scene builtin_scene(const std::string& name, uint32_t size, uint8_t channels);

/// Reflectance from an image file's counts: value / max count.
Scene scene_from_image(const Frame& frame);

}  // namespace tfi
