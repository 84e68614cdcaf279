#include "tfi/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace tfi {

namespace {

// 64x64 grayscale Q glyph, 36 intensity levels (0-9, A-Z).
constexpr uint32_t kLetterSize = 64;
constexpr const char* kLetterBitmap[kLetterSize] = {
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000024566542000000000000000000000000000000",
    "00000000000000000000000158ACDEEDCA851000000000000000000000000000",
    "000000000000000000000048CFHJLLLLJHFC8400000000000000000000000000",
    "0000000000000000000016AFJMPRSTTSRPMJFA61000000000000000000000000",
    "000000000000000000016CHLPTWYZZZZYWTPLHC6100000000000000000000000",
    "00000000000000000006CHNSWZZWUTTUWZZWSNHC600000000000000000000000",
    "0000000000000000004AHNSYZVRPNMMNPRVZYSNHA40000000000000000000000",
    "0000000000000000018FLSYZTPKHFEEFHKPTZYSLF81000000000000000000000",
    "000000000000000005CJPWZTOIEA7667AEIOTZWPJC5000000000000000000000",
    "000000000000000008FMTZVPID73000037DIPVZTMF8000000000000000000000",
    "00000000000000002AHPWZRKE7200000027EKRZWPHA200000000000000000000",
    "00000000000000004CJRYWPHA3000000003AHPWYRJC400000000000000000000",
    "00000000000000005DLSZUNF700000000007FNUZSLD500000000000000000000",
    "00000000000000006ELTZTME600000000006EMTZTLE600000000000000000000",
    "00000000000000006ELTZTME600000000006EMTZTLE600000000000000000000",
    "00000000000000005DLSZUNF700000000007FNUZSLD500000000000000000000",
    "00000000000000004CJRYWPHA3000000003AHPWYRJC400000000000000000000",
    "00000000000000002AHPWZRKE7200000027LKRZWPHA200000000000000000000",
    "000000000000000008FMTZVPID73000037ZTPVZTMF8000000000000000000000",
    "000000000000000005CJPWZTOIEA7667ALTZTZWPJC5000000000000000000000",
    "0000000000000000018FLSYZTPKHFEEFHKPTZYSLF81000000000000000000000",
    "0000000000000000004AHNSYZVRPNMMNPRVZYZTLE60000000000000000000000",
    "00000000000000000006CHNSWZZWUTTUWZZWSTZTLE6000000000000000000000",
    "000000000000000000016CHLPTWYZZZZYWTPLLTZTLE600000000000000000000",
    "0000000000000000000016AFJMPRSTTSRPMJFELTZTLE60000000000000000000",
    "000000000000000000000048CFHJLLLLJHFC86ELTZTLE6000000000000000000",
    "00000000000000000000000158ACDEEDCA85106ELTZTLE600000000000000000",
    "0000000000000000000000000024566542000006ELTZTLE60000000000000000",
    "00000000000000000000000000000000000000006ELTZTLE6000000000000000",
    "000000000000000000000000000000000000000006ELTZTL0000000000000000",
    "0000000000000000000000000000000000000000006ELTZ00000000000000000",
    "00000000000000000000000000000000000000000006EL000000000000000000",
    "0000000000000000000000000000000000000000000060000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
    "0000000000000000000000000000000000000000000000000000000000000000",
};

// Per-channel tints for 3-channel builtins; keeps the planes distinct.
constexpr double kTint[3] = {1.0, 0.72, 0.45};

double glyph_level(char c) {
  const int v = (c >= '0' && c <= '9') ? c - '0' : c - 'A' + 10;
  return double(v) / 35.0;
}

double sample_glyph(double x, double y) {
  // bilinear over the embedded bitmap, clamped
  const auto texel = [](int ix, int iy) {
    ix = std::clamp(ix, 0, int(kLetterSize) - 1);
    iy = std::clamp(iy, 0, int(kLetterSize) - 1);
    return glyph_level(kLetterBitmap[iy][ix]);
  };
  const int x0 = int(std::floor(x)), y0 = int(std::floor(y));
  const double fx = x - std::floor(x), fy = y - std::floor(y);
  return (1.0 - fy) * ((1.0 - fx) * texel(x0, y0) + fx * texel(x0 + 1, y0)) +
         fy * ((1.0 - fx) * texel(x0, y0 + 1) + fx * texel(x0 + 1, y0 + 1));
}

struct SceneSpec {
  std::string kind;
  uint32_t detail = 0;
};

bool parse_spec(const std::string& name, SceneSpec& spec) {
  const auto colon = name.find(':');
  spec.kind = name.substr(0, colon);
  spec.detail = 0;
  if (colon != std::string::npos) {
    const std::string arg = name.substr(colon + 1);
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos)
      return false;
    spec.detail = uint32_t(std::stoul(arg));
    if (spec.detail == 0) return false;
  }
  return spec.kind == "letter" || spec.kind == "bars" || spec.kind == "checker";
}

}  // namespace

bool is_builtin_scene(const std::string& name) {
  SceneSpec spec;
  return parse_spec(name, spec);
}

Scene builtin_scene(const std::string& name, uint32_t size, uint8_t channels) {
  SceneSpec spec;
  if (!parse_spec(name, spec))
    throw Error(Err::BadArgument, "unknown builtin scene '" + name + "'");
  if (size < 8) throw Error(Err::BadDimensions, "scene size must be >= 8");
  if (channels != 1 && channels != 3)
    throw Error(Err::UnsupportedFormat, "scene channels must be 1 or 3");

  Scene scene;
  scene.width = scene.height = size;
  scene.channels = channels;
  scene.reflectance.resize(scene.samples());

  for (uint32_t y = 0; y < size; ++y) {
    for (uint32_t x = 0; x < size; ++x) {
      double v = 0.0;
      if (spec.kind == "letter") {
        if (size == kLetterSize) {
          v = glyph_level(kLetterBitmap[y][x]);
        } else {
          const double scale = double(kLetterSize) / double(size);
          v = sample_glyph((double(x) + 0.5) * scale - 0.5,
                           (double(y) + 0.5) * scale - 0.5);
        }
      } else if (spec.kind == "bars") {
        const uint32_t period = spec.detail ? spec.detail : 16;
        v = (x % period) < (period + 1) / 2 ? 1.0 : 0.0;
      } else {  // checker
        const uint32_t cell = spec.detail ? spec.detail : 8;
        v = ((x / cell + y / cell) % 2 == 0) ? 1.0 : 0.0;
      }
      for (uint8_t c = 0; c < channels; ++c)
        scene.reflectance[(size_t(y) * size + x) * channels + c] =
            channels == 3 ? v * kTint[c] : v;
    }
  }
  return scene;
}

Scene scene_from_image(const Frame& frame) {
  if (frame.width < 1 || frame.height < 1 ||
      frame.counts.size() != frame.samples())
    throw Error(Err::BadDimensions, "scene image has inconsistent dimensions");
  Scene scene;
  scene.width = frame.width;
  scene.height = frame.height;
  scene.channels = frame.channels;
  scene.reflectance.resize(frame.counts.size());
  const double maxc = double(frame.max_count());
  for (size_t p = 0; p < frame.counts.size(); ++p)
    scene.reflectance[p] = double(frame.counts[p]) / maxc;
  return scene;
}

}  // namespace tfi
