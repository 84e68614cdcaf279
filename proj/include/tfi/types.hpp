#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfi {

enum class Err {
  EmptyStack,
  ShapeMismatch,
  CountOutOfRange,
  CcNeedsTwoFrames,
  NotColor,
  BadMagic,
  TruncatedPayload,
  UnsupportedBitDepth,
  UnsupportedFormat,
  NoFrames,
  BadDimensions,
  BadConfig,
  BadArgument,
  IoError,
};

class Error : public std::runtime_error {
public:
  Error(Err code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Err code() const noexcept { return code_; }

private:
  Err code_;
};

/// One camera exposure: a grid of integer photon counts.
/// Layout is row-major with interleaved channels:
///   counts[(y * width + x) * channels + c]
struct Frame {
  uint32_t width = 0;
  uint32_t height = 0;
  uint8_t channels = 1;   // 1 (grayscale) or 3 (RGB)
  uint8_t bit_depth = 8;  // 8 or 16
  std::vector<uint16_t> counts;

  size_t samples() const { return size_t(width) * height * channels; }
  uint16_t max_count() const { return bit_depth == 8 ? 255 : 65535; }
  uint16_t at(uint32_t x, uint32_t y, uint8_t c = 0) const {
    return counts[(size_t(y) * width + x) * channels + c];
  }
};

/// Ordered sequence of equally shaped frames; one frame per short
/// acquisition window.
struct FrameStack {
  std::vector<Frame> frames;

  size_t m() const { return frames.size(); }
  uint32_t width() const { return frames.empty() ? 0 : frames[0].width; }
  uint32_t height() const { return frames.empty() ? 0 : frames[0].height; }
  uint8_t channels() const { return frames.empty() ? 1 : frames[0].channels; }
  uint8_t bit_depth() const { return frames.empty() ? 8 : frames[0].bit_depth; }
  size_t samples_per_frame() const {
    return frames.empty() ? 0 : frames[0].samples();
  }
};

/// Real-valued image (mean images, correlation images, intermediate
/// fields). Same layout as Frame.
struct ScalarImage {
  uint32_t width = 0;
  uint32_t height = 0;
  uint8_t channels = 1;
  std::vector<double> values;

  size_t samples() const { return size_t(width) * height * channels; }
  double at(uint32_t x, uint32_t y, uint8_t c = 0) const {
    return values[(size_t(y) * width + x) * channels + c];
  }
  double& at(uint32_t x, uint32_t y, uint8_t c = 0) {
    return values[(size_t(y) * width + x) * channels + c];
  }
};

/// Ground-truth reflectance map, values in [0, 1].
struct Scene {
  uint32_t width = 0;
  uint32_t height = 0;
  uint8_t channels = 1;
  std::vector<double> reflectance;

  size_t samples() const { return size_t(width) * height * channels; }
};

/// Checks every FrameStack invariant; returns the first violation, or
/// nullopt when the stack is valid. Frame indices in messages are 1-based.
std::optional<Error> validate_stack(const FrameStack& stack);

/// Throwing form of validate_stack.
void require_valid(const FrameStack& stack);

/// Elementwise copy of counts to real values; shape preserved.
ScalarImage frame_to_scalar(const Frame& frame);

}  // namespace tfi
