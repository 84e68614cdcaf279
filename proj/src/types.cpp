#include "tfi/types.hpp"

#include <string>

namespace tfi {

std::optional<Error> validate_stack(const FrameStack& stack) {
  if (stack.frames.empty())
    return Error(Err::EmptyStack, "stack has no frames");

  const Frame& first = stack.frames[0];
  for (size_t i = 0; i < stack.frames.size(); ++i) {
    const Frame& f = stack.frames[i];
    const std::string tag = "frame " + std::to_string(i + 1);
    if (f.width < 1 || f.height < 1)
      return Error(Err::BadDimensions, tag + " has zero width or height");
    if (f.channels != 1 && f.channels != 3)
      return Error(Err::UnsupportedFormat,
                   tag + " has unsupported channel count " +
                       std::to_string(f.channels));
    if (f.bit_depth != 8 && f.bit_depth != 16)
      return Error(Err::UnsupportedBitDepth,
                   tag + " has unsupported bit depth " +
                       std::to_string(f.bit_depth));
    if (f.width != first.width || f.height != first.height ||
        f.channels != first.channels || f.bit_depth != first.bit_depth)
      return Error(Err::ShapeMismatch, tag + " does not match frame 1 shape");
    if (f.counts.size() != f.samples())
      return Error(Err::ShapeMismatch,
                   tag + " count array length " +
                       std::to_string(f.counts.size()) +
                       " does not match declared shape");
    const uint16_t maxc = f.max_count();
    for (size_t p = 0; p < f.counts.size(); ++p) {
      if (f.counts[p] > maxc)
        return Error(Err::CountOutOfRange,
                     tag + " sample " + std::to_string(p) + " value " +
                         std::to_string(f.counts[p]) + " exceeds " +
                         std::to_string(maxc));
    }
  }
  return std::nullopt;
}

void require_valid(const FrameStack& stack) {
  if (auto err = validate_stack(stack)) throw *err;
}

ScalarImage frame_to_scalar(const Frame& frame) {
  ScalarImage img;
  img.width = frame.width;
  img.height = frame.height;
  img.channels = frame.channels;
  img.values.assign(frame.counts.begin(), frame.counts.end());
  return img;
}

}  // namespace tfi
