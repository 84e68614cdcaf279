#pragma once

#include "tfi/rng.hpp"
#include "tfi/types.hpp"

namespace tfi {

/// Randomized stack construction shared by the self-check command and the
/// test suites. Dimensions are uniform in [1, max]; counts are uniform
/// over the full range of the bit depth.
inline FrameStack random_stack(Philox& rng, uint32_t max_w, uint32_t max_h,
                               uint32_t max_m, bool allow_color = true,
                               uint8_t bit_depth = 8) {
  FrameStack stack;
  const uint32_t w = 1 + rng.next_u32() % max_w;
  const uint32_t h = 1 + rng.next_u32() % max_h;
  const uint32_t m = 1 + rng.next_u32() % max_m;
  const uint8_t channels =
      (allow_color && rng.next_u32() % 4 == 0) ? uint8_t(3) : uint8_t(1);
  const uint16_t maxc = bit_depth == 8 ? 255 : 65535;
  stack.frames.resize(m);
  for (Frame& f : stack.frames) {
    f.width = w;
    f.height = h;
    f.channels = channels;
    f.bit_depth = bit_depth;
    f.counts.resize(f.samples());
    for (auto& c : f.counts) c = uint16_t(rng.next_u32() % (maxc + 1u));
  }
  return stack;
}

}  // namespace tfi
