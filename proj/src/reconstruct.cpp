#include "tfi/reconstruct.hpp"

#include <cfenv>
#include <cmath>
#include <limits>
#include <vector>

#include "tfi/parallel.hpp"

namespace tfi {

namespace {

void check_stack(const FrameStack& stack, PairingMode mode) {
  if (stack.frames.empty()) throw Error(Err::EmptyStack, "stack has no frames");
  if (mode == PairingMode::CC && stack.m() < 2)
    throw Error(Err::CcNeedsTwoFrames,
                "crosscorrelation pairing needs at least 2 frames");
  const Frame& first = stack.frames[0];
  for (size_t i = 1; i < stack.frames.size(); ++i) {
    const Frame& f = stack.frames[i];
    if (f.width != first.width || f.height != first.height ||
        f.channels != first.channels)
      throw Error(Err::ShapeMismatch,
                  "frame " + std::to_string(i + 1) + " does not match frame 1");
  }
}

std::vector<const uint16_t*> frame_pointers(const FrameStack& stack) {
  std::vector<const uint16_t*> ptrs;
  ptrs.reserve(stack.m());
  for (const Frame& f : stack.frames) ptrs.push_back(f.counts.data());
  return ptrs;
}

ScalarImage like_stack(const FrameStack& stack) {
  ScalarImage img;
  img.width = stack.width();
  img.height = stack.height();
  img.channels = stack.channels();
  img.values.resize(stack.samples_per_frame());
  return img;
}

}  // namespace

FluctuationPair classify(double n, double nbar) noexcept {
  const double d = n - nbar;
  return {d > 0.0 ? d : 0.0, d < 0.0 ? d : 0.0};
}

QuadTerms quad_terms(const FluctuationPair& a, const FluctuationPair& b,
                     double nbar) noexcept {
  QuadTerms q;
  q.pp = std::fabs(a.d_pos * b.d_pos);
  q.mm = std::fabs(a.d_neg * b.d_neg);
  q.pm = std::fabs((nbar - a.d_pos) * (nbar - b.d_neg));
  q.mp = std::fabs((nbar - a.d_neg) * (nbar - b.d_pos));
  return q;
}

ScalarImage mean_image(const FrameStack& stack) {
  check_stack(stack, PairingMode::AC);
  const auto ptrs = frame_pointers(stack);
  ScalarImage out = like_stack(stack);
  const auto k = kernels::select();
  parallel_for(out.values.size(), [&](size_t begin, size_t end) {
    k.mean(ptrs.data(), uint32_t(stack.m()), begin, end, out.values.data());
  });
  return out;
}

ScalarImage reconstruct_g2(const FrameStack& stack, PairingMode mode,
                           kernels::Backend backend) {
  check_stack(stack, mode);
  const auto ptrs = frame_pointers(stack);
  ScalarImage out = like_stack(stack);
  const bool cross = mode == PairingMode::CC;
  const auto k = kernels::select(backend);
  parallel_for(out.values.size(), [&](size_t begin, size_t end) {
    k.g2(ptrs.data(), uint32_t(stack.m()), begin, end, cross,
         out.values.data());
  });
  return out;
}

ScalarImage reference_g2(const FrameStack& stack, PairingMode mode) {
  check_stack(stack, mode);
  ScalarImage out = like_stack(stack);
  const size_t n = out.values.size();
  const uint32_t m = uint32_t(stack.m());
  const bool cross = mode == PairingMode::CC;
  const uint32_t pairs = cross ? m - 1 : m;

  for (size_t p = 0; p < n; ++p) {
    double sum = 0.0;
    for (uint32_t a = 0; a < m; ++a)
      sum += double(stack.frames[a].counts[p]);
    const double nbar = sum / double(m);

    double acc = 0.0;
    for (uint32_t a = 0; a < pairs; ++a) {
      const FluctuationPair fa =
          classify(double(stack.frames[a].counts[p]), nbar);
      const FluctuationPair fb =
          cross ? classify(double(stack.frames[a + 1].counts[p]), nbar) : fa;
      const QuadTerms q = quad_terms(fa, fb, nbar);
      acc += (q.pp + q.mm) + (q.pm + q.mp);
    }
    out.values[p] = acc / double(pairs);
  }
  return out;
}

ScalarImage reconstruct_color(const FrameStack& stack, PairingMode mode) {
  if (stack.channels() != 3)
    throw Error(Err::NotColor, "color reconstruction needs a 3-channel stack");
  // Interleaved channels are independent samples to the kernel, so the
  // per-channel results fall out of the same pass.
  return reconstruct_g2(stack, mode);
}

Frame normalize_display(const ScalarImage& img, uint8_t bit_depth) {
  if (bit_depth != 8 && bit_depth != 16)
    throw Error(Err::UnsupportedBitDepth,
                "display bit depth must be 8 or 16");
  for (double v : img.values)
    if (!std::isfinite(v))
      throw Error(Err::BadArgument, "image contains non-finite values");

  Frame out;
  out.width = img.width;
  out.height = img.height;
  out.channels = img.channels;
  out.bit_depth = bit_depth;
  out.counts.assign(img.samples(), 0);

  const double maxc = double(out.max_count());
  const size_t ch = img.channels;
  for (size_t c = 0; c < ch; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (size_t p = c; p < img.values.size(); p += ch) {
      lo = std::min(lo, img.values[p]);
      hi = std::max(hi, img.values[p]);
    }
    if (hi <= lo) continue;  // constant channel stays 0
    const double scale = maxc / (hi - lo);
    for (size_t p = c; p < img.values.size(); p += ch) {
      const double t = (img.values[p] - lo) * scale;
      out.counts[p] = uint16_t(std::nearbyint(t));  // round half to even
    }
  }
  return out;
}

}  // namespace tfi
