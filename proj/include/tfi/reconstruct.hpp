#pragma once

#include "tfi/kernels.hpp"
#include "tfi/types.hpp"

namespace tfi {

/// How a window's count is paired with its partner count.
///   AC: the window is paired with itself (works from a single frame).
///   CC: the window is paired with the next frame's count at the same
///       pixel; requires at least two frames.
enum class PairingMode { AC, CC };

/// A count's deviation from the window mean, split by sign. At most one
/// field is nonzero; d_pos >= 0, d_neg <= 0.
struct FluctuationPair {
  double d_pos = 0.0;
  double d_neg = 0.0;
};

/// The four absolute pair products of one window: same-sign products of
/// the deviations, and the cross terms formed against the mean baseline.
struct QuadTerms {
  double pp = 0.0;
  double mm = 0.0;
  double pm = 0.0;
  double mp = 0.0;
};

FluctuationPair classify(double n, double nbar) noexcept;
QuadTerms quad_terms(const FluctuationPair& a, const FluctuationPair& b,
                     double nbar) noexcept;

/// Per-pixel temporal mean of the stack (the long-exposure image a
/// conventional camera would record).
ScalarImage mean_image(const FrameStack& stack);

/// Fluctuation-correlation reconstruction. Optimized path: pixel-parallel,
/// SIMD kernels selected at runtime; bit-identical to reference_g2 for
/// every valid stack and any thread count.
ScalarImage reconstruct_g2(const FrameStack& stack, PairingMode mode,
                           kernels::Backend backend = kernels::Backend::Auto);

/// Naive reference implementation: straight per-pixel loops, sequential,
/// built from classify/quad_terms. Kept independent of the kernel path so
/// the two can check each other.
ScalarImage reference_g2(const FrameStack& stack, PairingMode mode);

/// Per-channel reconstruction of an RGB stack; channel order preserved.
ScalarImage reconstruct_color(const FrameStack& stack, PairingMode mode);

/// Affine min-max map of each channel to [0, 2^bit_depth - 1], rounded
/// half to even. A constant channel maps to 0.
Frame normalize_display(const ScalarImage& img, uint8_t bit_depth);

}  // namespace tfi
