#pragma once

#include <array>
#include <cstdint>

namespace tfi {

/// Counter-based random number generator, Philox4x32-10 (Salmon et al.,
/// "Parallel random numbers: as easy as 1, 2, 3", SC'11).
///
/// The 64-bit key is the master seed; the high 64 bits of the 128-bit
/// counter carry the stream id, the low 64 bits the block index within the
/// stream. Every (seed, stream) pair is an independent sequence, so frames
/// can be generated in any order (or in parallel) with identical results.
///
/// Simulation streams are derived as  stream = (frame_index << 8) | stage
/// (see simulate.cpp for the stage numbering).
class Philox {
public:
  explicit Philox(uint64_t seed, uint64_t stream = 0) noexcept;

  /// Raw 4x32-bit block for a given counter; stateless, used for
  /// known-answer tests and seed derivation.
  static std::array<uint32_t, 4> block(const std::array<uint32_t, 4>& counter,
                                       const std::array<uint32_t, 2>& key) noexcept;

  uint32_t next_u32() noexcept;
  uint64_t next_u64() noexcept;

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() noexcept;
  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_pos() noexcept;
  /// Standard normal via Box-Muller (second value cached).
  double normal() noexcept;
  /// Exponential with the given mean.
  double exponential(double mean) noexcept;
  /// Poisson draw. Knuth's product method below lambda = 10, Hormann's
  /// PTRS transformed rejection above.
  uint32_t poisson(double lambda) noexcept;

private:
  void refill() noexcept;

  std::array<uint32_t, 2> key_;
  uint64_t stream_;
  uint64_t block_index_ = 0;
  std::array<uint32_t, 4> buffer_{};
  int buffered_ = 0;
  double cached_normal_ = 0.0;
  bool have_cached_normal_ = false;
};

/// Deterministically mixes a salt into a seed (one Philox block). Used to
/// give independent sub-experiments their own master seeds.
uint64_t derive_seed(uint64_t seed, uint64_t salt) noexcept;

}  // namespace tfi
