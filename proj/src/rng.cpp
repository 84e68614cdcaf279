#include "tfi/rng.hpp"

#include <cmath>
#include <numbers>

namespace tfi {

namespace {

constexpr uint32_t kMult0 = 0xD2511F53u;
constexpr uint32_t kMult1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<uint32_t, 4>& c,
                       const std::array<uint32_t, 2>& k) noexcept {
  const uint64_t p0 = uint64_t(kMult0) * c[0];
  const uint64_t p1 = uint64_t(kMult1) * c[2];
  const uint32_t hi0 = uint32_t(p0 >> 32), lo0 = uint32_t(p0);
  const uint32_t hi1 = uint32_t(p1 >> 32), lo1 = uint32_t(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<uint32_t, 4> Philox::block(const std::array<uint32_t, 4>& counter,
                                      const std::array<uint32_t, 2>& key) noexcept {
  std::array<uint32_t, 4> c = counter;
  std::array<uint32_t, 2> k = key;
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k[0] += kWeyl0;
      k[1] += kWeyl1;
    }
    round_once(c, k);
  }
  return c;
}

Philox::Philox(uint64_t seed, uint64_t stream) noexcept
    : key_{uint32_t(seed), uint32_t(seed >> 32)}, stream_(stream) {}

void Philox::refill() noexcept {
  const std::array<uint32_t, 4> counter = {
      uint32_t(block_index_), uint32_t(block_index_ >> 32),
      uint32_t(stream_), uint32_t(stream_ >> 32)};
  buffer_ = block(counter, key_);
  ++block_index_;
  buffered_ = 4;
}

uint32_t Philox::next_u32() noexcept {
  if (buffered_ == 0) refill();
  return buffer_[4 - buffered_--];
}

uint64_t Philox::next_u64() noexcept {
  const uint64_t lo = next_u32();
  const uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double Philox::uniform() noexcept {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double Philox::uniform_pos() noexcept {
  return double((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Philox::normal() noexcept {
  if (have_cached_normal_) {
    have_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform_pos();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(t);
  have_cached_normal_ = true;
  return r * std::cos(t);
}

double Philox::exponential(double mean) noexcept {
  return -mean * std::log(uniform_pos());
}

uint32_t Philox::poisson(double lambda) noexcept {
  if (!(lambda > 0.0)) return 0;
  if (lambda < 10.0) {
    // Knuth: count uniforms until their product drops below e^-lambda.
    const double limit = std::exp(-lambda);
    uint32_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform_pos();
    } while (p > limit);
    return k - 1;
  }
  // Hormann (1993), transformed rejection with squeeze (PTRS).
  const double b = 0.931 + 2.53 * std::sqrt(lambda);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_lambda = std::log(lambda);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform_pos();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= v_r) return uint32_t(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_lambda - lambda - std::lgamma(k + 1.0))
      return uint32_t(k);
  }
}

uint64_t derive_seed(uint64_t seed, uint64_t salt) noexcept {
  const auto out = Philox::block(
      {uint32_t(salt), uint32_t(salt >> 32), 0x5EEDu, 0u},
      {uint32_t(seed), uint32_t(seed >> 32)});
  return (uint64_t(out[1]) << 32) | out[0];
}

}  // namespace tfi
