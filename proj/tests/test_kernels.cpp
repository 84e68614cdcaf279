#include <doctest.h>

#include <cstdlib>

#include "tfi/kernels.hpp"
#include "tfi/parallel.hpp"
#include "tfi/reconstruct.hpp"
#include "tfi/rng.hpp"
#include "tfi/testing.hpp"

using namespace tfi;

namespace {

bool images_equal(const ScalarImage& a, const ScalarImage& b) {
  return a.width == b.width && a.height == b.height &&
         a.channels == b.channels && a.values == b.values;
}

}  // namespace

TEST_CASE("scalar kernel is bit-identical to the naive reference") {
  Philox rng(100, 1);
  for (int t = 0; t < 60; ++t) {
    const uint8_t depth = t % 3 == 0 ? 16 : 8;
    const FrameStack s = random_stack(rng, 13, 11, 24, true, depth);
    for (const PairingMode mode : {PairingMode::AC, PairingMode::CC}) {
      if (mode == PairingMode::CC && s.m() < 2) continue;
      CHECK(images_equal(reference_g2(s, mode),
                         reconstruct_g2(s, mode, kernels::Backend::Scalar)));
    }
  }
}

TEST_CASE("avx2 kernel is bit-identical to the scalar kernel") {
  if (!kernels::avx2_available()) return;
  Philox rng(101, 1);
  for (int t = 0; t < 60; ++t) {
    const uint8_t depth = t % 2 ? 16 : 8;
    const FrameStack s = random_stack(rng, 17, 9, 20, true, depth);
    for (const PairingMode mode : {PairingMode::AC, PairingMode::CC}) {
      if (mode == PairingMode::CC && s.m() < 2) continue;
      CHECK(images_equal(reconstruct_g2(s, mode, kernels::Backend::Scalar),
                         reconstruct_g2(s, mode, kernels::Backend::Avx2)));
    }
  }
}

TEST_CASE("results do not depend on the worker count") {
  Philox rng(102, 1);
  const FrameStack s = random_stack(rng, 33, 29, 16);
  set_worker_count(1);
  const ScalarImage one = reconstruct_g2(s, PairingMode::AC);
  for (const size_t workers : {2, 4, 7}) {
    set_worker_count(workers);
    CHECK(images_equal(one, reconstruct_g2(s, PairingMode::AC)));
  }
  set_worker_count(0);
}

TEST_CASE("kernel selection") {
  CHECK(std::string(kernels::select(kernels::Backend::Scalar).name) ==
        "scalar");
  if (kernels::avx2_available()) {
    CHECK(std::string(kernels::select(kernels::Backend::Avx2).name) == "avx2");
    CHECK(std::string(kernels::select().name) == "avx2");
  } else {
    CHECK_THROWS_AS(kernels::select(kernels::Backend::Avx2), Error);
    CHECK(std::string(kernels::select().name) == "scalar");
  }
}

TEST_CASE("TFI_KERNEL env var forces the backend") {
  setenv("TFI_KERNEL", "scalar", 1);
  CHECK(std::string(kernels::select().name) == "scalar");
  setenv("TFI_KERNEL", "bogus", 1);
  CHECK_THROWS_AS(kernels::select(), Error);
  unsetenv("TFI_KERNEL");
}
