#pragma once

#include <cstdint>
#include <vector>

#include "tfi/rng.hpp"
#include "tfi/types.hpp"

namespace tfi {

/// Illumination statistics. When fluctuating, each frame gets a fresh
/// pseudothermal speckle field: i.i.d. exponential intensities (contrast 1)
/// on a coarse grid of coherence_cells-pixel cells, bilinearly upsampled.
struct IlluminationModel {
  double mean_intensity = 200.0;  // photons per pixel per frame
  uint32_t coherence_cells = 4;   // cell size in pixels
  bool fluctuating = true;
};

/// Per-frame geometric distortion: random whole-image translation
/// (tip/tilt jitter), Gaussian blur with per-frame width, and a
/// multiplicative gain fluctuation. All parameters zero = identity.
struct TurbulenceModel {
  double jitter_sigma = 2.0;  // px, std-dev of translation per axis
  double blur_sigma_lo = 0.5;  // px, per-frame blur width ~ U[lo, hi]
  double blur_sigma_hi = 2.5;
  double gain_sigma = 0.0;  // relative intensity fluctuation

  bool identity() const {
    return jitter_sigma == 0.0 && blur_sigma_lo == 0.0 &&
           blur_sigma_hi == 0.0 && gain_sigma == 0.0;
  }
};

/// Photon-counting sensor: quantum efficiency, optional Poisson shot
/// noise, optional Gaussian read noise, quantization to the bit depth.
struct SensorModel {
  double quantum_efficiency = 1.0;  // (0, 1]
  bool shot_noise = true;
  double read_noise_sigma = 0.0;  // counts
  uint8_t bit_depth = 16;         // 8 or 16
};

/// Where the distortion sits in the light path: before the object (on the
/// illumination), after it, or both.
enum class TurbulencePlacement { Pre, Post, Both };

struct SimModel {
  IlluminationModel illumination;
  TurbulenceModel turbulence;
  SensorModel sensor;
  TurbulencePlacement placement = TurbulencePlacement::Post;
  uint64_t seed = 1;
};

/// RNG stage ids; the stream for frame alpha and stage s is
/// (alpha << 8) | s, keyed by the model seed.
enum class SimStage : uint32_t {
  Illumination = 1,
  TurbulencePre = 2,
  TurbulencePost = 3,
  Sensor = 4,
};

Philox stage_rng(uint64_t seed, uint64_t frame_index, SimStage stage);

/// Coarse pre-upsampling speckle field, one exponential draw per cell
/// (row-major, channel-major). Exposed for statistical tests.
std::vector<double> speckle_grid(const IlluminationModel& model, uint32_t gw,
                                 uint32_t gh, Philox& rng);

/// Illumination field for one frame.
ScalarImage gen_illumination(const IlluminationModel& model, uint32_t width,
                             uint32_t height, uint8_t channels, Philox& rng);

/// Applies one frame's distortion draw: translate (bilinear, zero fill),
/// blur (separable Gaussian, zero fill), gain. Draw order is fixed:
/// dx, dy, blur sigma, gain.
ScalarImage apply_turbulence(const ScalarImage& img,
                             const TurbulenceModel& model, Philox& rng);

/// Converts an expected-photon image to integer counts.
Frame sense(const ScalarImage& expected, const SensorModel& model,
            Philox& rng);

/// Renders an m-frame acquisition of the scene. Deterministic for a fixed
/// seed; frame contents depend only on (seed, frame index), never on m or
/// the execution order, so a shorter render is a prefix of a longer one.
FrameStack render_stack(const Scene& scene, const SimModel& model,
                        uint32_t m);

}  // namespace tfi
