#include "tfi/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tfi/parallel.hpp"

namespace tfi {

namespace {

void check_model(const SimModel& model) {
  const auto& il = model.illumination;
  const auto& tb = model.turbulence;
  const auto& sn = model.sensor;
  if (!(il.mean_intensity > 0.0))
    throw Error(Err::BadArgument, "illumination mean must be positive");
  if (il.coherence_cells < 1)
    throw Error(Err::BadArgument, "coherence cell size must be >= 1");
  if (tb.jitter_sigma < 0.0 || tb.gain_sigma < 0.0 || tb.blur_sigma_lo < 0.0 ||
      tb.blur_sigma_lo > tb.blur_sigma_hi)
    throw Error(Err::BadArgument, "invalid turbulence parameters");
  if (!(sn.quantum_efficiency > 0.0) || sn.quantum_efficiency > 1.0)
    throw Error(Err::BadArgument, "quantum efficiency must be in (0, 1]");
  if (sn.read_noise_sigma < 0.0)
    throw Error(Err::BadArgument, "read noise must be >= 0");
  if (sn.bit_depth != 8 && sn.bit_depth != 16)
    throw Error(Err::UnsupportedBitDepth, "sensor bit depth must be 8 or 16");
}

ScalarImage translate_bilinear(const ScalarImage& img, double dx, double dy) {
  ScalarImage out;
  out.width = img.width;
  out.height = img.height;
  out.channels = img.channels;
  out.values.assign(img.values.size(), 0.0);

  const int w = int(img.width), h = int(img.height), ch = img.channels;
  for (int y = 0; y < h; ++y) {
    const double sy = double(y) - dy;
    const int y0 = int(std::floor(sy));
    const double fy = sy - double(y0);
    for (int x = 0; x < w; ++x) {
      const double sx = double(x) - dx;
      const int x0 = int(std::floor(sx));
      const double fx = sx - double(x0);
      for (int c = 0; c < ch; ++c) {
        auto tap = [&](int yy, int xx) -> double {
          if (xx < 0 || xx >= w || yy < 0 || yy >= h) return 0.0;
          return img.values[(size_t(yy) * w + xx) * ch + c];
        };
        const double v = (1.0 - fy) * ((1.0 - fx) * tap(y0, x0) +
                                       fx * tap(y0, x0 + 1)) +
                         fy * ((1.0 - fx) * tap(y0 + 1, x0) +
                               fx * tap(y0 + 1, x0 + 1));
        out.values[(size_t(y) * w + x) * ch + c] = v;
      }
    }
  }
  return out;
}

ScalarImage gaussian_blur(const ScalarImage& img, double sigma) {
  const int radius = std::max(1, int(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(size_t(radius) * 2 + 1);
  double wsum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-0.5 * double(i) * double(i) / (sigma * sigma));
    kernel[size_t(i + radius)] = w;
    wsum += w;
  }
  for (double& w : kernel) w /= wsum;

  const int w = int(img.width), h = int(img.height), ch = img.channels;
  ScalarImage tmp = img;
  // horizontal, zero fill
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          const int xx = x + i;
          if (xx < 0 || xx >= w) continue;
          acc += kernel[size_t(i + radius)] *
                 img.values[(size_t(y) * w + xx) * ch + c];
        }
        tmp.values[(size_t(y) * w + x) * ch + c] = acc;
      }
  // vertical
  ScalarImage out = img;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          const int yy = y + i;
          if (yy < 0 || yy >= h) continue;
          acc += kernel[size_t(i + radius)] *
                 tmp.values[(size_t(yy) * w + x) * ch + c];
        }
        out.values[(size_t(y) * w + x) * ch + c] = acc;
      }
  return out;
}

}  // namespace

Philox stage_rng(uint64_t seed, uint64_t frame_index, SimStage stage) {
  return Philox(seed, (frame_index << 8) | uint64_t(stage));
}

std::vector<double> speckle_grid(const IlluminationModel& model, uint32_t gw,
                                 uint32_t gh, Philox& rng) {
  std::vector<double> grid(size_t(gw) * gh);
  for (double& v : grid) v = rng.exponential(model.mean_intensity);
  return grid;
}

ScalarImage gen_illumination(const IlluminationModel& model, uint32_t width,
                             uint32_t height, uint8_t channels, Philox& rng) {
  ScalarImage out;
  out.width = width;
  out.height = height;
  out.channels = channels;
  out.values.assign(size_t(width) * height * channels, model.mean_intensity);
  if (!model.fluctuating) return out;

  const uint32_t cells = model.coherence_cells;
  const uint32_t gw = (width + cells - 1) / cells;
  const uint32_t gh = (height + cells - 1) / cells;
  // Speckle decorrelates across color channels; draw one grid per channel.
  for (uint8_t c = 0; c < channels; ++c) {
    const auto grid = speckle_grid(model, gw, gh, rng);
    if (cells == 1) {
      for (size_t y = 0; y < height; ++y)
        for (size_t x = 0; x < width; ++x)
          out.values[(y * width + x) * channels + c] = grid[y * gw + x];
      continue;
    }
    // Bilinear between cell centers, clamped at the borders.
    const double half = 0.5 * double(cells - 1);
    for (uint32_t y = 0; y < height; ++y) {
      const double gy = (double(y) - half) / double(cells);
      const int y0 = std::clamp(int(std::floor(gy)), 0, int(gh) - 1);
      const int y1 = std::min(y0 + 1, int(gh) - 1);
      const double fy = std::clamp(gy - std::floor(gy), 0.0, 1.0);
      for (uint32_t x = 0; x < width; ++x) {
        const double gx = (double(x) - half) / double(cells);
        const int x0 = std::clamp(int(std::floor(gx)), 0, int(gw) - 1);
        const int x1 = std::min(x0 + 1, int(gw) - 1);
        const double fx = std::clamp(gx - std::floor(gx), 0.0, 1.0);
        const double v =
            (1.0 - fy) * ((1.0 - fx) * grid[size_t(y0) * gw + x0] +
                          fx * grid[size_t(y0) * gw + x1]) +
            fy * ((1.0 - fx) * grid[size_t(y1) * gw + x0] +
                  fx * grid[size_t(y1) * gw + x1]);
        out.values[(size_t(y) * width + x) * channels + c] = v;
      }
    }
  }
  return out;
}

ScalarImage apply_turbulence(const ScalarImage& img,
                             const TurbulenceModel& model, Philox& rng) {
  // Fixed draw order keeps a frame's distortion independent of which
  // effects are enabled elsewhere in the model.
  const double dx = rng.normal() * model.jitter_sigma;
  const double dy = rng.normal() * model.jitter_sigma;
  const double blur_sigma =
      model.blur_sigma_lo +
      (model.blur_sigma_hi - model.blur_sigma_lo) * rng.uniform();
  const double gain = std::max(0.0, 1.0 + rng.normal() * model.gain_sigma);

  if (model.identity()) return img;

  ScalarImage out = img;
  if (model.jitter_sigma > 0.0) out = translate_bilinear(out, dx, dy);
  if (blur_sigma > 0.0) out = gaussian_blur(out, blur_sigma);
  if (model.gain_sigma > 0.0)
    for (double& v : out.values) v *= gain;
  return out;
}

Frame sense(const ScalarImage& expected, const SensorModel& model,
            Philox& rng) {
  Frame out;
  out.width = expected.width;
  out.height = expected.height;
  out.channels = expected.channels;
  out.bit_depth = model.bit_depth;
  out.counts.resize(expected.samples());

  const int64_t maxc = out.max_count();
  for (size_t p = 0; p < expected.values.size(); ++p) {
    const double lambda = model.quantum_efficiency * expected.values[p];
    int64_t count = model.shot_noise ? int64_t(rng.poisson(lambda))
                                     : std::llround(lambda);
    if (model.read_noise_sigma > 0.0)
      count += std::llround(rng.normal() * model.read_noise_sigma);
    out.counts[p] = uint16_t(std::clamp<int64_t>(count, 0, maxc));
  }
  return out;
}

FrameStack render_stack(const Scene& scene, const SimModel& model,
                        uint32_t m) {
  check_model(model);
  if (m < 1) throw Error(Err::EmptyStack, "measurement count must be >= 1");
  if (scene.width < 1 || scene.height < 1 ||
      scene.reflectance.size() != scene.samples())
    throw Error(Err::BadDimensions, "scene has inconsistent dimensions");
  for (double r : scene.reflectance)
    if (!(r >= 0.0 && r <= 1.0))
      throw Error(Err::BadArgument, "scene reflectance outside [0, 1]");

  FrameStack stack;
  stack.frames.resize(m);
  const bool pre = model.placement != TurbulencePlacement::Post;
  const bool post = model.placement != TurbulencePlacement::Pre;

  parallel_for(m, [&](size_t begin, size_t end) {
    for (size_t alpha = begin; alpha < end; ++alpha) {
      Philox rng_il = stage_rng(model.seed, alpha, SimStage::Illumination);
      ScalarImage field = gen_illumination(
          model.illumination, scene.width, scene.height, scene.channels,
          rng_il);
      if (pre) {
        Philox rng_t = stage_rng(model.seed, alpha, SimStage::TurbulencePre);
        field = apply_turbulence(field, model.turbulence, rng_t);
      }
      for (size_t p = 0; p < field.values.size(); ++p)
        field.values[p] *= scene.reflectance[p];
      if (post) {
        Philox rng_t = stage_rng(model.seed, alpha, SimStage::TurbulencePost);
        field = apply_turbulence(field, model.turbulence, rng_t);
      }
      Philox rng_s = stage_rng(model.seed, alpha, SimStage::Sensor);
      stack.frames[alpha] = sense(field, model.sensor, rng_s);
    }
  });
  return stack;
}

}  // namespace tfi
