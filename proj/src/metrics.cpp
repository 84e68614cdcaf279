#include "tfi/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace tfi {

namespace {

void check_same_shape(const ScalarImage& a, const ScalarImage& b) {
  if (a.width != b.width || a.height != b.height || a.channels != b.channels)
    throw Error(Err::ShapeMismatch, "images have different shapes");
  if (a.values.size() != a.samples() || b.values.size() != b.samples())
    throw Error(Err::ShapeMismatch, "image buffer does not match its shape");
}

// Gaussian-weighted local stats via separable filtering over the valid
// (fully interior) region.
struct LocalFilter {
  int radius;
  std::vector<double> weights;

  explicit LocalFilter(int window, double sigma) : radius(window / 2) {
    weights.resize(size_t(window));
    double sum = 0.0;
    for (int i = 0; i < window; ++i) {
      const double d = double(i - radius);
      weights[size_t(i)] = std::exp(-0.5 * d * d / (sigma * sigma));
      sum += weights[size_t(i)];
    }
    for (double& w : weights) w /= sum;
  }

  // in: w x h plane; out: (w - 2r) x (h - 2r)
  std::vector<double> apply(const std::vector<double>& in, int w,
                            int h) const {
    const int vw = w - 2 * radius, vh = h - 2 * radius;
    std::vector<double> horiz(size_t(vw) * h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < vw; ++x) {
        double acc = 0.0;
        for (int i = 0; i < 2 * radius + 1; ++i)
          acc += weights[size_t(i)] * in[size_t(y) * w + x + i];
        horiz[size_t(y) * vw + x] = acc;
      }
    std::vector<double> out(size_t(vw) * vh);
    for (int y = 0; y < vh; ++y)
      for (int x = 0; x < vw; ++x) {
        double acc = 0.0;
        for (int i = 0; i < 2 * radius + 1; ++i)
          acc += weights[size_t(i)] * horiz[size_t(y + i) * vw + x];
        out[size_t(y) * vw + x] = acc;
      }
    return out;
  }
};

double ssim_plane(const std::vector<double>& a, const std::vector<double>& b,
                  int w, int h, const SsimParams& p) {
  const LocalFilter filter(p.window, p.window_sigma);
  const size_t n = a.size();
  std::vector<double> aa(n), bb(n), ab(n);
  for (size_t i = 0; i < n; ++i) {
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  const auto mu_a = filter.apply(a, w, h);
  const auto mu_b = filter.apply(b, w, h);
  const auto m_aa = filter.apply(aa, w, h);
  const auto m_bb = filter.apply(bb, w, h);
  const auto m_ab = filter.apply(ab, w, h);

  const double c1 = (p.k1 * p.dynamic_range) * (p.k1 * p.dynamic_range);
  const double c2 = (p.k2 * p.dynamic_range) * (p.k2 * p.dynamic_range);

  double total = 0.0;
  for (size_t i = 0; i < mu_a.size(); ++i) {
    const double va = m_aa[i] - mu_a[i] * mu_a[i];
    const double vb = m_bb[i] - mu_b[i] * mu_b[i];
    const double cov = m_ab[i] - mu_a[i] * mu_b[i];
    const double num = (2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2);
    const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) *
                       (va + vb + c2);
    total += num / den;
  }
  return total / double(mu_a.size());
}

}  // namespace

double ssim(const ScalarImage& a, const ScalarImage& b,
            const SsimParams& params) {
  check_same_shape(a, b);
  if (params.window < 3 || params.window % 2 == 0)
    throw Error(Err::BadArgument, "SSIM window must be odd and >= 3");
  if (int(a.width) < params.window || int(a.height) < params.window)
    throw Error(Err::ShapeMismatch,
                "image smaller than the SSIM window (" +
                    std::to_string(params.window) + "px)");

  const int w = int(a.width), h = int(a.height);
  const int ch = a.channels;
  double total = 0.0;
  std::vector<double> pa(size_t(w) * h), pb(size_t(w) * h);
  for (int c = 0; c < ch; ++c) {
    for (size_t i = 0; i < pa.size(); ++i) {
      pa[i] = a.values[i * ch + c];
      pb[i] = b.values[i * ch + c];
    }
    total += ssim_plane(pa, pb, w, h, params);
  }
  return total / double(ch);
}

double psnr(const ScalarImage& a, const ScalarImage& b,
            double dynamic_range) {
  check_same_shape(a, b);
  if (!(dynamic_range > 0.0))
    throw Error(Err::BadArgument, "dynamic range must be positive");
  double sq = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    sq += d * d;
  }
  const double mse = sq / double(a.values.size());
  if (mse == 0.0) return 99.0;
  return std::min(99.0, 10.0 * std::log10(dynamic_range * dynamic_range / mse));
}

ScalarImage normalize_unit(const ScalarImage& img) {
  ScalarImage out = img;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : img.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) {
    for (double& v : out.values) v = 0.0;
    return out;
  }
  const double scale = 1.0 / (hi - lo);
  for (double& v : out.values) v = (v - lo) * scale;
  return out;
}

ScalarImage squared_reference(const Scene& scene, const SimModel& model) {
  SimModel quiet = model;
  quiet.illumination.fluctuating = false;
  quiet.turbulence = TurbulenceModel{0.0, 0.0, 0.0, 0.0};
  quiet.sensor.shot_noise = false;
  quiet.sensor.read_noise_sigma = 0.0;
  const FrameStack still = render_stack(scene, quiet, 1);
  ScalarImage ref = frame_to_scalar(still.frames[0]);
  for (double& v : ref.values) v *= v;
  return normalize_unit(ref);
}

std::vector<CurvePoint> sweep(const Scene& scene, const SimModel& model,
                              std::span<const uint32_t> ms, PairingMode mode) {
  if (ms.empty()) throw Error(Err::BadArgument, "measurement list is empty");
  for (size_t i = 0; i < ms.size(); ++i) {
    if (ms[i] < 1)
      throw Error(Err::BadArgument, "measurement counts must be >= 1");
    if (i > 0 && ms[i] <= ms[i - 1])
      throw Error(Err::BadArgument, "measurement counts must be ascending");
  }

  const ScalarImage ref = squared_reference(scene, model);
  std::vector<CurvePoint> curve;
  curve.reserve(ms.size());
  for (const uint32_t m : ms) {
    const FrameStack stack = render_stack(scene, model, m);
    const ScalarImage g = normalize_unit(reconstruct_g2(stack, mode));
    CurvePoint pt;
    pt.m = m;
    pt.ssim = ssim(g, ref);
    pt.psnr = psnr(g, ref, 1.0);
    curve.push_back(pt);
  }
  return curve;
}

void write_curve_csv(std::ostream& os, std::span<const CurvePoint> points) {
  os << "m,ssim,psnr\n";
  char row[96];
  for (const CurvePoint& pt : points) {
    std::snprintf(row, sizeof row, "%u,%.6f,%.6f\n", pt.m, pt.ssim, pt.psnr);
    os << row;
  }
}

}  // namespace tfi
