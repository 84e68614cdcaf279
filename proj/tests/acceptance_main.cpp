// Acceptance suite: one pass/fail line per criterion; nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "tfi/config.hpp"
#include "tfi/metrics.hpp"
#include "tfi/parallel.hpp"
#include "tfi/reconstruct.hpp"
#include "tfi/scenes.hpp"
#include "tfi/simulate.hpp"
#include "tfi/stack_io.hpp"
#include "tfi/testing.hpp"

using namespace tfi;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("[%s] C%d: %s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str());
  if (!pass) ++g_failures;
}

bool images_equal(const ScalarImage& a, const ScalarImage& b) {
  return a.width == b.width && a.height == b.height &&
         a.channels == b.channels && a.values == b.values;
}

SimModel desk_model(uint64_t seed) {
  SimModel model;  // defaults: mean 200, cells 4, jitter 2, blur 0.5-2.5,
                   // shot noise on, QE 1, 16-bit
  model.seed = seed;
  return model;
}

// C1: optimized reconstruction is bit-identical to the naive reference.
void criterion_1() {
  Philox rng(2024, 1);
  bool ok = true;
  int checked_cc = 0;
  for (int t = 0; t < 200 && ok; ++t) {
    const FrameStack s = random_stack(rng, 16, 16, 64);
    ok = ok && images_equal(reference_g2(s, PairingMode::AC),
                            reconstruct_g2(s, PairingMode::AC));
    if (s.m() >= 2) {
      ok = ok && images_equal(reference_g2(s, PairingMode::CC),
                              reconstruct_g2(s, PairingMode::CC));
      ++checked_cc;
    }
  }
  report(1, ok,
         "oracle equivalence, 200 random stacks (" +
             std::to_string(checked_cc) + " with CC), bit-exact");
}

// C2: hand-evaluated trace of the single-pixel stack 1,2,3.
void criterion_2() {
  FrameStack s;
  for (uint16_t c : {1, 2, 3}) {
    Frame f;
    f.width = f.height = 1;
    f.counts = {c};
    s.frames.push_back(f);
  }
  const double got = reconstruct_g2(s, PairingMode::AC).values[0];
  const double err = std::fabs(got - 26.0 / 3.0);
  report(2, err < 1e-12,
         "hand vector [1,2,3] -> 26/3 (error " + std::to_string(err) + ")");
}

// C3: constant stacks give exactly 2c^2; a single frame gives 2n^2.
void criterion_3() {
  bool ok = true;
  for (uint16_t c : {0, 1, 7, 255}) {
    FrameStack s;
    for (int i = 0; i < 7; ++i) {
      Frame f;
      f.width = 3;
      f.height = 2;
      f.counts.assign(6, c);
      s.frames.push_back(f);
    }
    for (double v : reconstruct_g2(s, PairingMode::AC).values)
      ok = ok && v == 2.0 * double(c) * double(c);
  }
  Philox rng(7, 2);
  FrameStack single;
  single.frames.push_back(random_stack(rng, 9, 9, 1).frames[0]);
  const ScalarImage g = reconstruct_g2(single, PairingMode::AC);
  for (size_t p = 0; p < g.values.size(); ++p) {
    const double n = double(single.frames[0].counts[p]);
    ok = ok && g.values[p] == 2.0 * n * n;
  }
  report(3, ok, "constant-stack identity (c in {0,1,7,255}) and m=1 -> 2n^2");
}

// C4/C6 share the ten fixed-seed desk-scale runs.
void criteria_4_and_6() {
  const Scene scene = builtin_scene("letter", 64, 1);
  int pass4 = 0, pass6 = 0;
  double worst_ac = 1.0, worst_margin = 1.0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const SimModel model = desk_model(seed);
    const ScalarImage ref = squared_reference(scene, model);
    const FrameStack stack = render_stack(scene, model, 100);
    const ScalarImage g_ac =
        normalize_unit(reconstruct_g2(stack, PairingMode::AC));
    const ScalarImage g_cc =
        normalize_unit(reconstruct_g2(stack, PairingMode::CC));
    const ScalarImage mean = normalize_unit(mean_image(stack));
    const double s_ac = ssim(g_ac, ref);
    const double s_cc = ssim(g_cc, ref);
    const double s_mean = ssim(mean, ref);
    if (s_ac - s_mean >= 0.10 && s_ac > 0.70) ++pass4;
    if (ssim(g_ac, g_cc) >= 0.95 && std::fabs(s_ac - s_cc) <= 0.05) ++pass6;
    worst_ac = std::min(worst_ac, s_ac);
    worst_margin = std::min(worst_margin, s_ac - s_mean);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "turbulence recovery: %d/10 seeds (worst SSIM_AC %.3f, worst "
                "margin %.3f; need >0.70 and >=0.10 on >=9)",
                pass4, worst_ac, worst_margin);
  report(4, pass4 >= 9, buf);
  std::snprintf(buf, sizeof buf, "AC/CC consistency: %d/10 seeds (need >=9)",
                pass6);
  report(6, pass6 >= 9, buf);
}

// C5: SSIM rises with the measurement count on a noise-limited scene.
void criterion_5() {
  const Scene scene = builtin_scene("bars:16", 64, 1);
  const SimModel model = desk_model(11);
  const std::vector<uint32_t> ms = {1, 5, 10, 20, 50, 100};
  const auto curve = sweep(scene, model, ms, PairingMode::AC);
  std::vector<double> mv, sv;
  for (const auto& pt : curve) {
    mv.push_back(double(pt.m));
    sv.push_back(pt.ssim);
  }
  const double rho = testing::spearman(mv, sv);
  char buf[160];
  std::snprintf(buf, sizeof buf, "convergence curve Spearman %.3f (need >= 0.8)",
                rho);
  report(5, rho >= 0.8, buf);
}

// C7: RGB reconstruction equals the three grayscale reconstructions.
void criterion_7() {
  const Scene scene = builtin_scene("letter", 64, 3);
  const SimModel model = desk_model(5);
  const FrameStack rgb = render_stack(scene, model, 30);
  const ScalarImage color = reconstruct_color(rgb, PairingMode::AC);

  bool ok = true;
  for (uint8_t c = 0; c < 3 && ok; ++c) {
    FrameStack gray;
    gray.frames.resize(rgb.m());
    for (size_t a = 0; a < rgb.m(); ++a) {
      Frame& f = gray.frames[a];
      f.width = rgb.width();
      f.height = rgb.height();
      f.channels = 1;
      f.bit_depth = rgb.bit_depth();
      f.counts.resize(f.samples());
      for (size_t p = 0; p < f.counts.size(); ++p)
        f.counts[p] = rgb.frames[a].counts[p * 3 + c];
    }
    const ScalarImage g = reconstruct_g2(gray, PairingMode::AC);
    for (size_t p = 0; p < g.values.size(); ++p)
      ok = ok && g.values[p] == color.values[p * 3 + c];
  }
  report(7, ok, "color reconstruction equals channel-wise grayscale, exact");
}

// C8: metrics self-tests.
void criterion_8() {
  Philox rng(99, 3);
  bool exact_one = true;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    ScalarImage a, b;
    a.width = a.height = 32;
    b.width = b.height = 32;
    a.values.resize(a.samples());
    b.values.resize(b.samples());
    for (auto& v : a.values) v = rng.uniform();
    for (auto& v : b.values) v = rng.uniform();
    exact_one = exact_one && ssim(a, a) == 1.0;
    worst = std::max(worst, std::fabs(ssim(a, b) - testing::naive_ssim(a, b)));
  }
  ScalarImage x, y;
  x.width = x.height = 16;
  x.values.assign(x.samples(), 10.0);
  y = x;
  for (auto& v : y.values) v += 1.0;  // uniform error 1.0
  const double p = psnr(x, y, 255.0);
  const bool psnr_ok = std::fabs(p - 48.13) < 0.01;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "metrics: ssim(x,x)=1 exact %s; oracle gap %.2e (need <=1e-9); "
                "psnr %.4f dB (need 48.13 +/- 0.01)",
                exact_one ? "yes" : "NO", worst, p);
  report(8, exact_one && worst <= 1e-9 && psnr_ok, buf);
}

// C9: thread-count independence and stack file round-trip.
void criterion_9() {
  namespace fs = std::filesystem;
  const Scene scene = builtin_scene("letter", 48, 1);
  const SimModel model = desk_model(21);
  const fs::path dir = fs::temp_directory_path() / "tfi_acceptance";
  fs::create_directories(dir);

  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
  };

  bool ok = true;
  std::string first_bytes;
  ScalarImage first_g;
  const size_t thread_cases[3] = {1, 4, 0};  // 0 = auto/max
  for (int i = 0; i < 3; ++i) {
    set_worker_count(thread_cases[i]);
    const FrameStack stack = render_stack(scene, model, 40);
    const fs::path file = dir / ("stack_t" + std::to_string(i) + ".tfis");
    write_stack(stack, file.string());
    const std::string bytes = slurp(file);
    const ScalarImage g = reconstruct_g2(stack, PairingMode::AC);
    if (i == 0) {
      first_bytes = bytes;
      first_g = g;
      const FrameStack back = read_stack(file.string());
      ok = ok && back.m() == stack.m();
      for (size_t a = 0; a < stack.m() && ok; ++a)
        ok = ok && back.frames[a].counts == stack.frames[a].counts &&
             back.frames[a].bit_depth == stack.frames[a].bit_depth;
    } else {
      ok = ok && bytes == first_bytes && images_equal(g, first_g);
    }
  }
  set_worker_count(0);
  report(9, ok,
         "determinism across 1/4/max threads (byte-identical files, "
         "bit-identical images) and write->read identity");
}

// C10: throughput target on a 256x256x100 8-bit stack.
void criterion_10() {
  Philox rng(1234, 4);
  FrameStack stack;
  stack.frames.resize(100);
  for (Frame& f : stack.frames) {
    f.width = f.height = 256;
    f.channels = 1;
    f.bit_depth = 8;
    f.counts.resize(f.samples());
    for (auto& c : f.counts) c = uint16_t(rng.next_u32() & 0xFF);
  }
  const auto t0 = std::chrono::steady_clock::now();
  const ScalarImage g = reconstruct_g2(stack, PairingMode::AC);
  const auto t1 = std::chrono::steady_clock::now();
  const double secs = std::chrono::duration<double>(t1 - t0).count();
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "256x256x100 AC reconstruction in %.3f s (need < 1 s), "
                "checksum %.3g",
                secs, g.values[0]);
  report(10, secs < 1.0, buf);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criteria_4_and_6();
  criterion_5();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
