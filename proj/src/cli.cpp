#include "tfi/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "tfi/config.hpp"
#include "tfi/metrics.hpp"
#include "tfi/reconstruct.hpp"
#include "tfi/scenes.hpp"
#include "tfi/simulate.hpp"
#include "tfi/stack_io.hpp"
#include "tfi/testing.hpp"

namespace tfi::cli {

namespace {

// Semantic usage problems that CLI11 cannot express (exit code 2).
struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PairingMode parse_mode(const std::string& mode) {
  return mode == "cc" ? PairingMode::CC : PairingMode::AC;
}

struct SimulateArgs {
  std::string config;
  std::string scene;
  uint32_t size = 0;
  uint32_t channels = 0;
  uint32_t m = 0;
  int64_t seed = -1;
  std::string out;
  std::string dump_frames;
};

int cmd_simulate(const SimulateArgs& a) {
  RunConfig cfg = a.config.empty() ? RunConfig{} : load_config(a.config);
  if (!a.scene.empty()) cfg.scene = a.scene;
  if (a.size) cfg.scene_size = a.size;
  if (a.channels) cfg.channels = uint8_t(a.channels);
  if (a.m) cfg.m = a.m;
  if (a.seed >= 0) cfg.model.seed = uint64_t(a.seed);
  const std::string out = a.out.empty() ? cfg.out_stack : a.out;
  if (out.empty())
    throw UsageFailure("simulate: no output path (--out or config out_stack)");

  const Scene scene = make_scene(cfg);
  const FrameStack stack = render_stack(scene, cfg.model, cfg.m);
  write_stack(stack, out);

  if (!a.dump_frames.empty()) {
    std::filesystem::create_directories(a.dump_frames);
    char name[32];
    for (size_t i = 0; i < stack.m(); ++i) {
      std::snprintf(name, sizeof name, "frame_%06zu.png", i);
      write_image(stack.frames[i],
                  (std::filesystem::path(a.dump_frames) / name).string());
    }
  }
  std::cout << "wrote " << out << ": " << stack.width() << "x"
            << stack.height() << "x" << int(stack.channels()) << ", m="
            << stack.m() << ", " << int(stack.bit_depth()) << "-bit, seed="
            << cfg.model.seed << "\n";
  return 0;
}

struct ReconstructArgs {
  std::string stack;
  std::string pattern = "*.png";
  std::string mode = "ac";
  std::string out;
  uint32_t depth = 16;
  std::string dump_mean;
};

int cmd_reconstruct(const ReconstructArgs& a) {
  const FrameStack stack = std::filesystem::is_directory(a.stack)
                               ? import_frames(a.stack, a.pattern)
                               : read_stack(a.stack);
  const ScalarImage g = reconstruct_g2(stack, parse_mode(a.mode));
  write_image(normalize_display(g, uint8_t(a.depth)), a.out);
  if (!a.dump_mean.empty())
    write_image(normalize_display(mean_image(stack), uint8_t(a.depth)),
                a.dump_mean);
  std::cout << "reconstructed " << a.out << " (mode=" << a.mode << ", m="
            << stack.m() << ", kernel=" << kernels::select().name << ")\n";
  return 0;
}

struct EvaluateArgs {
  std::string image;
  std::string ref;
  std::string csv;
};

int cmd_evaluate(const EvaluateArgs& a) {
  const ScalarImage img = normalize_unit(frame_to_scalar(read_image(a.image)));
  const ScalarImage ref = normalize_unit(frame_to_scalar(read_image(a.ref)));
  const double s = ssim(img, ref);
  const double p = psnr(img, ref, 1.0);
  char line[64];
  std::snprintf(line, sizeof line, "SSIM %.6f\nPSNR %.6f\n", s, p);
  std::cout << line;
  if (!a.csv.empty()) {
    std::ofstream os(a.csv);
    if (!os) throw Error(Err::IoError, "cannot write " + a.csv);
    char row[64];
    std::snprintf(row, sizeof row, "ssim,psnr\n%.6f,%.6f\n", s, p);
    os << row;
  }
  return 0;
}

struct SweepArgs {
  std::string config;
  std::string ms;
  std::string mode;
  std::string out;
};

int cmd_sweep(const SweepArgs& a) {
  RunConfig cfg = a.config.empty() ? RunConfig{} : load_config(a.config);
  if (!a.mode.empty()) cfg.mode = parse_mode(a.mode);

  std::vector<uint32_t> ms;
  std::stringstream ss(a.ms);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw UsageFailure("sweep: bad --ms entry '" + tok + "'");
    ms.push_back(uint32_t(std::stoul(tok)));
  }
  if (ms.empty()) throw UsageFailure("sweep: --ms list is empty");

  const Scene scene = make_scene(cfg);
  const auto curve = sweep(scene, cfg.model, ms, cfg.mode);
  if (a.out.empty()) {
    write_curve_csv(std::cout, curve);
  } else {
    std::ofstream os(a.out);
    if (!os) throw Error(Err::IoError, "cannot write " + a.out);
    write_curve_csv(os, curve);
    std::cout << "wrote " << a.out << " (" << curve.size() << " points)\n";
  }
  return 0;
}

struct SelfcheckArgs {
  uint64_t seed = 1;
  uint32_t trials = 40;
};

bool images_equal(const ScalarImage& a, const ScalarImage& b) {
  return a.width == b.width && a.height == b.height &&
         a.channels == b.channels && a.values == b.values;
}

int cmd_selfcheck(const SelfcheckArgs& a) {
  int failures = 0;
  const auto report = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok:   " : "FAIL: ") << what << "\n";
    if (!ok) ++failures;
  };

  // Generator known-answer vectors (Random123 test set).
  {
    const auto z = Philox::block({0, 0, 0, 0}, {0, 0});
    const auto f = Philox::block({0xFFFFFFFFu, 0xFFFFFFFFu, 0xFFFFFFFFu,
                                  0xFFFFFFFFu},
                                 {0xFFFFFFFFu, 0xFFFFFFFFu});
    const auto pi = Philox::block(
        {0x243F6A88u, 0x85A308D3u, 0x13198A2Eu, 0x03707344u},
        {0xA4093822u, 0x299F31D0u});
    report(z == std::array<uint32_t, 4>{0x6627E8D5u, 0xE169C58Du, 0xBC57AC4Cu,
                                        0x9B00DBD8u} &&
               f == std::array<uint32_t, 4>{0x408F276Du, 0x41C83B0Eu,
                                            0xA20BC7C6u, 0x6D5451FDu} &&
               pi == std::array<uint32_t, 4>{0xD16CFE09u, 0x94FDCCEBu,
                                             0x5001E420u, 0x24126EA1u},
           "rng known-answer vectors");
  }

  // Hand-traced single-pixel case: counts 1,2,3 -> 26/3.
  {
    FrameStack s;
    for (uint16_t c : {1, 2, 3}) {
      Frame f;
      f.width = f.height = 1;
      f.counts = {c};
      s.frames.push_back(f);
    }
    const double got = reconstruct_g2(s, PairingMode::AC).values[0];
    report(std::fabs(got - 26.0 / 3.0) < 1e-12,
           "single-pixel hand vector (1,2,3)");
  }

  // Constant stacks reconstruct to exactly twice the squared count.
  {
    bool ok = true;
    for (uint16_t c : {0, 1, 7, 255}) {
      FrameStack s;
      for (int i = 0; i < 5; ++i) {
        Frame f;
        f.width = 2;
        f.height = 2;
        f.counts.assign(4, c);
        s.frames.push_back(f);
      }
      for (double v : reconstruct_g2(s, PairingMode::AC).values)
        ok = ok && v == 2.0 * double(c) * double(c);
    }
    report(ok, "constant-stack identity");
  }

  // Optimized path vs naive reference, both pairings, all backends.
  {
    Philox rng(a.seed, 0xC0FFEE);
    bool ok = true;
    for (uint32_t t = 0; t < a.trials && ok; ++t) {
      const FrameStack s = random_stack(rng, 12, 12, 24);
      for (const PairingMode mode : {PairingMode::AC, PairingMode::CC}) {
        if (mode == PairingMode::CC && s.m() < 2) continue;
        const ScalarImage want = reference_g2(s, mode);
        ok = ok && images_equal(
                       want, reconstruct_g2(s, mode, kernels::Backend::Scalar));
        if (kernels::avx2_available())
          ok = ok && images_equal(
                         want, reconstruct_g2(s, mode, kernels::Backend::Avx2));
      }
    }
    std::string what = "kernel equivalence vs reference (scalar";
    if (kernels::avx2_available()) what += ", avx2";
    what += "), " + std::to_string(a.trials) + " random stacks";
    report(ok, what);
  }

  std::cout << (failures ? "selfcheck FAILED\n" : "selfcheck passed\n");
  return failures ? 1 : 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"turbulence-free imaging toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand(
      "simulate", "render a synthetic frame stack from a scene");
  c_sim->add_option("--config", sim.config, "run configuration file");
  c_sim->add_option("--scene", sim.scene,
                    "builtin scene (letter|bars[:N]|checker[:N]) or image path");
  c_sim->add_option("--size", sim.size, "builtin scene size in pixels");
  c_sim->add_option("--channels", sim.channels, "builtin scene channels (1|3)")
      ->check(CLI::IsMember({1, 3}));
  c_sim->add_option("--m", sim.m, "number of frames");
  c_sim->add_option("--seed", sim.seed, "master seed");
  c_sim->add_option("--out", sim.out, "output stack file (.tfis)");
  c_sim->add_option("--dump-frames", sim.dump_frames,
                    "also write each frame as PNG into this directory");

  ReconstructArgs rec;
  auto* c_rec = app.add_subcommand(
      "reconstruct", "fluctuation-correlation image from a stack");
  c_rec->add_option("--stack", rec.stack,
                    "stack file or a directory of PGM/PNG frames")
      ->required();
  c_rec->add_option("--pattern", rec.pattern,
                    "filename pattern for directory input (default *.png)");
  c_rec->add_option("--mode", rec.mode, "pairing mode (default ac)")
      ->check(CLI::IsMember({"ac", "cc"}));
  c_rec->add_option("--out", rec.out, "output image (.png or .pgm)")
      ->required();
  c_rec->add_option("--depth", rec.depth, "output bit depth (default 16)")
      ->check(CLI::IsMember({8, 16}));
  c_rec->add_option("--dump-mean", rec.dump_mean,
                    "also write the per-pixel mean (traditional) image");

  EvaluateArgs eva;
  auto* c_eva = app.add_subcommand(
      "evaluate", "SSIM/PSNR between two images (after min-max normalization)");
  c_eva->add_option("--image", eva.image, "image under test")->required();
  c_eva->add_option("--ref", eva.ref, "reference image")->required();
  c_eva->add_option("--csv", eva.csv, "also write a one-row CSV");

  SweepArgs swp;
  auto* c_swp = app.add_subcommand(
      "sweep", "measurement-count sweep; emits a CSV curve");
  c_swp->add_option("--config", swp.config, "run configuration file");
  c_swp->add_option("--ms", swp.ms, "comma-separated ascending frame counts")
      ->required();
  c_swp->add_option("--mode", swp.mode, "pairing mode override")
      ->check(CLI::IsMember({"ac", "cc"}));
  c_swp->add_option("--out", swp.out, "output CSV (default stdout)");

  SelfcheckArgs chk;
  auto* c_chk = app.add_subcommand(
      "selfcheck", "verify kernels against the naive reference");
  c_chk->add_option("--seed", chk.seed, "seed for the random stacks");
  c_chk->add_option("--trials", chk.trials, "number of random stacks");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(c_sim)) return cmd_simulate(sim);
    if (app.got_subcommand(c_rec)) return cmd_reconstruct(rec);
    if (app.got_subcommand(c_eva)) return cmd_evaluate(eva);
    if (app.got_subcommand(c_swp)) return cmd_sweep(swp);
    if (app.got_subcommand(c_chk)) return cmd_selfcheck(chk);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tfi::cli
