// Acceptance suite: one PASS / FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances are fixed here and never calibrated at runtime.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rsgr/cli.hpp"
#include "rsgr/compensation.hpp"
#include "rsgr/dataset.hpp"
#include "rsgr/metrics.hpp"
#include "rsgr/scene.hpp"
#include "rsgr/sensor.hpp"
#include "support.hpp"

using namespace rsgr;

namespace {

constexpr double kDt = 1.0 / 1024.0;

struct Outcome
{
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

SceneSpec texture_scene(std::size_t size, std::size_t count, double px_per_subframe)
{
  SceneSpec s;
  s.kind = SceneKind::AffineTexture;
  s.height = size;
  s.width = size;
  s.subframe_dt_s = kDt;
  s.count = count;
  s.seed = 2022;
  s.level = 0.25;
  s.contrast = 0.48;
  s.texture_cell_px = 4;
  s.velocity = {px_per_subframe / kDt, 0.0};
  return s;
}

Outcome xi_degeneracy()
{
  SceneSpec spec = texture_scene(128, 29 * 16 + 16, 0.37);
  spec.channels = 3;
  spec.affine_rate = {0.2, 0.05, 0.0, -0.05, 0.2, 0.0};
  const Sequence src = gen_scene(spec);
  SynthOptions o;
  o.frame_period_s = 16 * kDt;
  o.count = 29;

  const auto t0 = Clock::now();
  const Sequence rsgr = synth_sequence(src, ExposureSchedule(ShutterMode::RSGR, 128, 8 * kDt, 0.0), o);
  const Sequence gs = synth_sequence(src, ExposureSchedule(ShutterMode::GS, 128, 8 * kDt, 0.0), o);
  bool identical = rsgr.size() == gs.size();
  for (std::size_t t = 0; identical && t < gs.size(); ++t)
    identical = encode_frame(rsgr.frames[t]) == encode_frame(gs.frames[t]) &&
                rsgr.frames[t] == gs.frames[t];
  const double elapsed = seconds_since(t0);
  return {identical && elapsed < 1.0,
          fmt("byte-identical=%s, %.3f s (limit 1 s)", identical ? "yes" : "no", elapsed)};
}

Outcome static_brightness_law()
{
  const std::size_t n = 128;
  SceneSpec spec;
  spec.kind = SceneKind::Static;
  spec.height = n;
  spec.width = 16;
  spec.subframe_dt_s = kDt;
  spec.count = 64;
  spec.level = 0.3;
  spec.contrast = 0.0;
  const Sequence src = gen_scene(spec);
  double worst = 0.0;
  for (double xi : {0.25, 0.5, 1.0, 2.0})
    for (auto dir : {ScanDirection::FirstRowTop, ScanDirection::FirstRowBottom}) {
      const ExposureSchedule s(ShutterMode::RSGR, n, 7.5 * kDt, xi, dir);
      const Frame out = integrate_exposure(src, s, 2.5 * kDt);
      const std::size_t first = dir == ScanDirection::FirstRowTop ? 0 : n - 1;
      for (std::size_t r = 0; r < n; ++r) {
        const double k = static_cast<double>(s.scan_rank(r));
        for (std::size_t c = 0; c < 16; ++c)
          worst = std::max(worst, std::abs(out.at(r, c) / out.at(first, c) -
                                           (1.0 + k * xi / static_cast<double>(n - 1))));
      }
    }
  return {worst <= 1e-9, fmt("max ratio error %.3e (limit 1e-9), xi in {0.25, 0.5, 1, 2}", worst)};
}

Outcome integration_oracle()
{
  // Row k of the 81-row RSGR schedule ends 8 + k/10 subframes after the
  // trigger; RS rows start k/10 subframes late. All bounds sit on the
  // 10x refined grid.
  const std::size_t n = 81;
  const int refine = 10;
  SceneSpec spec;
  spec.kind = SceneKind::TranslatingChecker;
  spec.height = n;
  spec.width = 64;
  spec.checker_px = 32;
  spec.subframe_dt_s = kDt;
  spec.count = 64;
  spec.level = 0.3;
  spec.contrast = 0.5;
  spec.velocity = {1.0 / kDt, 0.0};
  const Sequence src = gen_scene(spec);

  double worst = 0.0;
  for (auto mode : {ShutterMode::RSGR, ShutterMode::RS, ShutterMode::GS}) {
    const ExposureSchedule s(mode, n, 8 * kDt, 1.0, ScanDirection::FirstRowTop);
    const long long trigger = 11;
    const Frame out = integrate_exposure(src, s, static_cast<double>(trigger) * kDt);
    for (std::size_t r = 0; r < n; ++r) {
      const auto k = static_cast<long long>(r);
      long long begin = trigger * refine;
      long long end = begin + 8 * refine;
      if (mode == ShutterMode::RSGR)
        end += k;
      else if (mode == ShutterMode::RS)
        begin += k, end += k;
      for (std::size_t c = 0; c < spec.width; ++c)
        worst = std::max(worst, std::abs(out.at(r, c) - rsgr::test::brute_force_row_pixel(
                                                            src, r, c, begin, end, refine, 8 * kDt)));
    }
  }
  return {worst <= 1e-6, fmt("max |sim - brute force| %.3e (limit 1e-6), GS/RS/RSGR", worst)};
}

double compensated_psnr(const Sequence& src, std::size_t size)
{
  const ExposureSchedule rsgr(ShutterMode::RSGR, size, 8 * kDt, 1.0);
  const ExposureSchedule gs(ShutterMode::GS, size, 8 * kDt);
  SynthOptions o;
  o.frame_period_s = 16 * kDt;
  o.count = 4;
  const SequencePair pair = synth_pair(src, rsgr, gs, o);
  double total = 0.0;
  for (std::size_t t = 0; t < o.count; ++t)
    total += psnr(compensate(pair.rsgr.frames[t], rsgr).frame, pair.gs.frames[t]);
  return total / static_cast<double>(o.count);
}

Outcome compensation_soundness()
{
  const std::size_t size = 128;
  const double still = compensated_psnr(gen_scene(texture_scene(size, 80, 0.0)), size);
  // 2 px per output frame of 16 subframes.
  const double moving = compensated_psnr(gen_scene(texture_scene(size, 80, 2.0 / 16.0)), size);
  return {still >= 60.0 && moving < 40.0,
          fmt("static %.2f dB (need >= 60), moving 2 px/frame %.2f dB (need < 40)", still, moving)};
}

Outcome metric_closed_forms()
{
  std::mt19937_64 rng(5150);
  Frame base = rsgr::test::random_frame(rng, 64, 64, 3);
  for (double& v : base.data())
    v *= 0.9;
  Frame offset = base;
  for (double& v : offset.data())
    v += 0.1;
  const double p = psnr(offset, base);

  const Frame other = rsgr::test::random_frame(rng, 64, 64, 3);
  const double self = ssim(base, base);
  const double asym = std::abs(ssim(base, other) - ssim(other, base));

  double constant_err = 0.0;
  const double c1 = 1e-4;
  for (double mu : {0.1, 0.5, 0.8}) {
    const Frame zero(32, 32, 1, Encoding::linear(), 0.0);
    const Frame level(32, 32, 1, Encoding::linear(), mu);
    constant_err = std::max(constant_err, std::abs(ssim(zero, level) - c1 / (mu * mu + c1)));
  }

  const bool ok = std::abs(p - 20.0) <= 1e-9 && std::abs(self - 1.0) <= 1e-12 && asym <= 1e-12 &&
                  constant_err <= 1e-12;
  return {ok, fmt("PSNR(0.1 offset) %.12f dB, |SSIM(x,x)-1| %.1e, asym %.1e, const err %.1e", p,
                  std::abs(self - 1.0), asym, constant_err)};
}

Outcome protocol_trend()
{
  const std::size_t size = 128;
  const Sequence src = gen_scene(texture_scene(size, 29 * 16 + 16, 3.0 / 16.0));
  SynthOptions o;
  o.frame_period_s = 16 * kDt;
  o.count = 29;
  std::string detail;
  bool ok = true;
  for (auto dir : {ScanDirection::FirstRowTop, ScanDirection::FirstRowBottom}) {
    const SequencePair pair =
        synth_pair(src, ExposureSchedule(ShutterMode::RSGR, size, 8 * kDt, 1.0, dir),
                   ExposureSchedule(ShutterMode::GS, size, 8 * kDt, 1.0, dir), o);
    const EvalReport r = region_eval(pair.rsgr, pair.gs);
    const bool top = dir == ScanDirection::FirstRowTop;
    const double shortest = r.mean(top ? Region::Upper : Region::Lower).psnr_db;
    const double longest = r.mean(top ? Region::Lower : Region::Upper).psnr_db;
    ok = ok && shortest > longest;
    detail += fmt("%s: F %.2f U %.2f M %.2f L %.2f dB; ", top ? "top-first" : "bottom-first",
                  r.mean(Region::Full).psnr_db, r.mean(Region::Upper).psnr_db,
                  r.mean(Region::Middle).psnr_db, r.mean(Region::Lower).psnr_db);
  }
  return {ok, detail + "shortest-exposure band > longest-exposure band"};
}

Outcome motion_monotonicity()
{
  const std::size_t size = 96;
  std::vector<double> means;
  for (double px_per_frame : {1.0, 2.0, 4.0}) {
    const Sequence src = gen_scene(texture_scene(size, 12 * 16 + 16, px_per_frame / 16.0));
    SynthOptions o;
    o.frame_period_s = 16 * kDt;
    o.count = 12;
    const Sequence gt = synth_sequence(src, ExposureSchedule(ShutterMode::GS, size, 8 * kDt), o);
    means.push_back(neighbor_motion(gt).mean.psnr_db);
  }
  const bool ok = means[0] > means[1] && means[1] > means[2];
  return {ok, fmt("neighbor PSNR at 1/2/4 px per frame: %.2f > %.2f > %.2f dB", means[0], means[1],
                  means[2])};
}

int run_cli(std::vector<std::string> args)
{
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

Outcome io_determinism()
{
  rsgr::test::TempDir tmp("acceptance_io");

  // Library round trip: write, read back, write again.
  SceneSpec spec = texture_scene(40, 6, 0.7);
  spec.channels = 3;
  Dataset ds;
  ds.manifest.name = "roundtrip";
  const Sequence src = gen_scene(spec);
  Sequence quantized = src;
  for (Frame& f : quantized.frames)
    for (double& v : f.data())
      v = static_cast<float>(v);
  ds.manifest.sequences.push_back(describe(quantized, "src", Role::Source));
  ds.sequences.emplace("src", quantized);
  write_dataset(ds, tmp / "a");
  const Dataset back = read_dataset(tmp / "a");
  write_dataset(back, tmp / "b");
  const bool frames_equal = back.sequences.at("src").frames == quantized.frames;
  const bool trees_equal = rsgr::test::tree_bytes(tmp / "a") == rsgr::test::tree_bytes(tmp / "b");

  // CLI pipeline under two thread counts, same output root each time.
  bool cli_equal = true;
  std::vector<std::map<std::string, std::string>> trees;
  const auto root = tmp / "cli";
  for (const char* threads : {"1", "8"}) {
    std::filesystem::remove_all(root);
    const std::vector<std::vector<std::string>> steps = {
        {"gen-scenes", "--kind", "affine", "--height", "64", "--width", "48", "--channels", "3",
         "--subframe-dt", "0.0009765625", "--count", "96", "--velocity", "150", "40", "--seed",
         "99", "--affine-rate", "0.1", "0", "0", "0", "0.1", "0", "--threads", threads, "--out",
         (root / "src").string()},
        {"pair-synth", "--source", (root / "src").string(), "--e0", "0.0078125", "--xi", "1",
         "--frame-period", "0.015625", "--count", "5", "--gamma", "2.2", "--threads", threads,
         "--out", (root / "pair").string()},
        {"compensate", "--in", (root / "pair/pair0_rsgr").string(), "--manifest",
         (root / "pair/manifest.json").string(), "--threads", threads, "--out",
         (root / "comp").string()},
        {"eval", "--pred", (root / "comp/pair0_rsgr_comp").string(), "--gt",
         (root / "pair/pair0_gs").string(), "--threads", threads, "--report",
         (root / "report.json").string()}};
    for (const auto& step : steps)
      cli_equal = cli_equal && run_cli(step) == 0;
    trees.push_back(rsgr::test::tree_bytes(root));
  }
  cli_equal = cli_equal && !trees[0].empty() && trees[0] == trees[1];
  const bool ok = frames_equal && trees_equal && cli_equal;
  return {ok, fmt("round trip frames %s, rewritten tree %s, CLI --threads 1 vs 8 %s",
                  frames_equal ? "equal" : "DIFFER", trees_equal ? "identical" : "DIFFERS",
                  cli_equal ? "identical" : "DIFFER")};
}

Outcome runtime()
{
  SceneSpec spec;
  spec.kind = SceneKind::TranslatingSine;
  spec.height = 512;
  spec.width = 512;
  spec.subframe_dt_s = kDt;
  spec.count = 1024;
  spec.sine_period_px = {48.0, 80.0};
  spec.velocity = {700.0, 150.0};
  const auto g0 = Clock::now();
  const Sequence src = gen_scene(spec);
  const double gen_s = seconds_since(g0);

  SynthOptions o;
  o.frame_period_s = 35 * kDt;
  o.count = 29;
  const auto t0 = Clock::now();
  const Sequence out = synth_sequence(src, ExposureSchedule(ShutterMode::RSGR, 512, 16 * kDt, 1.0), o);
  const double synth_s = seconds_since(t0);
  const bool ok = out.size() == 29 && synth_s <= 10.0;
  return {ok, fmt("29 x 512x512 RSGR frames from 1024 subframes in %.2f s (limit 10 s); "
                  "source generation %.2f s",
                  synth_s, gen_s)};
}

} // namespace

int main()
{
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"xi-degeneracy", xi_degeneracy},
      {"static-brightness-law", static_brightness_law},
      {"integration-oracle-equivalence", integration_oracle},
      {"compensation-soundness", compensation_soundness},
      {"metric-closed-forms", metric_closed_forms},
      {"protocol-trend", protocol_trend},
      {"motion-degree-monotonicity", motion_monotonicity},
      {"io-determinism", io_determinism},
      {"desk-scale-runtime", runtime},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %-32s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
