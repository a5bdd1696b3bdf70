#pragma once

// Test-only helpers and oracles. Oracles here are written independently of
// the library's implementation paths they check.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "rsgr/exposure.hpp"
#include "rsgr/frame.hpp"
#include "rsgr/sequence.hpp"

namespace rsgr::test {

class TempDir
{
public:
  explicit TempDir(const std::string& tag)
  {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("rsgr_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir()
  {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& p) const { return path_ / p; }

private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Relative path -> file bytes for every regular file below root.
inline std::map<std::string, std::string> tree_bytes(const std::filesystem::path& root)
{
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root))
    if (e.is_regular_file())
      out[std::filesystem::relative(e.path(), root).generic_string()] = slurp(e.path());
  return out;
}

// Values are float-representable so they survive the float32 file format.
inline Frame random_frame(std::mt19937_64& rng, std::size_t h, std::size_t w, std::size_t c)
{
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  Frame f(h, w, c);
  for (double& v : f.data())
    v = u(rng);
  return f;
}

inline Sequence constant_source(std::size_t h, std::size_t w, std::size_t count, double dt,
                                double value)
{
  Sequence s;
  s.frame_period_s = dt;
  for (std::size_t i = 0; i < count; ++i)
    s.frames.emplace_back(h, w, 1, Encoding::linear(), value);
  return s;
}

// Moving vertical edge: columns left of the edge are `hi`, right are `lo`;
// the edge advances one column per subframe (wrapping).
inline Sequence moving_edge_source(std::size_t h, std::size_t w, std::size_t count, double dt)
{
  Sequence s;
  s.frame_period_s = dt;
  for (std::size_t i = 0; i < count; ++i) {
    Frame f(h, w, 1);
    const std::size_t edge = (w / 4 + i) % w;
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c)
        f.at(r, c) = ((c + w - edge) % w < w / 2) ? 0.1 : 0.45;
    s.frames.push_back(std::move(f));
  }
  return s;
}

// Brute-force temporal integration over a grid `refine` times finer than the
// subframe spacing. Window bounds are given in fine-grid ticks so the sum is
// exact: every tick lies inside exactly one subframe.
inline double brute_force_row_pixel(const Sequence& src, std::size_t row, std::size_t col,
                                    long long begin_tick, long long end_tick, int refine,
                                    double e0)
{
  const double tick = src.frame_period_s / refine;
  double acc = 0.0;
  for (long long t = begin_tick; t < end_tick; ++t) {
    const auto sub = static_cast<std::size_t>(t / refine);
    acc += src.frames[sub].at(row, col) * tick;
  }
  return std::min(1.0, std::max(0.0, acc / e0));
}

// Mean squared error with long double accumulation, then PSNR.
inline double psnr_oracle(const Frame& a, const Frame& b)
{
  long double sum = 0.0L;
  std::size_t n = 0;
  for (std::size_t r = 0; r < a.height(); ++r)
    for (std::size_t c = 0; c < a.width(); ++c)
      for (std::size_t k = 0; k < a.channels(); ++k) {
        const long double d = static_cast<long double>(a.at(r, c, k)) - b.at(r, c, k);
        sum += d * d;
        ++n;
      }
  const long double mse = sum / n;
  return static_cast<double>(10.0L * std::log10(1.0L / mse));
}

// Direct 2-D windowed SSIM (no separable filtering), single channel.
inline double ssim_oracle(const Frame& x, const Frame& y)
{
  constexpr int n = 11;
  constexpr double sigma = 1.5;
  double g[n][n];
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double di = i - 5;
      const double dj = j - 5;
      g[i][j] = std::exp(-(di * di + dj * dj) / (2 * sigma * sigma));
      total += g[i][j];
    }
  const double c1 = 0.01 * 0.01;
  const double c2 = 0.03 * 0.03;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r + n <= x.height(); ++r)
    for (std::size_t c = 0; c + n <= x.width(); ++c) {
      double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double w = g[i][j] / total;
          const double a = x.at(r + i, c + j);
          const double b = y.at(r + i, c + j);
          mx += w * a;
          my += w * b;
          sxx += w * a * a;
          syy += w * b * b;
          sxy += w * a * b;
        }
      const double vx = sxx - mx * mx;
      const double vy = syy - my * my;
      const double cov = sxy - mx * my;
      acc += ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++count;
    }
  return acc / count;
}

inline double max_abs_diff(const Frame& a, const Frame& b)
{
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

} // namespace rsgr::test
