#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsgr/exposure.hpp"
#include "rsgr/sequence.hpp"

namespace rsgr {

// Reported for identical inputs instead of +inf.
inline constexpr double kPsnrCapDb = 100.0;

struct SsimParams
{
  std::size_t window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
};

/// 10 log10(1 / MSE) with peak 1, MSE over every sample. Capped at 100 dB.
double psnr(const Frame& pred, const Frame& gt);

/// Mean of the local SSIM map over the valid region (no padding) under a
/// normalized Gaussian window. 3-channel inputs are reduced to BT.601 luma.
double ssim(const Frame& pred, const Frame& gt, const SsimParams& params = {});

struct Score
{
  double psnr_db = 0.0;
  double ssim = 0.0;
};

Score score(const Frame& pred, const Frame& gt);

enum class Region { Full, Upper, Middle, Lower };
inline constexpr std::array<Region, 4> kRegions{Region::Full, Region::Upper, Region::Middle,
                                                Region::Lower};
std::string_view to_string(Region region);

struct RowBand
{
  std::size_t first = 0;
  std::size_t count = 0;
};

/// Row span of a region: Upper is the top band, Middle the centred band
/// (starting at (H - band) / 2), Lower the bottom band.
RowBand region_rows(Region region, std::size_t height, std::size_t band_height);

/// round(200 * height / 640), at least 1.
std::size_t default_band_height(std::size_t height);

using RegionScores = std::array<Score, 4>; // indexed by Region

struct EvalReport
{
  std::vector<RegionScores> per_frame;
  RegionScores aggregate{};
  std::size_t band_height = 0;
  std::size_t frame_height = 0;
  std::optional<ScanDirection> scan_direction;

  const Score& mean(Region r) const { return aggregate[static_cast<std::size_t>(r)]; }
};

/// PSNR / SSIM per frame for the full frame and the U / M / L bands, then
/// averaged. A band_height of 0 selects default_band_height.
EvalReport region_eval(const Sequence& pred, const Sequence& gt, std::size_t band_height = 0,
                       unsigned threads = 0);

struct NeighborMotion
{
  std::vector<Score> pairs; // (t, t + 1) for t = 0 .. T - 2
  Score mean;
};

/// Metrics between consecutive frames; lower values mean more motion.
NeighborMotion neighbor_motion(const Sequence& gt, unsigned threads = 0);

/// Fixed-width text table, one line per region.
std::string format_report(const EvalReport& report);

} // namespace rsgr
