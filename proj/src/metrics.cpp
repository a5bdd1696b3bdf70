#include "rsgr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rsgr/error.hpp"
#include "rsgr/parallel.hpp"

namespace rsgr {

namespace {

void require_same_shape(const Frame& a, const Frame& b)
{
  if (!a.same_shape(b))
    throw DimensionError("metric inputs differ in shape: " + std::to_string(a.height()) + "x" +
                         std::to_string(a.width()) + "x" + std::to_string(a.channels()) +
                         " vs " + std::to_string(b.height()) + "x" + std::to_string(b.width()) +
                         "x" + std::to_string(b.channels()));
}

std::vector<double> gaussian_kernel(std::size_t size, double sigma)
{
  std::vector<double> k(size);
  const double centre = 0.5 * static_cast<double>(size - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double d = static_cast<double>(i) - centre;
    k[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (double& v : k)
    v /= sum;
  return k;
}

// Valid-region separable filter of a single-channel image.
std::vector<double> filter_valid(std::span<const double> img, std::size_t h, std::size_t w,
                                 const std::vector<double>& k)
{
  const std::size_t n = k.size();
  const std::size_t oh = h - n + 1;
  const std::size_t ow = w - n + 1;
  std::vector<double> horiz(h * ow, 0.0);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        acc += k[i] * img[y * w + x + i];
      horiz[y * ow + x] = acc;
    }
  std::vector<double> out(oh * ow, 0.0);
  for (std::size_t y = 0; y < oh; ++y)
    for (std::size_t i = 0; i < n; ++i) {
      const double ki = k[i];
      const double* src = horiz.data() + (y + i) * ow;
      double* dst = out.data() + y * ow;
      for (std::size_t x = 0; x < ow; ++x)
        dst[x] += ki * src[x];
    }
  return out;
}

} // namespace

double psnr(const Frame& pred, const Frame& gt)
{
  require_same_shape(pred, gt);
  const auto a = pred.data();
  const auto b = gt.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(a.size());
  if (mse == 0.0)
    return kPsnrCapDb;
  return std::min(kPsnrCapDb, 10.0 * std::log10(1.0 / mse));
}

double ssim(const Frame& pred, const Frame& gt, const SsimParams& params)
{
  require_same_shape(pred, gt);
  if (pred.height() < params.window || pred.width() < params.window)
    throw DimensionError("frame smaller than the " + std::to_string(params.window) +
                         "-pixel SSIM window");

  const Frame x = to_luma(pred);
  const Frame y = to_luma(gt);
  const std::size_t h = x.height();
  const std::size_t w = x.width();
  const auto xs = x.data();
  const auto ys = y.data();

  std::vector<double> xx(xs.size()), yy(xs.size()), xy(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xx[i] = xs[i] * xs[i];
    yy[i] = ys[i] * ys[i];
    xy[i] = xs[i] * ys[i];
  }

  const auto k = gaussian_kernel(params.window, params.sigma);
  const auto mu_x = filter_valid(xs, h, w, k);
  const auto mu_y = filter_valid(ys, h, w, k);
  const auto e_xx = filter_valid(xx, h, w, k);
  const auto e_yy = filter_valid(yy, h, w, k);
  const auto e_xy = filter_valid(xy, h, w, k);

  const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
  const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);

  double total = 0.0;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    const double mx = mu_x[i];
    const double my = mu_y[i];
    const double var_x = e_xx[i] - mx * mx;
    const double var_y = e_yy[i] - my * my;
    const double cov = e_xy[i] - mx * my;
    const double num = (2.0 * mx * my + c1) * (2.0 * cov + c2);
    const double den = (mx * mx + my * my + c1) * (var_x + var_y + c2);
    total += num / den;
  }
  return total / static_cast<double>(mu_x.size());
}

Score score(const Frame& pred, const Frame& gt)
{
  return {psnr(pred, gt), ssim(pred, gt)};
}

std::string_view to_string(Region region)
{
  switch (region) {
  case Region::Full: return "F";
  case Region::Upper: return "U";
  case Region::Middle: return "M";
  case Region::Lower: return "L";
  }
  return "?";
}

std::size_t default_band_height(std::size_t height)
{
  const auto band = static_cast<std::size_t>(
      std::llround(200.0 * static_cast<double>(height) / 640.0));
  return band == 0 ? 1 : band;
}

RowBand region_rows(Region region, std::size_t height, std::size_t band_height)
{
  if (region == Region::Full)
    return {0, height};
  if (band_height == 0 || band_height > height)
    throw DimensionError("band height " + std::to_string(band_height) +
                         " does not fit a frame of height " + std::to_string(height));
  switch (region) {
  case Region::Upper: return {0, band_height};
  case Region::Middle: return {(height - band_height) / 2, band_height};
  case Region::Lower: return {height - band_height, band_height};
  default: return {0, height};
  }
}

EvalReport region_eval(const Sequence& pred, const Sequence& gt, std::size_t band_height,
                       unsigned threads)
{
  if (pred.size() != gt.size())
    throw PairingError("prediction has " + std::to_string(pred.size()) +
                       " frames, ground truth " + std::to_string(gt.size()));
  if (gt.empty())
    throw LengthError("cannot evaluate empty sequences");

  EvalReport report;
  report.frame_height = gt.front().height();
  report.band_height = band_height == 0 ? default_band_height(report.frame_height) : band_height;
  if (gt.schedule)
    report.scan_direction = gt.schedule->scan_direction();
  else if (pred.schedule)
    report.scan_direction = pred.schedule->scan_direction();
  // Fail fast on a band that cannot fit, before any work.
  region_rows(Region::Upper, report.frame_height, report.band_height);

  report.per_frame.resize(gt.size());
  parallel_for(gt.size(), threads, [&](std::size_t t) {
    const Frame& p = pred.frames[t];
    const Frame& g = gt.frames[t];
    require_same_shape(p, g);
    for (Region region : kRegions) {
      const RowBand band = region_rows(region, g.height(), report.band_height);
      const Frame pc = p.crop_rows(band.first, band.count);
      const Frame gc = g.crop_rows(band.first, band.count);
      report.per_frame[t][static_cast<std::size_t>(region)] = score(pc, gc);
    }
  });

  for (std::size_t r = 0; r < kRegions.size(); ++r) {
    double sum_psnr = 0.0;
    double sum_ssim = 0.0;
    for (const RegionScores& s : report.per_frame) {
      sum_psnr += s[r].psnr_db;
      sum_ssim += s[r].ssim;
    }
    const auto n = static_cast<double>(report.per_frame.size());
    report.aggregate[r] = {sum_psnr / n, sum_ssim / n};
  }
  return report;
}

NeighborMotion neighbor_motion(const Sequence& gt, unsigned threads)
{
  if (gt.size() < 2)
    throw LengthError("neighbor motion needs at least two frames");
  NeighborMotion out;
  out.pairs.resize(gt.size() - 1);
  parallel_for(out.pairs.size(), threads, [&](std::size_t t) {
    out.pairs[t] = score(gt.frames[t], gt.frames[t + 1]);
  });
  for (const Score& s : out.pairs) {
    out.mean.psnr_db += s.psnr_db;
    out.mean.ssim += s.ssim;
  }
  out.mean.psnr_db /= static_cast<double>(out.pairs.size());
  out.mean.ssim /= static_cast<double>(out.pairs.size());
  return out;
}

std::string format_report(const EvalReport& report)
{
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "frames %zu  band %zu rows  scan %s\n", report.per_frame.size(),
                report.band_height,
                report.scan_direction ? std::string(to_string(*report.scan_direction)).c_str()
                                      : "n/a");
  out += line;
  out += "region   PSNR(dB)     SSIM\n";
  for (Region region : kRegions) {
    const Score& s = report.mean(region);
    std::snprintf(line, sizeof line, "%-6s %10.4f %8.4f\n", std::string(to_string(region)).c_str(),
                  s.psnr_db, s.ssim);
    out += line;
  }
  return out;
}

} // namespace rsgr
