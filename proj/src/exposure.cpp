#include "rsgr/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsgr/error.hpp"

namespace rsgr {

std::string_view to_string(ShutterMode mode)
{
  switch (mode) {
  case ShutterMode::GS: return "gs";
  case ShutterMode::RS: return "rs";
  case ShutterMode::RSGR: return "rsgr";
  }
  return "?";
}

std::string_view to_string(ScanDirection dir)
{
  return dir == ScanDirection::FirstRowTop ? "top" : "bottom";
}

ShutterMode parse_shutter_mode(std::string_view text)
{
  if (text == "gs" || text == "GS")
    return ShutterMode::GS;
  if (text == "rs" || text == "RS")
    return ShutterMode::RS;
  if (text == "rsgr" || text == "RSGR")
    return ShutterMode::RSGR;
  throw ParameterError("unknown shutter mode '" + std::string(text) + "'");
}

ScanDirection parse_scan_direction(std::string_view text)
{
  if (text == "top" || text == "FirstRowTop")
    return ScanDirection::FirstRowTop;
  if (text == "bottom" || text == "FirstRowBottom")
    return ScanDirection::FirstRowBottom;
  throw ParameterError("unknown scan direction '" + std::string(text) + "'");
}

ExposureSchedule::ExposureSchedule(ShutterMode mode, std::size_t rows, double base_exposure_s,
                                   double readout_ratio, ScanDirection scan)
  : mode_(mode), rows_(rows), base_exposure_s_(base_exposure_s),
    readout_ratio_(readout_ratio), scan_(scan)
{
  if (rows_ == 0)
    throw ParameterError("exposure schedule needs at least one row");
  if (!std::isfinite(base_exposure_s_) || base_exposure_s_ <= 0.0)
    throw ParameterError("base exposure must be finite and > 0");
  if (!std::isfinite(readout_ratio_) || readout_ratio_ < 0.0)
    throw ParameterError("readout ratio must be finite and >= 0");
}

std::size_t ExposureSchedule::scan_rank(std::size_t row) const
{
  if (row >= rows_)
    throw IndexError("row " + std::to_string(row) + " out of range for " +
                     std::to_string(rows_) + "-row schedule");
  return scan_ == ScanDirection::FirstRowTop ? row : rows_ - 1 - row;
}

ExposureSchedule ExposureSchedule::with_mode(ShutterMode mode) const
{
  return {mode, rows_, base_exposure_s_, readout_ratio_, scan_};
}

ExposureSchedule ExposureSchedule::with_rows(std::size_t rows) const
{
  return {mode_, rows, base_exposure_s_, readout_ratio_, scan_};
}

RowWindow row_window(const ExposureSchedule& schedule, std::size_t row)
{
  const std::size_t k = schedule.scan_rank(row);
  const double e0 = schedule.base_exposure_s();
  const std::size_t n = schedule.rows();
  const double step = n > 1 ? schedule.readout_ratio() * e0 / static_cast<double>(n - 1) : 0.0;

  switch (schedule.mode()) {
  case ShutterMode::GS:
    return {0.0, e0};
  case ShutterMode::RS:
    return {static_cast<double>(k) * step, e0};
  case ShutterMode::RSGR:
    return {0.0, e0 + static_cast<double>(k) * step};
  }
  return {0.0, e0};
}

std::vector<RowWindow> row_windows(const ExposureSchedule& schedule)
{
  std::vector<RowWindow> out(schedule.rows());
  for (std::size_t r = 0; r < out.size(); ++r)
    out[r] = row_window(schedule, r);
  return out;
}

std::vector<double> row_durations(const ExposureSchedule& schedule)
{
  std::vector<double> out(schedule.rows());
  for (std::size_t r = 0; r < out.size(); ++r)
    out[r] = row_window(schedule, r).duration_s;
  return out;
}

std::size_t sensor_row_for(const ExposureSchedule& schedule, std::size_t image_row,
                           std::size_t height)
{
  if (height == 0)
    throw DimensionError("image height must be > 0");
  if (image_row >= height)
    throw IndexError("image row out of range");
  return static_cast<std::size_t>((static_cast<unsigned long long>(image_row) * schedule.rows()) /
                                  height);
}

Frame ee_channel(const ExposureSchedule& schedule, std::size_t height, std::size_t width)
{
  if (height == 0 || width == 0)
    throw DimensionError("EE channel needs non-zero height and width");

  const std::vector<double> durations = row_durations(schedule);
  const auto [lo_it, hi_it] = std::minmax_element(durations.begin(), durations.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;

  Frame ee(height, width, 1);
  for (std::size_t r = 0; r < height; ++r) {
    const double d = durations[sensor_row_for(schedule, r, height)];
    const double v = span > 0.0 ? (d - lo) / span : 0.0;
    std::fill(ee.row(r).begin(), ee.row(r).end(), v);
  }
  return ee;
}

} // namespace rsgr
