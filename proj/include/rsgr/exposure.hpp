#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "rsgr/frame.hpp"

namespace rsgr {

enum class ShutterMode { GS, RS, RSGR };
enum class ScanDirection { FirstRowTop, FirstRowBottom };

std::string_view to_string(ShutterMode mode);
std::string_view to_string(ScanDirection dir);
ShutterMode parse_shutter_mode(std::string_view text);
ScanDirection parse_scan_direction(std::string_view text);

/// Timing of one exposure: shutter mode, first-scanline exposure E0, readout
/// ratio xi (total readout span over E0), scan direction and row count.
///
/// Construction validates E0 > 0, xi >= 0 and rows >= 1 and throws
/// ParameterError otherwise, so every live schedule is well formed.
class ExposureSchedule
{
public:
  ExposureSchedule(ShutterMode mode, std::size_t rows, double base_exposure_s,
                   double readout_ratio = 0.0,
                   ScanDirection scan = ScanDirection::FirstRowTop);

  ShutterMode mode() const { return mode_; }
  std::size_t rows() const { return rows_; }
  double base_exposure_s() const { return base_exposure_s_; }
  double readout_ratio() const { return readout_ratio_; }
  ScanDirection scan_direction() const { return scan_; }

  /// Position of a sensor row in readout order; rank 0 is read out first.
  std::size_t scan_rank(std::size_t row) const;

  /// Same timing with a different mode / row count.
  ExposureSchedule with_mode(ShutterMode mode) const;
  ExposureSchedule with_rows(std::size_t rows) const;

  friend bool operator==(const ExposureSchedule&, const ExposureSchedule&) = default;

private:
  ShutterMode mode_;
  std::size_t rows_;
  double base_exposure_s_;
  double readout_ratio_;
  ScanDirection scan_;
};

struct RowWindow
{
  double start_s = 0.0;    // offset from the frame trigger
  double duration_s = 0.0;

  double end_s() const { return start_s + duration_s; }
  friend bool operator==(const RowWindow&, const RowWindow&) = default;
};

// GS: every row [0, E0]. RS: row of rank k starts at k*xi*E0/(N-1) and lasts
// E0. RSGR: every row starts at 0 and lasts E0 + k*xi*E0/(N-1). A single row
// sensor has no readout skew.
RowWindow row_window(const ExposureSchedule& schedule, std::size_t row);

std::vector<RowWindow> row_windows(const ExposureSchedule& schedule);
std::vector<double> row_durations(const ExposureSchedule& schedule);

/// Sensor row that image row `image_row` of an image `height` rows tall maps
/// to: floor(image_row * N / height).
std::size_t sensor_row_for(const ExposureSchedule& schedule, std::size_t image_row,
                           std::size_t height);

/// Exposure-encoding channel: per-row duration min-max normalized to [0, 1],
/// all zeros when every row has the same duration.
Frame ee_channel(const ExposureSchedule& schedule, std::size_t height, std::size_t width);

} // namespace rsgr
