#pragma once

#include <optional>
#include <vector>

#include "rsgr/exposure.hpp"
#include "rsgr/frame.hpp"

namespace rsgr {

struct Compensated
{
  Frame frame;
  // Single channel, 1.0 where any channel was at full scale before
  // compensation (its true radiance is unrecoverable), else 0.0.
  Frame saturation_mask;
};

/// Per-row gain E0 / duration_r, with image rows mapped to sensor rows as in
/// ee_channel. Every entry is in (0, 1].
std::vector<double> row_gains(const ExposureSchedule& schedule, std::size_t height);

/// Undoes the exposure-dependent brightness of a frame by scaling each row by
/// its gain in the linear domain. Blur is untouched.
///
/// `gamma` must describe the frame's encoding: nullopt for a linear frame,
/// the frame's gamma otherwise (EncodingError on mismatch).
Compensated compensate(const Frame& frame, const ExposureSchedule& schedule,
                       std::optional<double> gamma = std::nullopt);

} // namespace rsgr
