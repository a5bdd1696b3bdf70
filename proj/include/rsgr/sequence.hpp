#pragma once

#include <optional>
#include <vector>

#include "rsgr/exposure.hpp"
#include "rsgr/frame.hpp"

namespace rsgr {

/// Ordered frames sampled every `frame_period_s` seconds. For high-FPS
/// sources the period is the subframe spacing and subframe i holds its value
/// over [i * period, (i + 1) * period).
struct Sequence
{
  std::vector<Frame> frames;
  double frame_period_s = 0.0;
  std::optional<ExposureSchedule> schedule; // provenance for synthesized output

  std::size_t size() const { return frames.size(); }
  bool empty() const { return frames.empty(); }
  const Frame& front() const { return frames.front(); }

  /// Throws unless frames share shape/encoding and the period is positive.
  void validate() const;
};

} // namespace rsgr
