#include "rsgr/compensation.hpp"

#include <algorithm>

#include "rsgr/error.hpp"

namespace rsgr {

std::vector<double> row_gains(const ExposureSchedule& schedule, std::size_t height)
{
  const std::vector<double> durations = row_durations(schedule);
  std::vector<double> gains(height);
  for (std::size_t r = 0; r < height; ++r)
    gains[r] = schedule.base_exposure_s() / durations[sensor_row_for(schedule, r, height)];
  return gains;
}

Compensated compensate(const Frame& frame, const ExposureSchedule& schedule,
                       std::optional<double> gamma)
{
  const Encoding& enc = frame.encoding();
  if (enc.is_linear() != !gamma.has_value() ||
      (gamma && !same_encoding(enc, Encoding::gamma(*gamma))))
    throw EncodingError("gamma argument does not match the frame encoding");

  const std::vector<double> gains = row_gains(schedule, frame.height());
  Compensated out{Frame(frame.height(), frame.width(), frame.channels(), enc),
                  Frame(frame.height(), frame.width(), 1)};

  const std::size_t ch = frame.channels();
  for (std::size_t r = 0; r < frame.height(); ++r) {
    const double gain = gains[r];
    for (std::size_t c = 0; c < frame.width(); ++c)
      for (std::size_t k = 0; k < ch; ++k) {
        const double v = frame.at(r, c, k);
        if (v >= 1.0)
          out.saturation_mask.at(r, c) = 1.0;
        const double linear = enc.decode(v) * gain;
        out.frame.at(r, c, k) = std::clamp(enc.encode(linear), 0.0, 1.0);
      }
  }
  return out;
}

} // namespace rsgr
