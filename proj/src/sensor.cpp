#include "rsgr/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rsgr/error.hpp"
#include "rsgr/parallel.hpp"

namespace rsgr {

namespace {

// Window ends that overshoot the source by less than this fraction of a
// subframe are floating-point noise, not a coverage shortfall.
constexpr double kCoverageSlack = 1e-9;

struct Tap
{
  std::size_t subframe;
  double weight;
};

// Overlap weights of [begin, end] against subframes [i*dt, (i+1)*dt),
// already divided by E0.
std::vector<Tap> window_taps(double begin, double end, double dt, std::size_t count, double e0)
{
  const double span = static_cast<double>(count) * dt;
  if (begin < -kCoverageSlack * dt || end > span + kCoverageSlack * dt)
    throw TemporalRangeError("exposure window [" + std::to_string(begin) + ", " +
                             std::to_string(end) + "] s outside source span [0, " +
                             std::to_string(span) + "] s");
  begin = std::max(begin, 0.0);
  end = std::min(end, span);

  const auto first = static_cast<std::size_t>(std::max(0.0, std::floor(begin / dt)));
  const auto last = std::min(count, static_cast<std::size_t>(std::ceil(end / dt)));

  std::vector<Tap> taps;
  taps.reserve(last - first + 1);
  for (std::size_t i = first; i < last; ++i) {
    const double lo = std::max(begin, static_cast<double>(i) * dt);
    const double hi = std::min(end, static_cast<double>(i + 1) * dt);
    if (hi > lo)
      taps.push_back({i, (hi - lo) / e0});
  }
  return taps;
}

void check_source(const Sequence& source, const ExposureSchedule& schedule)
{
  if (source.empty())
    throw TemporalRangeError("source sequence is empty");
  source.validate();
  if (!source.front().encoding().is_linear())
    throw EncodingError("exposure integration needs a linear source");
  if (schedule.rows() != source.front().height())
    throw DimensionError("schedule has " + std::to_string(schedule.rows()) +
                         " rows but source frames are " +
                         std::to_string(source.front().height()) + " rows tall");
}

Frame integrate_checked(const Sequence& source, const ExposureSchedule& schedule,
                        double trigger_s, unsigned threads)
{
  const Frame& shape = source.front();
  const double dt = source.frame_period_s;
  const double e0 = schedule.base_exposure_s();
  Frame out(shape.height(), shape.width(), shape.channels());

  std::vector<std::vector<Tap>> taps(shape.height());
  for (std::size_t r = 0; r < shape.height(); ++r) {
    const RowWindow w = row_window(schedule, r);
    const double begin = trigger_s + w.start_s;
    taps[r] = window_taps(begin, begin + w.duration_s, dt, source.size(), e0);
  }

  parallel_for(shape.height(), threads, [&](std::size_t r) {
    auto dst = out.row(r);
    for (const Tap& tap : taps[r]) {
      const auto src = source.frames[tap.subframe].row(r);
      for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] += tap.weight * src[i];
    }
    for (double& v : dst)
      v = std::clamp(v, 0.0, 1.0);
  });
  return out;
}

} // namespace

Frame integrate_exposure(const Sequence& source, const ExposureSchedule& schedule,
                         double trigger_s, unsigned threads)
{
  check_source(source, schedule);
  return integrate_checked(source, schedule, trigger_s, threads);
}

Sequence synth_sequence(const Sequence& source, const ExposureSchedule& schedule,
                        const SynthOptions& options, unsigned threads)
{
  if (options.count < 1)
    throw ParameterError("synthesis needs count >= 1");
  if (!std::isfinite(options.frame_period_s) || options.frame_period_s <= 0.0)
    throw ParameterError("frame period must be finite and > 0");
  if (!std::isfinite(options.first_trigger_s))
    throw ParameterError("first trigger must be finite");
  check_source(source, schedule);

  std::optional<Encoding> encoding;
  if (options.gamma_out)
    encoding = Encoding::gamma(*options.gamma_out);

  Sequence out;
  out.frame_period_s = options.frame_period_s;
  out.schedule = schedule;
  out.frames.reserve(options.count);
  for (std::size_t i = 0; i < options.count; ++i) {
    const double trigger =
        options.first_trigger_s + static_cast<double>(i) * options.frame_period_s;
    Frame frame = integrate_checked(source, schedule, trigger, threads);
    if (encoding) {
      for (double& v : frame.data())
        v = encoding->encode(v);
      frame.set_encoding(*encoding);
    }
    out.frames.push_back(std::move(frame));
  }
  return out;
}

SequencePair synth_pair(const Sequence& source, const ExposureSchedule& rsgr_schedule,
                        const ExposureSchedule& gs_schedule, const SynthOptions& options,
                        unsigned threads)
{
  if (rsgr_schedule.base_exposure_s() != gs_schedule.base_exposure_s())
    throw PairingError("first-scanline exposure differs between RSGR (" +
                       std::to_string(rsgr_schedule.base_exposure_s()) + " s) and GS (" +
                       std::to_string(gs_schedule.base_exposure_s()) + " s)");
  if (rsgr_schedule.rows() != gs_schedule.rows())
    throw PairingError("RSGR and GS schedules differ in row count");
  if (rsgr_schedule.mode() != ShutterMode::RSGR)
    throw PairingError("first member of a pair must use the RSGR mode");
  if (gs_schedule.mode() != ShutterMode::GS)
    throw PairingError("second member of a pair must use the GS mode");

  SequencePair pair;
  pair.rsgr = synth_sequence(source, rsgr_schedule, options, threads);
  pair.gs = synth_sequence(source, gs_schedule, options, threads);
  return pair;
}

} // namespace rsgr
