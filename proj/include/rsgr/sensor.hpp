#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "rsgr/exposure.hpp"
#include "rsgr/sequence.hpp"

namespace rsgr {

/// One exposure of a linear high-FPS source.
///
/// Row r with window (s, d) collects (1/E0) * integral of the source row over
/// [trigger + s, trigger + s + d], treating each subframe as constant over its
/// interval and weighting partial subframes by their overlap. The charge is
/// normalized by E0, not by d, so rows exposed longer come out brighter; the
/// result is clamped to [0, 1] to model full-well saturation.
///
/// Throws EncodingError for a non-linear source, DimensionError when the
/// schedule's row count differs from the source height, and
/// TemporalRangeError when a window falls outside the source.
Frame integrate_exposure(const Sequence& source, const ExposureSchedule& schedule,
                         double trigger_s, unsigned threads = 0);

struct SynthOptions
{
  double frame_period_s = 0.0;
  std::size_t count = 1;
  std::optional<double> gamma_out;  // encode p^(1/gamma) after clamping
  double first_trigger_s = 0.0;
};

/// Exposures at triggers first_trigger_s + i * frame_period_s.
Sequence synth_sequence(const Sequence& source, const ExposureSchedule& schedule,
                        const SynthOptions& options, unsigned threads = 0);

struct SequencePair
{
  Sequence rsgr;
  Sequence gs;
};

/// Paired RSGR / GS synthesis at identical triggers. The first scanline of
/// both cameras must share its exposure, otherwise PairingError.
SequencePair synth_pair(const Sequence& source, const ExposureSchedule& rsgr_schedule,
                        const ExposureSchedule& gs_schedule, const SynthOptions& options,
                        unsigned threads = 0);

} // namespace rsgr
