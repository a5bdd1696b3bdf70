#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "rsgr/sequence.hpp"

namespace rsgr {

enum class SceneKind { Static, TranslatingSine, TranslatingChecker, AffineTexture };

std::string_view to_string(SceneKind kind);
SceneKind parse_scene_kind(std::string_view text);

/// Procedural linear-radiance scene sampled at a fixed subframe rate.
///
/// Every pattern is periodic on the W x H torus (wrap-around boundary). Pixel
/// values are level + contrast * (p - 0.5) with the pattern value p in [0, 1].
/// Channel c of a 3-channel scene samples the pattern displaced by
/// (17c, 11c) pixels.
struct SceneSpec
{
  SceneKind kind = SceneKind::Static;
  std::size_t height = 64;
  std::size_t width = 64;
  std::size_t channels = 1;
  double subframe_dt_s = 1e-3;
  std::size_t count = 1;
  std::array<double, 2> velocity{0.0, 0.0};      // (x, y) px/s; ignored by Static
  std::array<double, 6> affine_rate{};           // row-major 2x3 per second, AffineTexture only
  std::uint64_t seed = 0;
  double level = 0.5;
  double contrast = 0.8;
  std::array<double, 2> sine_period_px{32.0, 0.0}; // 0 disables an axis
  std::size_t checker_px = 8;
  std::size_t texture_cell_px = 8;
};

/// Throws DimensionError / ParameterError for an unusable spec.
void validate(const SceneSpec& spec);

/// Subframe `index` of the scene (time index * subframe_dt_s).
Frame scene_frame(const SceneSpec& spec, std::size_t index);

/// All `count` subframes. Bit-identical for identical specs regardless of
/// the thread count.
Sequence gen_scene(const SceneSpec& spec, unsigned threads = 0);

/// Counter-based uniform variate in [0, 1): the SplitMix64 output function
/// applied to state seed + (counter + 1) * 0x9E3779B97F4A7C15, top 53 bits
/// scaled by 2^-53. Stateless, so any lattice cell can be drawn independently.
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

} // namespace rsgr
