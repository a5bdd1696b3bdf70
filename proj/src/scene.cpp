#include "rsgr/scene.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "rsgr/error.hpp"
#include "rsgr/parallel.hpp"

namespace rsgr {

namespace {

constexpr double kChannelOffsetX = 17.0;
constexpr double kChannelOffsetY = 11.0;

// Shifts within this distance of an integer are treated as integer so that
// integer per-subframe motion reproduces exact circular shifts.
constexpr double kSnapTolerance = 1e-9;

double snap(double shift)
{
  const double r = std::round(shift);
  return std::abs(shift - r) < kSnapTolerance ? r : shift;
}

double wrap(double u, double period)
{
  double w = std::fmod(u, period);
  if (w < 0.0)
    w += period;
  // fmod of a tiny negative value can round up to exactly `period`
  return w >= period ? 0.0 : w;
}

// Pattern values on the integer pixel grid, sampled bilinearly with wrap.
class Grid
{
public:
  Grid(std::size_t h, std::size_t w) : h_(h), w_(w), v_(h * w, 0.0) {}

  double& at(std::size_t y, std::size_t x) { return v_[y * w_ + x]; }
  double at(std::size_t y, std::size_t x) const { return v_[y * w_ + x]; }

  double sample(double x, double y) const
  {
    const double u = wrap(x, static_cast<double>(w_));
    const double v = wrap(y, static_cast<double>(h_));
    const double fu = std::floor(u);
    const double fv = std::floor(v);
    const double tx = u - fu;
    const double ty = v - fv;
    const std::size_t x0 = static_cast<std::size_t>(fu) % w_;
    const std::size_t y0 = static_cast<std::size_t>(fv) % h_;
    const std::size_t x1 = (x0 + 1) % w_;
    const std::size_t y1 = (y0 + 1) % h_;
    const double top = (1.0 - tx) * at(y0, x0) + tx * at(y0, x1);
    const double bottom = (1.0 - tx) * at(y1, x0) + tx * at(y1, x1);
    return (1.0 - ty) * top + ty * bottom;
  }

private:
  std::size_t h_;
  std::size_t w_;
  std::vector<double> v_;
};

Grid checker_grid(const SceneSpec& spec)
{
  Grid g(spec.height, spec.width);
  for (std::size_t y = 0; y < spec.height; ++y)
    for (std::size_t x = 0; x < spec.width; ++x)
      g.at(y, x) = ((x / spec.checker_px + y / spec.checker_px) % 2 == 0) ? 1.0 : 0.0;
  return g;
}

double smoothstep(double t)
{
  return t * t * (3.0 - 2.0 * t);
}

// Periodic value noise: random lattice values interpolated with smoothstep.
Grid texture_grid(const SceneSpec& spec)
{
  const auto cells = [](std::size_t extent, std::size_t cell) {
    const auto n = static_cast<std::size_t>(
        std::llround(static_cast<double>(extent) / static_cast<double>(cell)));
    return n == 0 ? std::size_t{1} : n;
  };
  const std::size_t gx = cells(spec.width, spec.texture_cell_px);
  const std::size_t gy = cells(spec.height, spec.texture_cell_px);
  std::vector<double> lattice(gx * gy);
  for (std::size_t i = 0; i < lattice.size(); ++i)
    lattice[i] = counter_uniform(spec.seed, i);

  Grid g(spec.height, spec.width);
  for (std::size_t y = 0; y < spec.height; ++y) {
    const double fy = static_cast<double>(y * gy) / static_cast<double>(spec.height);
    const std::size_t j0 = static_cast<std::size_t>(fy);
    const std::size_t j1 = (j0 + 1) % gy;
    const double sy = smoothstep(fy - static_cast<double>(j0));
    for (std::size_t x = 0; x < spec.width; ++x) {
      const double fx = static_cast<double>(x * gx) / static_cast<double>(spec.width);
      const std::size_t i0 = static_cast<std::size_t>(fx);
      const std::size_t i1 = (i0 + 1) % gx;
      const double sx = smoothstep(fx - static_cast<double>(i0));
      const double top = (1.0 - sx) * lattice[j0 * gx + i0] + sx * lattice[j0 * gx + i1];
      const double bottom = (1.0 - sx) * lattice[j1 * gx + i0] + sx * lattice[j1 * gx + i1];
      g.at(y, x) = (1.0 - sy) * top + sy * bottom;
    }
  }
  return g;
}

// Sum of the enabled axis sinusoids, mapped to [0, 1]. Separable, so the
// per-axis terms are tabulated once per frame.
void render_sine(const SceneSpec& spec, double shift_x, double shift_y, Frame& out)
{
  const double px = spec.sine_period_px[0];
  const double py = spec.sine_period_px[1];
  const int axes = (px > 0.0 ? 1 : 0) + (py > 0.0 ? 1 : 0);
  const double w = static_cast<double>(spec.width);
  const double h = static_cast<double>(spec.height);

  auto axis_table = [](std::size_t n, double extent, double period, double shift) {
    std::vector<double> t(n, 0.0);
    if (period <= 0.0)
      return t;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = wrap(static_cast<double>(i) - shift, extent);
      const double phase = std::fmod(u, period);
      t[i] = std::sin(2.0 * std::numbers::pi * phase / period);
    }
    return t;
  };

  for (std::size_t c = 0; c < spec.channels; ++c) {
    const double cx = static_cast<double>(c) * kChannelOffsetX;
    const double cy = static_cast<double>(c) * kChannelOffsetY;
    const auto tx = axis_table(spec.width, w, px, shift_x + cx);
    const auto ty = axis_table(spec.height, h, py, shift_y + cy);
    for (std::size_t y = 0; y < spec.height; ++y)
      for (std::size_t x = 0; x < spec.width; ++x) {
        const double p = axes == 0 ? 0.5 : 0.5 + 0.5 * (tx[x] + ty[y]) / axes;
        out.at(y, x, c) = spec.level + spec.contrast * (p - 0.5);
      }
  }
}

void render_translated(const SceneSpec& spec, const Grid& grid, double shift_x, double shift_y,
                       Frame& out)
{
  for (std::size_t c = 0; c < spec.channels; ++c) {
    const double cx = static_cast<double>(c) * kChannelOffsetX;
    const double cy = static_cast<double>(c) * kChannelOffsetY;
    for (std::size_t y = 0; y < spec.height; ++y)
      for (std::size_t x = 0; x < spec.width; ++x) {
        const double p = grid.sample(static_cast<double>(x) - shift_x - cx,
                                     static_cast<double>(y) - shift_y - cy);
        out.at(y, x, c) = spec.level + spec.contrast * (p - 0.5);
      }
  }
}

void render_affine(const SceneSpec& spec, const Grid& grid, double time_s, Frame& out)
{
  const auto& a = spec.affine_rate;
  const double center_x = 0.5 * static_cast<double>(spec.width);
  const double center_y = 0.5 * static_cast<double>(spec.height);
  const double move_x = snap(spec.velocity[0] * time_s);
  const double move_y = snap(spec.velocity[1] * time_s);
  for (std::size_t c = 0; c < spec.channels; ++c) {
    const double cx = static_cast<double>(c) * kChannelOffsetX;
    const double cy = static_cast<double>(c) * kChannelOffsetY;
    for (std::size_t y = 0; y < spec.height; ++y) {
      const double dy = static_cast<double>(y) - center_y;
      for (std::size_t x = 0; x < spec.width; ++x) {
        const double dx = static_cast<double>(x) - center_x;
        const double qx = center_x + dx + time_s * (a[0] * dx + a[1] * dy + a[2]) - move_x - cx;
        const double qy = center_y + dy + time_s * (a[3] * dx + a[4] * dy + a[5]) - move_y - cy;
        out.at(y, x, c) = spec.level + spec.contrast * (grid.sample(qx, qy) - 0.5);
      }
    }
  }
}

Frame render(const SceneSpec& spec, const Grid* grid, std::size_t index)
{
  Frame out(spec.height, spec.width, spec.channels, Encoding::linear(), spec.level);
  const double t = static_cast<double>(index) * spec.subframe_dt_s;
  const double shift_x = snap(spec.velocity[0] * t);
  const double shift_y = snap(spec.velocity[1] * t);
  switch (spec.kind) {
  case SceneKind::Static:
    break;
  case SceneKind::TranslatingSine:
    render_sine(spec, shift_x, shift_y, out);
    break;
  case SceneKind::TranslatingChecker:
    render_translated(spec, *grid, shift_x, shift_y, out);
    break;
  case SceneKind::AffineTexture:
    render_affine(spec, *grid, t, out);
    break;
  }
  return out;
}

std::optional<Grid> base_grid(const SceneSpec& spec)
{
  if (spec.kind == SceneKind::TranslatingChecker)
    return checker_grid(spec);
  if (spec.kind == SceneKind::AffineTexture)
    return texture_grid(spec);
  return std::nullopt;
}

} // namespace

std::string_view to_string(SceneKind kind)
{
  switch (kind) {
  case SceneKind::Static: return "static";
  case SceneKind::TranslatingSine: return "sine";
  case SceneKind::TranslatingChecker: return "checker";
  case SceneKind::AffineTexture: return "affine";
  }
  return "?";
}

SceneKind parse_scene_kind(std::string_view text)
{
  if (text == "static" || text == "Static")
    return SceneKind::Static;
  if (text == "sine" || text == "TranslatingSine")
    return SceneKind::TranslatingSine;
  if (text == "checker" || text == "TranslatingChecker")
    return SceneKind::TranslatingChecker;
  if (text == "affine" || text == "AffineTexture")
    return SceneKind::AffineTexture;
  throw ParameterError("unknown scene kind '" + std::string(text) + "'");
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter)
{
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

void validate(const SceneSpec& spec)
{
  if (spec.height == 0 || spec.width == 0)
    throw DimensionError("scene dimensions must be non-zero");
  if (spec.channels != 1 && spec.channels != 3)
    throw DimensionError("scene must have 1 or 3 channels");
  if (!std::isfinite(spec.subframe_dt_s) || spec.subframe_dt_s <= 0.0)
    throw ParameterError("subframe spacing must be finite and > 0");
  if (spec.count == 0)
    throw ParameterError("scene needs at least one subframe");
  for (double v : spec.velocity)
    if (!std::isfinite(v))
      throw ParameterError("scene velocity must be finite");
  for (double v : spec.affine_rate)
    if (!std::isfinite(v))
      throw ParameterError("affine rate must be finite");
  for (double p : spec.sine_period_px)
    if (!std::isfinite(p) || p < 0.0)
      throw ParameterError("sine period must be finite and >= 0");
  if (!std::isfinite(spec.level) || !std::isfinite(spec.contrast) || spec.contrast < 0.0 ||
      spec.level - 0.5 * spec.contrast < 0.0 || spec.level + 0.5 * spec.contrast > 1.0)
    throw ParameterError("level +/- contrast/2 must stay within [0, 1]");
  if (spec.checker_px == 0 || spec.texture_cell_px == 0)
    throw ParameterError("checker and texture cell sizes must be >= 1");
}

Frame scene_frame(const SceneSpec& spec, std::size_t index)
{
  validate(spec);
  const auto grid = base_grid(spec);
  return render(spec, grid ? &*grid : nullptr, index);
}

Sequence gen_scene(const SceneSpec& spec, unsigned threads)
{
  validate(spec);
  const auto grid = base_grid(spec);
  Sequence seq;
  seq.frame_period_s = spec.subframe_dt_s;
  seq.frames.resize(spec.count);
  parallel_for(spec.count, threads, [&](std::size_t i) {
    seq.frames[i] = render(spec, grid ? &*grid : nullptr, i);
  });
  return seq;
}

} // namespace rsgr
