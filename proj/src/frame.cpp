#include "rsgr/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsgr/error.hpp"
#include "rsgr/sequence.hpp"

namespace rsgr {

Encoding Encoding::gamma(double g)
{
  if (!std::isfinite(g) || g <= 0.0)
    throw ParameterError("gamma must be finite and > 0");
  return Encoding(g);
}

double Encoding::encode(double v) const
{
  return is_linear() ? v : std::pow(v, 1.0 / gamma_);
}

double Encoding::decode(double v) const
{
  return is_linear() ? v : std::pow(v, gamma_);
}

bool same_encoding(const Encoding& a, const Encoding& b)
{
  if (a.is_linear() || b.is_linear())
    return a.is_linear() == b.is_linear();
  return std::abs(a.gamma_value() - b.gamma_value()) <= 5e-7;
}

Frame::Frame(std::size_t height, std::size_t width, std::size_t channels, Encoding encoding,
             double fill)
  : height_(height), width_(width), channels_(channels), encoding_(encoding)
{
  if (height == 0 || width == 0)
    throw DimensionError("frame dimensions must be non-zero");
  if (channels != 1 && channels != 3)
    throw DimensionError("frame must have 1 or 3 channels, got " + std::to_string(channels));
  data_.assign(height * width * channels, fill);
}

Frame Frame::crop_rows(std::size_t first, std::size_t count) const
{
  if (count == 0 || first + count > height_)
    throw DimensionError("row crop [" + std::to_string(first) + ", " +
                         std::to_string(first + count) + ") outside frame of height " +
                         std::to_string(height_));
  Frame out(count, width_, channels_, encoding_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * row_stride()),
              count * row_stride(), out.data_.begin());
  return out;
}

void Frame::check_range() const
{
  for (double v : data_)
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
      throw ParameterError("frame sample outside [0, 1]");
}

Frame to_luma(const Frame& frame)
{
  if (frame.channels() == 1)
    return frame;
  Frame out(frame.height(), frame.width(), 1, frame.encoding());
  const auto src = frame.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
  return out;
}

void Sequence::validate() const
{
  if (!(frame_period_s > 0.0) || !std::isfinite(frame_period_s))
    throw ParameterError("sequence frame period must be > 0");
  if (frames.empty())
    return;
  const Frame& first = frames.front();
  for (const Frame& f : frames) {
    if (!f.same_shape(first))
      throw DimensionError("sequence frames differ in shape");
    if (f.encoding() != first.encoding())
      throw EncodingError("sequence frames differ in encoding");
  }
}

} // namespace rsgr
