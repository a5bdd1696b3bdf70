#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rsgr {

/// Pixel value encoding: linear radiance, or gamma encoded p^(1/gamma).
class Encoding
{
public:
  static Encoding linear() { return Encoding(0.0); }
  static Encoding gamma(double gamma);

  bool is_linear() const { return gamma_ == 0.0; }
  // 0 for linear frames.
  double gamma_value() const { return gamma_; }

  double encode(double linear_value) const;
  double decode(double encoded_value) const;

  friend bool operator==(const Encoding&, const Encoding&) = default;

private:
  explicit Encoding(double g) : gamma_(g) {}
  double gamma_;
};

/// Same kind and, for gamma, equal to the 1e-6 resolution the raw format keeps.
bool same_encoding(const Encoding& a, const Encoding& b);

/// H x W x C intensity image, row-major with interleaved channels.
///
/// Samples are held in double precision; the on-disk format stores float32.
/// Values are expected to lie in [0, 1] but are not range-checked on every
/// write; `check_range()` is the explicit validation point.
class Frame
{
public:
  Frame() = default;
  Frame(std::size_t height, std::size_t width, std::size_t channels,
        Encoding encoding = Encoding::linear(), double fill = 0.0);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }
  std::size_t row_stride() const { return width_ * channels_; }
  const Encoding& encoding() const { return encoding_; }
  void set_encoding(Encoding e) { encoding_ = e; }

  double& at(std::size_t r, std::size_t c, std::size_t ch = 0)
  {
    return data_[(r * width_ + c) * channels_ + ch];
  }
  double at(std::size_t r, std::size_t c, std::size_t ch = 0) const
  {
    return data_[(r * width_ + c) * channels_ + ch];
  }

  std::span<double> row(std::size_t r) { return {data_.data() + r * row_stride(), row_stride()}; }
  std::span<const double> row(std::size_t r) const
  {
    return {data_.data() + r * row_stride(), row_stride()};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool same_shape(const Frame& other) const
  {
    return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
  }

  /// Rows [first, first + count) as a new frame.
  Frame crop_rows(std::size_t first, std::size_t count) const;

  /// Throws ParameterError if any sample is non-finite or outside [0, 1].
  void check_range() const;

  friend bool operator==(const Frame&, const Frame&) = default;

private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::size_t channels_ = 0;
  Encoding encoding_ = Encoding::linear();
  std::vector<double> data_;
};

/// ITU-R BT.601 luma for 3-channel frames; single-channel frames are copied.
Frame to_luma(const Frame& frame);

} // namespace rsgr
