#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "rsgr/dataset.hpp"
#include "rsgr/error.hpp"

namespace rsgr {

namespace {

constexpr char kMagic[4] = {'R', 'S', 'G', 'R'};

void put_u32(std::string& out, std::uint32_t v)
{
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(std::string_view in, std::size_t offset)
{
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  return v;
}

std::uint32_t to_u32(std::size_t v, const char* what)
{
  if (v > std::numeric_limits<std::uint32_t>::max())
    throw DimensionError(std::string(what) + " does not fit the raw header");
  return static_cast<std::uint32_t>(v);
}

std::uint32_t encoding_tag(const Encoding& enc)
{
  if (enc.is_linear())
    return 0;
  const double scaled = std::round(enc.gamma_value() * 1e6);
  if (scaled < 1.0 || scaled > std::numeric_limits<std::uint32_t>::max())
    throw ParameterError("gamma not representable in the raw header");
  return static_cast<std::uint32_t>(scaled);
}

} // namespace

std::string encode_frame(const Frame& frame)
{
  std::string out;
  out.reserve(kRawHeaderBytes + 4 * frame.size());
  out.append(kMagic, 4);
  put_u32(out, kRawFormatVersion);
  put_u32(out, to_u32(frame.height(), "height"));
  put_u32(out, to_u32(frame.width(), "width"));
  put_u32(out, to_u32(frame.channels(), "channels"));
  put_u32(out, encoding_tag(frame.encoding()));
  for (double v : frame.data())
    put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  return out;
}

Frame decode_frame(std::string_view bytes)
{
  if (bytes.size() < kRawHeaderBytes)
    throw CorruptionError("raw frame shorter than its header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw FormatError("bad magic, expected \"RSGR\"");
  const std::uint32_t version = get_u32(bytes, 4);
  if (version != kRawFormatVersion)
    throw FormatError("unsupported raw frame version " + std::to_string(version));
  const std::size_t h = get_u32(bytes, 8);
  const std::size_t w = get_u32(bytes, 12);
  const std::size_t c = get_u32(bytes, 16);
  const std::uint32_t tag = get_u32(bytes, 20);
  if (h == 0 || w == 0 || (c != 1 && c != 3))
    throw FormatError("raw header has invalid dimensions");

  const std::size_t samples = h * w * c;
  const std::size_t expected = kRawHeaderBytes + 4 * samples;
  if (bytes.size() < expected)
    throw CorruptionError("truncated raw payload: " + std::to_string(bytes.size()) + " of " +
                          std::to_string(expected) + " bytes");
  if (bytes.size() > expected)
    throw CorruptionError("raw payload has " + std::to_string(bytes.size() - expected) +
                          " trailing bytes");

  const Encoding enc = tag == 0 ? Encoding::linear() : Encoding::gamma(tag / 1e6);
  Frame frame(h, w, c, enc);
  auto data = frame.data();
  for (std::size_t i = 0; i < samples; ++i)
    data[i] = std::bit_cast<float>(get_u32(bytes, kRawHeaderBytes + 4 * i));
  return frame;
}

void write_frame(const Frame& frame, const std::filesystem::path& path)
{
  const std::string bytes = encode_frame(frame);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw FormatError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw FormatError("write failed for " + path.string());
}

Frame read_frame(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FormatError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_frame(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const CorruptionError& e) {
    throw CorruptionError(path.string() + ": " + e.what());
  }
}

std::string frame_file_name(std::size_t index)
{
  std::string digits = std::to_string(index);
  if (digits.size() < 6)
    digits.insert(0, 6 - digits.size(), '0');
  return digits + ".raw";
}

void write_sequence(const Sequence& seq, const std::filesystem::path& dir)
{
  seq.validate();
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < seq.size(); ++i)
    write_frame(seq.frames[i], dir / frame_file_name(i));
}

std::vector<Frame> read_frames(const std::filesystem::path& dir)
{
  if (!std::filesystem::is_directory(dir))
    throw FormatError("not a sequence directory: " + dir.string());
  std::vector<Frame> frames;
  for (std::size_t i = 0;; ++i) {
    const auto path = dir / frame_file_name(i);
    if (!std::filesystem::exists(path))
      break;
    frames.push_back(read_frame(path));
  }
  return frames;
}

} // namespace rsgr
