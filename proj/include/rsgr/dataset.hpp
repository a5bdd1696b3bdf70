#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rsgr/exposure.hpp"
#include "rsgr/sequence.hpp"

namespace rsgr {

// ---------------------------------------------------------------------------
// Raw frame files
//
//   offset  size  field
//   0       4     magic "RSGR"
//   4       4     format version (u32 LE, currently 1)
//   8       4     height (u32 LE)
//   12      4     width (u32 LE)
//   16      4     channels (u32 LE)
//   20      4     encoding tag (u32 LE): 0 = linear, else round(gamma * 1e6)
//   24      ...   height * width * channels float32 LE, row-major, channels
//                 interleaved
//
// Samples are stored as float32, so writing rounds the in-memory doubles.
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t kRawFormatVersion = 1;
inline constexpr std::size_t kRawHeaderBytes = 24;

std::string encode_frame(const Frame& frame);
Frame decode_frame(std::string_view bytes);

void write_frame(const Frame& frame, const std::filesystem::path& path);
Frame read_frame(const std::filesystem::path& path);

/// Name of frame `index` inside a sequence directory: six-digit zero padded
/// decimal index plus ".raw".
std::string frame_file_name(std::size_t index);

/// Writes every frame into `dir` (created if needed). Metadata such as the
/// frame period lives in the dataset manifest.
void write_sequence(const Sequence& seq, const std::filesystem::path& dir);

/// Frames 000000.raw, 000001.raw, ... until the first missing index.
std::vector<Frame> read_frames(const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

inline constexpr int kManifestVersion = 1;
inline constexpr std::string_view kManifestFileName = "manifest.json";

enum class Role { Source, Rsgr, Gs, Rs, Prediction };
std::string_view to_string(Role role);
Role parse_role(std::string_view text);

enum class Split { Train, Val, Test };
std::string_view to_string(Split split);
Split parse_split(std::string_view text);

/// One sequence of a dataset. Frames live in `<dataset root>/<id>/`.
struct SequenceEntry
{
  std::string id;
  Role role = Role::Source;
  std::size_t frame_count = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;
  Encoding encoding = Encoding::linear();
  double frame_period_s = 0.0;
  std::optional<ExposureSchedule> schedule;
  std::optional<std::string> pairing_id;
};

struct Splits
{
  std::vector<std::string> train; // pairing ids
  std::vector<std::string> val;
  std::vector<std::string> test;
};

struct Manifest
{
  int format_version = kManifestVersion;
  std::string name;
  std::vector<SequenceEntry> sequences;
  Splits splits;
  // Free-form record of how the dataset was produced (CLI flags etc.).
  nlohmann::json provenance = nlohmann::json::object();

  const SequenceEntry* find(std::string_view id) const;
};

SequenceEntry describe(const Sequence& seq, std::string id, Role role,
                       std::optional<std::string> pairing_id = std::nullopt);

nlohmann::json to_json(const ExposureSchedule& schedule);
ExposureSchedule schedule_from_json(const nlohmann::json& j);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string manifest_to_text(const Manifest& manifest);
/// Throws ParseError on malformed JSON or missing / mistyped fields.
Manifest parse_manifest(std::string_view text);

void save_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest load_manifest(const std::filesystem::path& path);

struct Violation
{
  std::string entry; // sequence id, pairing id or split name
  std::string rule;  // "pairing", "split", "field"
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty iff every manifest invariant holds.
std::vector<Violation> validate_manifest(const Manifest& manifest);

// ---------------------------------------------------------------------------
// Datasets: manifest.json at the root plus one directory per sequence.
// ---------------------------------------------------------------------------

struct Dataset
{
  Manifest manifest;
  std::map<std::string, Sequence> sequences; // keyed by entry id
};

/// Writes the manifest and every listed sequence. The caller must own `root`.
void write_dataset(const Dataset& dataset, const std::filesystem::path& root);

/// Reads the sequence of one manifest entry and checks it against the entry.
Sequence read_sequence(const std::filesystem::path& root, const SequenceEntry& entry);

Dataset read_dataset(const std::filesystem::path& root);

} // namespace rsgr
