#include "rsgr/dataset.hpp"
#include "rsgr/error.hpp"

namespace rsgr {


void write_dataset(const Dataset& dataset, const std::filesystem::path& root)
{
  std::filesystem::create_directories(root);
  for (const SequenceEntry& e : dataset.manifest.sequences) {
    const auto it = dataset.sequences.find(e.id);
    if (it == dataset.sequences.end())
      throw ParameterError("manifest entry '" + e.id + "' has no sequence data");
    write_sequence(it->second, root / e.id);
  }
  save_manifest(dataset.manifest, root / kManifestFileName);
}

Sequence read_sequence(const std::filesystem::path& root, const SequenceEntry& entry)
{
  Sequence seq;
  seq.frames = read_frames(root / entry.id);
  seq.frame_period_s = entry.frame_period_s;
  seq.schedule = entry.schedule;
  if (seq.size() != entry.frame_count)
    throw CorruptionError("sequence '" + entry.id + "' has " + std::to_string(seq.size()) +
                          " frames, manifest lists " + std::to_string(entry.frame_count));
  for (const Frame& f : seq.frames) {
    if (f.height() != entry.height || f.width() != entry.width || f.channels() != entry.channels)
      throw CorruptionError("frame shape of '" + entry.id + "' disagrees with the manifest");
    if (!same_encoding(f.encoding(), entry.encoding))
      throw EncodingError("frame encoding of '" + entry.id + "' disagrees with the manifest");
  }
  return seq;
}

Dataset read_dataset(const std::filesystem::path& root)
{
  Dataset ds;
  ds.manifest = load_manifest(root / kManifestFileName);
  for (const SequenceEntry& e : ds.manifest.sequences)
    ds.sequences.emplace(e.id, read_sequence(root, e));
  return ds;
}

} // namespace rsgr
