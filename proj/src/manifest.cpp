#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>

#include "rsgr/dataset.hpp"
#include "rsgr/error.hpp"

namespace rsgr {

using nlohmann::json;

std::string_view to_string(Role role)
{
  switch (role) {
  case Role::Source: return "source";
  case Role::Rsgr: return "rsgr";
  case Role::Gs: return "gs";
  case Role::Rs: return "rs";
  case Role::Prediction: return "prediction";
  }
  return "?";
}

Role parse_role(std::string_view text)
{
  for (Role r : {Role::Source, Role::Rsgr, Role::Gs, Role::Rs, Role::Prediction})
    if (to_string(r) == text)
      return r;
  throw ParseError("unknown role '" + std::string(text) + "'");
}

std::string_view to_string(Split split)
{
  switch (split) {
  case Split::Train: return "train";
  case Split::Val: return "val";
  case Split::Test: return "test";
  }
  return "?";
}

Split parse_split(std::string_view text)
{
  for (Split s : {Split::Train, Split::Val, Split::Test})
    if (to_string(s) == text)
      return s;
  throw ParameterError("unknown split '" + std::string(text) + "'");
}

const SequenceEntry* Manifest::find(std::string_view id) const
{
  for (const SequenceEntry& e : sequences)
    if (e.id == id)
      return &e;
  return nullptr;
}

SequenceEntry describe(const Sequence& seq, std::string id, Role role,
                       std::optional<std::string> pairing_id)
{
  if (seq.empty())
    throw LengthError("cannot describe an empty sequence");
  SequenceEntry e;
  e.id = std::move(id);
  e.role = role;
  e.frame_count = seq.size();
  e.height = seq.front().height();
  e.width = seq.front().width();
  e.channels = seq.front().channels();
  e.encoding = seq.front().encoding();
  e.frame_period_s = seq.frame_period_s;
  e.schedule = seq.schedule;
  e.pairing_id = std::move(pairing_id);
  return e;
}

namespace {

std::string_view schedule_mode_name(ShutterMode m)
{
  switch (m) {
  case ShutterMode::GS: return "GS";
  case ShutterMode::RS: return "RS";
  case ShutterMode::RSGR: return "RSGR";
  }
  return "?";
}

std::string_view scan_name(ScanDirection d)
{
  return d == ScanDirection::FirstRowTop ? "FirstRowTop" : "FirstRowBottom";
}

json entry_to_json(const SequenceEntry& e)
{
  json j;
  j["id"] = e.id;
  j["role"] = to_string(e.role);
  j["frame_count"] = e.frame_count;
  j["height"] = e.height;
  j["width"] = e.width;
  j["channels"] = e.channels;
  j["encoding"] = e.encoding.is_linear() ? "linear" : "gamma";
  j["gamma"] = e.encoding.is_linear() ? json(nullptr) : json(e.encoding.gamma_value());
  j["frame_period_s"] = e.frame_period_s;
  j["schedule"] = e.schedule ? to_json(*e.schedule) : json(nullptr);
  j["pairing_id"] = e.pairing_id ? json(*e.pairing_id) : json(nullptr);
  return j;
}

template <class T>
T field(const json& j, const char* key)
{
  if (!j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

SequenceEntry entry_from_json(const json& j)
{
  if (!j.is_object())
    throw ParseError("sequence entry must be an object");
  SequenceEntry e;
  e.id = field<std::string>(j, "id");
  e.role = parse_role(field<std::string>(j, "role"));
  e.frame_count = field<std::size_t>(j, "frame_count");
  e.height = field<std::size_t>(j, "height");
  e.width = field<std::size_t>(j, "width");
  e.channels = field<std::size_t>(j, "channels");
  const auto enc = field<std::string>(j, "encoding");
  if (enc == "linear") {
    e.encoding = Encoding::linear();
  } else if (enc == "gamma") {
    try {
      e.encoding = Encoding::gamma(field<double>(j, "gamma"));
    } catch (const ParameterError& err) {
      throw ParseError(std::string("entry '") + e.id + "': " + err.what());
    }
  } else {
    throw ParseError("unknown encoding '" + enc + "'");
  }
  e.frame_period_s = field<double>(j, "frame_period_s");
  if (j.contains("schedule") && !j.at("schedule").is_null())
    e.schedule = schedule_from_json(j.at("schedule"));
  if (j.contains("pairing_id") && !j.at("pairing_id").is_null())
    e.pairing_id = field<std::string>(j, "pairing_id");
  return e;
}

std::vector<std::string> id_list(const json& splits, const char* key)
{
  if (!splits.contains(key))
    return {};
  return field<std::vector<std::string>>(splits, key);
}

} // namespace

json to_json(const ExposureSchedule& s)
{
  json j;
  j["mode"] = schedule_mode_name(s.mode());
  j["rows"] = s.rows();
  j["base_exposure_s"] = s.base_exposure_s();
  j["readout_ratio"] = s.readout_ratio();
  j["scan_direction"] = scan_name(s.scan_direction());
  return j;
}

ExposureSchedule schedule_from_json(const json& j)
{
  if (!j.is_object())
    throw ParseError("schedule must be an object");
  try {
    return ExposureSchedule(parse_shutter_mode(field<std::string>(j, "mode")),
                            field<std::size_t>(j, "rows"), field<double>(j, "base_exposure_s"),
                            field<double>(j, "readout_ratio"),
                            parse_scan_direction(field<std::string>(j, "scan_direction")));
  } catch (const ParameterError& e) {
    throw ParseError(std::string("invalid schedule: ") + e.what());
  }
}

std::string manifest_to_text(const Manifest& m)
{
  json j;
  j["format_version"] = m.format_version;
  j["name"] = m.name;
  json seqs = json::array();
  for (const SequenceEntry& e : m.sequences)
    seqs.push_back(entry_to_json(e));
  j["sequences"] = std::move(seqs);
  j["splits"] = {{"train", m.splits.train}, {"val", m.splits.val}, {"test", m.splits.test}};
  j["provenance"] = m.provenance;
  return j.dump(2) + "\n";
}

Manifest parse_manifest(std::string_view text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ParseError("manifest root must be an object");

  Manifest m;
  m.format_version = field<int>(j, "format_version");
  m.name = field<std::string>(j, "name");
  const json& seqs = j.contains("sequences") ? j.at("sequences") : json::array();
  if (!seqs.is_array())
    throw ParseError("'sequences' must be an array");
  for (const json& e : seqs)
    m.sequences.push_back(entry_from_json(e));
  if (j.contains("splits")) {
    const json& s = j.at("splits");
    if (!s.is_object())
      throw ParseError("'splits' must be an object");
    m.splits.train = id_list(s, "train");
    m.splits.val = id_list(s, "val");
    m.splits.test = id_list(s, "test");
  }
  if (j.contains("provenance"))
    m.provenance = j.at("provenance");
  return m;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path)
{
  const std::string text = manifest_to_text(manifest);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw FormatError("cannot open " + path.string() + " for writing");
  out << text;
}

Manifest load_manifest(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FormatError("cannot open manifest " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_manifest(text);
}

std::vector<Violation> validate_manifest(const Manifest& m)
{
  std::vector<Violation> out;
  auto report = [&](std::string entry, const char* rule, std::string detail) {
    out.push_back({std::move(entry), rule, std::move(detail)});
  };

  if (m.format_version != kManifestVersion)
    report("manifest", "field", "unsupported format_version " + std::to_string(m.format_version));

  std::set<std::string> ids;
  for (const SequenceEntry& e : m.sequences) {
    if (!ids.insert(e.id).second)
      report(e.id, "field", "duplicate sequence id");
    if (e.id.empty() || e.id.find('/') != std::string::npos || e.id == "." || e.id == "..")
      report(e.id, "field", "id must be a plain directory name");
    if (e.frame_count == 0 || e.height == 0 || e.width == 0)
      report(e.id, "field", "frame count and dimensions must be non-zero");
    if (e.channels != 1 && e.channels != 3)
      report(e.id, "field", "channels must be 1 or 3");
    if (!(e.frame_period_s > 0.0) || !std::isfinite(e.frame_period_s))
      report(e.id, "field", "frame_period_s must be > 0");
    if (e.schedule && e.schedule->rows() != e.height)
      report(e.id, "field", "schedule rows differ from frame height");

    const std::optional<ShutterMode> expected_mode =
        e.role == Role::Rsgr ? std::optional(ShutterMode::RSGR)
        : e.role == Role::Gs ? std::optional(ShutterMode::GS)
        : e.role == Role::Rs ? std::optional(ShutterMode::RS)
                             : std::nullopt;
    if (expected_mode && !e.schedule)
      report(e.id, "field", "role requires a schedule");
    else if (expected_mode && e.schedule->mode() != *expected_mode)
      report(e.id, "field", "schedule mode does not match role");
  }

  std::set<std::string> pairing_ids;
  for (const SequenceEntry& e : m.sequences)
    if (e.pairing_id)
      pairing_ids.insert(*e.pairing_id);

  for (const SequenceEntry& r : m.sequences) {
    if (r.role != Role::Rsgr)
      continue;
    if (!r.pairing_id) {
      report(r.id, "pairing", "rsgr entry has no pairing id");
      continue;
    }
    std::vector<const SequenceEntry*> partners;
    for (const SequenceEntry& g : m.sequences)
      if (g.role == Role::Gs && g.pairing_id == r.pairing_id)
        partners.push_back(&g);
    if (partners.size() != 1) {
      report(r.id, "pairing",
             "expected exactly one gs partner for pairing '" + *r.pairing_id + "', found " +
                 std::to_string(partners.size()));
      continue;
    }
    const SequenceEntry& g = *partners.front();
    if (g.height != r.height || g.width != r.width || g.channels != r.channels)
      report(r.id, "pairing", "dimensions differ from gs partner '" + g.id + "'");
    if (g.frame_count != r.frame_count)
      report(r.id, "pairing", "frame count differs from gs partner '" + g.id + "'");
    if (g.frame_period_s != r.frame_period_s)
      report(r.id, "pairing", "frame period differs from gs partner '" + g.id + "'");
    if (g.schedule && r.schedule &&
        g.schedule->base_exposure_s() != r.schedule->base_exposure_s())
      report(r.id, "pairing", "first-scanline exposure differs from gs partner '" + g.id + "'");
  }

  const std::pair<const char*, const std::vector<std::string>*> splits[] = {
      {"train", &m.splits.train}, {"val", &m.splits.val}, {"test", &m.splits.test}};
  std::map<std::string, std::vector<std::string>> membership;
  for (const auto& [name, list] : splits)
    for (const std::string& pid : std::set<std::string>(list->begin(), list->end())) {
      membership[pid].push_back(name);
      if (!pairing_ids.contains(pid))
        report(pid, "split", std::string("split '") + name + "' names an unknown pairing id");
    }
  for (const auto& [pid, names] : membership)
    if (names.size() > 1) {
      std::string joined;
      for (const auto& n : names)
        joined += (joined.empty() ? "" : ", ") + n;
      report(pid, "split", "pairing id assigned to more than one split (" + joined + ")");
    }
  return out;
}

} // namespace rsgr
