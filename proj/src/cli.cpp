#include "rsgr/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsgr/compensation.hpp"
#include "rsgr/dataset.hpp"
#include "rsgr/error.hpp"
#include "rsgr/metrics.hpp"
#include "rsgr/scene.hpp"
#include "rsgr/sensor.hpp"

namespace rsgr::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GenArgs
{
  SceneSpec spec;
  std::string kind;
  std::vector<double> velocity{0.0, 0.0};
  std::vector<double> period{32.0, 0.0};
  std::vector<double> affine;
  std::string id = "source";
  std::string out;
};

struct SynthArgs
{
  std::string source;
  std::string source_id;
  std::string mode;
  std::vector<double> e0;
  double xi = 0.0;
  std::string scan = "top";
  double frame_period = 0.0;
  std::size_t count = 1;
  std::optional<double> gamma;
  double t0 = 0.0;
  std::string id;
  std::string pairing_id = "pair0";
  std::string split = "train";
  std::string out;
};

struct CompensateArgs
{
  std::string in;
  std::string manifest;
  std::string id;
  std::string out;
};

struct EeArgs
{
  std::string manifest;
  std::string id;
  std::string out;
};

struct EvalArgs
{
  std::string pred;
  std::string gt;
  std::size_t band_height = 0;
  std::string report;
  std::string scan;
  bool neighbors = false;
};

void add_threads(CLI::App* sub, unsigned& threads)
{
  sub->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
}

const SequenceEntry& pick_source(const Manifest& m, const std::string& id)
{
  if (!id.empty()) {
    if (const SequenceEntry* e = m.find(id))
      return *e;
    throw ParameterError("no sequence '" + id + "' in the source manifest");
  }
  const SequenceEntry* found = nullptr;
  for (const SequenceEntry& e : m.sequences)
    if (e.role == Role::Source) {
      if (found)
        throw ParameterError("source manifest holds several source sequences; pass --source-id");
      found = &e;
    }
  if (!found)
    throw ParameterError("source manifest holds no source sequence");
  return *found;
}

Sequence load_source(const SynthArgs& a)
{
  const fs::path root(a.source);
  const Manifest m = load_manifest(root / kManifestFileName);
  return read_sequence(root, pick_source(m, a.source_id));
}

json synth_flags(const SynthArgs& a)
{
  json f;
  f["source"] = a.source;
  if (!a.source_id.empty())
    f["source_id"] = a.source_id;
  f["e0"] = a.e0;
  f["xi"] = a.xi;
  f["scan"] = a.scan;
  f["frame_period"] = a.frame_period;
  f["count"] = a.count;
  f["gamma"] = a.gamma ? json(*a.gamma) : json(nullptr);
  f["t0"] = a.t0;
  return f;
}

SynthOptions synth_options(const SynthArgs& a)
{
  SynthOptions o;
  o.frame_period_s = a.frame_period;
  o.count = a.count;
  o.gamma_out = a.gamma;
  o.first_trigger_s = a.t0;
  return o;
}

void cmd_gen(GenArgs a, unsigned threads, std::ostream& out)
{
  a.spec.kind = parse_scene_kind(a.kind);
  a.spec.velocity = {a.velocity[0], a.velocity[1]};
  a.spec.sine_period_px = {a.period[0], a.period[1]};
  if (!a.affine.empty())
    std::copy(a.affine.begin(), a.affine.end(), a.spec.affine_rate.begin());
  const Sequence seq = gen_scene(a.spec, threads);

  Dataset ds;
  ds.manifest.name = a.id;
  ds.manifest.sequences.push_back(describe(seq, a.id, Role::Source));
  const SceneSpec& s = a.spec;
  ds.manifest.provenance = {
      {"command", "gen-scenes"},
      {"flags",
       {{"kind", std::string(to_string(s.kind))},
        {"height", s.height},
        {"width", s.width},
        {"channels", s.channels},
        {"subframe_dt", s.subframe_dt_s},
        {"count", s.count},
        {"velocity", a.velocity},
        {"seed", s.seed},
        {"level", s.level},
        {"contrast", s.contrast},
        {"period", a.period},
        {"checker_size", s.checker_px},
        {"cell_size", s.texture_cell_px},
        {"affine_rate", std::vector<double>(s.affine_rate.begin(), s.affine_rate.end())}}}};
  ds.sequences.emplace(a.id, seq);
  write_dataset(ds, a.out);
  out << "wrote " << seq.size() << " subframes to " << a.out << "\n";
}

void cmd_synth(const SynthArgs& a, unsigned threads, std::ostream& out)
{
  const Sequence source = load_source(a);
  const ShutterMode mode = parse_shutter_mode(a.mode);
  const ExposureSchedule schedule(mode, source.front().height(), a.e0.at(0), a.xi,
                                  parse_scan_direction(a.scan));
  const Sequence seq = synth_sequence(source, schedule, synth_options(a), threads);

  const std::string id = a.id.empty() ? std::string(to_string(mode)) : a.id;
  const Role role = mode == ShutterMode::GS ? Role::Gs
                    : mode == ShutterMode::RS ? Role::Rs
                                              : Role::Rsgr;
  Dataset ds;
  ds.manifest.name = id;
  ds.manifest.sequences.push_back(describe(seq, id, role));
  json flags = synth_flags(a);
  flags["mode"] = std::string(to_string(mode));
  ds.manifest.provenance = {{"command", "synth"}, {"flags", flags}};
  ds.sequences.emplace(id, seq);
  write_dataset(ds, a.out);
  out << "wrote " << seq.size() << " " << to_string(mode) << " frames to " << a.out << "\n";
}

void cmd_pair(const SynthArgs& a, unsigned threads, std::ostream& out)
{
  if (a.e0.empty() || a.e0.size() > 2)
    throw ParameterError("--e0 takes one value (shared) or two values (rsgr gs)");
  const double e0_rsgr = a.e0[0];
  const double e0_gs = a.e0.size() == 2 ? a.e0[1] : a.e0[0];
  if (e0_rsgr != e0_gs)
    throw PairingError("first-scanline exposure differs between RSGR (" + std::to_string(e0_rsgr) +
                       " s) and GS (" + std::to_string(e0_gs) + " s)");
  const Split split = parse_split(a.split);

  const Sequence source = load_source(a);
  const std::size_t rows = source.front().height();
  const ScanDirection scan = parse_scan_direction(a.scan);
  const ExposureSchedule rsgr(ShutterMode::RSGR, rows, e0_rsgr, a.xi, scan);
  const ExposureSchedule gs(ShutterMode::GS, rows, e0_gs, a.xi, scan);
  SequencePair pair = synth_pair(source, rsgr, gs, synth_options(a), threads);

  Dataset ds;
  ds.manifest.name = a.pairing_id;
  const std::string rsgr_id = a.pairing_id + "_rsgr";
  const std::string gs_id = a.pairing_id + "_gs";
  ds.manifest.sequences.push_back(describe(pair.rsgr, rsgr_id, Role::Rsgr, a.pairing_id));
  ds.manifest.sequences.push_back(describe(pair.gs, gs_id, Role::Gs, a.pairing_id));
  switch (split) {
  case Split::Train: ds.manifest.splits.train.push_back(a.pairing_id); break;
  case Split::Val: ds.manifest.splits.val.push_back(a.pairing_id); break;
  case Split::Test: ds.manifest.splits.test.push_back(a.pairing_id); break;
  }
  json flags = synth_flags(a);
  flags["pairing_id"] = a.pairing_id;
  flags["split"] = a.split;
  ds.manifest.provenance = {{"command", "pair-synth"}, {"flags", flags}};
  ds.sequences.emplace(rsgr_id, std::move(pair.rsgr));
  ds.sequences.emplace(gs_id, std::move(pair.gs));
  write_dataset(ds, a.out);
  out << "wrote pair '" << a.pairing_id << "' to " << a.out << "\n";
}

void cmd_compensate(const CompensateArgs& a, std::ostream& out)
{
  const Manifest m = load_manifest(a.manifest);
  const std::string id = a.id.empty() ? fs::path(a.in).lexically_normal().filename().string()
                                      : a.id;
  const SequenceEntry* entry = m.find(id);
  if (!entry)
    throw ParameterError("manifest has no entry '" + id + "'");
  if (!entry->schedule)
    throw ParameterError("entry '" + id + "' has no exposure schedule");

  Sequence seq;
  seq.frames = read_frames(a.in);
  seq.frame_period_s = entry->frame_period_s;
  if (seq.empty())
    throw LengthError("no frames in " + a.in);
  seq.validate();
  const std::optional<double> gamma =
      entry->encoding.is_linear() ? std::nullopt : std::optional(entry->encoding.gamma_value());

  Sequence comp;
  Sequence mask;
  comp.frame_period_s = mask.frame_period_s = seq.frame_period_s;
  for (const Frame& f : seq.frames) {
    Compensated c = compensate(f, *entry->schedule, gamma);
    comp.frames.push_back(std::move(c.frame));
    mask.frames.push_back(std::move(c.saturation_mask));
  }

  const std::string comp_id = id + "_comp";
  const std::string mask_dir = id + "_comp_mask";
  Dataset ds;
  ds.manifest.name = comp_id;
  ds.manifest.sequences.push_back(describe(comp, comp_id, Role::Prediction, entry->pairing_id));
  ds.manifest.provenance = {{"command", "compensate"},
                            {"flags", {{"in", a.in}, {"manifest", a.manifest}, {"id", id}}},
                            {"schedule", to_json(*entry->schedule)},
                            {"mask_dir", mask_dir}};
  ds.sequences.emplace(comp_id, std::move(comp));
  write_dataset(ds, a.out);
  write_sequence(mask, fs::path(a.out) / mask_dir);
  out << "wrote " << seq.size() << " compensated frames to " << a.out << "\n";
}

void cmd_ee(const EeArgs& a, std::ostream& out)
{
  const Manifest m = load_manifest(a.manifest);
  fs::create_directories(a.out);
  std::size_t written = 0;
  for (const SequenceEntry& e : m.sequences) {
    if (!a.id.empty() && e.id != a.id)
      continue;
    if (!e.schedule)
      continue;
    write_frame(ee_channel(*e.schedule, e.height, e.width), fs::path(a.out) / (e.id + ".raw"));
    ++written;
  }
  if (!a.id.empty() && written == 0)
    throw ParameterError("no scheduled entry '" + a.id + "' in the manifest");
  out << "wrote " << written << " EE frame(s) to " << a.out << "\n";
}

json score_json(const Score& s)
{
  return {{"psnr_db", s.psnr_db}, {"ssim", s.ssim}};
}

json region_json(const RegionScores& r)
{
  json j;
  for (Region region : kRegions)
    j[std::string(to_string(region))] = score_json(r[static_cast<std::size_t>(region)]);
  return j;
}

void cmd_eval(const EvalArgs& a, unsigned threads, std::ostream& out)
{
  Sequence pred;
  Sequence gt;
  pred.frames = read_frames(a.pred);
  gt.frames = read_frames(a.gt);
  pred.frame_period_s = gt.frame_period_s = 1.0;
  if (gt.empty())
    throw LengthError("no frames in " + a.gt);
  pred.validate();
  gt.validate();

  EvalReport report = region_eval(pred, gt, a.band_height, threads);
  if (!a.scan.empty())
    report.scan_direction = parse_scan_direction(a.scan);
  out << format_report(report);

  std::optional<NeighborMotion> motion;
  if (a.neighbors) {
    motion = neighbor_motion(gt, threads);
    out << "neighbor " << motion->mean.psnr_db << " dB / " << motion->mean.ssim << "\n";
  }

  if (!a.report.empty()) {
    json j;
    j["band_height"] = report.band_height;
    j["frame_height"] = report.frame_height;
    j["frames"] = report.per_frame.size();
    j["scan_direction"] =
        report.scan_direction ? json(std::string(to_string(*report.scan_direction))) : json(nullptr);
    j["aggregate"] = region_json(report.aggregate);
    json per_frame = json::array();
    for (const RegionScores& r : report.per_frame)
      per_frame.push_back(region_json(r));
    j["per_frame"] = std::move(per_frame);
    if (motion) {
      json pairs = json::array();
      for (const Score& s : motion->pairs)
        pairs.push_back(score_json(s));
      j["neighbor_motion"] = {{"pairs", pairs}, {"mean", score_json(motion->mean)}};
    }
    std::ofstream f(a.report, std::ios::binary | std::ios::trunc);
    if (!f)
      throw FormatError("cannot write report " + a.report);
    f << j.dump(2) << "\n";
  }
}

int cmd_validate(const std::string& path, std::ostream& out)
{
  const auto violations = validate_manifest(load_manifest(path));
  for (const Violation& v : violations)
    out << v.rule << "\t" << v.entry << "\t" << v.detail << "\n";
  if (violations.empty())
    out << "ok\n";
  return violations.empty() ? kExitOk : kExitData;
}

void add_synth_options(CLI::App* sub, SynthArgs& a, bool pair)
{
  sub->add_option("--source", a.source, "Source dataset directory")->required();
  sub->add_option("--source-id", a.source_id, "Source sequence id (default: the source entry)");
  auto* e0 = sub->add_option("--e0", a.e0, "First-scanline exposure in seconds")->required();
  if (pair)
    e0->expected(1, 2);
  else
    e0->expected(1);
  sub->add_option("--xi", a.xi, "Readout ratio")->capture_default_str();
  sub->add_option("--scan", a.scan, "Scan direction")
      ->check(CLI::IsMember({"top", "bottom"}))
      ->capture_default_str();
  sub->add_option("--frame-period", a.frame_period, "Seconds between triggers")->required();
  sub->add_option("--count", a.count, "Number of output frames")->capture_default_str();
  sub->add_option("--gamma", a.gamma, "Encode output as p^(1/gamma)");
  sub->add_option("--t0", a.t0, "First trigger time in seconds")->capture_default_str();
  sub->add_option("--out", a.out, "Output dataset directory")->required();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"RSGR / GS exposure simulation and restoration evaluation", "rsgr"};
  app.require_subcommand(1);
  unsigned threads = 0;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-scenes", "Generate a procedural high-FPS source");
  gen_cmd->add_option("--kind", gen.kind, "static | sine | checker | affine")->required();
  gen_cmd->add_option("--height", gen.spec.height)->required();
  gen_cmd->add_option("--width", gen.spec.width)->required();
  gen_cmd->add_option("--channels", gen.spec.channels)->capture_default_str();
  gen_cmd->add_option("--subframe-dt", gen.spec.subframe_dt_s, "Subframe spacing (s)")->required();
  gen_cmd->add_option("--count", gen.spec.count, "Number of subframes")->required();
  gen_cmd->add_option("--velocity", gen.velocity, "vx vy in px/s")->expected(2);
  gen_cmd->add_option("--seed", gen.spec.seed)->capture_default_str();
  gen_cmd->add_option("--level", gen.spec.level)->capture_default_str();
  gen_cmd->add_option("--contrast", gen.spec.contrast)->capture_default_str();
  gen_cmd->add_option("--period", gen.period, "Sine periods px py (0 disables)")->expected(2);
  gen_cmd->add_option("--checker-size", gen.spec.checker_px)->capture_default_str();
  gen_cmd->add_option("--cell-size", gen.spec.texture_cell_px)->capture_default_str();
  gen_cmd->add_option("--affine-rate", gen.affine, "2x3 row-major rate per second")->expected(6);
  gen_cmd->add_option("--id", gen.id)->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output dataset directory")->required();
  add_threads(gen_cmd, threads);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize GS / RS / RSGR frames from a source");
  synth_cmd->add_option("--mode", synth.mode)
      ->required()
      ->check(CLI::IsMember({"gs", "rs", "rsgr"}));
  synth_cmd->add_option("--id", synth.id, "Output sequence id (default: mode)");
  add_synth_options(synth_cmd, synth, false);
  add_threads(synth_cmd, threads);

  SynthArgs pair;
  auto* pair_cmd = app.add_subcommand("pair-synth", "Synthesize a paired RSGR / GS dataset");
  add_synth_options(pair_cmd, pair, true);
  pair_cmd->add_option("--pairing-id", pair.pairing_id)->capture_default_str();
  pair_cmd->add_option("--split", pair.split)
      ->check(CLI::IsMember({"train", "val", "test"}))
      ->capture_default_str();
  add_threads(pair_cmd, threads);

  CompensateArgs comp;
  auto* comp_cmd = app.add_subcommand("compensate", "Per-row exposure gain compensation");
  comp_cmd->add_option("--in", comp.in, "Sequence directory inside a dataset")->required();
  comp_cmd->add_option("--manifest", comp.manifest, "Manifest describing --in")->required();
  comp_cmd->add_option("--id", comp.id, "Entry id (default: name of --in)");
  comp_cmd->add_option("--out", comp.out, "Output dataset directory")->required();
  add_threads(comp_cmd, threads);

  EeArgs ee;
  auto* ee_cmd = app.add_subcommand("ee", "Export exposure-encoding channels");
  ee_cmd->add_option("--manifest", ee.manifest)->required();
  ee_cmd->add_option("--id", ee.id, "Only this entry");
  ee_cmd->add_option("--out", ee.out, "Output directory")->required();
  add_threads(ee_cmd, threads);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "PSNR / SSIM over full frame and U/M/L bands");
  eval_cmd->add_option("--pred", eval.pred, "Predicted sequence directory")->required();
  eval_cmd->add_option("--gt", eval.gt, "Ground-truth sequence directory")->required();
  eval_cmd->add_option("--band-height", eval.band_height, "Band rows (0 = scale 200/640)")
      ->capture_default_str();
  eval_cmd->add_option("--report", eval.report, "Write a JSON report here");
  eval_cmd->add_option("--scan", eval.scan, "Annotate the scan direction")
      ->check(CLI::IsMember({"top", "bottom"}));
  eval_cmd->add_flag("--neighbors", eval.neighbors, "Also report neighboring-frame metrics of --gt");
  add_threads(eval_cmd, threads);

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check manifest invariants");
  validate_cmd->add_option("--manifest", validate_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*gen_cmd)
      cmd_gen(gen, threads, out);
    else if (*synth_cmd)
      cmd_synth(synth, threads, out);
    else if (*pair_cmd)
      cmd_pair(pair, threads, out);
    else if (*comp_cmd)
      cmd_compensate(comp, out);
    else if (*ee_cmd)
      cmd_ee(ee, out);
    else if (*eval_cmd)
      cmd_eval(eval, threads, out);
    else if (*validate_cmd)
      return cmd_validate(validate_path, out);
  } catch (const PairingError& e) {
    err << "pairing error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

} // namespace rsgr::cli
