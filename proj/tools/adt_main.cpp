// Copyright 2026 the ADT authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adt/adt.hpp"
#include "adt/patch_images.hpp"
#include "adt/png_io.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
  uint64_t seed = 0;
  int jobs = 0;  // 0 = hardware default
  std::string out;
  bool strict = false;
  bool table = false;
};

int effective_jobs(const GlobalOpts& g) { return g.jobs > 0 ? g.jobs : adt::default_jobs(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw adt::IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw adt::IoError("cannot read " + path);
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw adt::IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw adt::IoError("cannot write " + path);
}

/// Emits the result document to --out or stdout. Every document carries the
/// tool version, the seed, and the effective config so runs are auditable.
void emit(const GlobalOpts& g, json doc) {
  doc["tool_version"] = adt::kToolVersion;
  doc["seed"] = g.seed;
  const std::string text = doc.dump(2) + "\n";
  if (g.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    write_file(g.out, text);
  }
}

/// Loads a COCO document. Output documents of `adt tile` wrap the dataset
/// under a "dataset" key; those are accepted transparently so stages
/// compose.
adt::DatasetIndex load_dataset(const std::string& path, bool strict) {
  const std::string text = read_file(path);
  json probe;
  try {
    probe = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "invalid JSON at byte " << e.byte << ": " << e.what();
    throw adt::ParseError(os.str());
  }
  adt::ParseOptions opts;
  opts.strict_bounds = strict;
  if (probe.is_object() && probe.contains("dataset") && probe["dataset"].is_object()) {
    return adt::parse_coco(probe["dataset"].dump(), opts);
  }
  adt::DatasetIndex ds = adt::parse_coco(text, opts);
  for (const auto& w : ds.warnings()) adt::log_warn(w);
  return ds;
}

json stats_to_json(const adt::DatasetIndex& ds, const adt::ClassStats& st) {
  json j;
  j["labelled"] = st.labelled_images;
  j["unlabelled"] = st.unlabelled_images;
  j["total_images"] = st.total_images();
  j["total_annotations"] = st.total_annotations();
  j["per_class"] = json::array();
  for (const auto& [cat_id, count] : st.instances_per_class) {
    j["per_class"].push_back(
        {{"category_id", cat_id}, {"name", ds.category(cat_id).name}, {"count", count}});
  }
  return j;
}

void print_stats_table(const adt::DatasetIndex& ds, const adt::ClassStats& st) {
  std::printf("%-24s %10s\n", "class", "instances");
  for (const auto& [cat_id, count] : st.instances_per_class) {
    std::printf("%-24s %10lld\n", ds.category(cat_id).name.c_str(), static_cast<long long>(count));
  }
  std::printf("%-24s %10lld\n", "labelled images", static_cast<long long>(st.labelled_images));
  std::printf("%-24s %10lld\n", "unlabelled images", static_cast<long long>(st.unlabelled_images));
  std::printf("%-24s %10lld\n", "total images", static_cast<long long>(st.total_images()));
}

int cmd_stats(const GlobalOpts& g, const std::string& coco_path) {
  const adt::DatasetIndex ds = load_dataset(coco_path, g.strict);
  const adt::ClassStats st = adt::stats(ds);
  json doc = stats_to_json(ds, st);
  doc["command"] = "stats";
  doc["config"] = {{"input", coco_path}, {"strict", g.strict}};
  if (g.table) {
    print_stats_table(ds, st);
    if (!g.out.empty()) emit(g, std::move(doc));
  } else {
    emit(g, std::move(doc));
  }
  return adt::kExitOk;
}

int cmd_group(const GlobalOpts& g, const std::string& coco_path, const std::string& policy,
              int64_t t_freq, int64_t t_rare) {
  const adt::DatasetIndex ds = load_dataset(coco_path, g.strict);
  const adt::ClassStats st = adt::stats(ds);
  adt::GroupingPolicy pol;
  if (policy == "rank-thirds") {
    pol = adt::RankThirdsPolicy{};
  } else if (policy == "thresholds") {
    pol = adt::ThresholdsPolicy{t_freq, t_rare};
  } else {
    throw adt::ConfigError("unknown grouping policy: " + policy);
  }
  const adt::ClassGrouping grouping = adt::group_classes(st, pol);
  json groups = json::object();
  json counts = {{"frequent", 0}, {"common", 0}, {"rare", 0}};
  for (const auto& [cat_id, grp] : grouping.group_of) {
    const std::string name = adt::to_string(grp);
    groups[std::to_string(cat_id)] = name;
    counts[name] = counts[name].get<int>() + 1;
  }
  json doc;
  doc["command"] = "group";
  doc["config"] = {{"input", coco_path}, {"policy", policy}, {"strict", g.strict}};
  if (policy == "thresholds") {
    doc["config"]["t_freq"] = t_freq;
    doc["config"]["t_rare"] = t_rare;
  }
  doc["groups"] = std::move(groups);
  doc["counts"] = std::move(counts);
  emit(g, std::move(doc));
  return adt::kExitOk;
}

int cmd_tile(const GlobalOpts& g, const std::string& coco_path, const adt::TileConfig& cfg,
             const std::string& img_dir, const std::string& patch_dir,
             const std::string& manifest_path) {
  validate(cfg);
  if (!img_dir.empty() && patch_dir.empty()) {
    throw adt::ConfigError("pixel mode needs --patch-dir alongside --img-dir");
  }
  const adt::DatasetIndex ds = load_dataset(coco_path, g.strict);
  const adt::TiledDataset tiled = adt::tile_dataset(ds, cfg, effective_jobs(g));

  json doc;
  doc["command"] = "tile";
  doc["config"] = {{"input", coco_path},
                   {"patch_w", cfg.patch_w},
                   {"patch_h", cfg.patch_h},
                   {"stride_x", cfg.stride_x},
                   {"stride_y", cfg.stride_y},
                   {"keep_area_fraction", cfg.keep_area_fraction},
                   {"min_side", cfg.min_side},
                   {"strict", g.strict}};
  doc["dataset"] = adt::serialize_coco_json(tiled.dataset);
  doc["manifest"] = adt::manifest_to_json(tiled.manifest);

  if (!img_dir.empty()) {
    const adt::PixelTileReport report =
        adt::write_patch_images(ds, tiled.manifest, img_dir, patch_dir, effective_jobs(g));
    doc["config"]["img_dir"] = img_dir;
    doc["config"]["patch_dir"] = patch_dir;
    doc["pixel"] = adt::pixel_tile_report_to_json(report);
    for (const auto& e : report.errors) adt::log_warn(e.file_name + ": " + e.message);
  }
  if (!manifest_path.empty()) {
    write_file(manifest_path, adt::manifest_to_json(tiled.manifest).dump(2) + "\n");
  }
  emit(g, std::move(doc));
  return adt::kExitOk;
}

int cmd_convert_to_yolo(const GlobalOpts& g, const std::string& coco_path,
                        const std::string& out_dir, const std::string& bg_policy,
                        bool emit_empty) {
  const adt::DatasetIndex ds = load_dataset(coco_path, g.strict);
  const adt::BackgroundPolicy policy = adt::background_policy_from_string(bg_policy);
  const adt::DatasetIndex filtered = adt::filter_background(ds, policy, g.seed);
  adt::YoloWriteOptions opts;
  opts.emit_empty = emit_empty;
  const adt::YoloWriteSummary sum = adt::dataset_to_yolo(filtered, out_dir, opts);
  json doc;
  doc["command"] = "convert";
  doc["config"] = {{"input", coco_path}, {"direction", "to-yolo"},   {"out_dir", out_dir},
                   {"bg_policy", bg_policy}, {"emit_empty", emit_empty}, {"strict", g.strict}};
  doc["files_written"] = sum.files_written;
  doc["lines_written"] = sum.lines_written;
  doc["classes"] = filtered.categories().size();
  doc["images_kept"] = filtered.images().size();
  doc["images_dropped"] = ds.images().size() - filtered.images().size();
  emit(g, std::move(doc));
  return adt::kExitOk;
}

int cmd_convert_from_yolo(const GlobalOpts& g, const std::string& coco_path,
                          const std::string& labels_dir) {
  const adt::DatasetIndex ds = load_dataset(coco_path, g.strict);
  const std::map<int64_t, int> forward = adt::make_class_map(ds);
  std::map<int, int64_t> reverse;
  for (const auto& [cat_id, idx] : forward) reverse[idx] = cat_id;

  std::vector<adt::Annotation> anns;
  int64_t files_read = 0;
  for (const auto& im : ds.images()) {
    const std::filesystem::path p =
        std::filesystem::path(labels_dir) / (adt::yolo_stem(im.file_name) + ".txt");
    if (!std::filesystem::exists(p)) continue;
    ++files_read;
    const std::string text = read_file(p.string());
    std::vector<adt::Annotation> parsed;
    try {
      parsed = adt::from_yolo(text, im.width, im.height, reverse, im.id);
    } catch (const adt::ParseError& e) {
      throw adt::ParseError(p.string() + ": " + e.what());
    }
    for (auto& a : parsed) anns.push_back(std::move(a));
  }
  for (size_t i = 0; i < anns.size(); ++i) anns[i].id = static_cast<int64_t>(i) + 1;

  std::vector<adt::CategoryDef> cats(ds.categories().begin(), ds.categories().end());
  std::vector<adt::ImageRecord> imgs(ds.images().begin(), ds.images().end());
  const adt::DatasetIndex rebuilt(std::move(cats), std::move(imgs), std::move(anns));

  json doc;
  doc["command"] = "convert";
  doc["config"] = {{"input", coco_path},
                   {"direction", "from-yolo"},
                   {"labels_dir", labels_dir},
                   {"strict", g.strict}};
  doc["files_read"] = files_read;
  doc["annotations"] = rebuilt.annotations().size();
  doc["dataset"] = adt::serialize_coco_json(rebuilt);
  emit(g, std::move(doc));
  return adt::kExitOk;
}

int cmd_sample(const GlobalOpts& g, const std::string& proposals_path,
               const std::string& grouping_path, const adt::SamplerConfig& cfg) {
  validate(cfg);
  json jp;
  try {
    jp = json::parse(read_file(proposals_path));
  } catch (const json::parse_error& e) {
    throw adt::ParseError(proposals_path + ": invalid JSON at byte " + std::to_string(e.byte));
  }
  if (!jp.is_array()) throw adt::IntegrityError("proposals: expected a JSON array");
  std::vector<adt::Proposal> proposals;
  proposals.reserve(jp.size());
  for (size_t i = 0; i < jp.size(); ++i) {
    const auto& e = jp[i];
    const std::string where = "proposal " + std::to_string(i);
    adt::Proposal p;
    p.index = adt::detail::require_int(adt::detail::require_field(e, "index", where.c_str()),
                                       where.c_str());
    p.label = adt::detail::require_int(adt::detail::require_field(e, "label", where.c_str()),
                                       where.c_str());
    proposals.push_back(p);
  }

  json jg;
  try {
    jg = json::parse(read_file(grouping_path));
  } catch (const json::parse_error& e) {
    throw adt::ParseError(grouping_path + ": invalid JSON at byte " + std::to_string(e.byte));
  }
  const json& groups = (jg.is_object() && jg.contains("groups")) ? jg["groups"] : jg;
  if (!groups.is_object()) throw adt::IntegrityError("grouping: expected an object of id -> group");
  adt::ClassGrouping grouping;
  for (const auto& [key, value] : groups.items()) {
    int64_t cat_id = 0;
    try {
      cat_id = std::stoll(key);
    } catch (const std::exception&) {
      throw adt::IntegrityError("grouping: non-integer class id '" + key + "'");
    }
    if (!value.is_string()) throw adt::IntegrityError("grouping: group for class " + key + " must be a string");
    grouping.group_of[cat_id] = adt::class_group_from_string(value.get<std::string>());
  }

  const std::vector<int64_t> picked = adt::sample_balanced(proposals, grouping, cfg, g.seed);
  std::map<int64_t, int64_t> label_of;
  for (const auto& p : proposals) label_of[p.index] = p.label;
  json selected = json::array();
  int64_t fg = 0, bg = 0;
  for (int64_t index : picked) {
    selected.push_back(index);
    (label_of.at(index) == adt::kBackgroundLabel ? bg : fg) += 1;
  }
  json doc;
  doc["command"] = "sample";
  doc["config"] = {{"proposals", proposals_path},
                   {"grouping", grouping_path},
                   {"total", cfg.total},
                   {"fg_total", cfg.fg_total},
                   {"quota_rare", cfg.quota_rare},
                   {"quota_common", cfg.quota_common},
                   {"quota_frequent", cfg.quota_frequent}};
  doc["selected"] = std::move(selected);
  doc["foreground"] = fg;
  doc["background"] = bg;
  emit(g, std::move(doc));
  return adt::kExitOk;
}

int cmd_density(const GlobalOpts& g, const std::string& coco_path) {
  const adt::DatasetIndex ds = load_dataset(coco_path, g.strict);
  std::map<int64_t, double> by_ann;
  for (const auto& im : ds.images()) {
    const std::vector<size_t> idxs = ds.annotations_of_image(im.id);
    std::vector<adt::BBox> boxes;
    boxes.reserve(idxs.size());
    for (size_t idx : idxs) boxes.push_back(ds.annotations()[idx].bbox);
    const std::vector<double> d = adt::density(boxes);
    for (size_t k = 0; k < idxs.size(); ++k) by_ann[ds.annotations()[idxs[k]].id] = d[k];
  }
  json values = json::array();
  for (const auto& a : ds.annotations()) {
    values.push_back(
        {{"annotation_id", a.id}, {"image_id", a.image_id}, {"density", by_ann.at(a.id)}});
  }
  json doc;
  doc["command"] = "density";
  doc["config"] = {{"input", coco_path}, {"strict", g.strict}};
  doc["densities"] = std::move(values);
  emit(g, std::move(doc));
  return adt::kExitOk;
}

int cmd_eval(const GlobalOpts& g, const std::string& gt_path, const std::string& det_path,
             double score_thr, int max_dets, const std::string& csv_path,
             const std::string& pr_csv_path) {
  const adt::DatasetIndex ds = load_dataset(gt_path, g.strict);
  const std::vector<adt::Detection> dets = adt::parse_detections(read_file(det_path), ds);
  adt::EvalConfig cfg;
  cfg.score_threshold = score_thr;
  cfg.max_detections_per_image = max_dets;
  const adt::EvalResult result = adt::evaluate(dets, ds, cfg, effective_jobs(g));
  if (!csv_path.empty()) write_file(csv_path, adt::per_class_csv(result));
  if (!pr_csv_path.empty()) write_file(pr_csv_path, adt::pr_points_csv(result));
  json doc = adt::eval_result_to_json(result);
  doc["command"] = "eval";
  doc["config"] = {{"gt", gt_path},
                   {"detections", det_path},
                   {"score_threshold", score_thr},
                   {"max_detections_per_image", max_dets},
                   {"strict", g.strict}};
  if (g.table) {
    std::printf("%-24s %8s %8s %8s\n", "class", "ap50", "ap5095", "n_gt");
    for (const auto& pce : result.per_class) {
      double acc = 0.0;
      for (double v : pce.ap[0]) acc += v;
      std::printf("%-24s %8.4f %8.4f %8lld\n", pce.name.c_str(), pce.ap[0][0],
                  acc / static_cast<double>(pce.ap[0].size()), static_cast<long long>(pce.n_gt));
    }
    std::printf("%-24s %8.4f %8.4f\n", "mean", result.map50, result.map5095);
    if (!g.out.empty()) emit(g, std::move(doc));
  } else {
    emit(g, std::move(doc));
  }
  return adt::kExitOk;
}

int cmd_focal(const GlobalOpts& g, std::vector<double> pts, const std::string& csv_path,
              double alpha, double gamma) {
  adt::FocalParams params;
  params.alpha = alpha;
  params.gamma = gamma;
  validate(params);
  if (!csv_path.empty()) {
    std::istringstream in(read_file(csv_path));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        size_t pos = 0;
        const double v = std::stod(line, &pos);
        if (pos != line.size()) throw std::invalid_argument("trailing characters");
        pts.push_back(v);
      } catch (const std::exception&) {
        throw adt::ParseError(csv_path + ":" + std::to_string(line_no) + ": expected one number per line");
      }
    }
  }
  if (pts.empty()) throw adt::ConfigError("focal: provide --pt values or --csv");
  json values = json::array();
  for (double pt : pts) {
    values.push_back({{"pt", pt}, {"loss", adt::focal_loss(pt, params)}});
  }
  json doc;
  doc["command"] = "focal";
  doc["config"] = {{"alpha", alpha}, {"gamma", gamma}};
  if (!csv_path.empty()) doc["config"]["csv"] = csv_path;
  doc["values"] = std::move(values);
  emit(g, std::move(doc));
  return adt::kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Aerial detection toolchain: tiling, conversion, sampling, losses, evaluation"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "RNG seed used by seeded stages")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads (0 = hardware default)")->capture_default_str();
  app.add_option("--out", g.out, "write the JSON result to this file instead of stdout");
  app.add_flag("--strict", g.strict, "reject out-of-bounds boxes instead of clamping");
  app.add_flag("--table", g.table, "print a human-readable table instead of JSON on stdout");

  auto* stats = app.add_subcommand("stats", "class and background statistics of a COCO dataset");
  std::string stats_input;
  stats->add_option("coco", stats_input, "COCO JSON path")->required();

  auto* group = app.add_subcommand("group", "split classes into frequent/common/rare groups");
  std::string group_input, group_policy = "rank-thirds";
  int64_t group_t_freq = 50, group_t_rare = 5;
  group->add_option("coco", group_input, "COCO JSON path")->required();
  group->add_option("--policy", group_policy, "rank-thirds or thresholds")->capture_default_str();
  group->add_option("--t-freq", group_t_freq, "thresholds policy: count >= t-freq is frequent")
      ->capture_default_str();
  group->add_option("--t-rare", group_t_rare, "thresholds policy: count <= t-rare is rare")
      ->capture_default_str();

  auto* tile = app.add_subcommand("tile", "cut a dataset into overlapping patches");
  std::string tile_input, tile_img_dir, tile_patch_dir, tile_manifest;
  adt::TileConfig tile_cfg;
  double tile_patch_size = 0.0, tile_stride = 0.0;
  tile->add_option("coco", tile_input, "COCO JSON path")->required();
  tile->add_option("--patch-size", tile_patch_size, "square patch side (default 800)");
  tile->add_option("--stride", tile_stride, "window stride (default 600)");
  tile->add_option("--keep-frac", tile_cfg.keep_area_fraction,
                   "minimum clipped/original area ratio to keep a box")
      ->capture_default_str();
  tile->add_option("--min-side", tile_cfg.min_side, "minimum clipped box side in px")
      ->capture_default_str();
  tile->add_option("--img-dir", tile_img_dir, "source PNG directory (enables pixel mode)");
  tile->add_option("--patch-dir", tile_patch_dir, "output directory for patch PNGs");
  tile->add_option("--manifest", tile_manifest, "also write the bare manifest array here");

  auto* convert = app.add_subcommand("convert", "convert between COCO and YOLO layouts");
  std::string conv_input, conv_direction = "to-yolo", conv_out_dir, conv_labels_dir;
  std::string conv_bg_policy = "keep-all";
  bool conv_emit_empty = false;
  convert->add_option("coco", conv_input, "COCO JSON path")->required();
  convert->add_option("--direction", conv_direction, "to-yolo or from-yolo")->capture_default_str();
  convert->add_option("--out-dir", conv_out_dir, "to-yolo: output directory for label files");
  convert->add_option("--labels-dir", conv_labels_dir, "from-yolo: directory of label files");
  convert->add_option("--bg-policy", conv_bg_policy,
                      "to-yolo: keep-all, drop-all, or fraction:<f>")
      ->capture_default_str();
  convert->add_flag("--emit-empty", conv_emit_empty, "to-yolo: write files for empty images");

  auto* sample = app.add_subcommand("sample", "class-balanced proposal sampling");
  std::string sample_proposals, sample_grouping;
  adt::SamplerConfig sample_cfg;
  sample->add_option("--proposals", sample_proposals, "JSON array of {index, label}")->required();
  sample->add_option("--grouping", sample_grouping, "JSON map of class id -> group")->required();
  sample->add_option("--total", sample_cfg.total, "batch size")->capture_default_str();
  sample->add_option("--fg-total", sample_cfg.fg_total, "foreground budget")->capture_default_str();
  sample->add_option("--quota-rare", sample_cfg.quota_rare, "rare-group quota")->capture_default_str();
  sample->add_option("--quota-common", sample_cfg.quota_common, "common-group quota")
      ->capture_default_str();
  sample->add_option("--quota-frequent", sample_cfg.quota_frequent, "frequent-group quota")
      ->capture_default_str();

  auto* density = app.add_subcommand("density", "per-annotation crowding scores");
  std::string density_input;
  density->add_option("coco", density_input, "COCO JSON path")->required();

  auto* eval = app.add_subcommand("eval", "COCO-protocol detection evaluation");
  std::string eval_gt, eval_det, eval_csv, eval_pr_csv;
  double eval_score_thr = 0.5;
  int eval_max_dets = 100;
  eval->add_option("gt", eval_gt, "ground-truth COCO JSON path")->required();
  eval->add_option("detections", eval_det, "detection results JSON path")->required();
  eval->add_option("--score-thr", eval_score_thr, "operating-point score threshold")
      ->capture_default_str();
  eval->add_option("--max-dets", eval_max_dets, "per-image detection cap")->capture_default_str();
  eval->add_option("--csv", eval_csv, "write the per-class summary CSV here");
  eval->add_option("--pr-csv", eval_pr_csv, "write PR sweep points CSV here");

  auto* focal = app.add_subcommand("focal", "focal loss values for given p_t");
  std::vector<double> focal_pts;
  std::string focal_csv;
  double focal_alpha = 0.25, focal_gamma = 2.0;
  focal->add_option("--pt", focal_pts, "estimated probability of the true class (repeatable)");
  focal->add_option("--csv", focal_csv, "file with one p_t per line");
  focal->add_option("--alpha", focal_alpha, "class balance weight")->capture_default_str();
  focal->add_option("--gamma", focal_gamma, "focusing exponent")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return adt::kExitConfigError;
  }

  if (stats->parsed()) return cmd_stats(g, stats_input);
  if (group->parsed()) return cmd_group(g, group_input, group_policy, group_t_freq, group_t_rare);
  if (tile->parsed()) {
    if (tile_patch_size > 0) tile_cfg.patch_w = tile_cfg.patch_h = tile_patch_size;
    if (tile_stride > 0) tile_cfg.stride_x = tile_cfg.stride_y = tile_stride;
    return cmd_tile(g, tile_input, tile_cfg, tile_img_dir, tile_patch_dir, tile_manifest);
  }
  if (convert->parsed()) {
    if (conv_direction == "to-yolo") {
      if (conv_out_dir.empty()) throw adt::ConfigError("convert to-yolo needs --out-dir");
      return cmd_convert_to_yolo(g, conv_input, conv_out_dir, conv_bg_policy, conv_emit_empty);
    }
    if (conv_direction == "from-yolo") {
      if (conv_labels_dir.empty()) throw adt::ConfigError("convert from-yolo needs --labels-dir");
      return cmd_convert_from_yolo(g, conv_input, conv_labels_dir);
    }
    throw adt::ConfigError("unknown --direction: " + conv_direction);
  }
  if (sample->parsed()) return cmd_sample(g, sample_proposals, sample_grouping, sample_cfg);
  if (density->parsed()) return cmd_density(g, density_input);
  if (eval->parsed()) {
    return cmd_eval(g, eval_gt, eval_det, eval_score_thr, eval_max_dets, eval_csv, eval_pr_csv);
  }
  if (focal->parsed()) return cmd_focal(g, focal_pts, focal_csv, focal_alpha, focal_gamma);
  return adt::kExitConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const adt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return adt::kExitParseError;
  } catch (const adt::IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return adt::kExitIntegrityError;
  } catch (const adt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return adt::kExitConfigError;
  } catch (const adt::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return adt::kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
