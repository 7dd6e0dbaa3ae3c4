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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "adt/dataset.hpp"
#include "adt/errors.hpp"
#include "adt/geometry.hpp"
#include "adt/parallel.hpp"

namespace adt {

/// A scored predicted box in the COCO results schema.
struct Detection {
  int64_t image_id = 0;
  int64_t category_id = 0;
  BBox bbox;
  double score = 0.0;
};

/// Half-open area band [lo, hi) applied to box area (width * height).
struct AreaRange {
  std::string name;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// COCO-protocol evaluation settings: 10 IoU thresholds 0.50:0.05:0.95, the
/// 32^2/96^2 size cuts, and a 100-detections-per-image cap. The operating
/// point for the size-stratified precision/recall report is score >=
/// score_threshold at IoU 0.5.
struct EvalConfig {
  std::vector<double> iou_thresholds = {0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95};
  std::vector<AreaRange> area_ranges = {
      {"all", 0.0, std::numeric_limits<double>::infinity()},
      {"small", 0.0, 32.0 * 32.0},
      {"medium", 32.0 * 32.0, 96.0 * 96.0},
      {"large", 96.0 * 96.0, std::numeric_limits<double>::infinity()},
  };
  int max_detections_per_image = 100;
  double score_threshold = 0.5;
};

inline void validate(const EvalConfig& cfg) {
  if (cfg.iou_thresholds.empty()) throw ConfigError("eval: need at least one IoU threshold");
  for (size_t i = 0; i < cfg.iou_thresholds.size(); ++i) {
    const double t = cfg.iou_thresholds[i];
    if (!(t > 0.0 && t <= 1.0)) throw ConfigError("eval: IoU thresholds must lie in (0,1]");
    if (i > 0 && t <= cfg.iou_thresholds[i - 1]) {
      throw ConfigError("eval: IoU thresholds must be strictly increasing");
    }
  }
  if (cfg.area_ranges.empty()) throw ConfigError("eval: need at least one area range");
  if (cfg.max_detections_per_image < 1) throw ConfigError("eval: max_detections must be >= 1");
  if (!(cfg.score_threshold >= 0.0 && cfg.score_threshold <= 1.0)) {
    throw ConfigError("eval: score_threshold must be in [0,1]");
  }
}

/// Greedy matching outcome for one (image, class) cell.
struct MatchResult {
  /// Per detection: matched GT position, or -1.
  std::vector<int> det_gt;
  /// Per detection: matched an ignored (crowd / out-of-range) GT.
  std::vector<bool> det_ignored;
  /// Per GT: matching detection position, or -1. Crowd GTs record their
  /// first match.
  std::vector<int> gt_det;
};

/// Greedy score-ordered matching, COCO style. Detections are processed in
/// descending score (ties by ascending list position). Each detection takes
/// the not-yet-matched GT with the highest IoU >= iou_thr, scanning
/// non-ignored GTs before ignored ones; equal IoU resolves to the later GT
/// in scan order. Once a detection holds a non-ignored match the ignored
/// GTs are not considered. Ignored GTs (iscrowd, or flagged in gt_ignore)
/// may absorb any number of detections, and detections matched to them are
/// neither TP nor FP.
inline MatchResult match(const std::vector<Detection>& dets, const std::vector<Annotation>& gts,
                         double iou_thr, const std::vector<bool>& gt_ignore = {}) {
  if (!gt_ignore.empty() && gt_ignore.size() != gts.size()) {
    throw ShapeError("match: gt_ignore size mismatch");
  }
  for (size_t i = 1; i < dets.size(); ++i) {
    if (dets[i].image_id != dets[0].image_id || dets[i].category_id != dets[0].category_id) {
      throw IntegrityError("match: detections must share one image and one class");
    }
  }
  for (size_t i = 1; i < gts.size(); ++i) {
    if (gts[i].image_id != gts[0].image_id || gts[i].category_id != gts[0].category_id) {
      throw IntegrityError("match: ground truths must share one image and one class");
    }
  }

  const size_t nd = dets.size(), ng = gts.size();
  std::vector<bool> ignored(ng, false);
  for (size_t g = 0; g < ng; ++g) {
    ignored[g] = gts[g].iscrowd || (!gt_ignore.empty() && gt_ignore[g]);
  }

  std::vector<size_t> det_order(nd);
  std::iota(det_order.begin(), det_order.end(), 0);
  std::stable_sort(det_order.begin(), det_order.end(),
                   [&dets](size_t a, size_t b) { return dets[a].score > dets[b].score; });

  std::vector<size_t> gt_order(ng);
  std::iota(gt_order.begin(), gt_order.end(), 0);
  std::stable_sort(gt_order.begin(), gt_order.end(),
                   [&ignored](size_t a, size_t b) { return !ignored[a] && ignored[b]; });

  MatchResult r;
  r.det_gt.assign(nd, -1);
  r.det_ignored.assign(nd, false);
  r.gt_det.assign(ng, -1);

  for (size_t d : det_order) {
    int m = -1;
    double best = iou_thr;
    for (size_t g : gt_order) {
      if (r.gt_det[g] >= 0 && !gts[g].iscrowd) continue;
      if (m >= 0 && !ignored[m] && ignored[g]) break;
      const double v = iou(dets[d].bbox, gts[g].bbox);
      if (v < best) continue;
      best = v;
      m = static_cast<int>(g);
    }
    if (m < 0) continue;
    r.det_gt[d] = m;
    r.det_ignored[d] = ignored[m];
    if (r.gt_det[m] < 0) r.gt_det[m] = static_cast<int>(d);
  }
  return r;
}

struct PrCurve {
  std::vector<double> precision;
  std::vector<double> recall;
};

/// Cumulative precision/recall from TP/FP flags already sorted by
/// descending score. n_gt = 0 yields recall 0 everywhere.
inline PrCurve pr_curve(const std::vector<int>& tp_flags, int64_t n_gt) {
  if (n_gt < 0) throw ConfigError("pr_curve: n_gt must be >= 0");
  PrCurve c;
  c.precision.reserve(tp_flags.size());
  c.recall.reserve(tp_flags.size());
  int64_t tp = 0, fp = 0;
  for (int flag : tp_flags) {
    (flag ? tp : fp) += 1;
    c.precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
    c.recall.push_back(n_gt > 0 ? static_cast<double>(tp) / static_cast<double>(n_gt) : 0.0);
  }
  return c;
}

inline constexpr int kRecallSamples = 101;

/// 101-point interpolated AP: the precision envelope is made monotone
/// non-increasing right-to-left, sampled at recall 0.00, 0.01, ..., 1.00
/// (first curve point with recall >= the sample; 0 past the end), and
/// averaged.
inline double average_precision(const PrCurve& curve) {
  if (curve.precision.size() != curve.recall.size()) throw ShapeError("average_precision: misaligned arrays");
  std::vector<double> envelope = curve.precision;
  for (size_t i = envelope.size(); i > 1; --i) {
    envelope[i - 2] = std::max(envelope[i - 2], envelope[i - 1]);
  }
  double sum = 0.0;
  for (int s = 0; s < kRecallSamples; ++s) {
    const double r = static_cast<double>(s) / (kRecallSamples - 1);
    const auto it = std::lower_bound(curve.recall.begin(), curve.recall.end(), r);
    if (it != curve.recall.end()) {
      sum += envelope[static_cast<size_t>(it - curve.recall.begin())];
    }
  }
  return sum / kRecallSamples;
}

/// Size-stratified precision/recall at the configured operating point.
struct OperatingPoint {
  std::string area;
  double precision = 0.0;
  double recall = 0.0;
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t n_gt = 0;
};

struct PrPoint {
  double score = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

struct PerClassEval {
  int64_t category_id = 0;
  std::string name;
  /// ap[area_index][threshold_index]; NaN marks a cell with neither ground
  /// truth nor counted detections (excluded from every mean).
  std::vector<std::vector<double>> ap;
  /// Non-ignored ground-truth count in the "all" range.
  int64_t n_gt = 0;
  /// PR sweep at IoU 0.5, area "all", for plotting.
  std::vector<PrPoint> pr50;
};

struct EvalResult {
  std::vector<double> iou_thresholds;
  std::vector<AreaRange> area_ranges;
  std::vector<PerClassEval> per_class;  // ascending category id
  double map50 = 0.0;
  double map5095 = 0.0;
  std::vector<OperatingPoint> operating_points;  // one per area range
};

namespace detail {

inline size_t threshold_index(const std::vector<double>& thresholds, double value) {
  for (size_t i = 0; i < thresholds.size(); ++i) {
    if (std::abs(thresholds[i] - value) < 1e-9) return i;
  }
  return 0;  // fall back to the loosest threshold
}

}  // namespace detail

/// Full COCO-protocol evaluation of a detection set against a dataset.
/// Detections are canonicalized (by score, then box, then category) before
/// matching, so the result is independent of input order; the per-image cap
/// keeps the highest-scoring max_detections_per_image boxes.
inline EvalResult evaluate(const std::vector<Detection>& dets, const DatasetIndex& ds,
                           const EvalConfig& cfg = {}, int jobs = 1) {
  validate(cfg);

  {
    std::vector<std::string> offenders;
    for (size_t i = 0; i < dets.size(); ++i) {
      if (!ds.has_image(dets[i].image_id)) {
        offenders.push_back("detection " + std::to_string(i) + ": unknown image_id " +
                            std::to_string(dets[i].image_id));
      }
      if (!ds.has_category(dets[i].category_id)) {
        offenders.push_back("detection " + std::to_string(i) + ": unknown category_id " +
                            std::to_string(dets[i].category_id));
      }
      if (!(dets[i].score >= 0.0 && dets[i].score <= 1.0)) {
        offenders.push_back("detection " + std::to_string(i) + ": score outside [0,1]");
      }
    }
    if (!offenders.empty()) {
      std::ostringstream os;
      os << offenders.size() << " invalid detections:";
      for (const auto& o : offenders) os << "\n  " << o;
      throw IntegrityError(os.str());
    }
  }

  // Canonical image order: ascending id.
  std::vector<int64_t> image_ids;
  image_ids.reserve(ds.images().size());
  for (const auto& im : ds.images()) image_ids.push_back(im.id);
  std::sort(image_ids.begin(), image_ids.end());
  std::unordered_map<int64_t, size_t> image_rank;
  for (size_t i = 0; i < image_ids.size(); ++i) image_rank[image_ids[i]] = i;

  // Canonical per-image detection order, then the per-image cap.
  std::unordered_map<int64_t, std::vector<Detection>> dets_by_image;
  for (const auto& d : dets) dets_by_image[d.image_id].push_back(d);
  for (auto& [img, list] : dets_by_image) {
    std::sort(list.begin(), list.end(), [](const Detection& a, const Detection& b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.category_id != b.category_id) return a.category_id < b.category_id;
      if (a.bbox.x1 != b.bbox.x1) return a.bbox.x1 < b.bbox.x1;
      if (a.bbox.y1 != b.bbox.y1) return a.bbox.y1 < b.bbox.y1;
      if (a.bbox.x2 != b.bbox.x2) return a.bbox.x2 < b.bbox.x2;
      return a.bbox.y2 < b.bbox.y2;
    });
    if (list.size() > static_cast<size_t>(cfg.max_detections_per_image)) {
      list.resize(static_cast<size_t>(cfg.max_detections_per_image));
    }
  }

  std::vector<int64_t> category_ids;
  for (const auto& c : ds.categories()) category_ids.push_back(c.id);
  std::sort(category_ids.begin(), category_ids.end());
  std::unordered_map<int64_t, size_t> category_rank;
  for (size_t i = 0; i < category_ids.size(); ++i) category_rank[category_ids[i]] = i;

  const size_t n_cats = category_ids.size();
  const size_t n_areas = cfg.area_ranges.size();
  const size_t n_thrs = cfg.iou_thresholds.size();

  // One work unit per (image, class) cell that has detections or GTs.
  struct Cell {
    size_t img_rank = 0;
    size_t cat = 0;
    std::vector<Detection> dets;
    std::vector<Annotation> gts;
    // flags[area][thr][det]: 1 TP, 0 FP, -1 ignored
    std::vector<std::vector<std::vector<int>>> flags;
    // npig[area]: non-ignored GT count
    std::vector<int64_t> npig;
  };
  std::vector<Cell> cells;
  for (size_t ir = 0; ir < image_ids.size(); ++ir) {
    const int64_t img_id = image_ids[ir];
    std::map<size_t, Cell> by_cat;
    auto it = dets_by_image.find(img_id);
    if (it != dets_by_image.end()) {
      for (const auto& d : it->second) by_cat[category_rank.at(d.category_id)].dets.push_back(d);
    }
    for (size_t idx : ds.annotations_of_image(img_id)) {
      const auto& a = ds.annotations()[idx];
      by_cat[category_rank.at(a.category_id)].gts.push_back(a);
    }
    for (auto& [cat, cell] : by_cat) {
      cell.img_rank = ir;
      cell.cat = cat;
      cells.push_back(std::move(cell));
    }
  }

  parallel_for(cells.size(), jobs, [&](size_t ci) {
    Cell& cell = cells[ci];
    cell.flags.assign(n_areas, std::vector<std::vector<int>>(n_thrs));
    cell.npig.assign(n_areas, 0);
    for (size_t a = 0; a < n_areas; ++a) {
      const auto& range = cfg.area_ranges[a];
      std::vector<bool> out_of_range(cell.gts.size(), false);
      for (size_t g = 0; g < cell.gts.size(); ++g) {
        const double ga = area(cell.gts[g].bbox);
        out_of_range[g] = !(ga >= range.lo && ga < range.hi);
        if (!out_of_range[g] && !cell.gts[g].iscrowd) cell.npig[a] += 1;
      }
      for (size_t t = 0; t < n_thrs; ++t) {
        const MatchResult m = match(cell.dets, cell.gts, cfg.iou_thresholds[t], out_of_range);
        std::vector<int>& flags = cell.flags[a][t];
        flags.resize(cell.dets.size());
        for (size_t d = 0; d < cell.dets.size(); ++d) {
          if (m.det_gt[d] >= 0) {
            flags[d] = m.det_ignored[d] ? -1 : 1;
          } else {
            const double da = area(cell.dets[d].bbox);
            flags[d] = (da >= range.lo && da < range.hi) ? 0 : -1;
          }
        }
      }
    }
  });

  // Pool per (class, area, thr) in a deterministic cross-image order.
  struct PooledDet {
    double score;
    size_t img_rank;
    size_t det_rank;
    int flag;
  };
  EvalResult result;
  result.iou_thresholds = cfg.iou_thresholds;
  result.area_ranges = cfg.area_ranges;
  result.per_class.resize(n_cats);

  const size_t thr50 = detail::threshold_index(cfg.iou_thresholds, 0.5);
  std::vector<OperatingPoint> ops(n_areas);
  for (size_t a = 0; a < n_areas; ++a) ops[a].area = cfg.area_ranges[a].name;

  for (size_t k = 0; k < n_cats; ++k) {
    PerClassEval& pce = result.per_class[k];
    pce.category_id = category_ids[k];
    pce.name = ds.category(category_ids[k]).name;
    pce.ap.assign(n_areas, std::vector<double>(n_thrs, std::numeric_limits<double>::quiet_NaN()));

    for (size_t a = 0; a < n_areas; ++a) {
      int64_t npig = 0;
      for (const auto& cell : cells) {
        if (cell.cat == k) npig += cell.npig[a];
      }
      if (a == 0) pce.n_gt = npig;

      for (size_t t = 0; t < n_thrs; ++t) {
        std::vector<PooledDet> pooled;
        for (const auto& cell : cells) {
          if (cell.cat != k) continue;
          for (size_t d = 0; d < cell.dets.size(); ++d) {
            pooled.push_back({cell.dets[d].score, cell.img_rank, d, cell.flags[a][t][d]});
          }
        }
        std::sort(pooled.begin(), pooled.end(), [](const PooledDet& x, const PooledDet& y) {
          if (x.score != y.score) return x.score > y.score;
          if (x.img_rank != y.img_rank) return x.img_rank < y.img_rank;
          return x.det_rank < y.det_rank;
        });

        std::vector<int> flags;
        flags.reserve(pooled.size());
        for (const auto& p : pooled) {
          if (p.flag >= 0) flags.push_back(p.flag);
        }

        if (npig == 0 && flags.empty()) continue;  // cell stays NaN, skipped from means
        const PrCurve curve = pr_curve(flags, npig);
        pce.ap[a][t] = average_precision(curve);

        if (t == thr50 && a == 0) {
          pce.pr50.clear();
          size_t fi = 0;
          for (const auto& p : pooled) {
            if (p.flag < 0) continue;
            pce.pr50.push_back({p.score, curve.precision[fi], curve.recall[fi]});
            ++fi;
          }
        }
        if (t == thr50) {
          OperatingPoint& op = ops[a];
          op.n_gt += npig;
          for (const auto& p : pooled) {
            if (p.flag < 0 || p.score < cfg.score_threshold) continue;
            (p.flag == 1 ? op.tp : op.fp) += 1;
          }
        }
      }
    }
  }

  for (auto& op : ops) {
    op.precision = (op.tp + op.fp) > 0 ? static_cast<double>(op.tp) / static_cast<double>(op.tp + op.fp) : 0.0;
    op.recall = op.n_gt > 0 ? static_cast<double>(op.tp) / static_cast<double>(op.n_gt) : 0.0;
  }
  result.operating_points = std::move(ops);

  // Class means over non-NaN cells, area "all".
  double sum50 = 0.0, sum5095 = 0.0;
  int n50 = 0, n5095 = 0;
  for (const auto& pce : result.per_class) {
    const double ap50 = pce.ap[0][thr50];
    if (!std::isnan(ap50)) {
      sum50 += ap50;
      ++n50;
    }
    double acc = 0.0;
    bool valid = true;
    for (size_t t = 0; t < n_thrs; ++t) {
      if (std::isnan(pce.ap[0][t])) {
        valid = false;
        break;
      }
      acc += pce.ap[0][t];
    }
    if (valid) {
      sum5095 += acc / static_cast<double>(n_thrs);
      ++n5095;
    }
  }
  result.map50 = n50 > 0 ? sum50 / n50 : 0.0;
  result.map5095 = n5095 > 0 ? sum5095 / n5095 : 0.0;
  return result;
}

/// Parses a COCO results array: [{image_id, category_id, bbox:[x,y,w,h],
/// score}]. Unknown ids and invalid scores are collected and reported
/// together.
inline std::vector<Detection> parse_detections(std::string_view text, const DatasetIndex& ds) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::ostringstream os;
    os << "invalid JSON at byte " << e.byte << ": " << e.what();
    throw ParseError(os.str());
  }
  if (!doc.is_array()) throw IntegrityError("detections: expected a JSON array");

  std::vector<Detection> dets;
  std::vector<std::string> offenders;
  dets.reserve(doc.size());
  for (size_t i = 0; i < doc.size(); ++i) {
    const auto& jd = doc[i];
    const std::string where = "detection " + std::to_string(i);
    Detection d;
    d.image_id = detail::require_int(detail::require_field(jd, "image_id", where.c_str()), where.c_str());
    d.category_id = detail::require_int(detail::require_field(jd, "category_id", where.c_str()), where.c_str());
    d.score = detail::require_number(detail::require_field(jd, "score", where.c_str()), where.c_str());
    const auto& jb = detail::require_field(jd, "bbox", where.c_str());
    if (!jb.is_array() || jb.size() != 4) throw IntegrityError(where + ": bbox must be [x, y, w, h]");
    const double x = detail::require_number(jb[0], "bbox.x");
    const double y = detail::require_number(jb[1], "bbox.y");
    const double w = detail::require_number(jb[2], "bbox.w");
    const double h = detail::require_number(jb[3], "bbox.h");
    if (w < 0 || h < 0) {
      offenders.push_back(where + ": negative bbox width/height");
      continue;
    }
    d.bbox = BBox::from_xywh(x, y, w, h);
    if (!(d.score >= 0.0 && d.score <= 1.0) || !std::isfinite(d.score)) {
      offenders.push_back(where + ": score outside [0,1]");
    }
    if (!ds.has_image(d.image_id)) offenders.push_back(where + ": unknown image_id " + std::to_string(d.image_id));
    if (!ds.has_category(d.category_id)) {
      offenders.push_back(where + ": unknown category_id " + std::to_string(d.category_id));
    }
    dets.push_back(std::move(d));
  }
  if (!offenders.empty()) {
    std::ostringstream os;
    os << offenders.size() << " invalid detections:";
    for (const auto& o : offenders) os << "\n  " << o;
    throw IntegrityError(os.str());
  }
  return dets;
}

inline nlohmann::json eval_result_to_json(const EvalResult& r) {
  nlohmann::json j;
  j["map50"] = r.map50;
  j["map5095"] = r.map5095;
  j["iou_thresholds"] = r.iou_thresholds;
  j["per_class"] = nlohmann::json::array();
  const size_t thr50 = detail::threshold_index(r.iou_thresholds, 0.5);
  const size_t thr75 = detail::threshold_index(r.iou_thresholds, 0.75);
  for (const auto& pce : r.per_class) {
    nlohmann::json jc;
    jc["category_id"] = pce.category_id;
    jc["name"] = pce.name;
    jc["n_gt"] = pce.n_gt;
    double ap5095 = 0.0;
    bool valid = true;
    for (double v : pce.ap[0]) {
      if (std::isnan(v)) valid = false;
      ap5095 += v;
    }
    jc["ap50"] = pce.ap[0][thr50];
    jc["ap75"] = pce.ap[0][thr75];
    jc["ap5095"] = valid ? ap5095 / static_cast<double>(pce.ap[0].size())
                         : std::numeric_limits<double>::quiet_NaN();
    for (size_t a = 1; a < r.area_ranges.size(); ++a) {
      jc["ap50_" + r.area_ranges[a].name] = pce.ap[a][thr50];
    }
    j["per_class"].push_back(std::move(jc));
  }
  j["operating_points"] = nlohmann::json::array();
  for (const auto& op : r.operating_points) {
    j["operating_points"].push_back({{"area", op.area},
                                     {"precision", op.precision},
                                     {"recall", op.recall},
                                     {"tp", op.tp},
                                     {"fp", op.fp},
                                     {"n_gt", op.n_gt}});
  }
  return j;
}

namespace detail {

inline void append_csv_number(std::ostream& os, double v) {
  if (std::isnan(v)) {
    os << "nan";
  } else {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    os << buf;
  }
}

}  // namespace detail

/// Per-class summary table: category_id,name,n_gt,ap50,ap75,ap5095.
inline std::string per_class_csv(const EvalResult& r) {
  std::ostringstream os;
  os << "category_id,name,n_gt,ap50,ap75,ap5095\n";
  const size_t thr50 = detail::threshold_index(r.iou_thresholds, 0.5);
  const size_t thr75 = detail::threshold_index(r.iou_thresholds, 0.75);
  for (const auto& pce : r.per_class) {
    double ap5095 = 0.0;
    bool valid = true;
    for (double v : pce.ap[0]) {
      if (std::isnan(v)) valid = false;
      ap5095 += v;
    }
    os << pce.category_id << ',' << pce.name << ',' << pce.n_gt << ',';
    detail::append_csv_number(os, pce.ap[0][thr50]);
    os << ',';
    detail::append_csv_number(os, pce.ap[0][thr75]);
    os << ',';
    detail::append_csv_number(os, valid ? ap5095 / static_cast<double>(pce.ap[0].size())
                                        : std::numeric_limits<double>::quiet_NaN());
    os << '\n';
  }
  return os.str();
}

/// PR sweep points at IoU 0.5, area "all": category_id,score,precision,recall.
inline std::string pr_points_csv(const EvalResult& r) {
  std::ostringstream os;
  os << "category_id,score,precision,recall\n";
  for (const auto& pce : r.per_class) {
    for (const auto& p : pce.pr50) {
      os << pce.category_id << ',';
      detail::append_csv_number(os, p.score);
      os << ',';
      detail::append_csv_number(os, p.precision);
      os << ',';
      detail::append_csv_number(os, p.recall);
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace adt
