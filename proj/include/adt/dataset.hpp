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
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include <json.hpp>

#include "adt/errors.hpp"
#include "adt/geometry.hpp"
#include "adt/log.hpp"
#include "adt/rng.hpp"

namespace adt {

struct CategoryDef {
  int64_t id = 0;
  std::string name;

  friend bool operator==(const CategoryDef&, const CategoryDef&) = default;
};

struct ImageRecord {
  int64_t id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;

  friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

struct Annotation {
  int64_t id = 0;
  int64_t image_id = 0;
  int64_t category_id = 0;
  BBox bbox;
  double area = 0.0;
  bool iscrowd = false;
  /// Set by the tiler: id of the source annotation this patch-local copy
  /// came from.
  std::optional<int64_t> source_id;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// Parsed COCO-style dataset with cross-indexes. Immutable after
/// construction; all reads are concurrency-safe.
class DatasetIndex {
 public:
  DatasetIndex() = default;

  /// Validates ids, referential integrity and derived maps. Throws
  /// IntegrityError on duplicate ids, dangling references, bad dimensions or
  /// duplicate/empty category names.
  DatasetIndex(std::vector<CategoryDef> categories, std::vector<ImageRecord> images,
               std::vector<Annotation> annotations, std::vector<std::string> warnings = {})
      : categories_(std::move(categories)),
        images_(std::move(images)),
        annotations_(std::move(annotations)),
        warnings_(std::move(warnings)) {
    std::unordered_set<std::string> names;
    for (size_t i = 0; i < categories_.size(); ++i) {
      const auto& c = categories_[i];
      if (c.name.empty()) throw IntegrityError("category id " + std::to_string(c.id) + ": empty name");
      if (!category_pos_.emplace(c.id, i).second) {
        throw IntegrityError("duplicate category id " + std::to_string(c.id));
      }
      if (!names.insert(c.name).second) throw IntegrityError("duplicate category name '" + c.name + "'");
    }
    for (size_t i = 0; i < images_.size(); ++i) {
      const auto& im = images_[i];
      if (im.width <= 0 || im.height <= 0) {
        throw IntegrityError("image id " + std::to_string(im.id) + ": non-positive dimensions");
      }
      if (!image_pos_.emplace(im.id, i).second) {
        throw IntegrityError("duplicate image id " + std::to_string(im.id));
      }
    }
    std::unordered_set<int64_t> ann_ids;
    for (size_t i = 0; i < annotations_.size(); ++i) {
      const auto& a = annotations_[i];
      if (!ann_ids.insert(a.id).second) throw IntegrityError("duplicate annotation id " + std::to_string(a.id));
      if (image_pos_.find(a.image_id) == image_pos_.end()) {
        throw IntegrityError("annotation " + std::to_string(a.id) + " references unknown image_id " +
                             std::to_string(a.image_id));
      }
      if (category_pos_.find(a.category_id) == category_pos_.end()) {
        throw IntegrityError("annotation " + std::to_string(a.id) + " references unknown category_id " +
                             std::to_string(a.category_id));
      }
      image_anns_[a.image_id].push_back(i);
      category_anns_[a.category_id].push_back(i);
    }
  }

  const std::vector<CategoryDef>& categories() const { return categories_; }
  const std::vector<ImageRecord>& images() const { return images_; }
  const std::vector<Annotation>& annotations() const { return annotations_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const ImageRecord& image(int64_t id) const { return images_[image_pos_.at(id)]; }
  const CategoryDef& category(int64_t id) const { return categories_[category_pos_.at(id)]; }
  bool has_image(int64_t id) const { return image_pos_.count(id) != 0; }
  bool has_category(int64_t id) const { return category_pos_.count(id) != 0; }

  /// Indices into annotations(), in document order. Empty for images/classes
  /// without annotations.
  const std::vector<size_t>& annotations_of_image(int64_t image_id) const {
    static const std::vector<size_t> empty;
    auto it = image_anns_.find(image_id);
    return it == image_anns_.end() ? empty : it->second;
  }
  const std::vector<size_t>& annotations_of_category(int64_t category_id) const {
    static const std::vector<size_t> empty;
    auto it = category_anns_.find(category_id);
    return it == category_anns_.end() ? empty : it->second;
  }

 private:
  std::vector<CategoryDef> categories_;
  std::vector<ImageRecord> images_;
  std::vector<Annotation> annotations_;
  std::vector<std::string> warnings_;
  std::unordered_map<int64_t, size_t> category_pos_, image_pos_;
  std::unordered_map<int64_t, std::vector<size_t>> image_anns_, category_anns_;
};

struct ParseOptions {
  /// Default: boxes reaching outside their image are clamped to the image
  /// bounds with a warning. Strict mode turns them into integrity errors.
  bool strict_bounds = false;
};

namespace detail {

inline int64_t require_int(const nlohmann::json& j, const char* where) {
  if (j.is_number_integer() || j.is_number_unsigned()) return j.get<int64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::floor(v) == v && std::abs(v) < 9.0e15) return static_cast<int64_t>(v);
  }
  throw IntegrityError(std::string(where) + ": expected an integral number");
}

inline double require_number(const nlohmann::json& j, const char* where) {
  if (!j.is_number()) throw IntegrityError(std::string(where) + ": expected a number");
  return j.get<double>();
}

inline std::string require_string(const nlohmann::json& j, const char* where) {
  if (!j.is_string()) throw IntegrityError(std::string(where) + ": expected a string");
  return j.get<std::string>();
}

inline const nlohmann::json& require_field(const nlohmann::json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw IntegrityError(std::string(where) + ": missing field '" + key + "'");
  return *it;
}

}  // namespace detail

/// Parses a COCO object-detection document ({images, annotations,
/// categories}; bbox as [x, y, w, h]). Unknown fields are ignored, except
/// that an annotation's "source_id" (written by the tiler) is preserved.
/// Malformed JSON raises ParseError with the byte offset; schema and
/// referential violations raise IntegrityError.
inline DatasetIndex parse_coco(std::string_view text, const ParseOptions& opts = {}) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::ostringstream os;
    os << "invalid JSON at byte " << e.byte << ": " << e.what();
    throw ParseError(os.str());
  }
  if (!doc.is_object()) throw IntegrityError("top level: expected a JSON object");

  std::vector<CategoryDef> categories;
  std::vector<ImageRecord> images;
  std::vector<Annotation> annotations;
  std::vector<std::string> warnings;

  const auto& jcats = detail::require_field(doc, "categories", "top level");
  const auto& jimgs = detail::require_field(doc, "images", "top level");
  const auto& janns = detail::require_field(doc, "annotations", "top level");
  if (!jcats.is_array() || !jimgs.is_array() || !janns.is_array()) {
    throw IntegrityError("top level: images/annotations/categories must be arrays");
  }

  categories.reserve(jcats.size());
  for (const auto& jc : jcats) {
    CategoryDef c;
    c.id = detail::require_int(detail::require_field(jc, "id", "category"), "category.id");
    c.name = detail::require_string(detail::require_field(jc, "name", "category"), "category.name");
    categories.push_back(std::move(c));
  }

  images.reserve(jimgs.size());
  std::unordered_map<int64_t, const ImageRecord*> image_by_id;
  image_by_id.reserve(jimgs.size());
  for (const auto& ji : jimgs) {
    ImageRecord im;
    im.id = detail::require_int(detail::require_field(ji, "id", "image"), "image.id");
    im.file_name = detail::require_string(detail::require_field(ji, "file_name", "image"), "image.file_name");
    im.width = static_cast<int>(detail::require_int(detail::require_field(ji, "width", "image"), "image.width"));
    im.height = static_cast<int>(detail::require_int(detail::require_field(ji, "height", "image"), "image.height"));
    images.push_back(std::move(im));
    image_by_id[images.back().id] = &images.back();
  }

  annotations.reserve(janns.size());
  for (const auto& ja : janns) {
    Annotation a;
    a.id = detail::require_int(detail::require_field(ja, "id", "annotation"), "annotation.id");
    a.image_id = detail::require_int(detail::require_field(ja, "image_id", "annotation"), "annotation.image_id");
    a.category_id =
        detail::require_int(detail::require_field(ja, "category_id", "annotation"), "annotation.category_id");
    const auto& jb = detail::require_field(ja, "bbox", "annotation");
    if (!jb.is_array() || jb.size() != 4) {
      throw IntegrityError("annotation " + std::to_string(a.id) + ": bbox must be [x, y, w, h]");
    }
    const double x = detail::require_number(jb[0], "bbox.x");
    const double y = detail::require_number(jb[1], "bbox.y");
    const double w = detail::require_number(jb[2], "bbox.w");
    const double h = detail::require_number(jb[3], "bbox.h");
    if (w < 0 || h < 0) {
      throw IntegrityError("annotation " + std::to_string(a.id) + ": negative bbox width/height");
    }
    if (!(std::isfinite(x) && std::isfinite(y) && std::isfinite(w) && std::isfinite(h))) {
      throw IntegrityError("annotation " + std::to_string(a.id) + ": non-finite bbox");
    }

    double x1 = x, y1 = y, x2 = x + w, y2 = y + h;
    auto img_it = image_by_id.find(a.image_id);
    if (img_it != image_by_id.end()) {
      const double iw = img_it->second->width, ih = img_it->second->height;
      if (x1 < 0 || y1 < 0 || x2 > iw || y2 > ih) {
        std::ostringstream os;
        os << "annotation " << a.id << ": bbox [" << x << "," << y << "," << w << "," << h
           << "] exceeds image bounds " << iw << "x" << ih;
        if (opts.strict_bounds) throw IntegrityError(os.str());
        x1 = std::clamp(x1, 0.0, iw);
        x2 = std::clamp(x2, 0.0, iw);
        y1 = std::clamp(y1, 0.0, ih);
        y2 = std::clamp(y2, 0.0, ih);
        os << "; clamped";
        warnings.push_back(os.str());
        log_warn(warnings.back());
      }
    }
    a.bbox = BBox(x1, y1, x2, y2);

    if (auto it = ja.find("area"); it != ja.end()) {
      a.area = detail::require_number(*it, "annotation.area");
    } else {
      a.area = w * h;
    }
    if (auto it = ja.find("iscrowd"); it != ja.end()) {
      if (it->is_boolean()) {
        a.iscrowd = it->get<bool>();
      } else {
        a.iscrowd = detail::require_int(*it, "annotation.iscrowd") != 0;
      }
    }
    if (auto it = ja.find("source_id"); it != ja.end()) {
      a.source_id = detail::require_int(*it, "annotation.source_id");
    }
    annotations.push_back(std::move(a));
  }

  return DatasetIndex(std::move(categories), std::move(images), std::move(annotations), std::move(warnings));
}

/// Inverse of parse_coco for valid documents: parse(serialize(ds)) rebuilds
/// a field-for-field identical index.
inline nlohmann::json serialize_coco_json(const DatasetIndex& ds) {
  nlohmann::json doc;
  doc["categories"] = nlohmann::json::array();
  for (const auto& c : ds.categories()) {
    doc["categories"].push_back({{"id", c.id}, {"name", c.name}});
  }
  doc["images"] = nlohmann::json::array();
  for (const auto& im : ds.images()) {
    doc["images"].push_back(
        {{"id", im.id}, {"file_name", im.file_name}, {"width", im.width}, {"height", im.height}});
  }
  doc["annotations"] = nlohmann::json::array();
  for (const auto& a : ds.annotations()) {
    nlohmann::json ja{{"id", a.id},
                      {"image_id", a.image_id},
                      {"category_id", a.category_id},
                      {"bbox", {a.bbox.x1, a.bbox.y1, a.bbox.width(), a.bbox.height()}},
                      {"area", a.area},
                      {"iscrowd", a.iscrowd ? 1 : 0}};
    if (a.source_id) ja["source_id"] = *a.source_id;
    doc["annotations"].push_back(std::move(ja));
  }
  return doc;
}

inline std::string serialize_coco(const DatasetIndex& ds) { return serialize_coco_json(ds).dump(); }

struct ClassStats {
  /// Keyed by category id; every category appears, zero-count included.
  std::map<int64_t, int64_t> instances_per_class;
  /// Keyed by image id; every image appears.
  std::map<int64_t, int64_t> instances_per_image;
  int64_t labelled_images = 0;
  int64_t unlabelled_images = 0;

  int64_t total_images() const { return labelled_images + unlabelled_images; }
  int64_t total_annotations() const {
    int64_t n = 0;
    for (const auto& [id, count] : instances_per_class) n += count;
    return n;
  }
};

inline ClassStats stats(const DatasetIndex& ds) {
  ClassStats s;
  for (const auto& c : ds.categories()) s.instances_per_class[c.id] = 0;
  for (const auto& im : ds.images()) {
    const auto n = static_cast<int64_t>(ds.annotations_of_image(im.id).size());
    s.instances_per_image[im.id] = n;
    (n > 0 ? s.labelled_images : s.unlabelled_images) += 1;
  }
  for (const auto& a : ds.annotations()) s.instances_per_class[a.category_id] += 1;
  return s;
}

enum class ClassGroup { kFrequent, kCommon, kRare };

inline const char* to_string(ClassGroup g) {
  switch (g) {
    case ClassGroup::kFrequent: return "frequent";
    case ClassGroup::kCommon: return "common";
    case ClassGroup::kRare: return "rare";
  }
  return "?";
}

inline ClassGroup class_group_from_string(std::string_view s) {
  if (s == "frequent") return ClassGroup::kFrequent;
  if (s == "common") return ClassGroup::kCommon;
  if (s == "rare") return ClassGroup::kRare;
  throw IntegrityError("unknown class group '" + std::string(s) + "'");
}

/// Total map: every category is assigned exactly one group.
struct ClassGrouping {
  std::map<int64_t, ClassGroup> group_of;
};

/// Default policy: sort by instance count descending (ties by category id
/// ascending); the first floor(K/3) ranks are frequent, the last floor(K/3)
/// rare, the remainder common.
struct RankThirdsPolicy {};

/// count >= t_freq is frequent, count <= t_rare is rare, anything between is
/// common. Requires t_rare < t_freq.
struct ThresholdsPolicy {
  int64_t t_freq = 0;
  int64_t t_rare = 0;
};

using GroupingPolicy = std::variant<RankThirdsPolicy, ThresholdsPolicy>;

inline ClassGrouping group_classes(const ClassStats& s, const GroupingPolicy& policy = RankThirdsPolicy{}) {
  if (s.instances_per_class.empty()) throw IntegrityError("group_classes: no classes");
  bool any_nonzero = false;
  for (const auto& [id, count] : s.instances_per_class) any_nonzero |= (count > 0);
  if (!any_nonzero) throw IntegrityError("group_classes: every class count is zero");

  ClassGrouping grouping;
  if (const auto* thr = std::get_if<ThresholdsPolicy>(&policy)) {
    if (thr->t_rare >= thr->t_freq) {
      throw ConfigError("group_classes: thresholds require t_rare < t_freq");
    }
    for (const auto& [id, count] : s.instances_per_class) {
      grouping.group_of[id] = count >= thr->t_freq  ? ClassGroup::kFrequent
                              : count <= thr->t_rare ? ClassGroup::kRare
                                                     : ClassGroup::kCommon;
    }
    return grouping;
  }

  std::vector<std::pair<int64_t, int64_t>> ranked(s.instances_per_class.begin(), s.instances_per_class.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const size_t k = ranked.size();
  const size_t third = k / 3;
  for (size_t i = 0; i < k; ++i) {
    ClassGroup g = ClassGroup::kCommon;
    if (i < third) g = ClassGroup::kFrequent;
    if (i >= k - third) g = ClassGroup::kRare;
    grouping.group_of[ranked[i].first] = g;
  }
  return grouping;
}

struct KeepAllPolicy {};
struct DropAllPolicy {};
/// Keep every labelled image plus floor(f * labelled_count) unlabelled
/// images, drawn uniformly without replacement from the unlabelled ids in
/// ascending order with the toolkit's SplitMix64 stream.
struct FractionPolicy {
  double fraction = 0.0;
};

using BackgroundPolicy = std::variant<KeepAllPolicy, DropAllPolicy, FractionPolicy>;

inline BackgroundPolicy background_policy_from_string(std::string_view s) {
  if (s == "keep-all") return KeepAllPolicy{};
  if (s == "drop-all") return DropAllPolicy{};
  constexpr std::string_view prefix = "fraction:";
  if (s.substr(0, prefix.size()) == prefix) {
    try {
      return FractionPolicy{std::stod(std::string(s.substr(prefix.size())))};
    } catch (const std::exception&) {
      throw ConfigError("bg-policy: bad fraction value in '" + std::string(s) + "'");
    }
  }
  throw ConfigError("bg-policy: expected keep-all, drop-all or fraction:<f>, got '" + std::string(s) + "'");
}

/// Background-image reduction. Labelled images always survive; annotations
/// are untouched. Deterministic for a given seed.
inline DatasetIndex filter_background(const DatasetIndex& ds, const BackgroundPolicy& policy,
                                      uint64_t seed = 0) {
  if (std::holds_alternative<KeepAllPolicy>(policy)) {
    return DatasetIndex(ds.categories(), ds.images(), ds.annotations());
  }

  std::vector<int64_t> unlabelled;
  std::unordered_set<int64_t> keep;
  for (const auto& im : ds.images()) {
    if (ds.annotations_of_image(im.id).empty()) {
      unlabelled.push_back(im.id);
    } else {
      keep.insert(im.id);
    }
  }

  if (const auto* frac = std::get_if<FractionPolicy>(&policy)) {
    const double f = frac->fraction;
    const auto labelled_count = static_cast<int64_t>(keep.size());
    if (f < 0) throw ConfigError("filter_background: fraction must be >= 0");
    if (labelled_count > 0 && f * static_cast<double>(labelled_count) > static_cast<double>(unlabelled.size())) {
      throw ConfigError("filter_background: fraction exceeds the unlabelled/labelled ratio");
    }
    const auto want = static_cast<size_t>(std::floor(f * static_cast<double>(labelled_count)));
    std::sort(unlabelled.begin(), unlabelled.end());
    SplitMix64 rng(seed);
    for (int64_t id : sample_without_replacement(unlabelled, want, rng)) keep.insert(id);
  }

  std::vector<ImageRecord> images;
  images.reserve(keep.size());
  for (const auto& im : ds.images()) {
    if (keep.count(im.id)) images.push_back(im);
  }
  return DatasetIndex(ds.categories(), std::move(images), ds.annotations());
}

}  // namespace adt
