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
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "adt/dataset.hpp"
#include "adt/errors.hpp"

namespace adt {

/// One YOLO TXT annotation: class index plus center/size normalized by the
/// image dimensions. The box must stay inside [0,1] within 1e-6 slack.
struct YoloLine {
  int class_index = 0;
  double cx = 0, cy = 0, w = 0, h = 0;
};

inline constexpr double kYoloSlack = 1e-6;

inline void validate(const YoloLine& l, const char* context = "yolo line") {
  auto in_unit = [](double v) { return v >= -kYoloSlack && v <= 1.0 + kYoloSlack; };
  if (l.class_index < 0) throw IntegrityError(std::string(context) + ": negative class index");
  if (!(l.w > 0 && l.h > 0) || l.w > 1.0 + kYoloSlack || l.h > 1.0 + kYoloSlack) {
    throw IntegrityError(std::string(context) + ": width/height must be in (0,1]");
  }
  if (!in_unit(l.cx - l.w / 2) || !in_unit(l.cx + l.w / 2) || !in_unit(l.cy - l.h / 2) ||
      !in_unit(l.cy + l.h / 2)) {
    throw IntegrityError(std::string(context) + ": box extends outside the unit square");
  }
}

/// Class indices are assigned by ascending category id, 0-based.
inline std::map<int64_t, int> make_class_map(const DatasetIndex& ds) {
  std::vector<int64_t> ids;
  ids.reserve(ds.categories().size());
  for (const auto& c : ds.categories()) ids.push_back(c.id);
  std::sort(ids.begin(), ids.end());
  std::map<int64_t, int> map;
  for (size_t i = 0; i < ids.size(); ++i) map[ids[i]] = static_cast<int>(i);
  return map;
}

inline YoloLine to_yolo(const Annotation& ann, const ImageRecord& img,
                        const std::map<int64_t, int>& class_map) {
  auto it = class_map.find(ann.category_id);
  if (it == class_map.end()) {
    throw IntegrityError("to_yolo: category id " + std::to_string(ann.category_id) +
                         " missing from class map");
  }
  YoloLine l;
  l.class_index = it->second;
  l.cx = (ann.bbox.x1 + ann.bbox.x2) / (2.0 * img.width);
  l.cy = (ann.bbox.y1 + ann.bbox.y2) / (2.0 * img.height);
  l.w = ann.bbox.width() / img.width;
  l.h = ann.bbox.height() / img.height;
  validate(l, "to_yolo");
  return l;
}

/// Fixed-point 6-decimal formatting; the emitted text is byte-deterministic.
inline std::string format_yolo_line(const YoloLine& l) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%d %.6f %.6f %.6f %.6f", l.class_index, l.cx, l.cy, l.w, l.h);
  return buf;
}

/// Parses YOLO TXT content back into patch annotations. Each line must have
/// exactly 5 whitespace-separated tokens; parse errors carry the 1-based
/// line number. Annotation ids are assigned 1..n in line order.
inline std::vector<Annotation> from_yolo(std::string_view text, double img_w, double img_h,
                                         const std::map<int, int64_t>& class_map,
                                         int64_t image_id = 0) {
  if (!(img_w > 0 && img_h > 0)) throw ConfigError("from_yolo: image dimensions must be positive");
  std::vector<Annotation> out;
  size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    std::vector<std::string_view> tokens;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    if (tokens.empty()) continue;
    if (tokens.size() != 5) {
      throw ParseError("yolo line " + std::to_string(line_no) + ": expected 5 tokens, got " +
                       std::to_string(tokens.size()));
    }

    auto parse_double = [&](std::string_view tok, const char* what) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("yolo line " + std::to_string(line_no) + ": non-numeric " + what + " '" +
                         std::string(tok) + "'");
      }
      return v;
    };
    int cls = 0;
    {
      auto [ptr, ec] = std::from_chars(tokens[0].data(), tokens[0].data() + tokens[0].size(), cls);
      if (ec != std::errc{} || ptr != tokens[0].data() + tokens[0].size() || cls < 0) {
        throw ParseError("yolo line " + std::to_string(line_no) + ": bad class index '" +
                         std::string(tokens[0]) + "'");
      }
    }
    YoloLine l;
    l.class_index = cls;
    l.cx = parse_double(tokens[1], "cx");
    l.cy = parse_double(tokens[2], "cy");
    l.w = parse_double(tokens[3], "w");
    l.h = parse_double(tokens[4], "h");
    for (double v : {l.cx, l.cy, l.w, l.h}) {
      if (v < -kYoloSlack || v > 1.0 + kYoloSlack) {
        throw ParseError("yolo line " + std::to_string(line_no) + ": value outside [0,1]");
      }
    }
    try {
      validate(l, "yolo line");
    } catch (const IntegrityError& e) {
      throw ParseError("yolo line " + std::to_string(line_no) + ": " + e.what());
    }

    auto it = class_map.find(l.class_index);
    if (it == class_map.end()) {
      throw IntegrityError("yolo line " + std::to_string(line_no) + ": class index " +
                           std::to_string(l.class_index) + " missing from class map");
    }

    Annotation a;
    a.id = static_cast<int64_t>(out.size()) + 1;
    a.image_id = image_id;
    a.category_id = it->second;
    const double x1 = std::clamp((l.cx - l.w / 2) * img_w, 0.0, img_w);
    const double x2 = std::clamp((l.cx + l.w / 2) * img_w, 0.0, img_w);
    const double y1 = std::clamp((l.cy - l.h / 2) * img_h, 0.0, img_h);
    const double y2 = std::clamp((l.cy + l.h / 2) * img_h, 0.0, img_h);
    a.bbox = BBox(x1, y1, std::max(x1, x2), std::max(y1, y2));
    a.area = a.bbox.width() * a.bbox.height();
    out.push_back(std::move(a));
  }
  return out;
}

struct YoloWriteOptions {
  /// Also write (empty) files for images without annotations.
  bool emit_empty = false;
};

struct YoloWriteSummary {
  int64_t files_written = 0;
  int64_t lines_written = 0;
};

inline std::string yolo_stem(const std::string& file_name) {
  return std::filesystem::path(file_name).filename().stem().string();
}

/// Writes one `{stem}.txt` per labelled image (6-decimal lines, '\n'
/// endings, no trailing blank line) plus `classes.txt` with category names
/// in class-index order. Images with zero annotations produce no file unless
/// emit_empty is set.
inline YoloWriteSummary dataset_to_yolo(const DatasetIndex& ds, const std::filesystem::path& out_dir,
                                        const YoloWriteOptions& opts = {}) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory " + out_dir.string() + ": " + ec.message());

  const auto class_map = make_class_map(ds);

  // classes.txt, one name per line in class-index order
  {
    std::vector<std::string> names(class_map.size());
    for (const auto& [cat_id, idx] : class_map) names[idx] = ds.category(cat_id).name;
    std::ofstream os(out_dir / "classes.txt", std::ios::binary);
    if (!os) throw IoError("cannot write " + (out_dir / "classes.txt").string());
    for (const auto& name : names) os << name << '\n';
  }

  YoloWriteSummary summary;
  std::unordered_map<std::string, int64_t> stem_owner;
  for (const auto& img : ds.images()) {
    const auto& ann_indices = ds.annotations_of_image(img.id);
    if (ann_indices.empty() && !opts.emit_empty) continue;

    const std::string stem = yolo_stem(img.file_name);
    auto [it, inserted] = stem_owner.emplace(stem, img.id);
    if (!inserted) {
      throw IntegrityError("dataset_to_yolo: images " + std::to_string(it->second) + " and " +
                           std::to_string(img.id) + " both map to output stem '" + stem + "'");
    }

    const auto path = out_dir / (stem + ".txt");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path.string());
    for (size_t idx : ann_indices) {
      os << format_yolo_line(to_yolo(ds.annotations()[idx], img, class_map)) << '\n';
      ++summary.lines_written;
    }
    os.close();
    if (!os) throw IoError("write failed for " + path.string());
    ++summary.files_written;
  }
  return summary;
}

}  // namespace adt
