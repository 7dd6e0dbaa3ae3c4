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
#include <cstdint>
#include <filesystem>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "adt/dataset.hpp"
#include "adt/errors.hpp"
#include "adt/geometry.hpp"
#include "adt/parallel.hpp"

namespace adt {

/// Overlapping-patch grid configuration. Defaults reproduce the 800x800
/// preprocessing with a 200 px overlap.
struct TileConfig {
  int patch_w = 800;
  int patch_h = 800;
  int stride_x = 600;
  int stride_y = 600;
  /// Clipped boxes are kept when clipped/original area >= this fraction.
  double keep_area_fraction = 0.25;
  /// ...and both clipped sides are at least this many pixels.
  double min_side = 2.0;
};

inline void validate(const TileConfig& cfg) {
  if (cfg.patch_w <= 0 || cfg.patch_h <= 0) throw ConfigError("tiler: patch dimensions must be positive");
  if (cfg.stride_x <= 0 || cfg.stride_x > cfg.patch_w || cfg.stride_y <= 0 || cfg.stride_y > cfg.patch_h) {
    throw ConfigError("tiler: stride must be in (0, patch dimension]");
  }
  if (!(cfg.keep_area_fraction > 0.0 && cfg.keep_area_fraction <= 1.0)) {
    throw ConfigError("tiler: keep_area_fraction must be in (0,1]");
  }
  if (cfg.min_side < 0) throw ConfigError("tiler: min_side must be >= 0");
}

/// A planned patch: its window in source coordinates plus naming metadata.
struct TileWindow {
  int64_t source_image_id = 0;
  BBox window;
  std::string patch_name;
};

namespace detail {

/// Clamped-grid origins along one axis: multiples of the stride, with the
/// last origin shifted back so the window ends flush at the border. An image
/// shorter than the patch gets the single origin 0.
inline std::vector<int> tile_origins(int extent, int patch, int stride) {
  std::vector<int> origins;
  if (extent <= patch) {
    origins.push_back(0);
    return origins;
  }
  for (int x = 0;; x += stride) {
    if (x + patch >= extent) {
      origins.push_back(extent - patch);
      break;
    }
    origins.push_back(x);
  }
  return origins;
}

}  // namespace detail

/// Plans the window grid for one image. Every pixel is covered by at least
/// one window; windows are patch-sized except when the image is smaller than
/// the patch in a dimension, in which case they span the full extent there.
/// Row-major order (y outer, x inner).
inline std::vector<BBox> plan_tiles(int width, int height, const TileConfig& cfg) {
  validate(cfg);
  if (width < 1 || height < 1) throw ConfigError("plan_tiles: image dimensions must be >= 1");
  const auto xs = detail::tile_origins(width, cfg.patch_w, cfg.stride_x);
  const auto ys = detail::tile_origins(height, cfg.patch_h, cfg.stride_y);
  const int w = std::min(width, cfg.patch_w);
  const int h = std::min(height, cfg.patch_h);
  std::vector<BBox> windows;
  windows.reserve(xs.size() * ys.size());
  for (int y : ys) {
    for (int x : xs) {
      windows.emplace_back(x, y, x + w, y + h);
    }
  }
  return windows;
}

/// Clips annotations to one window and re-expresses the survivors in
/// patch-local coordinates. A clipped box survives when its area ratio meets
/// keep_area_fraction and both sides meet min_side. Ids are reassigned 1..k
/// in input order; source_id records the original annotation id.
inline std::vector<Annotation> tile_annotations(std::span<const Annotation> anns,
                                                const TileWindow& window, const TileConfig& cfg) {
  validate(cfg);
  std::vector<Annotation> out;
  for (const auto& ann : anns) {
    const auto clipped = clip(ann.bbox, window.window);
    if (!clipped) continue;
    const double original = area(ann.bbox);
    if (original <= 0) continue;
    if (area(*clipped) / original < cfg.keep_area_fraction) continue;
    if (clipped->width() < cfg.min_side || clipped->height() < cfg.min_side) continue;

    Annotation local = ann;
    local.id = static_cast<int64_t>(out.size()) + 1;
    local.source_id = ann.id;
    local.bbox = BBox(clipped->x1 - window.window.x1, clipped->y1 - window.window.y1,
                      clipped->x2 - window.window.x1, clipped->y2 - window.window.y1);
    local.area = area(local.bbox);
    out.push_back(std::move(local));
  }
  return out;
}

/// Manifest row: where each patch came from.
struct TileManifestEntry {
  std::string patch_name;
  std::string source_file;
  int x = 0, y = 0, w = 0, h = 0;
};

struct TiledDataset {
  DatasetIndex dataset;
  std::vector<TileManifestEntry> manifest;
};

inline std::string patch_name(const std::string& source_file, int x, int y) {
  const std::filesystem::path p(source_file);
  std::ostringstream os;
  os << p.filename().stem().string() << "__" << x << "_" << y << p.filename().extension().string();
  return os.str();
}

/// Tiles a whole dataset: the result's images are patches (named
/// `{stem}__{x}_{y}.{ext}`), annotations are clipped per window, and the
/// manifest lists every (patch, source image, window) triple. Source images
/// are processed in ascending id order regardless of `jobs`, so the output
/// is byte-stable.
inline TiledDataset tile_dataset(const DatasetIndex& ds, const TileConfig& cfg, int jobs = 1) {
  validate(cfg);

  std::vector<const ImageRecord*> sources;
  sources.reserve(ds.images().size());
  for (const auto& im : ds.images()) sources.push_back(&im);
  std::sort(sources.begin(), sources.end(),
            [](const ImageRecord* a, const ImageRecord* b) { return a->id < b->id; });

  struct PerImage {
    std::vector<ImageRecord> patches;
    std::vector<std::vector<Annotation>> patch_anns;
    std::vector<TileManifestEntry> manifest;
  };
  std::vector<PerImage> results(sources.size());

  parallel_for(sources.size(), jobs, [&](size_t s) {
    const ImageRecord& im = *sources[s];
    PerImage& slot = results[s];
    std::vector<Annotation> anns;
    for (size_t idx : ds.annotations_of_image(im.id)) anns.push_back(ds.annotations()[idx]);

    for (const BBox& win : plan_tiles(im.width, im.height, cfg)) {
      const int x = static_cast<int>(win.x1), y = static_cast<int>(win.y1);
      TileWindow tw{im.id, win, patch_name(im.file_name, x, y)};
      ImageRecord patch;
      patch.file_name = tw.patch_name;
      patch.width = static_cast<int>(win.width());
      patch.height = static_cast<int>(win.height());
      slot.patches.push_back(std::move(patch));
      slot.patch_anns.push_back(tile_annotations(anns, tw, cfg));
      slot.manifest.push_back({tw.patch_name, im.file_name, x, y, static_cast<int>(win.width()),
                               static_cast<int>(win.height())});
    }
  });

  // Deterministic id assignment over the ordered per-image results.
  std::vector<ImageRecord> images;
  std::vector<Annotation> annotations;
  std::vector<TileManifestEntry> manifest;
  int64_t next_image_id = 1;
  int64_t next_ann_id = 1;
  for (auto& slot : results) {
    for (size_t p = 0; p < slot.patches.size(); ++p) {
      slot.patches[p].id = next_image_id;
      for (auto& ann : slot.patch_anns[p]) {
        ann.id = next_ann_id++;
        ann.image_id = next_image_id;
        annotations.push_back(std::move(ann));
      }
      images.push_back(std::move(slot.patches[p]));
      ++next_image_id;
    }
    manifest.insert(manifest.end(), slot.manifest.begin(), slot.manifest.end());
  }

  return TiledDataset{DatasetIndex(ds.categories(), std::move(images), std::move(annotations)),
                      std::move(manifest)};
}

inline nlohmann::json manifest_to_json(const std::vector<TileManifestEntry>& manifest) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : manifest) {
    arr.push_back({{"patch_name", e.patch_name},
                   {"source_file", e.source_file},
                   {"x", e.x},
                   {"y", e.y},
                   {"w", e.w},
                   {"h", e.h}});
  }
  return arr;
}

}  // namespace adt
