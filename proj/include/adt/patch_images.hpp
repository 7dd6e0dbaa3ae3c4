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

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "adt/dataset.hpp"
#include "adt/parallel.hpp"
#include "adt/png_io.hpp"
#include "adt/tiler.hpp"

namespace adt {

struct PatchError {
  std::string file_name;
  std::string message;
};

struct PixelTileReport {
  int64_t patches_written = 0;
  std::vector<PatchError> errors;
};

/// Cuts the patch rasters listed in a tile manifest out of the source PNGs.
/// Source files are read from img_dir and patches written to out_dir. A
/// source that fails to decode, is missing, or whose pixel dimensions
/// disagree with the dataset record produces an error entry and is skipped;
/// the remaining sources are still processed.
inline PixelTileReport write_patch_images(const DatasetIndex& source_ds,
                                          const std::vector<TileManifestEntry>& manifest,
                                          const std::filesystem::path& img_dir,
                                          const std::filesystem::path& out_dir, int jobs = 1) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("create " + out_dir.string() + ": " + ec.message());

  std::unordered_map<std::string, const ImageRecord*> by_name;
  for (const auto& im : source_ds.images()) by_name[im.file_name] = &im;

  // Group manifest entries by source file, keeping first-appearance order.
  std::vector<std::string> sources;
  std::unordered_map<std::string, std::vector<const TileManifestEntry*>> grouped;
  for (const auto& e : manifest) {
    auto [it, inserted] = grouped.try_emplace(e.source_file);
    if (inserted) sources.push_back(e.source_file);
    it->second.push_back(&e);
  }

  std::vector<int64_t> written(sources.size(), 0);
  std::vector<std::vector<PatchError>> errors(sources.size());

  parallel_for(sources.size(), jobs, [&](size_t si) {
    const std::string& name = sources[si];
    const auto rec_it = by_name.find(name);
    if (rec_it == by_name.end()) {
      errors[si].push_back({name, "not present in the dataset image table"});
      return;
    }
    Image src;
    try {
      src = read_png((img_dir / name).string());
    } catch (const std::exception& e) {
      errors[si].push_back({name, e.what()});
      return;
    }
    const ImageRecord& rec = *rec_it->second;
    if (src.width != static_cast<uint32_t>(rec.width) || src.height != static_cast<uint32_t>(rec.height)) {
      errors[si].push_back({name, "size mismatch: expected " + std::to_string(rec.width) + "x" +
                                      std::to_string(rec.height) + ", file is " +
                                      std::to_string(src.width) + "x" + std::to_string(src.height)});
      return;
    }
    for (const TileManifestEntry* e : grouped.at(name)) {
      try {
        const Image patch = crop(src, static_cast<uint32_t>(e->x), static_cast<uint32_t>(e->y),
                                 static_cast<uint32_t>(e->w), static_cast<uint32_t>(e->h));
        write_png((out_dir / e->patch_name).string(), patch);
        written[si] += 1;
      } catch (const std::exception& ex) {
        errors[si].push_back({name, std::string(e->patch_name) + ": " + ex.what()});
      }
    }
  });

  PixelTileReport report;
  for (size_t i = 0; i < sources.size(); ++i) {
    report.patches_written += written[i];
    for (auto& err : errors[i]) report.errors.push_back(std::move(err));
  }
  return report;
}

inline nlohmann::json pixel_tile_report_to_json(const PixelTileReport& r) {
  nlohmann::json j;
  j["patches_written"] = r.patches_written;
  j["errors"] = nlohmann::json::array();
  for (const auto& e : r.errors) {
    j["errors"].push_back({{"file_name", e.file_name}, {"message", e.message}});
  }
  return j;
}

}  // namespace adt
