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
#include <optional>
#include <sstream>
#include <vector>

#include "adt/errors.hpp"

namespace adt {

/// Axis-aligned box in pixel coordinates, corner convention: width = x2 - x1,
/// height = y2 - y1. Zero-area boxes are legal (clipping at patch borders
/// produces them); negative extents and non-finite coordinates are rejected
/// at construction.
struct BBox {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;

  BBox() = default;

  BBox(double x1_, double y1_, double x2_, double y2_) : x1(x1_), y1(y1_), x2(x2_), y2(y2_) {
    if (!(std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) && std::isfinite(y2))) {
      throw IntegrityError("BBox: non-finite coordinate");
    }
    if (x2 < x1 || y2 < y1) {
      std::ostringstream os;
      os << "BBox: negative extent (" << x1 << "," << y1 << "," << x2 << "," << y2 << ")";
      throw IntegrityError(os.str());
    }
  }

  /// COCO [x, y, w, h] to corner form. Negative w/h is an integrity error.
  static BBox from_xywh(double x, double y, double w, double h) {
    if (w < 0 || h < 0) throw IntegrityError("BBox: negative width/height");
    return BBox(x, y, x + w, y + h);
  }

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }

  friend bool operator==(const BBox& a, const BBox& b) {
    return a.x1 == b.x1 && a.y1 == b.y1 && a.x2 == b.x2 && a.y2 == b.y2;
  }
};

inline double area(const BBox& b) { return (b.x2 - b.x1) * (b.y2 - b.y1); }

/// Intersection over union. 0 when the union has zero area (two degenerate
/// boxes), so zero-area boxes have IoU 0 against everything.
inline double iou(const BBox& a, const BBox& b) {
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0 || ih <= 0) return 0.0;
  const double inter = iw * ih;
  const double uni = area(a) + area(b) - inter;
  return uni > 0 ? inter / uni : 0.0;
}

/// Intersection box of b and window, or nullopt when they do not overlap
/// with positive area.
inline std::optional<BBox> clip(const BBox& b, const BBox& window) {
  const double x1 = std::max(b.x1, window.x1);
  const double y1 = std::max(b.y1, window.y1);
  const double x2 = std::min(b.x2, window.x2);
  const double y2 = std::min(b.y2, window.y2);
  if (x2 <= x1 || y2 <= y1) return std::nullopt;
  return BBox(x1, y1, x2, y2);
}

/// Per-box crowding density: output[i] = max over j != i of iou(boxes[i],
/// boxes[j]). The max over an empty neighbor set (singleton input) is 0.
/// Neighbors are class-agnostic.
inline std::vector<double> density(const std::vector<BBox>& boxes) {
  const size_t n = boxes.size();
  std::vector<double> out(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double v = iou(boxes[i], boxes[j]);
      out[i] = std::max(out[i], v);
      out[j] = std::max(out[j], v);
    }
  }
  return out;
}

}  // namespace adt
