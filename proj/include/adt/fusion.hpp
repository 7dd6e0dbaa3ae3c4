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

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "adt/errors.hpp"

namespace adt {

/// Dense C x H x W activation grid, channel-major: data[c*H*W + y*W + x].
struct FeatureMap {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<double> data;

  static FeatureMap zeros(int c, int h, int w) {
    if (c <= 0 || h <= 0 || w <= 0) throw ShapeError("FeatureMap: dims must be positive");
    FeatureMap fm;
    fm.channels = c;
    fm.height = h;
    fm.width = w;
    fm.data.assign(static_cast<size_t>(c) * h * w, 0.0);
    return fm;
  }

  size_t plane() const { return static_cast<size_t>(height) * width; }

  double& at(int c, int y, int x) { return data[static_cast<size_t>(c) * plane() + static_cast<size_t>(y) * width + x]; }
  double at(int c, int y, int x) const { return data[static_cast<size_t>(c) * plane() + static_cast<size_t>(y) * width + x]; }
};

inline void validate(const FeatureMap& fm) {
  if (fm.channels <= 0 || fm.height <= 0 || fm.width <= 0) {
    throw ShapeError("FeatureMap: dims must be positive");
  }
  if (fm.data.size() != static_cast<size_t>(fm.channels) * fm.height * fm.width) {
    throw ShapeError("FeatureMap: data length does not match C*H*W");
  }
  for (double v : fm.data) {
    if (!std::isfinite(v)) throw IntegrityError("FeatureMap: non-finite value");
  }
}

/// Squeeze-excitation bottleneck parameters. w1 is (C/r) x C row-major,
/// w2 is C x (C/r) row-major. C must be divisible by the reduction r.
struct AttentionParams {
  int reduction = 1;
  std::vector<double> w1, b1, w2, b2;

  static AttentionParams zeros(int channels, int reduction = 1) {
    if (reduction < 1 || channels < 1 || channels % reduction != 0) {
      throw ShapeError("AttentionParams: C must be a positive multiple of r");
    }
    AttentionParams p;
    p.reduction = reduction;
    const int hidden = channels / reduction;
    p.w1.assign(static_cast<size_t>(hidden) * channels, 0.0);
    p.b1.assign(hidden, 0.0);
    p.w2.assign(static_cast<size_t>(channels) * hidden, 0.0);
    p.b2.assign(channels, 0.0);
    return p;
  }
};

inline void check_dims(const AttentionParams& p, int channels) {
  if (p.reduction < 1 || channels % p.reduction != 0) {
    throw ShapeError("AttentionParams: C not divisible by reduction");
  }
  const size_t hidden = static_cast<size_t>(channels) / p.reduction;
  if (p.w1.size() != hidden * channels || p.b1.size() != hidden ||
      p.w2.size() != static_cast<size_t>(channels) * hidden || p.b2.size() != static_cast<size_t>(channels)) {
    throw ShapeError("AttentionParams: parameter shapes do not match C=" + std::to_string(channels));
  }
  for (const auto* vec : {&p.w1, &p.b1, &p.w2, &p.b2}) {
    for (double v : *vec) {
      if (!std::isfinite(v)) throw IntegrityError("AttentionParams: non-finite entry");
    }
  }
}

/// Squeeze-excitation forward pass: per-channel spatial mean, bottleneck MLP
/// with ReLU, sigmoid gate, then channel-wise rescale. Shape preserved; the
/// gate lies strictly in (0,1).
inline FeatureMap channel_attention(const FeatureMap& fm, const AttentionParams& p) {
  validate(fm);
  check_dims(p, fm.channels);
  const int c_count = fm.channels;
  const int hidden = c_count / p.reduction;
  const size_t plane = fm.plane();

  // squeeze: global average pool
  std::vector<double> z(c_count, 0.0);
  for (int c = 0; c < c_count; ++c) {
    double sum = 0.0;
    const double* base = fm.data.data() + static_cast<size_t>(c) * plane;
    for (size_t i = 0; i < plane; ++i) sum += base[i];
    z[c] = sum / static_cast<double>(plane);
  }

  // excite: relu(W1 z + b1), then sigmoid(W2 h + b2)
  std::vector<double> h(hidden, 0.0);
  for (int i = 0; i < hidden; ++i) {
    double acc = p.b1[i];
    const double* row = p.w1.data() + static_cast<size_t>(i) * c_count;
    for (int c = 0; c < c_count; ++c) acc += row[c] * z[c];
    h[i] = acc > 0.0 ? acc : 0.0;
  }
  std::vector<double> gate(c_count, 0.0);
  for (int c = 0; c < c_count; ++c) {
    double acc = p.b2[c];
    const double* row = p.w2.data() + static_cast<size_t>(c) * hidden;
    for (int i = 0; i < hidden; ++i) acc += row[i] * h[i];
    gate[c] = 1.0 / (1.0 + std::exp(-acc));
  }

  FeatureMap out = fm;
  for (int c = 0; c < c_count; ++c) {
    double* base = out.data.data() + static_cast<size_t>(c) * plane;
    for (size_t i = 0; i < plane; ++i) base[i] *= gate[c];
  }
  return out;
}

/// Per-level scalar weights for the four pyramid outputs, ordered coarse to
/// fine as (wt1, wt2, wt3, wt4). Defaults follow the schedule that puts the
/// largest weight on the finest map.
struct LevelWeights {
  std::array<double, 4> wt{1.5, 2.0, 2.5, 3.0};
};

/// Positive weights are required; a non-decreasing order is expected but only
/// warned about. Returns the warning text, if any.
inline std::vector<std::string> validate(const LevelWeights& w) {
  std::vector<std::string> warnings;
  for (double v : w.wt) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("LevelWeights: weights must be positive and finite");
  }
  for (size_t i = 1; i < w.wt.size(); ++i) {
    if (w.wt[i] < w.wt[i - 1]) {
      std::ostringstream os;
      os << "LevelWeights: wt" << (i + 1) << " < wt" << i
         << "; expected non-decreasing weights toward the finest level";
      warnings.push_back(os.str());
      break;
    }
  }
  return warnings;
}

/// Weighted attention transform over the four pyramid outputs:
/// out[i] = wt[i] * channel_attention(levels[i], params[i]). Levels are
/// independent of each other.
inline std::vector<FeatureMap> weighted_fuse(const std::vector<FeatureMap>& levels,
                                             const LevelWeights& weights,
                                             const std::vector<AttentionParams>& params,
                                             std::vector<std::string>* warnings = nullptr) {
  if (levels.size() != 4 || params.size() != 4) {
    throw ShapeError("weighted_fuse: expected exactly 4 levels and 4 parameter sets");
  }
  auto warn = validate(weights);
  if (warnings != nullptr) warnings->insert(warnings->end(), warn.begin(), warn.end());
  std::vector<FeatureMap> out;
  out.reserve(4);
  for (size_t i = 0; i < 4; ++i) {
    FeatureMap level = channel_attention(levels[i], params[i]);
    for (double& v : level.data) v *= weights.wt[i];
    out.push_back(std::move(level));
  }
  return out;
}

// --- test/tool serialization -----------------------------------------------
//
// Feature maps travel as flat binary: a 12-byte header of C, H, W as
// little-endian unsigned 32-bit, then C*H*W little-endian float32 values.
// Attention parameters travel as a JSON descriptor.

inline void write_feature_map(std::ostream& os, const FeatureMap& fm) {
  validate(fm);
  auto put_u32 = [&os](uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff), static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
  };
  put_u32(static_cast<uint32_t>(fm.channels));
  put_u32(static_cast<uint32_t>(fm.height));
  put_u32(static_cast<uint32_t>(fm.width));
  for (double v : fm.data) {
    const float f = static_cast<float>(v);
    uint32_t bits;
    static_assert(sizeof(bits) == sizeof(f));
    std::memcpy(&bits, &f, 4);
    put_u32(bits);
  }
  if (!os) throw IoError("write_feature_map: stream write failed");
}

inline FeatureMap read_feature_map(std::istream& is) {
  auto get_u32 = [&is]() {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw ParseError("read_feature_map: truncated stream");
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
  };
  const uint32_t c = get_u32(), h = get_u32(), w = get_u32();
  if (c == 0 || h == 0 || w == 0) throw ParseError("read_feature_map: zero dimension in header");
  FeatureMap fm = FeatureMap::zeros(static_cast<int>(c), static_cast<int>(h), static_cast<int>(w));
  for (double& v : fm.data) {
    const uint32_t bits = get_u32();
    float f;
    std::memcpy(&f, &bits, 4);
    v = static_cast<double>(f);
  }
  validate(fm);
  return fm;
}

inline nlohmann::json to_json(const AttentionParams& p) {
  return nlohmann::json{{"reduction", p.reduction}, {"w1", p.w1}, {"b1", p.b1}, {"w2", p.w2}, {"b2", p.b2}};
}

inline AttentionParams attention_params_from_json(const nlohmann::json& j) {
  AttentionParams p;
  try {
    p.reduction = j.at("reduction").get<int>();
    p.w1 = j.at("w1").get<std::vector<double>>();
    p.b1 = j.at("b1").get<std::vector<double>>();
    p.w2 = j.at("w2").get<std::vector<double>>();
    p.b2 = j.at("b2").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("attention params: ") + e.what());
  }
  return p;
}

}  // namespace adt
