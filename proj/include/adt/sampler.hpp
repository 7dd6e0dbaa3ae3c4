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
#include <string>
#include <unordered_set>
#include <vector>

#include "adt/dataset.hpp"
#include "adt/errors.hpp"
#include "adt/rng.hpp"

namespace adt {

/// Label value marking a background proposal.
inline constexpr int64_t kBackgroundLabel = -1;

/// A candidate region: its position in the batch and its class label
/// (category id, or kBackgroundLabel).
struct Proposal {
  int64_t index = 0;
  int64_t label = kBackgroundLabel;
};

/// Minibatch layout for the balanced foreground sampler. Defaults follow the
/// 256-proposal RoI batch with 64 foreground slots split 24/20/20 across the
/// rare/common/frequent groups.
struct SamplerConfig {
  int total = 256;
  int fg_total = 64;
  int quota_rare = 24;
  int quota_common = 20;
  int quota_frequent = 20;
};

inline void validate(const SamplerConfig& cfg) {
  if (cfg.total < 0 || cfg.fg_total < 0 || cfg.quota_rare < 0 || cfg.quota_common < 0 ||
      cfg.quota_frequent < 0) {
    throw ConfigError("sampler: negative counts");
  }
  if (cfg.quota_rare + cfg.quota_common + cfg.quota_frequent != cfg.fg_total) {
    throw ConfigError("sampler: quotas must sum to fg_total");
  }
  if (cfg.fg_total > cfg.total) throw ConfigError("sampler: fg_total must be <= total");
}

/// Class-balanced minibatch selection. The procedure, pinned for
/// reproducibility (every draw consumes the one SplitMix64 stream seeded
/// with `seed`; pools are kept ascending by proposal index before any draw):
///
///   Phase 1 - from the rare, then common, then frequent pool, draw
///     min(quota, pool size) without replacement.
///   Phase 2 - unfilled foreground slots are topped up from the leftover
///     foreground proposals in pool order rare -> common -> frequent, each
///     leftover pool re-sorted ascending before its draw.
///   Phase 3 - remaining slots up to `total` come from the background pool;
///     if background runs out the result is simply shorter (never padded,
///     never duplicated).
///
/// Returns the selected proposal indices sorted ascending.
inline std::vector<int64_t> sample_balanced(const std::vector<Proposal>& proposals,
                                            const ClassGrouping& grouping, const SamplerConfig& cfg,
                                            uint64_t seed) {
  validate(cfg);

  std::vector<int64_t> rare, common, frequent, background;
  std::unordered_set<int64_t> seen;
  seen.reserve(proposals.size());
  for (const auto& p : proposals) {
    if (!seen.insert(p.index).second) {
      throw IntegrityError("sampler: duplicate proposal index " + std::to_string(p.index));
    }
    if (p.label == kBackgroundLabel) {
      background.push_back(p.index);
      continue;
    }
    auto it = grouping.group_of.find(p.label);
    if (it == grouping.group_of.end()) {
      throw IntegrityError("sampler: label " + std::to_string(p.label) + " missing from grouping");
    }
    switch (it->second) {
      case ClassGroup::kRare: rare.push_back(p.index); break;
      case ClassGroup::kCommon: common.push_back(p.index); break;
      case ClassGroup::kFrequent: frequent.push_back(p.index); break;
    }
  }
  for (auto* pool : {&rare, &common, &frequent, &background}) {
    std::sort(pool->begin(), pool->end());
  }

  SplitMix64 rng(seed);
  std::vector<int64_t> selected;
  selected.reserve(cfg.total);

  // Phase 1: per-group quotas. Leftovers keep feeding phase 2.
  std::vector<std::vector<int64_t>> leftovers;
  const int quotas[3] = {cfg.quota_rare, cfg.quota_common, cfg.quota_frequent};
  std::vector<int64_t>* pools[3] = {&rare, &common, &frequent};
  for (int g = 0; g < 3; ++g) {
    auto picked = sample_without_replacement(*pools[g], static_cast<size_t>(quotas[g]), rng);
    std::unordered_set<int64_t> picked_set(picked.begin(), picked.end());
    std::vector<int64_t> rest;
    for (int64_t idx : *pools[g]) {
      if (!picked_set.count(idx)) rest.push_back(idx);
    }
    selected.insert(selected.end(), picked.begin(), picked.end());
    leftovers.push_back(std::move(rest));
  }

  // Phase 2: redistribute the foreground deficit, rare -> common -> frequent.
  for (auto& rest : leftovers) {
    const auto deficit = static_cast<size_t>(cfg.fg_total) - selected.size();
    if (deficit == 0) break;
    std::sort(rest.begin(), rest.end());
    auto extra = sample_without_replacement(rest, deficit, rng);
    selected.insert(selected.end(), extra.begin(), extra.end());
  }

  // Phase 3: background fill.
  const auto room = static_cast<size_t>(cfg.total) - selected.size();
  auto bg = sample_without_replacement(background, room, rng);
  selected.insert(selected.end(), bg.begin(), bg.end());

  std::sort(selected.begin(), selected.end());
  return selected;
}

}  // namespace adt
