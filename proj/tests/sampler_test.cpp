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

#include "adt/sampler.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "adt/errors.hpp"
#include "oracles.hpp"

namespace {

using adt::ClassGroup;
using adt::ClassGrouping;
using adt::kBackgroundLabel;
using adt::Proposal;
using adt::SamplerConfig;

// Labels 1/2/3 map to rare/common/frequent throughout these tests.
ClassGrouping three_groups() {
  ClassGrouping g;
  g.group_of[1] = ClassGroup::kRare;
  g.group_of[2] = ClassGroup::kCommon;
  g.group_of[3] = ClassGroup::kFrequent;
  return g;
}

// n proposals of each label starting at the given index.
void append(std::vector<Proposal>& out, int64_t label, int64_t start, int n) {
  for (int i = 0; i < n; ++i) out.push_back({start + i, label});
}

std::vector<Proposal> rich_pool() {
  std::vector<Proposal> p;
  append(p, 1, 0, 100);                    // rare:     0..99
  append(p, 2, 100, 100);                  // common:   100..199
  append(p, 3, 200, 100);                  // frequent: 200..299
  append(p, kBackgroundLabel, 300, 400);   // background: 300..699
  return p;
}

int count_in(const std::vector<int64_t>& selected, int64_t lo, int64_t hi) {
  return static_cast<int>(std::count_if(selected.begin(), selected.end(),
                                        [&](int64_t v) { return v >= lo && v <= hi; }));
}

TEST(SamplerTest, FullPoolsFillExactQuotas) {
  const auto selected = adt::sample_balanced(rich_pool(), three_groups(), {}, 7);
  ASSERT_EQ(selected.size(), 256u);
  EXPECT_EQ(count_in(selected, 0, 99), 24);
  EXPECT_EQ(count_in(selected, 100, 199), 20);
  EXPECT_EQ(count_in(selected, 200, 299), 20);
  EXPECT_EQ(count_in(selected, 300, 699), 192);
}

TEST(SamplerTest, RareDeficitSpillsIntoCommon) {
  std::vector<Proposal> p;
  append(p, 1, 0, 4);                    // only 4 rare
  append(p, 2, 100, 100);
  append(p, 3, 200, 100);
  append(p, kBackgroundLabel, 300, 400);
  const auto selected = adt::sample_balanced(p, three_groups(), {}, 7);
  ASSERT_EQ(selected.size(), 256u);
  EXPECT_EQ(count_in(selected, 0, 99), 4);
  // The 20 missing rare picks refill from common first (20 quota + 20 deficit),
  // leaving frequent at its plain quota.
  EXPECT_EQ(count_in(selected, 100, 199), 40);
  EXPECT_EQ(count_in(selected, 200, 299), 20);
  EXPECT_EQ(count_in(selected, 300, 699), 192);
}

TEST(SamplerTest, DeficitCascadesThroughFrequentThenBackground) {
  std::vector<Proposal> p;
  append(p, 1, 0, 2);
  append(p, 2, 100, 10);
  append(p, 3, 200, 30);
  append(p, kBackgroundLabel, 300, 400);
  const auto selected = adt::sample_balanced(p, three_groups(), {}, 7);
  ASSERT_EQ(selected.size(), 256u);
  // All 42 foreground proposals picked; background absorbs the rest.
  EXPECT_EQ(count_in(selected, 0, 299), 42);
  EXPECT_EQ(count_in(selected, 300, 699), 214);
}

TEST(SamplerTest, BackgroundShortfallShrinksBatch) {
  std::vector<Proposal> p;
  append(p, kBackgroundLabel, 0, 10);
  const auto selected = adt::sample_balanced(p, three_groups(), {}, 7);
  EXPECT_EQ(selected.size(), 10u);
}

TEST(SamplerTest, OutputSortedUniqueSubset) {
  const auto pool = rich_pool();
  std::set<int64_t> valid;
  for (const auto& p : pool) valid.insert(p.index);
  const auto selected = adt::sample_balanced(pool, three_groups(), {}, 99);
  EXPECT_TRUE(std::is_sorted(selected.begin(), selected.end()));
  EXPECT_EQ(std::adjacent_find(selected.begin(), selected.end()), selected.end());
  for (int64_t idx : selected) EXPECT_TRUE(valid.count(idx));
}

TEST(SamplerTest, DeterministicForFixedSeed) {
  const auto a = adt::sample_balanced(rich_pool(), three_groups(), {}, 1234);
  const auto b = adt::sample_balanced(rich_pool(), three_groups(), {}, 1234);
  EXPECT_EQ(a, b);
}

TEST(SamplerTest, InputOrderDoesNotMatter) {
  auto pool = rich_pool();
  auto shuffled = pool;
  adt::SplitMix64 rng(5);
  for (size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[rng.bounded(i)]);
  }
  EXPECT_EQ(adt::sample_balanced(pool, three_groups(), {}, 77),
            adt::sample_balanced(shuffled, three_groups(), {}, 77));
}

TEST(SamplerTest, DifferentSeedsDiffer) {
  const auto a = adt::sample_balanced(rich_pool(), three_groups(), {}, 1);
  const auto b = adt::sample_balanced(rich_pool(), three_groups(), {}, 2);
  EXPECT_NE(a, b);
}

TEST(SamplerTest, ForegroundCountIsMinOfTargetAndAvailable) {
  for (int n_fg : {0, 1, 30, 63, 64, 65, 200}) {
    std::vector<Proposal> p;
    append(p, 1, 0, n_fg);
    append(p, kBackgroundLabel, 1000, 300);
    const auto selected = adt::sample_balanced(p, three_groups(), {}, 11);
    EXPECT_EQ(count_in(selected, 0, 999), std::min(n_fg, 64)) << "n_fg=" << n_fg;
  }
}

TEST(SamplerTest, DuplicateProposalIndexRejected) {
  std::vector<Proposal> p = {{5, 1}, {6, 2}, {5, kBackgroundLabel}};
  EXPECT_THROW(adt::sample_balanced(p, three_groups(), {}, 1), adt::IntegrityError);
}

TEST(SamplerTest, LabelMissingFromGroupingRejected) {
  std::vector<Proposal> p = {{1, 42}};
  EXPECT_THROW(adt::sample_balanced(p, three_groups(), {}, 1), adt::IntegrityError);
}

TEST(SamplerConfigTest, QuotasMustSumToForegroundTotal) {
  SamplerConfig cfg;
  cfg.quota_rare = 25;  // 25+20+20 != 64
  EXPECT_THROW(adt::validate(cfg), adt::ConfigError);
}

TEST(SamplerConfigTest, ForegroundMustFitInBatch) {
  SamplerConfig cfg;
  cfg.total = 32;
  EXPECT_THROW(adt::validate(cfg), adt::ConfigError);
}

TEST(SamplerConfigTest, NegativeCountsRejected) {
  SamplerConfig cfg;
  cfg.total = -1;
  EXPECT_THROW(adt::validate(cfg), adt::ConfigError);
}

TEST(SamplerTest, MatchesReferenceImplementation) {
  adt::SplitMix64 scene_rng(55);
  for (int round = 0; round < 50; ++round) {
    std::vector<Proposal> p;
    int64_t next = 0;
    append(p, 1, next, static_cast<int>(scene_rng.bounded(60)));
    next = 1000;
    append(p, 2, next, static_cast<int>(scene_rng.bounded(60)));
    next = 2000;
    append(p, 3, next, static_cast<int>(scene_rng.bounded(60)));
    next = 3000;
    append(p, kBackgroundLabel, next, static_cast<int>(scene_rng.bounded(300)));

    const uint64_t seed = scene_rng.next();
    const auto got = adt::sample_balanced(p, three_groups(), {}, seed);
    const auto want = testoracle::ref_sample(p, three_groups().group_of, {}, seed);
    EXPECT_EQ(got, want) << "round " << round;
  }
}

TEST(SamplerTest, QuotaDrawRoughlyUniformOverPool) {
  // 48 rare proposals competing for 24 slots: each should be picked about
  // half the time over many seeds. The other pools are rich so no deficit
  // pass comes back for the leftover rare proposals.
  std::vector<Proposal> p;
  append(p, 1, 0, 48);
  append(p, 2, 100, 100);
  append(p, 3, 200, 100);
  append(p, kBackgroundLabel, 1000, 300);
  std::vector<int> hits(48, 0);
  const int kSeeds = 2000;
  for (int seed = 0; seed < kSeeds; ++seed) {
    for (int64_t idx : adt::sample_balanced(p, three_groups(), {}, seed)) {
      if (idx < 48) ++hits[static_cast<size_t>(idx)];
    }
  }
  for (int i = 0; i < 48; ++i) {
    EXPECT_NEAR(hits[i], kSeeds / 2, kSeeds / 20) << "proposal " << i;
  }
}

}  // namespace
