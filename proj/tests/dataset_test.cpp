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

#include "adt/dataset.hpp"

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "adt/errors.hpp"
#include "adt/rng.hpp"
#include "testutil.hpp"

namespace {

using testutil::ann;
using testutil::cat;
using testutil::img;
using testutil::make_ds;

constexpr const char* kMinimalDoc = R"({
  "images": [{"id": 1, "file_name": "a.png", "width": 100, "height": 100}],
  "annotations": [{"id": 1, "image_id": 1, "category_id": 2, "bbox": [0, 0, 10, 10], "area": 100, "iscrowd": 0}],
  "categories": [{"id": 2, "name": "plane"}]
})";

TEST(ParseCocoTest, MinimalDocument) {
  const adt::DatasetIndex ds = adt::parse_coco(kMinimalDoc);
  ASSERT_EQ(ds.images().size(), 1u);
  ASSERT_EQ(ds.annotations().size(), 1u);
  ASSERT_EQ(ds.categories().size(), 1u);
  EXPECT_EQ(ds.annotations()[0].bbox, adt::BBox(0, 0, 10, 10));
  EXPECT_EQ(ds.image(1).file_name, "a.png");
  EXPECT_EQ(ds.category(2).name, "plane");
}

TEST(ParseCocoTest, MalformedJsonReportsByteOffset) {
  try {
    adt::parse_coco("{\"images\": [");
    FAIL() << "expected a parse error";
  } catch (const adt::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}

TEST(ParseCocoTest, DanglingImageReference) {
  const std::string doc = R"({
    "images": [{"id": 1, "file_name": "a.png", "width": 100, "height": 100}],
    "annotations": [{"id": 1, "image_id": 999, "category_id": 2, "bbox": [0, 0, 1, 1]}],
    "categories": [{"id": 2, "name": "plane"}]
  })";
  EXPECT_THROW(adt::parse_coco(doc), adt::IntegrityError);
}

TEST(ParseCocoTest, DanglingCategoryReference) {
  const std::string doc = R"({
    "images": [{"id": 1, "file_name": "a.png", "width": 100, "height": 100}],
    "annotations": [{"id": 1, "image_id": 1, "category_id": 42, "bbox": [0, 0, 1, 1]}],
    "categories": [{"id": 2, "name": "plane"}]
  })";
  EXPECT_THROW(adt::parse_coco(doc), adt::IntegrityError);
}

TEST(ParseCocoTest, DuplicateIdsAreNamed) {
  const std::string doc = R"({
    "images": [{"id": 7, "file_name": "a.png", "width": 10, "height": 10},
               {"id": 7, "file_name": "b.png", "width": 10, "height": 10}],
    "annotations": [],
    "categories": [{"id": 1, "name": "x"}]
  })";
  try {
    adt::parse_coco(doc);
    FAIL() << "expected an integrity error";
  } catch (const adt::IntegrityError& e) {
    EXPECT_NE(std::string(e.what()).find('7'), std::string::npos);
  }
}

TEST(ParseCocoTest, NegativeExtentRejected) {
  const std::string doc = R"({
    "images": [{"id": 1, "file_name": "a.png", "width": 100, "height": 100}],
    "annotations": [{"id": 1, "image_id": 1, "category_id": 2, "bbox": [5, 5, -3, 4]}],
    "categories": [{"id": 2, "name": "plane"}]
  })";
  EXPECT_THROW(adt::parse_coco(doc), adt::IntegrityError);
}

TEST(ParseCocoTest, UnknownFieldsIgnored) {
  const std::string doc = R"({
    "info": {"year": 2026},
    "licenses": [],
    "images": [{"id": 1, "file_name": "a.png", "width": 100, "height": 100, "flickr_url": "x"}],
    "annotations": [{"id": 1, "image_id": 1, "category_id": 2, "bbox": [0, 0, 5, 5], "segmentation": []}],
    "categories": [{"id": 2, "name": "plane", "supercategory": "vehicle"}]
  })";
  EXPECT_EQ(adt::parse_coco(doc).annotations().size(), 1u);
}

TEST(ParseCocoTest, FloatNumbersAccepted) {
  const std::string doc = R"({
    "images": [{"id": 1, "file_name": "a.png", "width": 100, "height": 100}],
    "annotations": [{"id": 1, "image_id": 1, "category_id": 2, "bbox": [0.5, 1.25, 10.5, 9.75]}],
    "categories": [{"id": 2, "name": "plane"}]
  })";
  const adt::DatasetIndex ds = adt::parse_coco(doc);
  EXPECT_DOUBLE_EQ(ds.annotations()[0].bbox.x1, 0.5);
  EXPECT_DOUBLE_EQ(ds.annotations()[0].bbox.x2, 11.0);
}

TEST(ParseCocoTest, MissingAreaDefaultsToBoxArea) {
  const std::string doc = R"({
    "images": [{"id": 1, "file_name": "a.png", "width": 100, "height": 100}],
    "annotations": [{"id": 1, "image_id": 1, "category_id": 2, "bbox": [0, 0, 4, 5]}],
    "categories": [{"id": 2, "name": "plane"}]
  })";
  EXPECT_DOUBLE_EQ(adt::parse_coco(doc).annotations()[0].area, 20.0);
}

TEST(ParseCocoTest, IscrowdAcceptsIntAndBool) {
  const std::string doc = R"({
    "images": [{"id": 1, "file_name": "a.png", "width": 100, "height": 100}],
    "annotations": [
      {"id": 1, "image_id": 1, "category_id": 2, "bbox": [0, 0, 1, 1], "iscrowd": 1},
      {"id": 2, "image_id": 1, "category_id": 2, "bbox": [0, 0, 1, 1], "iscrowd": true},
      {"id": 3, "image_id": 1, "category_id": 2, "bbox": [0, 0, 1, 1], "iscrowd": 0}],
    "categories": [{"id": 2, "name": "plane"}]
  })";
  const adt::DatasetIndex ds = adt::parse_coco(doc);
  EXPECT_TRUE(ds.annotations()[0].iscrowd);
  EXPECT_TRUE(ds.annotations()[1].iscrowd);
  EXPECT_FALSE(ds.annotations()[2].iscrowd);
}

TEST(ParseCocoTest, OutOfBoundsBoxClampedWithWarning) {
  const std::string doc = R"({
    "images": [{"id": 1, "file_name": "a.png", "width": 100, "height": 100}],
    "annotations": [{"id": 1, "image_id": 1, "category_id": 2, "bbox": [90, 90, 20, 20]}],
    "categories": [{"id": 2, "name": "plane"}]
  })";
  const adt::DatasetIndex ds = adt::parse_coco(doc);
  EXPECT_EQ(ds.annotations()[0].bbox, adt::BBox(90, 90, 100, 100));
  EXPECT_FALSE(ds.warnings().empty());
}

TEST(ParseCocoTest, OutOfBoundsBoxRejectedInStrictMode) {
  const std::string doc = R"({
    "images": [{"id": 1, "file_name": "a.png", "width": 100, "height": 100}],
    "annotations": [{"id": 1, "image_id": 1, "category_id": 2, "bbox": [90, 90, 20, 20]}],
    "categories": [{"id": 2, "name": "plane"}]
  })";
  adt::ParseOptions opts;
  opts.strict_bounds = true;
  EXPECT_THROW(adt::parse_coco(doc, opts), adt::IntegrityError);
}

TEST(ParseCocoTest, SerializeRoundTripsFieldForField) {
  const std::string doc = R"({
    "images": [{"id": 1, "file_name": "a.png", "width": 300, "height": 200},
               {"id": 2, "file_name": "b.png", "width": 100, "height": 100}],
    "annotations": [
      {"id": 1, "image_id": 1, "category_id": 2, "bbox": [1.5, 2.25, 30, 40], "area": 1200, "iscrowd": 1},
      {"id": 2, "image_id": 2, "category_id": 3, "bbox": [0, 0, 10, 10]}],
    "categories": [{"id": 2, "name": "plane"}, {"id": 3, "name": "ship"}]
  })";
  const adt::DatasetIndex first = adt::parse_coco(doc);
  const adt::DatasetIndex second = adt::parse_coco(adt::serialize_coco(first));
  EXPECT_EQ(first.categories(), second.categories());
  EXPECT_EQ(first.images(), second.images());
  EXPECT_EQ(first.annotations(), second.annotations());
}

TEST(StatsTest, EmptyDatasetIsAllZero) {
  const adt::DatasetIndex ds = adt::parse_coco(R"({"images":[],"annotations":[],"categories":[]})");
  const adt::ClassStats s = adt::stats(ds);
  EXPECT_EQ(s.labelled_images, 0);
  EXPECT_EQ(s.unlabelled_images, 0);
  EXPECT_EQ(s.total_images(), 0);
  EXPECT_EQ(s.total_annotations(), 0);
}

TEST(StatsTest, HandCountedMix) {
  const adt::DatasetIndex ds = make_ds(
      {cat(1, "c")},
      {img(1, "a.png", 100, 100), img(2, "b.png", 100, 100), img(3, "c.png", 100, 100)},
      {ann(1, 1, 1, 0, 0, 5, 5), ann(2, 1, 1, 10, 10, 5, 5), ann(3, 3, 1, 0, 0, 5, 5),
       ann(4, 3, 1, 5, 5, 5, 5), ann(5, 3, 1, 10, 10, 5, 5), ann(6, 3, 1, 15, 15, 5, 5),
       ann(7, 3, 1, 20, 20, 5, 5)});
  const adt::ClassStats s = adt::stats(ds);
  EXPECT_EQ(s.instances_per_class.at(1), 7);
  EXPECT_EQ(s.labelled_images, 2);
  EXPECT_EQ(s.unlabelled_images, 1);
}

TEST(StatsTest, ZeroCountClassesAreListed) {
  const adt::DatasetIndex ds =
      make_ds({cat(1, "a"), cat(2, "b")}, {img(1, "x.png", 10, 10)}, {ann(1, 1, 1, 0, 0, 5, 5)});
  const adt::ClassStats s = adt::stats(ds);
  EXPECT_EQ(s.instances_per_class.at(2), 0);
}

TEST(StatsTest, TotalsConsistentOnRandomDatasets) {
  adt::SplitMix64 rng(21);
  for (int round = 0; round < 25; ++round) {
    std::vector<adt::ImageRecord> images;
    std::vector<adt::Annotation> anns_v;
    const int n_imgs = 1 + static_cast<int>(rng.bounded(20));
    int64_t next_ann = 1;
    for (int i = 1; i <= n_imgs; ++i) {
      images.push_back(img(i, "i" + std::to_string(i) + ".png", 100, 100));
      const int k = static_cast<int>(rng.bounded(4));
      for (int j = 0; j < k; ++j) {
        anns_v.push_back(ann(next_ann++, i, 1 + static_cast<int64_t>(rng.bounded(3)),
                             rng.bounded(50), rng.bounded(50), 1 + rng.bounded(40),
                             1 + rng.bounded(40)));
      }
    }
    const adt::DatasetIndex ds =
        make_ds({cat(1, "a"), cat(2, "b"), cat(3, "c")}, std::move(images), std::move(anns_v));
    const adt::ClassStats s = adt::stats(ds);
    EXPECT_EQ(s.labelled_images + s.unlabelled_images,
              static_cast<int64_t>(ds.images().size()));
    EXPECT_EQ(s.total_annotations(), static_cast<int64_t>(ds.annotations().size()));
  }
}

adt::ClassStats stats_from_counts(const std::vector<std::pair<int64_t, int64_t>>& counts) {
  adt::ClassStats s;
  for (const auto& [id, count] : counts) s.instances_per_class[id] = count;
  return s;
}

TEST(GroupClassesTest, FifteenDistinctCountsSplitEvenly) {
  std::vector<std::pair<int64_t, int64_t>> counts;
  for (int64_t id = 1; id <= 15; ++id) counts.push_back({id, 1000 - id * 10});
  const adt::ClassGrouping g =
      adt::group_classes(stats_from_counts(counts), adt::RankThirdsPolicy{});
  int freq = 0, common = 0, rare = 0;
  for (const auto& [id, grp] : g.group_of) {
    if (grp == adt::ClassGroup::kFrequent) ++freq;
    if (grp == adt::ClassGroup::kCommon) ++common;
    if (grp == adt::ClassGroup::kRare) ++rare;
  }
  EXPECT_EQ(freq, 5);
  EXPECT_EQ(common, 5);
  EXPECT_EQ(rare, 5);
  // Highest counts (lowest ids here) are the frequent block.
  EXPECT_EQ(g.group_of.at(1), adt::ClassGroup::kFrequent);
  EXPECT_EQ(g.group_of.at(15), adt::ClassGroup::kRare);
}

TEST(GroupClassesTest, TieBrokenByAscendingId) {
  const adt::ClassGrouping g = adt::group_classes(
      stats_from_counts({{1, 100}, {2, 100}, {3, 1}}), adt::RankThirdsPolicy{});
  EXPECT_EQ(g.group_of.at(1), adt::ClassGroup::kFrequent);
  EXPECT_EQ(g.group_of.at(2), adt::ClassGroup::kCommon);
  EXPECT_EQ(g.group_of.at(3), adt::ClassGroup::kRare);
}

TEST(GroupClassesTest, ThresholdPolicy) {
  const adt::ClassGrouping g = adt::group_classes(
      stats_from_counts({{1, 100}, {2, 20}, {3, 3}}), adt::ThresholdsPolicy{50, 5});
  EXPECT_EQ(g.group_of.at(1), adt::ClassGroup::kFrequent);
  EXPECT_EQ(g.group_of.at(2), adt::ClassGroup::kCommon);
  EXPECT_EQ(g.group_of.at(3), adt::ClassGroup::kRare);
}

TEST(GroupClassesTest, ThresholdBoundariesInclusive) {
  const adt::ClassGrouping g = adt::group_classes(
      stats_from_counts({{1, 50}, {2, 5}}), adt::ThresholdsPolicy{50, 5});
  EXPECT_EQ(g.group_of.at(1), adt::ClassGroup::kFrequent);
  EXPECT_EQ(g.group_of.at(2), adt::ClassGroup::kRare);
}

TEST(GroupClassesTest, InvertedThresholdsRejected) {
  EXPECT_THROW(
      adt::group_classes(stats_from_counts({{1, 10}}), adt::ThresholdsPolicy{5, 50}),
      adt::ConfigError);
}

TEST(GroupClassesTest, AllZeroCountsRejected) {
  EXPECT_THROW(
      adt::group_classes(stats_from_counts({{1, 0}, {2, 0}}), adt::RankThirdsPolicy{}),
      adt::IntegrityError);
}

TEST(GroupClassesTest, EveryClassAssigned) {
  const adt::ClassGrouping g = adt::group_classes(
      stats_from_counts({{1, 9}, {2, 5}, {3, 5}, {4, 2}}), adt::RankThirdsPolicy{});
  EXPECT_EQ(g.group_of.size(), 4u);
}

TEST(GroupClassesTest, InvariantUnderUniformScaling) {
  std::vector<std::pair<int64_t, int64_t>> counts = {{1, 31}, {2, 7}, {3, 7}, {4, 150}, {5, 2}};
  const adt::ClassGrouping base =
      adt::group_classes(stats_from_counts(counts), adt::RankThirdsPolicy{});
  for (auto& [id, c] : counts) c *= 7;
  const adt::ClassGrouping scaled =
      adt::group_classes(stats_from_counts(counts), adt::RankThirdsPolicy{});
  EXPECT_EQ(base.group_of, scaled.group_of);
}

adt::DatasetIndex background_fixture(int labelled, int unlabelled) {
  std::vector<adt::ImageRecord> images;
  std::vector<adt::Annotation> anns_v;
  int64_t id = 1;
  for (int i = 0; i < labelled; ++i, ++id) {
    images.push_back(img(id, "l" + std::to_string(id) + ".png", 100, 100));
    anns_v.push_back(ann(id, id, 1, 0, 0, 10, 10));
  }
  for (int i = 0; i < unlabelled; ++i, ++id) {
    images.push_back(img(id, "u" + std::to_string(id) + ".png", 100, 100));
  }
  return make_ds({cat(1, "c")}, std::move(images), std::move(anns_v));
}

TEST(FilterBackgroundTest, KeepAllIsIdentity) {
  const adt::DatasetIndex ds = background_fixture(5, 12);
  const adt::DatasetIndex out = adt::filter_background(ds, adt::KeepAllPolicy{});
  EXPECT_EQ(out.images().size(), 17u);
  EXPECT_EQ(out.images(), ds.images());
}

TEST(FilterBackgroundTest, DropAllKeepsOnlyLabelled) {
  const adt::DatasetIndex out =
      adt::filter_background(background_fixture(5, 12), adt::DropAllPolicy{});
  EXPECT_EQ(out.images().size(), 5u);
  EXPECT_EQ(out.annotations().size(), 5u);
}

TEST(FilterBackgroundTest, FractionAddsFlooredShare) {
  const adt::DatasetIndex out =
      adt::filter_background(background_fixture(10, 30), adt::FractionPolicy{0.25}, 3);
  // 10 labelled + floor(0.25 * 10) = 12 images.
  EXPECT_EQ(out.images().size(), 12u);
}

TEST(FilterBackgroundTest, FractionDeterministicPerSeed) {
  const adt::DatasetIndex ds = background_fixture(10, 30);
  const adt::DatasetIndex a = adt::filter_background(ds, adt::FractionPolicy{0.5}, 9);
  const adt::DatasetIndex b = adt::filter_background(ds, adt::FractionPolicy{0.5}, 9);
  EXPECT_EQ(a.images(), b.images());
}

TEST(FilterBackgroundTest, EveryLabelledImageSurvives) {
  const adt::DatasetIndex ds = background_fixture(10, 30);
  for (int seed = 0; seed < 5; ++seed) {
    const adt::DatasetIndex out = adt::filter_background(ds, adt::FractionPolicy{0.3}, seed);
    for (int64_t id = 1; id <= 10; ++id) EXPECT_TRUE(out.has_image(id));
    // Output images form a subset of the input, preserving order.
    for (const auto& im : out.images()) EXPECT_TRUE(ds.has_image(im.id));
  }
}

TEST(FilterBackgroundTest, NegativeFractionRejected) {
  EXPECT_THROW(adt::filter_background(background_fixture(5, 5), adt::FractionPolicy{-0.1}),
               adt::ConfigError);
}

TEST(FilterBackgroundTest, OverlargeFractionRejected) {
  // floor(3.0 * 5) = 15 > 5 unlabelled available.
  EXPECT_THROW(adt::filter_background(background_fixture(5, 5), adt::FractionPolicy{3.0}),
               adt::ConfigError);
}

TEST(BackgroundPolicyParseTest, RecognizedForms) {
  EXPECT_TRUE(std::holds_alternative<adt::KeepAllPolicy>(
      adt::background_policy_from_string("keep-all")));
  EXPECT_TRUE(std::holds_alternative<adt::DropAllPolicy>(
      adt::background_policy_from_string("drop-all")));
  const auto frac = adt::background_policy_from_string("fraction:0.1");
  ASSERT_TRUE(std::holds_alternative<adt::FractionPolicy>(frac));
  EXPECT_DOUBLE_EQ(std::get<adt::FractionPolicy>(frac).fraction, 0.1);
  EXPECT_THROW(adt::background_policy_from_string("bogus"), adt::ConfigError);
  EXPECT_THROW(adt::background_policy_from_string("fraction:x"), adt::ConfigError);
}

}  // namespace
