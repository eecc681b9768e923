/*
 * Copyright 2026 The csmoute Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "csmoute/csv.hpp"
#include "csmoute/io.hpp"
#include "csmoute/keel.hpp"
#include "csmoute/preprocess.hpp"
#include "support/support.hpp"

namespace csmoute {
namespace {

const char* const four_rows = R"(@relation tiny
@attribute a real [0, 10]
@attribute b real [0, 10]
@attribute Class {positive, negative}
@inputs a, b
@outputs Class
@data
1, 2, negative
3, 4, positive
5, 6, negative
7, 8, negative
)";

TEST(Keel, FourRowFile) {
  const auto ds = parse_keel(four_rows, "tiny", ignore_warnings());
  EXPECT_EQ(ds.rows(), 4u);
  EXPECT_EQ(ds.features.cols(), 2u);
  EXPECT_EQ(ds.count(ClassLabel::minority), 1u);
  EXPECT_EQ(ds.minority_name, "positive");
  EXPECT_DOUBLE_EQ(summarize(ds).imbalance_ratio, 3.0);
  EXPECT_EQ(ds.features(1, 1), 4.0);
  EXPECT_EQ(ds.labels[1], ClassLabel::minority);
}

TEST(Keel, Glass1Summary) {
  const auto ds = load_dataset(testing::keel_file("glass1"), {}, ignore_warnings());
  const auto s = summarize(ds);
  EXPECT_EQ(s.n_samples, 214u);
  EXPECT_EQ(s.n_features, 9u);
  EXPECT_EQ(std::round(s.imbalance_ratio * 100.0) / 100.0, 1.82);
  EXPECT_EQ(ds.name, "glass1");
}

TEST(Keel, ShortRowNamesLine) {
  std::string text = four_rows;
  text.replace(text.find("5, 6, negative"), 14, "5, negative");
  try {
    parse_keel(text, "tiny", ignore_warnings());
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 10u);
    EXPECT_NE(std::string(e.what()).find("line 10"), std::string::npos);
  }
}

TEST(Keel, UnknownClassLabel) {
  std::string text = four_rows;
  text.replace(text.find("7, 8, negative"), 14, "7, 8, neutral");
  EXPECT_THROW(parse_keel(text, "tiny", ignore_warnings()), ParseError);
}

TEST(Keel, SingleClass) {
  std::string text = four_rows;
  text.replace(text.find("3, 4, positive"), 14, "3, 4, negative");
  EXPECT_THROW(parse_keel(text, "tiny", ignore_warnings()), ValidationError);
}

TEST(Keel, MissingValuesDropped) {
  std::string text = four_rows;
  text.replace(text.find("5, 6, negative"), 14, "?, 6, negative");
  int warnings = 0;
  const auto ds = parse_keel(text, "tiny", [&](std::string_view) { ++warnings; });
  EXPECT_EQ(ds.rows(), 3u);
  EXPECT_EQ(warnings, 1);
}

TEST(Keel, NominalAttributesAreCategorical) {
  const char* text = R"(@relation n
@attribute colour {red, blue}
@attribute x real [0, 1]
@attribute Class {positive, negative}
@data
blue, 0.5, negative
red, 0.1, positive
blue, 0.2, negative
)";
  const auto ds = parse_keel(text, "n", ignore_warnings());
  EXPECT_EQ(ds.columns[0].kind, FeatureKind::categorical);
  EXPECT_EQ(ds.columns[1].kind, FeatureKind::numeric);
  const auto enc = encode_categoricals(ds);
  // First appearance: blue -> 0, red -> 1.
  EXPECT_EQ(enc.features(0, 0), 0.0);
  EXPECT_EQ(enc.features(1, 0), 1.0);
  const auto lex = encode_categoricals(ds, CategoryOrder::lexicographic);
  EXPECT_EQ(lex.features(0, 0), 0.0);
  EXPECT_EQ(lex.features(1, 0), 1.0);
  EXPECT_EQ(lex.columns[0].levels, (std::vector<std::string>{"blue", "red"}));
}

std::string csv_7_3() {
  std::string s = "x,y,label\n";
  for (int i = 0; i < 10; ++i) {
    s += std::to_string(i) + "," + std::to_string(i * 2) + "," + (i < 3 ? "yes" : "no") + "\n";
  }
  return s;
}

TEST(Csv, MinorityCount) {
  const auto ds = parse_csv(csv_7_3(), "label", {}, "c", ignore_warnings());
  EXPECT_EQ(ds.rows(), 10u);
  EXPECT_EQ(ds.count(ClassLabel::minority), 3u);
  EXPECT_EQ(ds.minority_name, "yes");
  EXPECT_EQ(ds.features.cols(), 2u);
}

TEST(Csv, AbsentMinorityLabel) {
  EXPECT_THROW(parse_csv(csv_7_3(), "label", "maybe", "c", ignore_warnings()), ValidationError);
}

TEST(Csv, MissingClassColumn) { EXPECT_THROW(parse_csv(csv_7_3(), "target", {}, "c", ignore_warnings()), InputError); }

TEST(Csv, TextColumnIsCategorical) {
  const char* text = "a,colour,b,Class\n1,red,2,p\n3,blue,4,n\n5,red,6,n\n";
  const auto ds = parse_csv(text, "Class", {}, "c", ignore_warnings());
  ASSERT_EQ(ds.columns.size(), 3u);
  EXPECT_EQ(ds.columns[0].kind, FeatureKind::numeric);
  EXPECT_EQ(ds.columns[1].kind, FeatureKind::categorical);
  EXPECT_EQ(ds.columns[2].kind, FeatureKind::numeric);
  const auto enc = encode_categoricals(ds);
  EXPECT_EQ(enc.features(0, 1), 0.0);
  EXPECT_EQ(enc.features(1, 1), 1.0);
  EXPECT_EQ(enc.features(2, 1), 0.0);
}

TEST(Csv, QuotedFields) {
  const char* text = "name,x,Class\n\"a, b\",1,p\n\"say \"\"hi\"\"\",2,n\nc,3,n\n";
  const auto ds = parse_csv(text, "Class", {}, "c", ignore_warnings());
  EXPECT_EQ(ds.columns[0].levels[0], "a, b");
  EXPECT_EQ(ds.columns[0].levels[1], "say \"hi\"");
}

TEST(Csv, RoundTrip) {
  Rng rng(17);
  auto ds = testing::two_blobs(30, 12, 3, rng);
  const std::string text = to_csv(ds);
  const auto back = parse_csv(text, ds.class_column, ds.minority_name, "blobs", ignore_warnings());
  ASSERT_EQ(back.rows(), ds.rows());
  EXPECT_EQ(back.labels, ds.labels);
  EXPECT_TRUE(bit_identical(back.features, ds.features));
  EXPECT_EQ(to_csv(back), text);
}

TEST(Preprocess, EncodeIsIdentityOnNumeric) {
  Rng rng(1);
  const auto ds = testing::two_blobs(10, 5, 2, rng);
  EXPECT_TRUE(bit_identical(encode_categoricals(ds).features, ds.features));
}

TEST(Preprocess, SingleLevelEncodesToZero) {
  const char* text = "c,x,Class\nk,1,p\nk,2,n\nk,3,n\n";
  const auto enc = encode_categoricals(parse_csv(text, "Class", {}, "c", ignore_warnings()));
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(enc.features(r, 0), 0.0);
}

TEST(Preprocess, StandardizeTwoValues) {
  auto ds = make_dataset("s", Matrix{{1.0}, {3.0}}, {ClassLabel::minority, ClassLabel::majority});
  const auto st = standardize(ds, ignore_warnings());
  EXPECT_DOUBLE_EQ(st.dataset.features(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(st.dataset.features(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(st.scaler.mean[0], 2.0);
  EXPECT_DOUBLE_EQ(st.scaler.scale[0], 1.0);
}

TEST(Preprocess, ConstantColumnWarns) {
  auto ds = make_dataset("s", Matrix{{5.0}, {5.0}, {5.0}},
                         {ClassLabel::minority, ClassLabel::majority, ClassLabel::majority});
  int warnings = 0;
  const auto st = standardize(ds, [&](std::string_view) { ++warnings; });
  EXPECT_EQ(warnings, 1);
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(st.dataset.features(r, 0), 0.0);
}

TEST(Preprocess, StandardizeIsIdempotent) {
  Rng rng(8);
  const auto ds = testing::two_blobs(40, 15, 4, rng);
  const auto once = standardize(ds, ignore_warnings()).dataset;
  const auto twice = standardize(once, ignore_warnings()).dataset;
  for (std::size_t r = 0; r < once.rows(); ++r) {
    for (std::size_t c = 0; c < 4; ++c) EXPECT_NEAR(once.features(r, c), twice.features(r, c), 1e-12);
  }
}

TEST(Preprocess, StandardizeRejectsRawCategoricals) {
  const char* text = "c,x,Class\nk,1,p\nj,2,n\nk,3,n\n";
  EXPECT_THROW(standardize(parse_csv(text, "Class", {}, "c", ignore_warnings()), ignore_warnings()), ArgumentError);
}

TEST(Preprocess, EncodingIsDeterministic) {
  const auto a = prepare(load_dataset(testing::keel_file("car-good"), {}, ignore_warnings()), ignore_warnings());
  const auto b = prepare(load_dataset(testing::keel_file("car-good"), {}, ignore_warnings()), ignore_warnings());
  EXPECT_TRUE(bit_identical(a.features, b.features));
}

}  // namespace
}  // namespace csmoute
