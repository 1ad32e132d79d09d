/* Copyright 2026 The ewbench Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ew/domain.hpp"

#include <gtest/gtest.h>

#include "ew/error.hpp"

namespace ew {
namespace {

TEST(ParseLabel, CaseInsensitive) {
  EXPECT_EQ(parse_label("Metal"), ClassLabel::kMetal);
  EXPECT_EQ(parse_label("cardboard"), ClassLabel::kCardboard);
  EXPECT_EQ(parse_label("PLASTIC"), ClassLabel::kPlastic);
}

TEST(ParseLabel, UnknownNamesTheString) {
  try {
    parse_label("trash");
    FAIL() << "expected unknown-label";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownLabel);
    EXPECT_NE(std::string(e.what()).find("trash"), std::string::npos);
  }
  EXPECT_THROW(parse_label("none"), Error);
  EXPECT_THROW(parse_label(""), Error);
}

TEST(ParseLabel, RoundTripsEveryCategory) {
  for (ClassLabel c : kCategories) EXPECT_EQ(parse_label(to_string(c)), c);
}

TEST(Frame, RejectsMismatchedBuffer) {
  EXPECT_THROW(Frame(4, 3, std::vector<std::uint8_t>(35)), Error);
  EXPECT_THROW(Frame(4, 3, std::vector<std::uint8_t>(37)), Error);
  EXPECT_THROW(Frame(0, 3, {}), Error);
  EXPECT_THROW(Frame(2, -1, {}), Error);
  const Frame f(4, 3, std::vector<std::uint8_t>(36));
  EXPECT_EQ(f.pixels().size(), 36u);
}

TEST(Classification, Validation) {
  EXPECT_NO_THROW(validate(Classification{ClassLabel::kGlass, 0.5, 0.01, {}}));
  EXPECT_THROW(validate(Classification{ClassLabel::kNone, 0.5, 0.01, {}}), Error);
  EXPECT_THROW(validate(Classification{ClassLabel::kGlass, 1.5, 0.01, {}}), Error);
  EXPECT_THROW(validate(Classification{ClassLabel::kGlass, 0.5, 0.0, {}}), Error);
}

TEST(AccelConfig, DefaultsAndValidation) {
  AccelConfig a;
  EXPECT_EQ(a.max_workspace_bytes, 33554432);
  EXPECT_EQ(a.max_batch, 1);
  EXPECT_NO_THROW(validate(a));
  a.resolution_scale = 0;
  EXPECT_THROW(validate(a), Error);
  a.resolution_scale = 1.2;
  EXPECT_THROW(validate(a), Error);
  a = {};
  a.max_batch = 0;
  EXPECT_THROW(validate(a), Error);
}

TEST(Seconds, NanosecondConversionIsExactForMilliseconds) {
  EXPECT_EQ(from_seconds(0.043).count(), 43'000'000);
  EXPECT_EQ(to_seconds(from_seconds(0.320)), 0.320);
}

}  // namespace
}  // namespace ew
