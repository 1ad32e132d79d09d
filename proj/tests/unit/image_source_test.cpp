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

#include <gtest/gtest.h>

#include <fstream>
#include <map>

#include "ew/clock.hpp"
#include "ew/error.hpp"
#include "ew/image.hpp"
#include "ew/source.hpp"

namespace ew {
namespace {

namespace fs = std::filesystem;
const fs::path kFixtures = EW_FIXTURES_DIR;

std::vector<std::uint8_t> px(const Frame& f) { return {f.pixels().begin(), f.pixels().end()}; }

Frame gradient(int w, int h) {
  std::vector<std::uint8_t> px;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      px.insert(px.end(), {static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y), 9});
  return Frame(w, h, std::move(px));
}

struct TempTree {
  fs::path root;
  explicit TempTree(const std::string& name) : root(fs::temp_directory_path() / name) {
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~TempTree() { fs::remove_all(root); }
};

TEST(Resize, ScaledDimensions) {
  const Frame f = gradient(512, 384);
  const Frame r75 = resize_frame(f, 0.75);
  EXPECT_EQ(r75.width(), 384);
  EXPECT_EQ(r75.height(), 288);
  const Frame r50 = resize_frame(f, 0.5);
  EXPECT_EQ(r50.width(), 256);
  EXPECT_EQ(r50.height(), 192);
  EXPECT_EQ(r50.pixels().size(), 256u * 192u * 3u);
  EXPECT_THROW(resize_frame(f, 0), Error);
  EXPECT_THROW(resize_frame(f, 1.5), Error);
}

TEST(Resize, IdentityAtFullScale) {
  const Frame f = gradient(64, 48);
  EXPECT_EQ(px(resize_frame(f, 1.0)), px(f));
  EXPECT_EQ(px(resize_to(f, 64, 48)), px(f));
}

TEST(Resize, ConstantImageStaysConstant) {
  const Frame f(7, 5, std::vector<std::uint8_t>(7 * 5 * 3, 123));
  for (auto [w, h] : {std::pair{3, 2}, {20, 11}, {512, 384}, {1, 1}}) {
    const Frame r = resize_to(f, w, h);
    for (auto p : r.pixels()) ASSERT_EQ(p, 123);
  }
}

TEST(Decode, FixturePngAndJpeg) {
  const Frame png = decode_image(kFixtures / "realworld40/glass/glass_001.png");
  EXPECT_EQ(png.width(), 64);
  EXPECT_EQ(png.height(), 48);
  const Frame jpg = decode_image(kFixtures / "realworld40/glass/glass_003.jpg");
  EXPECT_EQ(jpg.width(), 64);
  EXPECT_EQ(jpg.pixels().size(), 64u * 48u * 3u);
}

TEST(Decode, CorruptFileIsIoError) {
  TempTree t("ew_decode");
  std::ofstream(t.root / "x.png") << "\x89PNG\r\n\x1a\nbroken";
  std::ofstream(t.root / "y.txt") << "hello";
  for (auto name : {"x.png", "y.txt", "missing.png"}) {
    try {
      decode_image(t.root / name);
      ADD_FAILURE() << name;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kIoError) << name;
    }
  }
}

TEST(Ingest, RealWorldFixtureCounts) {
  const auto frames = ingest_directory(kFixtures / "realworld40");
  ASSERT_EQ(frames.size(), 40u);
  std::map<ClassLabel, int> counts;
  for (const auto& f : frames) ++counts[*f.truth];
  EXPECT_EQ(counts[ClassLabel::kCardboard], 9);
  EXPECT_EQ(counts[ClassLabel::kGlass], 5);
  EXPECT_EQ(counts[ClassLabel::kMetal], 6);
  EXPECT_EQ(counts[ClassLabel::kPaper], 10);
  EXPECT_EQ(counts[ClassLabel::kPlastic], 10);
}

TEST(Ingest, OrderIsLexicographic) {
  const auto paths = list_labeled_images(kFixtures / "realworld40");
  for (std::size_t i = 1; i < paths.size(); ++i) {
    EXPECT_LT(paths[i - 1].path.string(), paths[i].path.string());
  }
}

TEST(Ingest, EmptyTreeAndBadCategory) {
  TempTree t("ew_ingest");
  EXPECT_TRUE(ingest_directory(t.root).empty());
  fs::create_directories(t.root / "glass");
  fs::create_directories(t.root / ".cache");
  std::ofstream(t.root / "README") << "x";
  EXPECT_TRUE(list_labeled_images(t.root).empty());
  fs::create_directories(t.root / "trash");
  try {
    list_labeled_images(t.root);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownLabel);
    EXPECT_NE(std::string(e.what()).find("trash"), std::string::npos);
  }
  try {
    list_labeled_images(t.root / "absent");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIoError);
  }
}

TEST(SyntheticSource, FollowsScriptAndChargesCapture) {
  SimulatedClock clock;
  SyntheticSource s({.width = 32, .height = 24, .capture_s = 0.02,
                     .script = {{ClassLabel::kMetal, 2}, {ClassLabel::kPaper, 1}}});
  EXPECT_EQ(s.length(), 3);
  std::vector<ClassLabel> truths;
  while (auto f = s.next(clock)) truths.push_back(*f->truth);
  EXPECT_EQ(truths, (std::vector<ClassLabel>{ClassLabel::kMetal, ClassLabel::kMetal,
                                             ClassLabel::kPaper}));
  EXPECT_EQ(clock.now(), from_seconds(0.06));
}

TEST(SyntheticSource, SeededNoiseIsReproducible) {
  SimulatedClock c1, c2;
  SyntheticSource a({.width = 16, .height = 8, .seed = 4});
  SyntheticSource b({.width = 16, .height = 8, .seed = 4});
  SyntheticSource c({.width = 16, .height = 8, .seed = 5});
  const auto fa = px(a.next(c1)->frame);
  EXPECT_EQ(fa, px(b.next(c2)->frame));
  EXPECT_NE(fa, px(c.next(c2)->frame));
  EXPECT_FALSE(a.length());
}

TEST(DirectorySource, ChargesConfiguredCaptureUnderSimulation) {
  SimulatedClock clock;
  DirectorySource s(kFixtures / "realworld40", 0.01);
  EXPECT_EQ(s.size(), 40u);
  int n = 0;
  while (s.next(clock)) ++n;
  EXPECT_EQ(n, 40);
  EXPECT_EQ(clock.now(), from_seconds(0.4));
}

TEST(SourceFromJson, DeviceIsUnsupported) {
  try {
    source_from_json(nlohmann::json::parse(R"({"kind": "device"})"), ".");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnsupportedFormat);
  }
  EXPECT_THROW(source_from_json(nlohmann::json::parse(
                   R"({"kind": "synthetic", "script": [["trash", 3]]})"), "."),
               Error);
}

}  // namespace
}  // namespace ew
