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

#include "ew/wire.hpp"

#include <gtest/gtest.h>

#include <random>

#include "ew/error.hpp"

namespace ew {
namespace {

std::vector<std::uint8_t> bytes(std::string_view s) { return {s.begin(), s.end()}; }

std::vector<std::uint8_t> px(const Frame& f) { return {f.pixels().begin(), f.pixels().end()}; }

Frame noise_frame(int w, int h, std::mt19937& rng) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * h * 3);
  for (auto& p : px) p = static_cast<std::uint8_t>(rng());
  return Frame(w, h, std::move(px));
}

TEST(WireRequest, LayoutIsBigEndianAfterMagic) {
  const Frame f(2, 1, {1, 2, 3, 4, 5, 6});
  const auto payload = wire::encode_request(f);
  ASSERT_EQ(payload.size(), wire::kRequestHeaderSize + 6);
  EXPECT_EQ(std::string(payload.begin(), payload.begin() + 8), "EWINFER1");
  EXPECT_EQ(payload[8], 0);
  EXPECT_EQ(payload[11], 2);
  EXPECT_EQ(payload[15], 1);
  EXPECT_EQ(payload[16], 1);
}

TEST(WireRequest, RoundTripsRandomFrames) {
  std::mt19937 rng(9);
  for (int i = 0; i < 50; ++i) {
    const Frame f = noise_frame(1 + rng() % 40, 1 + rng() % 40, rng);
    const Frame back = wire::decode_request(wire::encode_request(f));
    EXPECT_EQ(back.width(), f.width());
    EXPECT_EQ(back.height(), f.height());
    EXPECT_EQ(px(back), px(f));
  }
}

TEST(WireRequest, RejectsMalformedPayloads) {
  const Frame f(3, 2, std::vector<std::uint8_t>(18, 7));
  auto good = wire::encode_request(f);
  auto bad_magic = good;
  bad_magic[0] = 'X';
  auto truncated = good;
  truncated.pop_back();
  auto extra = good;
  extra.push_back(0);
  for (const auto& p : {bad_magic, truncated, extra, std::vector<std::uint8_t>(5)}) {
    try {
      wire::decode_request(p);
      ADD_FAILURE() << "accepted malformed request";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kProtocolError);
    }
  }
}

TEST(WireResponse, RoundTrip) {
  const wire::Response r{ClassLabel::kMetal, 0.91, 58.8};
  const auto back = wire::decode_response(wire::encode_response(r));
  EXPECT_EQ(back.label, ClassLabel::kMetal);
  EXPECT_DOUBLE_EQ(back.confidence, 0.91);
  EXPECT_DOUBLE_EQ(back.duration_ms, 58.8);
}

TEST(WireResponse, RejectsInvalidReplies) {
  const char* cases[] = {
      "",
      "not json",
      "[]",
      R"({"label": "trash", "confidence": 0.5, "duration_ms": 1})",
      R"({"label": "none", "confidence": 0.5, "duration_ms": 1})",
      R"({"label": "glass", "confidence": 1.5, "duration_ms": 1})",
      R"({"label": "glass", "confidence": -0.1, "duration_ms": 1})",
      R"({"label": "glass", "confidence": 0.5, "duration_ms": -1})",
      R"({"label": "glass", "duration_ms": 1})",
      R"({"label": 3, "confidence": 0.5, "duration_ms": 1})",
      R"({"error": "model not loaded"})",
  };
  for (const char* c : cases) {
    try {
      wire::decode_response(bytes(c));
      ADD_FAILURE() << "accepted: " << c;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kProtocolError) << c;
    }
  }
}

TEST(WireResponse, ServerErrorMessageIsSurfaced) {
  try {
    wire::decode_response(wire::encode_error("model not loaded"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("model not loaded"), std::string::npos);
  }
}

TEST(WireResponseProperty, RandomBytesNeverCrash) {
  std::mt19937 rng(21);
  for (int i = 0; i < 2000; ++i) {
    std::vector<std::uint8_t> junk(rng() % 64);
    for (auto& b : junk) b = static_cast<std::uint8_t>(rng());
    try {
      wire::decode_response(junk);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kProtocolError);
    }
  }
}

}  // namespace
}  // namespace ew
