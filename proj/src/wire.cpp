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

#include <cmath>
#include <cstring>

#include "ew/error.hpp"
#include "json.hpp"

namespace ew::wire {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in) {
  return (std::uint32_t{in[0]} << 24) | (std::uint32_t{in[1]} << 16) |
         (std::uint32_t{in[2]} << 8) | std::uint32_t{in[3]};
}

[[noreturn]] void protocol_error(const std::string& what) {
  throw Error(ErrorKind::kProtocolError, what);
}

std::vector<std::uint8_t> dump(const nlohmann::json& j) {
  const std::string s = j.dump();
  return {s.begin(), s.end()};
}

}  // namespace

std::vector<std::uint8_t> encode_request(const Frame& frame) {
  std::vector<std::uint8_t> out;
  out.reserve(kRequestHeaderSize + frame.pixels().size());
  out.insert(out.end(), kMagic, kMagic + kMagicSize);
  put_u32(out, static_cast<std::uint32_t>(frame.width()));
  put_u32(out, static_cast<std::uint32_t>(frame.height()));
  out.insert(out.end(), frame.pixels().begin(), frame.pixels().end());
  return out;
}

Frame decode_request(std::span<const std::uint8_t> payload) {
  if (payload.size() < kRequestHeaderSize) protocol_error("truncated request header");
  if (std::memcmp(payload.data(), kMagic, kMagicSize) != 0) {
    protocol_error("bad magic, expected EWINFER1");
  }
  const std::uint32_t w = get_u32(payload.subspan(kMagicSize));
  const std::uint32_t h = get_u32(payload.subspan(kMagicSize + 4));
  if (w == 0 || h == 0 || w > 1u << 15 || h > 1u << 15) {
    protocol_error("bad frame dimensions " + std::to_string(w) + "x" + std::to_string(h));
  }
  const std::size_t expected = std::size_t{w} * h * 3;
  const auto pixels = payload.subspan(kRequestHeaderSize);
  if (pixels.size() != expected) {
    protocol_error("pixel payload holds " + std::to_string(pixels.size()) +
                   " bytes, expected " + std::to_string(expected));
  }
  return Frame(static_cast<int>(w), static_cast<int>(h),
               std::vector<std::uint8_t>(pixels.begin(), pixels.end()));
}

std::vector<std::uint8_t> encode_response(const Response& r) {
  return dump({{"label", to_string(r.label)},
               {"confidence", r.confidence},
               {"duration_ms", r.duration_ms}});
}

std::vector<std::uint8_t> encode_error(const std::string& message) {
  return dump({{"error", message}});
}

Response decode_response(std::span<const std::uint8_t> payload) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(payload.begin(), payload.end());
  } catch (const nlohmann::json::parse_error& e) {
    protocol_error(std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object()) protocol_error("response must be a JSON object");
  if (j.contains("error")) {
    const auto& e = j["error"];
    protocol_error("server error: " + (e.is_string() ? e.get<std::string>() : e.dump()));
  }
  if (!j.contains("label") || !j["label"].is_string()) {
    protocol_error("response missing string 'label'");
  }
  if (!j.contains("confidence") || !j["confidence"].is_number()) {
    protocol_error("response missing numeric 'confidence'");
  }
  if (!j.contains("duration_ms") || !j["duration_ms"].is_number()) {
    protocol_error("response missing numeric 'duration_ms'");
  }
  Response r;
  try {
    r.label = parse_label(j["label"].get<std::string>());
  } catch (const Error& e) {
    protocol_error(e.what());
  }
  r.confidence = j["confidence"].get<double>();
  r.duration_ms = j["duration_ms"].get<double>();
  if (!(r.confidence >= 0.0 && r.confidence <= 1.0)) {
    protocol_error("confidence outside [0,1]");
  }
  if (!(std::isfinite(r.duration_ms) && r.duration_ms >= 0.0)) {
    protocol_error("duration_ms must be a non-negative number");
  }
  return r;
}

}  // namespace ew::wire
