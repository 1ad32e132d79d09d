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

#pragma once

// EWINFER1 inference protocol.
//
//   request:  u32 BE length | "EWINFER1" | u32 BE width | u32 BE height |
//             width*height*3 RGB8 bytes
//   response: u32 BE length | UTF-8 JSON
//             {"label": str, "confidence": num, "duration_ms": num}
//             or {"error": str}
//
// The helpers below build and parse the payloads (everything after the
// length prefix); socket.hpp's write_frame/read_frame add the prefix.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ew/domain.hpp"

namespace ew::wire {

inline constexpr char kMagic[] = "EWINFER1";
inline constexpr std::size_t kMagicSize = 8;
inline constexpr std::size_t kRequestHeaderSize = kMagicSize + 8;
inline constexpr std::uint32_t kMaxResponseBytes = 1u << 20;

std::vector<std::uint8_t> encode_request(const Frame& frame);

/// Inverse of encode_request. Throws Error(kProtocolError) for a bad magic,
/// truncated payload or size mismatch.
Frame decode_request(std::span<const std::uint8_t> payload);

struct Response {
  ClassLabel label = ClassLabel::kCardboard;
  double confidence = 0;
  double duration_ms = 0;
};

std::vector<std::uint8_t> encode_response(const Response& r);
std::vector<std::uint8_t> encode_error(const std::string& message);

/// Parses and validates a response payload: the label must be one of the five
/// categories, confidence in [0,1], duration_ms >= 0. A server-side
/// {"error": ...} and every malformed payload throw Error(kProtocolError).
Response decode_response(std::span<const std::uint8_t> payload);

}  // namespace ew::wire
