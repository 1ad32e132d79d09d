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

#include "ew/json_io.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

#include "ew/error.hpp"

namespace ew {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_json(std::string_view text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::kParseError, origin + ":" + std::to_string(line) +
                                            ":" + std::to_string(col) +
                                            ": " + e.what());
  }
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  return parse_json(read_text_file(path), path.string());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  const auto tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIoError, "cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::kIoError, "short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::kIoError,
                "cannot rename " + tmp + " to " + path.string() + ": " + ec.message());
  }
}

double require_number(const nlohmann::json& j, const char* key,
                      const std::string& context) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorKind::kSchemaViolation,
                context + "." + key + " must be a number");
  }
  return j.at(key).get<double>();
}

std::string require_string(const nlohmann::json& j, const char* key,
                           const std::string& context) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string()) {
    throw Error(ErrorKind::kSchemaViolation,
                context + "." + key + " must be a string");
  }
  return j.at(key).get<std::string>();
}

}  // namespace ew
