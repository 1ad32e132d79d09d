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

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ew {

/// Throws Error(kIoError) if the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);

/// Syntax errors become Error(kParseError) with "file:line:col" context.
nlohmann::json parse_json(std::string_view text, const std::string& origin);
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames it over `path`, so readers never
/// observe a half-written report.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

/// Typed field access with schema-violation errors naming `context.key`.
double require_number(const nlohmann::json& j, const char* key,
                      const std::string& context);
std::string require_string(const nlohmann::json& j, const char* key,
                           const std::string& context);

}  // namespace ew
