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

#include "ew/domain.hpp"

namespace ew {

/// Bilinear resample with half-pixel centres. Equal dimensions return the
/// frame unchanged. Throws Error(kInvalidArgument) for non-positive sizes.
Frame resize_to(const Frame& f, int width, int height);

/// Output is round(width*scale) x round(height*scale). Throws
/// Error(kInvalidArgument) unless 0 < scale <= 1.
Frame resize_frame(const Frame& f, double scale);

/// Decodes a PNG or JPEG file (chosen by signature) to RGB8. Throws
/// Error(kIoError) for unreadable or corrupt images.
Frame decode_image(const std::filesystem::path& path);

}  // namespace ew
