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

#include "ew/image.hpp"

#include <jpeglib.h>
#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>

#include "ew/error.hpp"

namespace ew {

Frame resize_to(const Frame& f, int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::kInvalidArgument, "resize target must be positive");
  }
  if (width == f.width() && height == f.height()) return f;

  const auto src = f.pixels();
  const int sw = f.width();
  const int sh = f.height();
  const double sx = static_cast<double>(sw) / width;
  const double sy = static_cast<double>(sh) / height;

  std::vector<std::uint8_t> out(static_cast<std::size_t>(width) * height * 3);
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(sh - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, sh - 1);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(sw - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, sw - 1);
      const double wx = fx - x0;
      for (int c = 0; c < 3; ++c) {
        auto at = [&](int xx, int yy) {
          return static_cast<double>(src[(static_cast<std::size_t>(yy) * sw + xx) * 3 + c]);
        };
        const double top = at(x0, y0) * (1 - wx) + at(x1, y0) * wx;
        const double bottom = at(x0, y1) * (1 - wx) + at(x1, y1) * wx;
        const double v = top * (1 - wy) + bottom * wy;
        out[(static_cast<std::size_t>(y) * width + x) * 3 + c] =
            static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return Frame(width, height, std::move(out), f.captured_at(), f.capture_duration_s());
}

Frame resize_frame(const Frame& f, double scale) {
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "resize scale must lie in (0, 1], got " + std::to_string(scale));
  }
  const int w = std::max(1, static_cast<int>(std::lround(f.width() * scale)));
  const int h = std::max(1, static_cast<int>(std::lround(f.height() * scale)));
  return resize_to(f, w, h);
}

namespace {

Frame decode_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error(ErrorKind::kIoError, path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(ErrorKind::kIoError, path.string() + ": " + image.message);
  }
  return Frame(static_cast<int>(image.width), static_cast<int>(image.height),
               std::move(pixels));
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

Frame decode_jpeg(const std::filesystem::path& path) {
  std::unique_ptr<std::FILE, decltype(&std::fclose)> file(
      std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!file) throw Error(ErrorKind::kIoError, "cannot open " + path.string());

  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  // Only trivially destructible state lives between setjmp and longjmp.
  std::vector<std::uint8_t>* pixels = new std::vector<std::uint8_t>();
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    delete pixels;
    throw Error(ErrorKind::kIoError, path.string() + ": " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  const auto w = cinfo.output_width;
  const auto h = cinfo.output_height;
  pixels->resize(static_cast<std::size_t>(w) * h * 3);
  while (cinfo.output_scanline < h) {
    JSAMPROW row = pixels->data() + static_cast<std::size_t>(cinfo.output_scanline) * w * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  std::vector<std::uint8_t> owned = std::move(*pixels);
  delete pixels;
  return Frame(static_cast<int>(w), static_cast<int>(h), std::move(owned));
}

}  // namespace

Frame decode_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  unsigned char sig[8] = {};
  in.read(reinterpret_cast<char*>(sig), sizeof(sig));
  if (in.gcount() >= 8 && png_sig_cmp(sig, 0, 8) == 0) return decode_png(path);
  if (in.gcount() >= 3 && sig[0] == 0xFF && sig[1] == 0xD8 && sig[2] == 0xFF) {
    return decode_jpeg(path);
  }
  throw Error(ErrorKind::kIoError, path.string() + ": not a PNG or JPEG image");
}

}  // namespace ew
