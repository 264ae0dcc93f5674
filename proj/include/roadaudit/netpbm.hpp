#pragma once

#include <filesystem>
#include <variant>

#include "roadaudit/core.hpp"

namespace roadaudit {

// Binary netpbm I/O: P5 (grayscale) and P6 (color), maxval 255 only.
// Class masks travel as P5 files whose pixel values are class ids.

using LoadedImage = std::variant<GrayImage, RgbImage>;

// Throws Errc::file_missing / malformed_header / truncated_data.
LoadedImage load_image(const std::filesystem::path& path);

// Strict P5 loader for masks and reference crops.
GrayImage load_pgm(const std::filesystem::path& path);

void save_pgm(const std::filesystem::path& path, const GrayImage& img);
void save_ppm(const std::filesystem::path& path, const RgbImage& img);

// Parsers over in-memory bytes (the file loaders wrap these).
LoadedImage decode_netpbm(const std::string& bytes);
std::string encode_pgm(const GrayImage& img);
std::string encode_ppm(const RgbImage& img);

}  // namespace roadaudit
