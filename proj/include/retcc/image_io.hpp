#pragma once

#include <filesystem>

#include "retcc/raster.hpp"

namespace retcc {

// PNG in/out via libpng. Reads are normalized to 8-bit RGB (palette and
// gray images expanded, 16-bit depths stripped, alpha dropped).
Raster load_png(const std::filesystem::path& path);
void save_png(const Raster& img, const std::filesystem::path& path);

// Dispatch on extension; only .png is supported.
Raster load_image(const std::filesystem::path& path);

} // namespace retcc
