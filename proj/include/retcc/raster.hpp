#pragma once

#include <cstdint>
#include <vector>

#include "retcc/error.hpp"

namespace retcc {

struct Pixel {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Pixel&, const Pixel&) = default;
};

// Decoded 8-bit RGB image, row-major.
class Raster {
public:
    Raster() = default;
    Raster(int width, int height, Pixel fill = Pixel{});

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return data_.empty(); }
    std::size_t pixel_count() const noexcept { return data_.size(); }

    Pixel& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    const Pixel& at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    std::vector<Pixel>& pixels() noexcept { return data_; }
    const std::vector<Pixel>& pixels() const noexcept { return data_; }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Pixel> data_;
};

struct CropBox {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;

    friend bool operator==(const CropBox&, const CropBox&) = default;
};

// Rec.601 luma; any fixed positive weighting would do for foreground
// detection, this one is pinned for reproducibility.
inline double luminance(const Pixel& p) {
    return 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
}

// Remaps the red channel by s(v) = round(255 * cdf(v)), computed from this
// image's own red histogram. Green and blue pass through untouched.
Raster equalize_red_channel(const Raster& img);

// Tight bounding box of all pixels with luminance strictly above threshold.
// Throws Errc::no_foreground when nothing qualifies.
CropBox detect_retina_crop(const Raster& img, double threshold);

Raster crop(const Raster& img, const CropBox& box);

} // namespace retcc
