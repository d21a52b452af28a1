#include "retcc/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace retcc {

Raster::Raster(int width, int height, Pixel fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("raster dimensions must be positive");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Raster equalize_red_channel(const Raster& img) {
    std::array<std::uint64_t, 256> hist{};
    for (const Pixel& p : img.pixels()) ++hist[p.r];

    const double total = static_cast<double>(img.pixel_count());
    std::array<std::uint8_t, 256> map{};
    std::uint64_t cum = 0;
    for (int v = 0; v < 256; ++v) {
        cum += hist[v];
        const double cdf = static_cast<double>(cum) / total;
        map[v] = static_cast<std::uint8_t>(std::lround(255.0 * cdf));
    }

    Raster out = img;
    for (Pixel& p : out.pixels()) p.r = map[p.r];
    return out;
}

CropBox detect_retina_crop(const Raster& img, double threshold) {
    int min_x = img.width(), min_y = img.height();
    int max_x = -1, max_y = -1;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (luminance(img.at(x, y)) > threshold) {
                min_x = std::min(min_x, x);
                min_y = std::min(min_y, y);
                max_x = std::max(max_x, x);
                max_y = std::max(max_y, y);
            }
        }
    }
    if (max_x < 0)
        throw Error(Errc::no_foreground, "no pixel above luminance threshold " +
                                             std::to_string(threshold));
    return CropBox{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
}

Raster crop(const Raster& img, const CropBox& box) {
    if (box.width <= 0 || box.height <= 0 || box.x0 < 0 || box.y0 < 0 ||
        box.x0 + box.width > img.width() || box.y0 + box.height > img.height())
        throw Error(Errc::out_of_bounds, "crop box exceeds raster bounds");

    Raster out(box.width, box.height);
    for (int y = 0; y < box.height; ++y)
        for (int x = 0; x < box.width; ++x)
            out.at(x, y) = img.at(box.x0 + x, box.y0 + y);
    return out;
}

} // namespace retcc
