#include "retcc/autocc.hpp"

#include <stdexcept>
#include <utility>

namespace retcc {

std::vector<int> split_extents(int total, int grid) {
    const int base = total / grid;
    const int rem = total % grid;
    std::vector<int> out(grid, base);
    for (int i = 0; i < rem; ++i) ++out[i];
    return out;
}

std::vector<Block> partition_blocks(const QuantizedRaster& q, int grid) {
    if (grid < 1) throw std::invalid_argument("grid must be >= 1");
    if (q.width < grid || q.height < grid)
        throw Error(Errc::too_small, "raster " + std::to_string(q.width) + "x" +
                                         std::to_string(q.height) +
                                         " smaller than grid " + std::to_string(grid));

    const std::vector<int> col_w = split_extents(q.width, grid);
    const std::vector<int> row_h = split_extents(q.height, grid);

    std::vector<Block> blocks;
    blocks.reserve(static_cast<std::size_t>(grid) * grid);
    int y = 0;
    for (int r = 0; r < grid; ++r) {
        int x = 0;
        for (int c = 0; c < grid; ++c) {
            blocks.push_back(Block{&q, x, y, col_w[c], row_h[r]});
            x += col_w[c];
        }
        y += row_h[r];
    }
    return blocks;
}

AutoccCounts autocc_counts(const Block& block, int k_bins) {
    if (k_bins < 1) throw std::invalid_argument("k_bins must be >= 1");

    AutoccCounts out;
    out.neighbor_sum.assign(k_bins, 0);
    out.histogram.assign(k_bins, 0);

    static constexpr int dx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    static constexpr int dy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

    for (int y = 0; y < block.height; ++y) {
        for (int x = 0; x < block.width; ++x) {
            const int c = block.bin(x, y);
            if (c < 0 || c >= k_bins)
                throw Error(Errc::bin_out_of_range,
                            "bin " + std::to_string(c) + " >= k_bins " + std::to_string(k_bins));
            ++out.histogram[c];
            std::int64_t same = 0;
            for (int d = 0; d < 8; ++d) {
                const int nx = x + dx[d];
                const int ny = y + dy[d];
                if (nx < 0 || ny < 0 || nx >= block.width || ny >= block.height) continue;
                if (block.bin(nx, ny) == c) ++same;
            }
            out.neighbor_sum[c] += same;
        }
    }
    return out;
}

FeatureVector compute_autocc(const Block& block, int k_bins) {
    const AutoccCounts counts = autocc_counts(block, k_bins);
    FeatureVector f(k_bins, 0.0);
    for (int c = 0; c < k_bins; ++c) {
        if (counts.histogram[c] > 0)
            f[c] = static_cast<double>(counts.neighbor_sum[c]) /
                   static_cast<double>(counts.histogram[c]);
    }
    return f;
}

Bag bag_from_quantized(const QuantizedRaster& q, int k_bins, int grid,
                       std::string id, std::string label) {
    Bag bag;
    bag.id = std::move(id);
    bag.label = std::move(label);
    const std::vector<Block> blocks = partition_blocks(q, grid);
    bag.instances.reserve(blocks.size());
    for (const Block& b : blocks) bag.instances.push_back(compute_autocc(b, k_bins));
    return bag;
}

Bag extract_bag(const Raster& img, const Codebook& cb, int grid,
                double crop_threshold, std::string id, std::string label) {
    const CropBox box = detect_retina_crop(img, crop_threshold);
    const Raster cropped = crop(img, box);
    const Raster equalized = equalize_red_channel(cropped);
    const QuantizedRaster q = quantize_raster(equalized, cb);
    return bag_from_quantized(q, cb.k, grid, std::move(id), std::move(label));
}

} // namespace retcc
