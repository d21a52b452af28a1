#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "retcc/quantize.hpp"

namespace retcc {

// Read-only window into a QuantizedRaster; bin() takes block-relative
// coordinates. The parent raster must outlive the block.
struct Block {
    const QuantizedRaster* parent = nullptr;
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;

    int bin(int x, int y) const { return parent->at(x0 + x, y0 + y); }
};

// Integer tallies behind the correlogram: per-bin pixel histogram and
// per-bin count of same-bin neighbors at Chebyshev distance 1, neighbors
// outside the block excluded.
struct AutoccCounts {
    std::vector<std::int64_t> neighbor_sum; // even by construction
    std::vector<std::int64_t> histogram;
};

using FeatureVector = std::vector<double>;

// One image's worth of instances. An empty label means unlabeled.
struct Bag {
    std::string id;
    std::string label;
    std::vector<FeatureVector> instances;
};

// Splits total into grid strip extents: floor(total/grid) each, the first
// (total % grid) strips one pixel wider.
std::vector<int> split_extents(int total, int grid);

// grid x grid non-overlapping blocks tiling the raster, row-major.
std::vector<Block> partition_blocks(const QuantizedRaster& q, int grid);

AutoccCounts autocc_counts(const Block& block, int k_bins);

// f[c] = neighbor_sum[c] / histogram[c], 0 for absent bins. Every
// component lies in [0, 8].
FeatureVector compute_autocc(const Block& block, int k_bins);

// Full per-image pipeline: detect retina crop, crop, equalize red,
// quantize, partition, one feature vector per block (row-major).
Bag extract_bag(const Raster& img, const Codebook& cb, int grid,
                double crop_threshold, std::string id, std::string label = {});

// Same, for callers that already cropped/equalized and quantized.
Bag bag_from_quantized(const QuantizedRaster& q, int k_bins, int grid,
                       std::string id, std::string label = {});

} // namespace retcc
