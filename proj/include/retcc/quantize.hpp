#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "retcc/raster.hpp"

namespace retcc {

using Shade = std::array<double, 3>;

// Deduplicated RGB triplets over one or more images, in ascending
// (r, g, b) order.
struct ShadeSet {
    std::vector<Shade> shades;
    std::size_t count() const noexcept { return shades.size(); }
};

// Learned color codebook. Centroids are kept sorted by (r, g, b) so bin
// indices and serialized bytes are stable for a given converged solution.
struct Codebook {
    int k = 0;
    std::vector<Shade> centroids;
    double training_sse = 0.0;
    std::uint64_t seed = 0;
};

struct QuantizedRaster {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> bins;

    int at(int x, int y) const { return bins[static_cast<std::size_t>(y) * width + x]; }
};

ShadeSet collect_unique_shades(std::span<const Raster> images);

// Lloyd k-means over the unique-shade points (unweighted), k-means++
// seeded. Stops when the max centroid movement drops below tol or after
// max_iters passes. sse_trace, when given, receives the SSE evaluated at
// every assignment, final state included; it is non-increasing.
Codebook train_codebook(const ShadeSet& shades, int k, std::uint64_t seed,
                        int max_iters = 100, double tol = 1e-4,
                        std::vector<double>* sse_trace = nullptr);

// Nearest centroid by squared Euclidean distance, ties to the lowest index.
QuantizedRaster quantize_raster(const Raster& img, const Codebook& cb);

} // namespace retcc
