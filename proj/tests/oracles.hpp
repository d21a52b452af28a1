#pragma once

// Test-only oracles, kept deliberately independent of the library's
// computation paths: brute-force enumeration and textbook formulas only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "retcc/autocc.hpp"
#include "retcc/citation_knn.hpp"
#include "retcc/raster.hpp"

namespace oracles {

// Tight bounding box by exhaustive scan; nullopt when nothing qualifies.
inline std::optional<retcc::CropBox> bbox_scan(const retcc::Raster& img, double threshold) {
    int min_x = img.width(), min_y = img.height(), max_x = -1, max_y = -1;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const retcc::Pixel& p = img.at(x, y);
            if (0.299 * p.r + 0.587 * p.g + 0.114 * p.b > threshold) {
                min_x = std::min(min_x, x);
                min_y = std::min(min_y, y);
                max_x = std::max(max_x, x);
                max_y = std::max(max_y, y);
            }
        }
    }
    if (max_x < 0) return std::nullopt;
    return retcc::CropBox{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
}

inline std::set<std::uint32_t> pixel_set(const std::vector<retcc::Raster>& images) {
    std::set<std::uint32_t> out;
    for (const retcc::Raster& img : images)
        for (const retcc::Pixel& p : img.pixels())
            out.insert((std::uint32_t{p.r} << 16) | (std::uint32_t{p.g} << 8) | p.b);
    return out;
}

// All ordered pixel pairs at Chebyshev distance exactly 1 sharing a bin.
// Quadratic on purpose; the implementation walks neighborhoods instead.
inline retcc::AutoccCounts autocc_pairs(const retcc::Block& block, int k_bins) {
    retcc::AutoccCounts out;
    out.neighbor_sum.assign(k_bins, 0);
    out.histogram.assign(k_bins, 0);
    for (int y = 0; y < block.height; ++y)
        for (int x = 0; x < block.width; ++x) ++out.histogram[block.bin(x, y)];
    for (int y1 = 0; y1 < block.height; ++y1)
        for (int x1 = 0; x1 < block.width; ++x1)
            for (int y2 = 0; y2 < block.height; ++y2)
                for (int x2 = 0; x2 < block.width; ++x2) {
                    if (x1 == x2 && y1 == y2) continue;
                    if (std::max(std::abs(x1 - x2), std::abs(y1 - y2)) != 1) continue;
                    if (block.bin(x1, y1) != block.bin(x2, y2)) continue;
                    ++out.neighbor_sum[block.bin(x1, y1)];
                }
    return out;
}

// Textbook Pearson: means, covariance, variances, in that order.
inline double correlation_distance(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (x[i] - mx) * (y[i] - my);
        vx += (x[i] - mx) * (x[i] - mx);
        vy += (y[i] - my) * (y[i] - my);
    }
    if (vx == 0.0 || vy == 0.0) return x == y ? 0.0 : 2.0;
    return 1.0 - cov / std::sqrt(vx * vy);
}

inline double euclidean_distance(const std::vector<double>& x, const std::vector<double>& y) {
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) ss += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(ss);
}

inline double instance_dist(const std::vector<double>& x, const std::vector<double>& y,
                            retcc::InstanceMetric m) {
    return m == retcc::InstanceMetric::correlation ? correlation_distance(x, y)
                                                   : euclidean_distance(x, y);
}

// Full pairwise table, reduced per mode.
inline double bag_dist(const retcc::Bag& a, const retcc::Bag& b,
                       const retcc::DistanceConfig& cfg) {
    std::vector<std::vector<double>> table(a.instances.size(),
                                           std::vector<double>(b.instances.size()));
    for (std::size_t i = 0; i < a.instances.size(); ++i)
        for (std::size_t j = 0; j < b.instances.size(); ++j)
            table[i][j] = instance_dist(a.instances[i], b.instances[j], cfg.instance_metric);

    if (cfg.bag_distance == retcc::BagDistance::min_hausdorff) {
        double best = table[0][0];
        for (const auto& row : table)
            for (double d : row) best = std::min(best, d);
        return best;
    }

    auto directed = [&](bool rows) {
        std::vector<double> mins;
        const std::size_t outer = rows ? a.instances.size() : b.instances.size();
        const std::size_t inner = rows ? b.instances.size() : a.instances.size();
        for (std::size_t i = 0; i < outer; ++i) {
            double m = rows ? table[i][0] : table[0][i];
            for (std::size_t j = 0; j < inner; ++j)
                m = std::min(m, rows ? table[i][j] : table[j][i]);
            mins.push_back(m);
        }
        std::sort(mins.begin(), mins.end());
        const std::size_t r = std::min<std::size_t>(cfg.rank, mins.size());
        return mins[r - 1];
    };
    return std::max(directed(true), directed(false));
}

} // namespace oracles
