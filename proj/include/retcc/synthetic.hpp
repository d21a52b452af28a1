#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "retcc/raster.hpp"

namespace retcc {

// One generated fundus-style image. evidence_cells lists the cells of the
// 8x8 grid over the retina crop box (row-major) that carry class evidence;
// empty for the normal class.
struct SyntheticImage {
    std::string id;
    std::string label;
    Raster image;
    std::vector<int> evidence_cells;
};

inline constexpr int kSyntheticGrid = 8;
inline constexpr const char* kSyntheticClasses[3] = {"normal", "npdr", "pdr"};

// Dark background with a bright reddish disk. normal: smooth radial
// gradient only. npdr: 3-8 small dark-red dots confined to 1-3 grid cells.
// pdr: branching bright-red curves confined to 2-4 grid cells. Cells
// without evidence come from the same base generator for every class.
// Deterministic per seed.
std::vector<SyntheticImage> gen_synthetic(int per_class, std::uint64_t seed,
                                          int image_size = 128);

} // namespace retcc
