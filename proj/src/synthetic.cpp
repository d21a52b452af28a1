#include "retcc/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "retcc/autocc.hpp"
#include "retcc/rng.hpp"

namespace retcc {

namespace {

// Channel values live on coarse lattices so the pooled unique-shade count
// stays small enough for per-fold codebook training.
std::uint8_t snap4(double v) {
    const long q = std::lround(v / 4.0) * 4;
    return static_cast<std::uint8_t>(std::clamp(q, 0L, 252L));
}

std::uint8_t snap2(double v) {
    const long q = std::lround(v / 2.0) * 2;
    return static_cast<std::uint8_t>(std::clamp(q, 0L, 254L));
}

struct CellRect {
    int x0 = 0, y0 = 0, w = 0, h = 0;
};

struct DiskSpec {
    int cx = 0, cy = 0, radius = 0;
};

bool inside_disk(const DiskSpec& d, int x, int y, int margin = 0) {
    const double dx = x - d.cx;
    const double dy = y - d.cy;
    const double r = d.radius - margin;
    return dx * dx + dy * dy <= r * r;
}

// Cells of the 8x8 grid over the disk bounding box, same remainder rule as
// block partitioning so planted evidence aligns with extracted instances.
std::vector<CellRect> grid_cells(const DiskSpec& d) {
    const int side = 2 * d.radius + 1;
    const std::vector<int> col_w = split_extents(side, kSyntheticGrid);
    const std::vector<int> row_h = split_extents(side, kSyntheticGrid);
    std::vector<CellRect> cells;
    cells.reserve(kSyntheticGrid * kSyntheticGrid);
    int y = d.cy - d.radius;
    for (int r = 0; r < kSyntheticGrid; ++r) {
        int x = d.cx - d.radius;
        for (int c = 0; c < kSyntheticGrid; ++c) {
            cells.push_back(CellRect{x, y, col_w[c], row_h[r]});
            x += col_w[c];
        }
        y += row_h[r];
    }
    return cells;
}

// Candidate evidence cells: fully inside the disk (no bleed onto the
// background) and centered in a mid-radius ring. Equalized red tracks the
// radius band, so keeping evidence in one ring gives same-class evidence a
// consistent set of codebook bins across images.
std::vector<int> evidence_candidate_cells(const DiskSpec& d, const std::vector<CellRect>& cells) {
    std::vector<int> out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const CellRect& c = cells[i];
        const int x1 = c.x0 + c.w - 1;
        const int y1 = c.y0 + c.h - 1;
        if (!(inside_disk(d, c.x0, c.y0, 2) && inside_disk(d, x1, c.y0, 2) &&
              inside_disk(d, c.x0, y1, 2) && inside_disk(d, x1, y1, 2)))
            continue;
        const double cx = c.x0 + (c.w - 1) / 2.0;
        const double cy = c.y0 + (c.h - 1) / 2.0;
        const double rho = std::hypot(cx - d.cx, cy - d.cy) / d.radius;
        // One narrow band: the grid's cell centers cluster at a few radii,
        // and this band selects a single eight-cell family of them.
        if (rho >= 0.33 && rho <= 0.45) out.push_back(static_cast<int>(i));
    }
    return out;
}

void paint_base(Raster& img, const DiskSpec& disk, Rng& rng) {
    // Per-image palette. The red palette shifts image to image but keeps a
    // fixed span and profile, so per-image histogram equalization maps the
    // same radius band of every image onto the same equalized red. Green
    // and blue are never equalized and stay fixed up to pixel noise, or
    // cross-image features would land in incompatible codebook bins.
    const double r_edge = 132 + 4 * rng.range(0, 6);
    const double r_center = r_edge + 80;
    const double gamma = 1.0;
    const double g_ratio = 0.33;
    const double b_base = 16;
    const int bg_r = 4 + 2 * rng.range(0, 1);
    const int bg_g = 4 + 2 * rng.range(0, 1);
    const int bg_b = 4 + 2 * rng.range(0, 1);

    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            Pixel& p = img.at(x, y);
            const double dx = x - disk.cx;
            const double dy = y - disk.cy;
            const double rr2 = (dx * dx + dy * dy) /
                               (static_cast<double>(disk.radius) * disk.radius);
            if (rr2 <= 1.0) {
                const double shade = r_edge + (r_center - r_edge) * std::pow(1.0 - rr2, gamma);
                p.r = snap4(shade + 4 * rng.range(-1, 1));
                p.g = snap4(g_ratio * shade + 4 * rng.range(-1, 1));
                p.b = snap4(b_base + 4 * rng.range(-1, 1));
            } else {
                p.r = snap2(bg_r + 2 * rng.range(-1, 1));
                p.g = snap2(bg_g + 2 * rng.range(-1, 1));
                p.b = snap2(bg_b + 2 * rng.range(-1, 1));
            }
        }
    }
}

// Evidence recolors green and blue but keeps each pixel's red value, so the
// per-image red histogram (and with it the equalization map) is untouched:
// evidence-free blocks stay distributed exactly like normal-class blocks.
void stamp_disc(Raster& img, const CellRect& cell, int px, int py, int radius,
                std::uint8_t g, std::uint8_t b) {
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy > radius * radius) continue;
            const int x = px + dx;
            const int y = py + dy;
            if (x < cell.x0 || y < cell.y0 || x >= cell.x0 + cell.w || y >= cell.y0 + cell.h)
                continue;
            Pixel& p = img.at(x, y);
            p.g = g;
            p.b = b;
        }
    }
}

// Microaneurysm-style evidence: small dot clusters that drop green and
// blue, which reads as saturated dark red over the gradient. The recolor
// values are fixed so dot pixels share codebook bins across images.
constexpr std::uint8_t kDotG = 8, kDotB = 8;
constexpr std::uint8_t kVesselG = 128, kVesselB = 44;

void paint_dots(Raster& img, const CellRect& cell, int dots, Rng& rng) {
    for (int i = 0; i < dots; ++i) {
        const int px = rng.range(cell.x0 + 3, cell.x0 + cell.w - 4);
        const int py = rng.range(cell.y0 + 3, cell.y0 + cell.h - 4);
        const int radius = rng.range(2, 3);
        stamp_disc(img, cell, px, py, radius, kDotG, kDotB);
    }
}

// Neovascularization-style evidence: a branching curve with boosted green,
// which reads as a bright vessel; positions clamp to the cell so the
// structure stays confined.
void paint_vessel(Raster& img, const CellRect& cell, Rng& rng) {
    auto walk = [&](double x, double y, double heading, int steps) {
        for (int s = 0; s < steps; ++s) {
            x = std::clamp(x + std::cos(heading), cell.x0 + 1.0, cell.x0 + cell.w - 2.0);
            y = std::clamp(y + std::sin(heading), cell.y0 + 1.0, cell.y0 + cell.h - 2.0);
            heading += 0.5 * (rng.next_double() - 0.5);
            stamp_disc(img, cell, static_cast<int>(std::lround(x)),
                       static_cast<int>(std::lround(y)), 1, kVesselG, kVesselB);
        }
        return std::pair<double, double>{x, y};
    };

    const double sx = cell.x0 + cell.w / 2.0 + rng.range(-2, 2);
    const double sy = cell.y0 + cell.h / 2.0 + rng.range(-2, 2);
    const int main_steps = std::max(6, (std::min(cell.w, cell.h) * 3) / 4);
    const double heading = 2.0 * 3.14159265358979323846 * rng.next_double();

    // Main branch plus two side branches from points along it.
    double x = sx, y = sy;
    for (int seg = 0; seg < 3; ++seg) {
        const int steps = seg == 0 ? main_steps : main_steps / 2;
        const double turn = seg == 0 ? 0.0 : (rng.next_double() < 0.5 ? 1.0 : -1.0) *
                                                 (0.5 + 0.5 * rng.next_double());
        const auto end = walk(seg == 0 ? sx : x, seg == 0 ? sy : y, heading + turn, steps);
        if (seg == 0) {
            x = end.first;
            y = end.second;
        }
    }
}

SyntheticImage make_image(int class_idx, int item_idx, std::uint64_t seed, int image_size) {
    Rng rng(derive_seed(seed, "synthetic-image",
                        static_cast<std::uint64_t>(class_idx),
                        static_cast<std::uint64_t>(item_idx)));

    const int s = image_size;
    DiskSpec disk;
    disk.cx = s / 2 + rng.range(-2, 2);
    disk.cy = s / 2 + rng.range(-2, 2);
    disk.radius = static_cast<int>(std::lround(s * 0.44)) + rng.range(-1, 1);
    const int fit = std::min(std::min(disk.cx, disk.cy),
                             std::min(s - 1 - disk.cx, s - 1 - disk.cy)) - 1;
    disk.radius = std::min(disk.radius, fit);

    SyntheticImage out;
    out.label = kSyntheticClasses[class_idx];
    {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%03d", item_idx);
        out.id = std::string("syn_") + out.label + "_" + buf;
    }
    out.image = Raster(s, s);
    paint_base(out.image, disk, rng);

    if (class_idx == 0) return out; // normal: gradient only

    const std::vector<CellRect> cells = grid_cells(disk);
    std::vector<int> candidates = evidence_candidate_cells(disk, cells);
    rng.shuffle(candidates);

    if (class_idx == 1) {
        const int n_cells = std::min<int>(rng.range(1, 3), static_cast<int>(candidates.size()));
        const int total_dots = std::max(rng.range(3, 8), n_cells);
        std::vector<int> dots_per_cell(n_cells, 1);
        for (int d = n_cells; d < total_dots; ++d) ++dots_per_cell[rng.range(0, n_cells - 1)];
        for (int i = 0; i < n_cells; ++i) {
            out.evidence_cells.push_back(candidates[i]);
            paint_dots(out.image, cells[candidates[i]], dots_per_cell[i], rng);
        }
    } else {
        const int n_cells = std::min<int>(rng.range(2, 4), static_cast<int>(candidates.size()));
        for (int i = 0; i < n_cells; ++i) {
            out.evidence_cells.push_back(candidates[i]);
            paint_vessel(out.image, cells[candidates[i]], rng);
        }
    }
    std::sort(out.evidence_cells.begin(), out.evidence_cells.end());
    return out;
}

} // namespace

std::vector<SyntheticImage> gen_synthetic(int per_class, std::uint64_t seed, int image_size) {
    if (per_class < 1) throw std::invalid_argument("per_class must be >= 1");
    if (image_size < 64) throw std::invalid_argument("image_size must be >= 64");

    std::vector<SyntheticImage> out;
    out.reserve(3 * static_cast<std::size_t>(per_class));
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < per_class; ++i) out.push_back(make_image(c, i, seed, image_size));
    return out;
}

} // namespace retcc
