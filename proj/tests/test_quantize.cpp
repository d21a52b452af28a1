#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "retcc/quantize.hpp"
#include "retcc/rng.hpp"

#include "oracles.hpp"

using namespace retcc;

namespace {

Raster random_raster(int w, int h, std::uint64_t seed, int levels = 256) {
    Rng rng(seed);
    Raster img(w, h);
    for (Pixel& p : img.pixels()) {
        p.r = static_cast<std::uint8_t>(rng.below(levels));
        p.g = static_cast<std::uint8_t>(rng.below(levels));
        p.b = static_cast<std::uint8_t>(rng.below(levels));
    }
    return img;
}

ShadeSet random_shades(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::set<std::uint32_t> used;
    ShadeSet out;
    while (out.shades.size() < count) {
        const std::uint32_t key = static_cast<std::uint32_t>(rng.below(1 << 24));
        if (!used.insert(key).second) continue;
        out.shades.push_back(Shade{double((key >> 16) & 0xff), double((key >> 8) & 0xff),
                                   double(key & 0xff)});
    }
    return out;
}

double d2(const Shade& a, const Shade& b) {
    return (a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
           (a[2] - b[2]) * (a[2] - b[2]);
}

} // namespace

TEST_CASE("collect_unique_shades: constant image has one shade") {
    std::vector<Raster> imgs{Raster(4, 4, Pixel{10, 20, 30})};
    const ShadeSet s = collect_unique_shades(imgs);
    REQUIRE(s.count() == 1);
    CHECK(s.shades[0] == Shade{10.0, 20.0, 30.0});
}

TEST_CASE("collect_unique_shades: duplicates across images collapse") {
    const Raster img = random_raster(16, 16, 42);
    std::vector<Raster> one{img};
    std::vector<Raster> two{img, img};
    CHECK(collect_unique_shades(one).shades == collect_unique_shades(two).shades);
}

TEST_CASE("collect_unique_shades: matches the brute-force pixel set") {
    std::vector<Raster> imgs{random_raster(32, 32, 7), random_raster(20, 20, 8, 64)};
    const ShadeSet s = collect_unique_shades(imgs);
    const auto want = oracles::pixel_set(imgs);
    REQUIRE(s.count() == want.size());
    // Also ascending (r, g, b) order.
    CHECK(std::is_sorted(s.shades.begin(), s.shades.end()));
    std::size_t i = 0;
    for (std::uint32_t key : want) {
        CHECK(s.shades[i] == Shade{double((key >> 16) & 0xff), double((key >> 8) & 0xff),
                                   double(key & 0xff)});
        ++i;
    }
}

TEST_CASE("collect_unique_shades: empty input is rejected") {
    std::vector<Raster> none;
    CHECK_THROWS_AS(collect_unique_shades(none), Error);
    std::vector<Raster> empties{Raster{}, Raster{}};
    CHECK_THROWS_AS(collect_unique_shades(empties), Error);
}

TEST_CASE("train_codebook: k equal to shade count reproduces the shades with zero SSE") {
    const ShadeSet s = random_shades(24, 5);
    const Codebook cb = train_codebook(s, 24, 99);
    CHECK(cb.training_sse == 0.0);
    std::vector<Shade> sorted = s.shades;
    std::sort(sorted.begin(), sorted.end());
    CHECK(cb.centroids == sorted);

    // Every shade lands in the bin whose centroid is the shade itself.
    for (const Shade& sh : s.shades) {
        Raster px(1, 1, Pixel{static_cast<std::uint8_t>(sh[0]),
                              static_cast<std::uint8_t>(sh[1]),
                              static_cast<std::uint8_t>(sh[2])});
        CHECK(cb.centroids[quantize_raster(px, cb).at(0, 0)] == sh);
    }
}

TEST_CASE("train_codebook: k = 1 yields the arithmetic mean") {
    const ShadeSet s = random_shades(50, 6);
    const Codebook cb = train_codebook(s, 1, 3);
    Shade mean{0, 0, 0};
    for (const Shade& sh : s.shades)
        for (int c = 0; c < 3; ++c) mean[c] += sh[c];
    for (int c = 0; c < 3; ++c) mean[c] /= static_cast<double>(s.count());
    for (int c = 0; c < 3; ++c) CHECK(cb.centroids[0][c] == doctest::Approx(mean[c]).epsilon(1e-12));
}

TEST_CASE("train_codebook: too few shades is an error") {
    const ShadeSet s = random_shades(10, 7);
    CHECK_THROWS_AS(train_codebook(s, 11, 0), Error);
    try {
        train_codebook(s, 11, 0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::too_few_shades);
    }
}

TEST_CASE("train_codebook: SSE trace is non-increasing") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const ShadeSet s = random_shades(400, 1000 + seed);
        for (int k : {2, 5, 17}) {
            std::vector<double> trace;
            train_codebook(s, k, seed, 100, 1e-4, &trace);
            REQUIRE(trace.size() >= 2);
            for (std::size_t i = 1; i < trace.size(); ++i)
                CHECK(trace[i] <= trace[i - 1] + 1e-9 * std::max(1.0, trace[i - 1]));
        }
    }
}

TEST_CASE("train_codebook: deterministic for a fixed seed, canonical centroid order") {
    const ShadeSet s = random_shades(300, 77);
    const Codebook a = train_codebook(s, 16, 123);
    const Codebook b = train_codebook(s, 16, 123);
    CHECK(a.centroids == b.centroids);
    CHECK(a.training_sse == b.training_sse);
    CHECK(std::is_sorted(a.centroids.begin(), a.centroids.end()));
}

TEST_CASE("quantize_raster: pixel equal to a centroid lands in its bin") {
    Codebook cb;
    cb.k = 3;
    cb.centroids = {Shade{0, 0, 0}, Shade{100, 50, 25}, Shade{200, 200, 200}};
    Raster img(1, 1, Pixel{100, 50, 25});
    CHECK(quantize_raster(img, cb).at(0, 0) == 1);
}

TEST_CASE("quantize_raster: equidistant pixel resolves to the lower bin index") {
    Codebook cb;
    cb.k = 2;
    cb.centroids = {Shade{0, 0, 0}, Shade{2, 0, 0}};
    Raster img(1, 1, Pixel{1, 0, 0}); // exactly 1.0 from both
    CHECK(quantize_raster(img, cb).at(0, 0) == 0);
}

TEST_CASE("quantize_raster: every pixel is provably nearest, ties to lower index") {
    Rng rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        const Raster img = random_raster(24, 24, 50 + trial);
        Codebook cb;
        cb.k = 4 + static_cast<int>(rng.below(12));
        std::set<std::array<double, 3>> seen;
        while (static_cast<int>(cb.centroids.size()) < cb.k) {
            Shade s{double(rng.below(256)), double(rng.below(256)), double(rng.below(256))};
            if (seen.insert(s).second) cb.centroids.push_back(s);
        }
        std::sort(cb.centroids.begin(), cb.centroids.end());

        const QuantizedRaster q = quantize_raster(img, cb);
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) {
                const Pixel& p = img.at(x, y);
                const Shade ps{double(p.r), double(p.g), double(p.b)};
                const int bin = q.at(x, y);
                const double chosen = d2(ps, cb.centroids[bin]);
                for (int j = 0; j < cb.k; ++j) {
                    CHECK(chosen <= d2(ps, cb.centroids[j]));
                    if (j < bin) CHECK(d2(ps, cb.centroids[j]) > chosen);
                }
            }
    }
}

TEST_CASE("quantize_raster: pure function, identical output across calls") {
    const Raster img = random_raster(30, 21, 90);
    const ShadeSet s = collect_unique_shades(std::vector<Raster>{img});
    const Codebook cb = train_codebook(s, 8, 1);
    CHECK(quantize_raster(img, cb).bins == quantize_raster(img, cb).bins);
}
