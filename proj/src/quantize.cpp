#include "retcc/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "retcc/parallel.hpp"
#include "retcc/rng.hpp"

namespace retcc {

namespace {

double dist2(const Shade& a, const Shade& b) {
    const double dr = a[0] - b[0];
    const double dg = a[1] - b[1];
    const double db = a[2] - b[2];
    return dr * dr + dg * dg + db * db;
}

int nearest_index(const Shade& p, const std::vector<Shade>& centroids) {
    int best = 0;
    double best_d = dist2(p, centroids[0]);
    for (int j = 1; j < static_cast<int>(centroids.size()); ++j) {
        const double d = dist2(p, centroids[j]);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

std::vector<Shade> seed_plus_plus(const std::vector<Shade>& points, int k, Rng& rng) {
    const std::size_t n = points.size();
    std::vector<Shade> centroids;
    centroids.reserve(k);
    centroids.push_back(points[rng.below(n)]);

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = dist2(points[i], centroids[0]);

    std::vector<char> chosen(n, 0);
    while (centroids.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (double d : d2) total += d;

        std::size_t pick = n; // sentinel
        if (total > 0.0) {
            const double r = rng.next_double() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= r && d2[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
        }
        if (pick == n) {
            // All mass on already-chosen points; take the first unchosen one.
            for (std::size_t i = 0; i < n; ++i) {
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            }
        }
        chosen[pick] = 1;
        centroids.push_back(points[pick]);
        for (std::size_t i = 0; i < n; ++i)
            d2[i] = std::min(d2[i], dist2(points[i], centroids.back()));
    }
    return centroids;
}

} // namespace

ShadeSet collect_unique_shades(std::span<const Raster> images) {
    bool any = false;
    for (const Raster& img : images)
        if (!img.empty()) any = true;
    if (!any) throw Error(Errc::empty_input, "no pixels to collect shades from");

    // One bit per possible 24-bit color; the scan below yields (r, g, b)
    // ascending order for free.
    std::vector<bool> seen(std::size_t{1} << 24, false);
    for (const Raster& img : images)
        for (const Pixel& p : img.pixels())
            seen[(std::size_t{p.r} << 16) | (std::size_t{p.g} << 8) | p.b] = true;

    ShadeSet out;
    for (std::size_t c = 0; c < seen.size(); ++c) {
        if (!seen[c])
            continue;
        out.shades.push_back(Shade{static_cast<double>((c >> 16) & 0xff),
                                   static_cast<double>((c >> 8) & 0xff),
                                   static_cast<double>(c & 0xff)});
    }
    return out;
}

Codebook train_codebook(const ShadeSet& shades, int k, std::uint64_t seed,
                        int max_iters, double tol, std::vector<double>* sse_trace) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const std::size_t n = shades.count();
    if (n < static_cast<std::size_t>(k))
        throw Error(Errc::too_few_shades, std::to_string(n) + " unique shades < k = " +
                                              std::to_string(k));

    const std::vector<Shade>& points = shades.shades;
    Rng rng(seed);
    std::vector<Shade> centroids = seed_plus_plus(points, k, rng);

    std::vector<int> assign(n, 0);
    std::vector<double> min_d2(n, 0.0);

    auto assign_all = [&] {
        parallel_chunks(n, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const int j = nearest_index(points[i], centroids);
                assign[i] = j;
                min_d2[i] = dist2(points[i], centroids[j]);
            }
        });
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) sse += min_d2[i]; // ordered sum
        return sse;
    };

    double sse = 0.0;
    for (int iter = 0; iter < max_iters; ++iter) {
        sse = assign_all();
        if (sse_trace) sse_trace->push_back(sse);

        std::vector<Shade> sums(k, Shade{0.0, 0.0, 0.0});
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const int j = assign[i];
            sums[j][0] += points[i][0];
            sums[j][1] += points[i][1];
            sums[j][2] += points[i][2];
            ++counts[j];
        }

        std::vector<Shade> next(k);
        for (int j = 0; j < k; ++j) {
            if (counts[j] > 0) {
                next[j] = Shade{sums[j][0] / counts[j], sums[j][1] / counts[j],
                                sums[j][2] / counts[j]};
            } else {
                next[j] = centroids[j]; // re-seeded below
            }
        }

        // Empty clusters restart at the point farthest from its nearest
        // centroid; each empty cluster consumes a distinct point.
        std::vector<double> claim = min_d2;
        for (int j = 0; j < k; ++j) {
            if (counts[j] > 0) continue;
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (claim[i] > far_d) {
                    far_d = claim[i];
                    far = i;
                }
            }
            next[j] = points[far];
            claim[far] = -1.0;
        }

        double movement = 0.0;
        for (int j = 0; j < k; ++j) movement = std::max(movement, std::sqrt(dist2(next[j], centroids[j])));
        centroids = std::move(next);
        if (movement < tol) break;
    }

    // SSE of the final centroids.
    sse = assign_all();
    if (sse_trace) sse_trace->push_back(sse);

    std::sort(centroids.begin(), centroids.end());

    Codebook cb;
    cb.k = k;
    cb.centroids = std::move(centroids);
    cb.training_sse = sse;
    cb.seed = seed;
    return cb;
}

QuantizedRaster quantize_raster(const Raster& img, const Codebook& cb) {
    if (cb.k < 1 || cb.centroids.empty())
        throw std::invalid_argument("codebook has no centroids");

    QuantizedRaster out;
    out.width = img.width();
    out.height = img.height();
    out.bins.resize(img.pixel_count());
    const std::vector<Pixel>& px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const Shade s{static_cast<double>(px[i].r), static_cast<double>(px[i].g),
                      static_cast<double>(px[i].b)};
        out.bins[i] = static_cast<std::uint16_t>(nearest_index(s, cb.centroids));
    }
    return out;
}

} // namespace retcc
