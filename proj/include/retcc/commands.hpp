#pragma once

#include <cstdint>
#include <filesystem>

#include "retcc/citation_knn.hpp"
#include "retcc/manifest.hpp"

namespace retcc {

struct PipelineConfig {
    int k_bins = 64;
    int grid = 8;
    double crop_threshold = 15.0;
    int references = 2;
    int citers = 4;
    DistanceConfig distance; // correlation + kth_ranked(64)
    int folds = 5;
    int runs = 5;
    std::uint64_t seed = 0;
    bool shared_codebook = false;
    bool stratify = true;
};

// Tracks which classifier options were given explicitly, so they can
// override the configuration stored in a model file.
struct ClassifyOverrides {
    bool metric = false;
    bool bag_distance = false;
    bool rank = false;
    bool references = false;
    bool citers = false;
};

// Commands return process exit codes: 0 success, 2 completed with data
// errors (details in a sidecar file). Fatal problems throw Error.
int cmd_build_codebook(const Manifest& manifest, const PipelineConfig& cfg,
                       const std::filesystem::path& out);
int cmd_extract(const Manifest& manifest, const std::filesystem::path& codebook_path,
                const PipelineConfig& cfg, const std::filesystem::path& out);
int cmd_classify(const std::filesystem::path& train_path,
                 const std::filesystem::path& query_path, const PipelineConfig& cfg,
                 const ClassifyOverrides& overrides, const std::filesystem::path& out);
int cmd_evaluate(const Manifest& manifest, const PipelineConfig& cfg,
                 const std::filesystem::path& report_out);
int cmd_gen_synthetic(int per_class, int image_size, const PipelineConfig& cfg,
                      const std::filesystem::path& out_dir);

} // namespace retcc
