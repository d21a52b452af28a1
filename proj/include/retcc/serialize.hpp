#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "retcc/autocc.hpp"
#include "retcc/citation_knn.hpp"
#include "retcc/evaluation.hpp"
#include "retcc/quantize.hpp"

namespace retcc {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

Json codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const Json& j);
void save_codebook(const Codebook& cb, const std::filesystem::path& path);
Codebook load_codebook(const std::filesystem::path& path);

// Newline-delimited JSON: one header line, then one record per bag in
// input order. type "bags" is a plain feature file; type "model" carries
// the classifier configuration as well.
struct BagFile {
    int version = kFormatVersion;
    std::string type = "bags";
    int k_bins = 0; // 0 = unspecified (hand-written files)
    int grid = 0;
    // model-only:
    std::vector<std::string> classes;
    DistanceConfig distance;
    int references = 2;
    int citers = 4;

    std::vector<Bag> bags;
};

void save_bag_file(const BagFile& file, const std::filesystem::path& path);
BagFile load_bag_file(const std::filesystem::path& path);

void save_model(const TrainedModel& model, int k_bins, int grid,
                const std::filesystem::path& path);

Json report_to_json(const Report& report, const Json& config);

// Helpers shared by the CLI: shortest round-trip double formatting (what
// the JSON layer emits) and a small content hash for config echoes.
std::string format_double(double value);
std::string fnv1a_hex(const std::string& bytes);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

} // namespace retcc
