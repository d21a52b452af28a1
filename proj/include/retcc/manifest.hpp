#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace retcc {

struct ManifestEntry {
    std::filesystem::path path; // resolved against the manifest directory
    std::string raw_path;       // as written in the file; used as the bag id
    std::string label;          // empty = unlabeled
};

struct Manifest {
    std::vector<ManifestEntry> entries;
    std::filesystem::path source;
};

// CSV with header "path,label"; empty label fields are permitted. Relative
// paths resolve against the manifest's directory.
Manifest parse_manifest(const std::filesystem::path& path);

// Builds a manifest from class-named subdirectories of root; files are
// sorted per class for a stable order.
Manifest manifest_from_dirs(const std::filesystem::path& root);

} // namespace retcc
