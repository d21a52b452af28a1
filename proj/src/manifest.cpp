#include "retcc/manifest.hpp"

#include <algorithm>
#include <fstream>

#include "retcc/error.hpp"

namespace retcc {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

Manifest parse_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::missing_file, "cannot open manifest '" + path.string() + "'");

    Manifest manifest;
    manifest.source = path;
    const std::filesystem::path base = path.parent_path();

    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (!saw_header) {
            if (line != "path,label")
                throw Error(Errc::malformed_row,
                            "line 1: expected header 'path,label', got '" + line + "'");
            saw_header = true;
            continue;
        }
        if (line.empty()) continue;

        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(Errc::malformed_row, "line " + std::to_string(line_no) +
                                                 ": expected 2 fields, got 1");
        if (line.find(',', comma + 1) != std::string::npos)
            throw Error(Errc::malformed_row, "line " + std::to_string(line_no) +
                                                 ": expected 2 fields, got more");

        const std::string raw = line.substr(0, comma);
        const std::string label = line.substr(comma + 1);
        if (raw.empty())
            throw Error(Errc::malformed_row, "line " + std::to_string(line_no) +
                                                 ": empty path field");

        std::filesystem::path p(raw);
        if (p.is_relative()) p = base / p;
        manifest.entries.push_back(ManifestEntry{std::move(p), raw, label});
    }

    if (!saw_header) throw Error(Errc::malformed_row, "empty file: missing 'path,label' header");
    if (manifest.entries.empty())
        throw Error(Errc::empty_manifest, "'" + path.string() + "' has no data rows");
    return manifest;
}

Manifest manifest_from_dirs(const std::filesystem::path& root) {
    if (!std::filesystem::is_directory(root))
        throw Error(Errc::missing_file, "'" + root.string() + "' is not a directory");

    Manifest manifest;
    manifest.source = root;

    std::vector<std::filesystem::path> class_dirs;
    for (const auto& entry : std::filesystem::directory_iterator(root))
        if (entry.is_directory()) class_dirs.push_back(entry.path());
    std::sort(class_dirs.begin(), class_dirs.end());

    for (const auto& dir : class_dirs) {
        const std::string label = dir.filename().string();
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            const std::string raw = label + "/" + f.filename().string();
            manifest.entries.push_back(ManifestEntry{f, raw, label});
        }
    }

    if (manifest.entries.empty())
        throw Error(Errc::empty_manifest,
                    "no files under class subdirectories of '" + root.string() + "'");
    return manifest;
}

} // namespace retcc
