#include "retcc/serialize.hpp"

#include <fstream>
#include <sstream>

namespace retcc {

namespace {

Json parse_json_line(const std::string& line, const std::string& context) {
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded())
        throw Error(Errc::bad_format, context + ": invalid JSON");
    return j;
}

void check_version(const Json& j, const std::string& context) {
    if (!j.contains("version") || !j["version"].is_number_integer())
        throw Error(Errc::bad_format, context + ": missing format version");
    const int v = j["version"].get<int>();
    if (v != kFormatVersion)
        throw Error(Errc::bad_format, context + ": unsupported format version " +
                                          std::to_string(v));
}

} // namespace

std::string format_double(double value) { return Json(value).dump(); }

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::missing_file, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json codebook_to_json(const Codebook& cb) {
    Json j;
    j["version"] = kFormatVersion;
    j["k"] = cb.k;
    Json centroids = Json::array();
    for (const Shade& c : cb.centroids) centroids.push_back(Json::array({c[0], c[1], c[2]}));
    j["centroids"] = std::move(centroids);
    j["seed"] = cb.seed;
    j["sse"] = cb.training_sse;
    return j;
}

Codebook codebook_from_json(const Json& j) {
    check_version(j, "codebook");
    Codebook cb;
    cb.k = j.at("k").get<int>();
    for (const Json& c : j.at("centroids")) {
        if (!c.is_array() || c.size() != 3)
            throw Error(Errc::bad_format, "codebook: centroid is not a 3-vector");
        cb.centroids.push_back(Shade{c[0].get<double>(), c[1].get<double>(), c[2].get<double>()});
    }
    if (static_cast<int>(cb.centroids.size()) != cb.k)
        throw Error(Errc::bad_format, "codebook: centroid count does not match k");
    cb.seed = j.at("seed").get<std::uint64_t>();
    cb.training_sse = j.at("sse").get<double>();
    return cb;
}

void save_codebook(const Codebook& cb, const std::filesystem::path& path) {
    write_text_file(path, codebook_to_json(cb).dump() + "\n");
}

Codebook load_codebook(const std::filesystem::path& path) {
    return codebook_from_json(parse_json_line(read_text_file(path), path.string()));
}

void save_bag_file(const BagFile& file, const std::filesystem::path& path) {
    std::ostringstream out;

    Json header;
    header["version"] = file.version;
    header["type"] = file.type;
    if (file.type == "model") {
        header["classes"] = file.classes;
        header["references"] = file.references;
        header["citers"] = file.citers;
        header["instance_metric"] = to_string(file.distance.instance_metric);
        header["bag_distance"] = to_string(file.distance.bag_distance);
        header["rank"] = file.distance.rank;
    }
    header["k_bins"] = file.k_bins;
    header["grid"] = file.grid;
    out << header.dump() << "\n";

    for (const Bag& bag : file.bags) {
        Json rec;
        rec["id"] = bag.id;
        if (bag.label.empty())
            rec["label"] = nullptr;
        else
            rec["label"] = bag.label;
        Json instances = Json::array();
        for (const FeatureVector& f : bag.instances) instances.push_back(f);
        rec["instances"] = std::move(instances);
        out << rec.dump() << "\n";
    }
    write_text_file(path, out.str());
}

BagFile load_bag_file(const std::filesystem::path& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line))
        throw Error(Errc::bad_format, "'" + path.string() + "' is empty");

    const Json header = parse_json_line(line, path.string() + " header");
    check_version(header, path.string());

    BagFile file;
    file.type = header.value("type", std::string{});
    if (file.type != "bags" && file.type != "model")
        throw Error(Errc::bad_format, "'" + path.string() + "': unknown file type '" +
                                          file.type + "'");
    file.k_bins = header.value("k_bins", 0);
    file.grid = header.value("grid", 0);
    if (file.type == "model") {
        file.classes = header.at("classes").get<std::vector<std::string>>();
        file.references = header.at("references").get<int>();
        file.citers = header.at("citers").get<int>();
        file.distance.instance_metric =
            instance_metric_from_string(header.at("instance_metric").get<std::string>());
        file.distance.bag_distance =
            bag_distance_from_string(header.at("bag_distance").get<std::string>());
        file.distance.rank = header.at("rank").get<int>();
    }

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const Json rec = parse_json_line(line, path.string() + " line " +
                                                   std::to_string(line_no));
        Bag bag;
        bag.id = rec.at("id").get<std::string>();
        if (rec.contains("label") && !rec["label"].is_null())
            bag.label = rec["label"].get<std::string>();
        for (const Json& inst : rec.at("instances"))
            bag.instances.push_back(inst.get<FeatureVector>());
        file.bags.push_back(std::move(bag));
    }
    return file;
}

void save_model(const TrainedModel& model, int k_bins, int grid,
                const std::filesystem::path& path) {
    BagFile file;
    file.type = "model";
    file.k_bins = k_bins;
    file.grid = grid;
    file.classes = model.classes();
    file.references = model.references();
    file.citers = model.citers();
    file.distance = model.config();
    file.bags = model.bags();
    save_bag_file(file, path);
}

Json report_to_json(const Report& report, const Json& config) {
    Json j;
    j["version"] = kFormatVersion;
    j["mean_accuracy"] = report.mean_accuracy;
    j["run_accuracies"] = report.run_accuracies;
    j["confusion_counts"] = report.pooled.counts;
    j["confusion_row_percent"] = report.pooled.row_percent();
    j["row_support"] = report.pooled.row_totals();
    j["classes"] = report.pooled.classes;
    j["config"] = config;
    return j;
}

} // namespace retcc
