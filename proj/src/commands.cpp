#include "retcc/commands.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

#include "retcc/evaluation.hpp"
#include "retcc/image_io.hpp"
#include "retcc/parallel.hpp"
#include "retcc/rng.hpp"
#include "retcc/serialize.hpp"
#include "retcc/synthetic.hpp"

namespace retcc {

namespace {

// Crop to the retina box, then equalize the red channel: border background
// must not enter the red histogram.
Raster preprocess(const Raster& img, double crop_threshold) {
    const CropBox box = detect_retina_crop(img, crop_threshold);
    return equalize_red_channel(crop(img, box));
}

std::vector<Raster> load_all(const Manifest& manifest) {
    std::vector<Raster> images(manifest.entries.size());
    parallel_chunks(manifest.entries.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            images[i] = load_image(manifest.entries[i].path);
    });
    return images;
}

Json config_echo(const PipelineConfig& cfg) {
    Json j;
    j["seed"] = cfg.seed;
    j["folds"] = cfg.folds;
    j["runs"] = cfg.runs;
    j["k_bins"] = cfg.k_bins;
    j["grid"] = cfg.grid;
    j["crop_threshold"] = cfg.crop_threshold;
    j["references"] = cfg.references;
    j["citers"] = cfg.citers;
    j["instance_metric"] = to_string(cfg.distance.instance_metric);
    j["bag_distance"] = to_string(cfg.distance.bag_distance);
    j["rank"] = cfg.distance.rank;
    j["stratified"] = cfg.stratify;
    j["shared_codebook"] = cfg.shared_codebook;
    return j;
}

void print_confusion(const ConfusionMatrix& m, std::ostream& out) {
    const auto percent = m.row_percent();
    out << "confusion matrix (row %):\n";
    out << "            ";
    for (const std::string& c : m.classes) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%10s", c.c_str());
        out << buf;
    }
    out << "\n";
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
        char head[16];
        std::snprintf(head, sizeof head, "%-12s", m.classes[i].c_str());
        out << head;
        for (std::size_t j = 0; j < m.classes.size(); ++j) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%10.2f", percent[i][j]);
            out << buf;
        }
        out << "\n";
    }
}

} // namespace

int cmd_build_codebook(const Manifest& manifest, const PipelineConfig& cfg,
                       const std::filesystem::path& out) {
    const std::vector<Raster> images = load_all(manifest);

    std::vector<Raster> prepped(images.size());
    parallel_chunks(images.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                prepped[i] = preprocess(images[i], cfg.crop_threshold);
            } catch (const Error& e) {
                throw Error(e.code(),
                            manifest.entries[i].raw_path + ": " + e.what());
            }
        }
    });

    const ShadeSet shades = collect_unique_shades(prepped);
    const Codebook cb = train_codebook(shades, cfg.k_bins,
                                       derive_seed(cfg.seed, "codebook"));
    save_codebook(cb, out);

    std::cout << "codebook: k=" << cb.k << " unique_shades=" << shades.count()
              << " sse=" << format_double(cb.training_sse) << " -> " << out.string() << "\n";
    return 0;
}

int cmd_extract(const Manifest& manifest, const std::filesystem::path& codebook_path,
                const PipelineConfig& cfg, const std::filesystem::path& out) {
    const Codebook cb = load_codebook(codebook_path);
    const std::size_t n = manifest.entries.size();

    std::vector<Bag> bags(n);
    std::vector<std::string> failures(n); // empty = ok
    parallel_chunks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const ManifestEntry& entry = manifest.entries[i];
            try {
                const Raster img = load_image(entry.path);
                bags[i] = extract_bag(img, cb, cfg.grid, cfg.crop_threshold,
                                      entry.raw_path, entry.label);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    });

    BagFile file;
    file.k_bins = cb.k;
    file.grid = cfg.grid;
    std::ostringstream sidecar;
    std::size_t failed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (failures[i].empty()) {
            file.bags.push_back(std::move(bags[i]));
        } else {
            ++failed;
            sidecar << manifest.entries[i].raw_path << "," << failures[i] << "\n";
        }
    }
    save_bag_file(file, out);

    if (failed > 0) {
        const std::filesystem::path sidecar_path = out.string() + ".errors";
        write_text_file(sidecar_path, sidecar.str());
        std::cerr << "extract: skipped " << failed << " of " << n << " images; see "
                  << sidecar_path.string() << "\n";
    }
    std::cout << "extracted " << file.bags.size() << " bags -> " << out.string() << "\n";
    return failed > 0 ? 2 : 0;
}

int cmd_classify(const std::filesystem::path& train_path,
                 const std::filesystem::path& query_path, const PipelineConfig& cfg,
                 const ClassifyOverrides& overrides, const std::filesystem::path& out) {
    const BagFile train_file = load_bag_file(train_path);

    DistanceConfig distance = cfg.distance;
    int references = cfg.references;
    int citers = cfg.citers;
    if (train_file.type == "model") {
        // Model files carry their own configuration; explicit flags win.
        if (!overrides.metric) distance.instance_metric = train_file.distance.instance_metric;
        if (!overrides.bag_distance) distance.bag_distance = train_file.distance.bag_distance;
        if (!overrides.rank) distance.rank = train_file.distance.rank;
        if (!overrides.references) references = train_file.references;
        if (!overrides.citers) citers = train_file.citers;
    }

    const TrainedModel model(train_file.bags, distance, references, citers);
    const BagFile query_file = load_bag_file(query_path);

    std::ostringstream csv;
    csv << "id,predicted_label,nearest_reference,distance\n";
    for (const Bag& query : query_file.bags) {
        const Prediction pred = classify_citation_knn(query, model);
        csv << query.id << "," << pred.label << "," << pred.nearest_reference << ","
            << format_double(pred.nearest_distance) << "\n";
    }
    write_text_file(out, csv.str());
    std::cout << "classified " << query_file.bags.size() << " queries -> " << out.string()
              << "\n";
    return 0;
}

int cmd_evaluate(const Manifest& manifest, const PipelineConfig& cfg,
                 const std::filesystem::path& report_out) {
    const std::size_t n = manifest.entries.size();
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = manifest.entries[i].label;
        if (labels[i].empty())
            throw Error(Errc::bad_format, "evaluate needs labels; '" +
                                              manifest.entries[i].raw_path + "' has none");
    }

    const std::vector<Raster> images = load_all(manifest);
    std::vector<Raster> prepped(n);
    parallel_chunks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                prepped[i] = preprocess(images[i], cfg.crop_threshold);
            } catch (const Error& e) {
                throw Error(e.code(), manifest.entries[i].raw_path + ": " + e.what());
            }
        }
    });

    auto bags_with = [&](const Codebook& cb, const std::vector<std::size_t>& idx) {
        std::vector<Bag> out(idx.size());
        parallel_chunks(idx.size(), [&](std::size_t begin, std::size_t end) {
            for (std::size_t t = begin; t < end; ++t) {
                const std::size_t i = idx[t];
                out[t] = bag_from_quantized(quantize_raster(prepped[i], cb), cb.k, cfg.grid,
                                            manifest.entries[i].raw_path, labels[i]);
            }
        });
        return out;
    };

    std::vector<std::string> codebook_hashes;
    Report report;

    if (cfg.shared_codebook) {
        // Leaky by design: one codebook over the whole dataset, features
        // extracted once, folds drawn over the fixed bags.
        const ShadeSet shades = collect_unique_shades(prepped);
        const Codebook cb = train_codebook(shades, cfg.k_bins, derive_seed(cfg.seed, "codebook"));
        codebook_hashes.push_back(fnv1a_hex(codebook_to_json(cb).dump()));

        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        const std::vector<Bag> bags = bags_with(cb, all);
        report = run_cv(bags, cfg.folds, cfg.runs, cfg.seed, cfg.distance, cfg.references,
                        cfg.citers, cfg.stratify);
    } else {
        const FoldClassify classify = [&](int run, int fold,
                                          const std::vector<std::size_t>& train_idx,
                                          const std::vector<std::size_t>& test_idx) {
            std::vector<Raster> train_pre;
            train_pre.reserve(train_idx.size());
            for (std::size_t i : train_idx) train_pre.push_back(prepped[i]);
            const ShadeSet shades = collect_unique_shades(train_pre);
            const Codebook cb = train_codebook(
                shades, cfg.k_bins,
                derive_seed(cfg.seed, "codebook", static_cast<std::uint64_t>(run),
                            static_cast<std::uint64_t>(fold)));
            codebook_hashes.push_back(fnv1a_hex(codebook_to_json(cb).dump()));

            const TrainedModel model(bags_with(cb, train_idx), cfg.distance, cfg.references,
                                     cfg.citers);
            const std::vector<Bag> test_bags = bags_with(cb, test_idx);
            std::vector<std::string> preds;
            preds.reserve(test_bags.size());
            for (const Bag& bag : test_bags)
                preds.push_back(classify_citation_knn(bag, model).label);
            return preds;
        };
        report = run_cv_generic(labels, cfg.folds, cfg.runs, cfg.seed, cfg.stratify, classify);
    }

    Json config = config_echo(cfg);
    config["dataset_size"] = n;
    config["classes"] = report.pooled.classes;
    config["codebook_hashes"] = codebook_hashes;
    write_text_file(report_out, report_to_json(report, config).dump(2) + "\n");

    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", report.mean_accuracy);
    std::cout << "mean accuracy: " << buf << " %\n";
    print_confusion(report.pooled, std::cout);
    std::cout << "report -> " << report_out.string() << "\n";
    return 0;
}

int cmd_gen_synthetic(int per_class, int image_size, const PipelineConfig& cfg,
                      const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::vector<SyntheticImage> images = gen_synthetic(per_class, cfg.seed, image_size);

    std::ostringstream manifest;
    manifest << "path,label\n";
    Json evidence;
    evidence["version"] = kFormatVersion;
    evidence["grid"] = kSyntheticGrid;
    Json list = Json::array();

    for (const SyntheticImage& s : images) {
        const std::string filename = s.id + ".png";
        save_png(s.image, out_dir / filename);
        manifest << filename << "," << s.label << "\n";
        Json rec;
        rec["id"] = s.id;
        rec["label"] = s.label;
        rec["evidence_cells"] = s.evidence_cells;
        list.push_back(std::move(rec));
    }
    evidence["images"] = std::move(list);

    write_text_file(out_dir / "manifest.csv", manifest.str());
    write_text_file(out_dir / "evidence.json", evidence.dump(2) + "\n");
    std::cout << "generated " << images.size() << " images -> " << out_dir.string() << "\n";
    return 0;
}

} // namespace retcc
