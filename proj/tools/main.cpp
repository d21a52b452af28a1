#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "retcc/commands.hpp"
#include "retcc/error.hpp"
#include "retcc/serialize.hpp"

namespace {

retcc::Manifest load_manifest(const std::string& path, bool from_dirs) {
    return from_dirs ? retcc::manifest_from_dirs(path) : retcc::parse_manifest(path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-class retinal image classification: spectrally tuned color "
                 "auto-correlogram features + citation-kNN multi-instance learning"};
    app.require_subcommand(1);
    app.fallthrough();

    retcc::PipelineConfig cfg;
    bool from_dirs = false;
    bool no_stratify = false;
    std::string metric = "correlation";
    std::string bag_distance = "kth_ranked";

    app.add_option("--seed", cfg.seed, "root RNG seed")->capture_default_str();
    app.add_option("--k-bins", cfg.k_bins, "codebook size")->capture_default_str();
    app.add_option("--grid", cfg.grid, "blocks per image side")->capture_default_str();
    app.add_option("--crop-threshold", cfg.crop_threshold,
                   "luminance threshold for retina detection")
        ->capture_default_str();
    app.add_option("--references", cfg.references, "reference neighbors R")
        ->capture_default_str();
    app.add_option("--citers", cfg.citers, "citing neighbors C")->capture_default_str();
    app.add_option("--metric", metric, "instance metric")
        ->check(CLI::IsMember({"correlation", "euclidean"}))
        ->capture_default_str();
    app.add_option("--bag-distance", bag_distance, "bag distance mode")
        ->check(CLI::IsMember({"min_hausdorff", "kth_ranked"}))
        ->capture_default_str();
    app.add_option("--rank", cfg.distance.rank,
                   "rank for kth_ranked (clamped to the bag size)")
        ->capture_default_str();
    app.add_option("--folds", cfg.folds, "cross-validation folds")->capture_default_str();
    app.add_option("--runs", cfg.runs, "cross-validation runs")->capture_default_str();
    app.add_flag("--shared-codebook", cfg.shared_codebook,
                 "train one codebook on the whole dataset (leaks test pixels into "
                 "the quantizer; faster)");
    app.add_flag("--no-stratify", no_stratify, "plain folds instead of stratified");
    app.add_flag("--from-dirs", from_dirs,
                 "treat the manifest argument as a directory of class-named subdirectories");

    std::string manifest_arg, out_path, codebook_path, train_path, query_path;
    int per_class = 1;
    int image_size = 128;

    CLI::App* build = app.add_subcommand("build-codebook", "learn the color codebook");
    build->add_option("manifest", manifest_arg, "manifest CSV (or directory with --from-dirs)")
        ->required();
    build->add_option("-o,--out", out_path, "codebook JSON output")->required();

    CLI::App* extract = app.add_subcommand("extract", "extract feature bags");
    extract->add_option("manifest", manifest_arg)->required();
    extract->add_option("--codebook", codebook_path, "codebook JSON")->required();
    extract->add_option("-o,--out", out_path, "bag file output")->required();

    CLI::App* classify = app.add_subcommand("classify", "classify query bags");
    classify->add_option("--train", train_path, "training bag or model file")->required();
    classify->add_option("--query", query_path, "query bag file")->required();
    classify->add_option("-o,--out", out_path, "predictions CSV output")->required();

    CLI::App* evaluate = app.add_subcommand("evaluate", "cross-validated evaluation");
    evaluate->add_option("manifest", manifest_arg)->required();
    evaluate->add_option("-o,--out", out_path, "report JSON output")->required();

    CLI::App* gen = app.add_subcommand("gen-synthetic", "generate a synthetic dataset");
    gen->add_option("--per-class", per_class, "images per class")->required();
    gen->add_option("--image-size", image_size, "square image side in pixels")
        ->capture_default_str();
    gen->add_option("-o,--out", out_path, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    cfg.distance.instance_metric = retcc::instance_metric_from_string(metric);
    cfg.distance.bag_distance = retcc::bag_distance_from_string(bag_distance);
    cfg.stratify = !no_stratify;

    retcc::ClassifyOverrides overrides;
    overrides.metric = app.count("--metric") > 0;
    overrides.bag_distance = app.count("--bag-distance") > 0;
    overrides.rank = app.count("--rank") > 0;
    overrides.references = app.count("--references") > 0;
    overrides.citers = app.count("--citers") > 0;

    try {
        if (build->parsed())
            return retcc::cmd_build_codebook(load_manifest(manifest_arg, from_dirs), cfg,
                                             out_path);
        if (extract->parsed())
            return retcc::cmd_extract(load_manifest(manifest_arg, from_dirs), codebook_path,
                                      cfg, out_path);
        if (classify->parsed())
            return retcc::cmd_classify(train_path, query_path, cfg, overrides, out_path);
        if (evaluate->parsed())
            return retcc::cmd_evaluate(load_manifest(manifest_arg, from_dirs), cfg, out_path);
        if (gen->parsed())
            return retcc::cmd_gen_synthetic(per_class, image_size, cfg, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
