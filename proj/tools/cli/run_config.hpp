#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "trustcf/dataset.hpp"
#include "trustcf/evaluation.hpp"
#include "trustcf/method.hpp"

namespace trustcf::cli {

/// Everything a run needs. Built from a manifest ("key = value" lines) with
/// command-line flags layered on top.
struct RunConfig {
    std::filesystem::path ratings;
    std::filesystem::path trust;  ///< empty: no trust data
    DatasetFormat format = DatasetFormat::Auto;
    RatingScale scale;

    std::vector<MethodId> methods{kAllMethods.begin(), kAllMethods.end()};
    std::vector<std::size_t> ks{5, 10, 15, 20, 25, 30, 35, 40, 45};
    double alpha = kDefaultAlpha;
    std::vector<double> alpha_sweep;

    std::uint64_t seed = 1;
    std::size_t rounds = 5;
    double train_fraction = 0.8;
    SplitMode split_mode = SplitMode::Resample;

    std::size_t min_corated = 2;
    bool positive_only = false;

    std::filesystem::path trust_store;
    std::filesystem::path out = "results";
    unsigned jobs = 1;
    bool expect_filmtrust = false;

    /// Throws ConfigError for out-of-range values; with `check_files`, also
    /// for missing input files.
    void validate(bool check_files) const;

    Manifest to_manifest() const;
    /// Relative paths are resolved against `base_dir` when it is non-empty.
    static RunConfig from_manifest(const Manifest& manifest, const std::filesystem::path& base_dir = {});

    SimilarityOptions similarity() const;

    bool operator==(const RunConfig&) const = default;
};

/// Manifest keys understood by RunConfig::from_manifest.
const std::vector<std::string>& manifest_keys();

}  // namespace trustcf::cli
