#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace placenet::cli {

struct FeaturesOptions {
    std::string manifest;
    std::vector<int> k_set{2, 4, 8, 16};
    std::string core_count = "components";
    std::string spectrum_scope = "largest_component";
    std::size_t path_sample_sources = 0;
    std::size_t path_sampling_threshold = 20000;
};

struct ForestOptions {
    std::size_t folds = 10;
    std::size_t trees = 100;
    std::size_t max_depth = 0;
    std::size_t min_leaf = 1;
    std::size_t features_per_split = 0;
};

struct SimilarityOptions {
    std::string features;
    std::string labels;
    ForestOptions forest;
};

struct RepresentOptions {
    std::string features;
    std::string importance;
    std::string labels;
    std::string rank_pool = "all_categories";
    std::string weighting = "squared_deviation";
};

struct EmbedOptions {
    std::string corpus;
    std::size_t dim = 64;
    std::size_t epochs = 50;
    std::size_t negatives = 5;
    double learning_rate = 0.025;
    std::size_t min_count = 1;
    std::size_t top_k = 300;
    std::vector<std::string> seeds;  // type=LABEL
    std::string allowlist;
    std::vector<std::string> queries;
};

struct PrevalenceOptions {
    std::string places;
    std::string regions;
    std::string external;
    std::vector<std::string> bin_keys;
};

struct GenerateOptions {
    std::string spec;
};

void run_features(const FeaturesOptions& o, const std::filesystem::path& out_dir, std::uint64_t seed, std::ostream& log);
void run_similarity(const SimilarityOptions& o, const std::filesystem::path& out_dir, std::uint64_t seed,
                    std::ostream& log);
void run_represent(const RepresentOptions& o, const std::filesystem::path& out_dir, std::uint64_t seed,
                   std::ostream& log);
void run_embed(const EmbedOptions& o, const std::filesystem::path& out_dir, std::uint64_t seed, std::ostream& log,
               std::ostream& warn);
void run_prevalence(const PrevalenceOptions& o, const std::filesystem::path& out_dir, std::uint64_t seed,
                    std::ostream& log, std::ostream& warn);
// seed falls back to the spec file's, then 0
void run_generate(const GenerateOptions& o, const std::filesystem::path& out_dir, std::optional<std::uint64_t> seed,
                  std::ostream& log);

}  // namespace placenet::cli
