#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "placenet/similarity.hpp"

namespace placenet::cli {

struct ManifestEntry {
    std::string id;
    std::filesystem::path path;  // resolved against the manifest's directory
    std::string category;
    std::size_t line = 0;
};

// JSON lines {"id": ..., "path": ..., "category": ...}. Ids must be unique.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& file);

struct FeatureTable {
    std::vector<std::string> names;
    std::vector<GraphFeatures> rows;
};

void write_feature_table(const std::filesystem::path& file, const FeatureTable& t);
FeatureTable read_feature_table(const std::filesystem::path& file);

void write_auc_matrix(const std::filesystem::path& file, const AucMatrix& m);

void write_importance(const std::filesystem::path& file, const std::vector<RankedFeature>& ranking);
// feature -> importance, in file order
std::vector<std::pair<std::string, double>> read_importance(const std::filesystem::path& file);

// Category names become directory names; anything outside [A-Za-z0-9._-] is
// replaced by '_'.
std::string safe_component(const std::string& name);

}  // namespace placenet::cli
