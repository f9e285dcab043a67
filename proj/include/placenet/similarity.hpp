#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "placenet/forest.hpp"

namespace placenet {

struct GraphFeatures {
    std::string graph_id;
    std::vector<double> values;
};

// Category name -> member graphs. Categories iterate in name order.
class Ensemble {
public:
    // Throws DataError on a duplicate graph id or a dimension mismatch.
    void add(const std::string& category, GraphFeatures member);

    const std::map<std::string, std::vector<GraphFeatures>>& categories() const noexcept { return categories_; }
    std::vector<std::string> names() const;
    std::size_t dim() const noexcept { return dim_; }

private:
    std::map<std::string, std::vector<GraphFeatures>> categories_;
    std::map<std::string, std::string> owner_;
    std::size_t dim_ = 0;
};

// Symmetric category × category matrix of folded AUCs, diagonal 0.5.
struct AucMatrix {
    std::vector<std::string> categories;
    std::vector<double> values;  // row-major

    double at(std::size_t i, std::size_t j) const { return values[i * categories.size() + j]; }
};

struct SimilarityParams {
    std::size_t folds = 10;
    std::uint64_t seed = 0;
    ForestParams forest{};
};

struct SimilarityResult {
    AucMatrix matrix;
    std::vector<double> importance;  // mean over all pair runs, sums to 1
    std::size_t pair_evaluations = 0;
};

// Cross-validated forest for every unordered category pair. Each pair gets a
// seed derived from params.seed and its indices, so results do not depend on
// evaluation order. Throws DataError (naming the category) when fewer than two
// categories exist or a category has fewer than params.folds graphs.
SimilarityResult auc_matrix(const Ensemble& e, const SimilarityParams& params);

// Distinguishability of one sample pool from itself: shuffle, split in half,
// cross-validate the halves. Returns the folded AUC.
double split_half_auc(std::span<const std::vector<double>> samples, const SimilarityParams& params);

struct RankedFeature {
    std::string name;
    double importance = 0.0;
    std::size_t rank = 0;  // 1-based
};

// Descending importance; ties keep canonical feature order.
std::vector<RankedFeature> global_importance_ranking(std::span<const double> importance,
                                                     std::span<const std::string> names);

// 1-based ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values);

enum class RankPool {
    all_categories,  // rank each feature over the pooled ensemble
    within_category,
};

enum class DistanceWeighting {
    squared_deviation,  // sqrt(Σ w (r - r̄)²)
    deviation,          // sqrt(Σ (w (r - r̄))²)
};

struct RepresentativeOptions {
    RankPool pool = RankPool::all_categories;
    DistanceWeighting weighting = DistanceWeighting::squared_deviation;
};

struct Representative {
    std::string graph_id;
    double distance = 0.0;
};

// The category member closest to the category's mean rank vector, with
// per-feature weights from importance. Ties go to the smallest graph id.
// Throws DataError for an unknown or empty category or mismatched weights.
Representative representative_graph(const Ensemble& e, const std::string& category, std::span<const double> importance,
                                    const RepresentativeOptions& opts = {});

}  // namespace placenet
