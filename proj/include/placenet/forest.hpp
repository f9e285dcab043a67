#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace placenet {

// Binary-labelled rows of equal dimension, stored row-major.
class Dataset {
public:
    explicit Dataset(std::size_t dim) : dim_(dim) {}

    // Throws DataError when row.size() != dim().
    void add(std::span<const double> row, bool positive);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return labels_.size(); }
    std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * dim_, dim_}; }
    bool label(std::size_t i) const noexcept { return labels_[i] != 0; }
    std::size_t positives() const noexcept;

private:
    std::size_t dim_;
    std::vector<double> values_;
    std::vector<std::uint8_t> labels_;
};

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t max_depth = 0;           // 0 = unbounded
    std::size_t min_leaf = 1;
    std::size_t features_per_split = 0;  // 0 = ceil(sqrt(dim))
    std::uint64_t seed = 0;
};

struct TreeNode {
    static constexpr std::int32_t kLeaf = -1;
    std::int32_t feature = kLeaf;
    double threshold = 0.0;  // go left when x[feature] <= threshold
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    double positive_probability = 0.0;  // leaves only
};

class DecisionTree {
public:
    DecisionTree() = default;
    explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

    double predict(std::span<const double> x) const noexcept;
    std::span<const TreeNode> nodes() const noexcept { return nodes_; }

private:
    std::vector<TreeNode> nodes_;
};

class Forest {
public:
    // importance is normalized here; an all-zero vector becomes uniform.
    Forest(std::size_t dim, std::vector<DecisionTree> trees, std::vector<double> importance);

    // Mean positive-class leaf probability over trees. Throws DataError on a
    // dimension mismatch.
    double predict_score(std::span<const double> x) const;

    // Mean decrease in Gini impurity per feature; non-negative, sums to 1.
    std::span<const double> importances() const noexcept { return importance_; }

    std::size_t dim() const noexcept { return dim_; }
    std::span<const DecisionTree> trees() const noexcept { return trees_; }

private:
    std::size_t dim_;
    std::vector<DecisionTree> trees_;
    std::vector<double> importance_;
};

// Bootstrap-aggregated CART trees with Gini splits. Each tree draws its own
// bootstrap and feature subsets from a seed derived from params.seed and the
// tree index. Split ties resolve to the lowest feature index, then the lowest
// threshold. Throws DataError if the dataset lacks either class.
Forest train_random_forest(const Dataset& data, const ForestParams& params);

// Mann–Whitney AUC: share of (positive, negative) pairs ranked correctly,
// ties counting one half. Throws DataError unless both classes are present.
double roc_auc(std::span<const double> scores, std::span<const std::uint8_t> labels);

// Fold index per sample (class a first, then class b). Each class is shuffled
// independently and dealt round-robin, so per-class fold sizes differ by at
// most one.
std::vector<std::size_t> stratified_folds(std::size_t n_a, std::size_t n_b, std::size_t folds, std::uint64_t seed);

struct CvParams {
    std::size_t folds = 10;
    std::uint64_t seed = 0;
    ForestParams forest{};  // forest.seed is replaced per fold
};

struct CvResult {
    double mean_auc = 0.0;            // class a scored as positive
    std::vector<double> importance;  // mean over fold models
};

// Stratified k-fold evaluation of a forest separating a from b. Throws
// DataError when folds < 2, when either class has fewer samples than folds,
// or when dimensions disagree.
CvResult cross_validated_auc(std::span<const std::vector<double>> a, std::span<const std::vector<double>> b,
                             const CvParams& params);

// AUC as an orientation-free distance: max(auc, 1 - auc).
inline double fold_auc(double auc) noexcept { return auc < 0.5 ? 1.0 - auc : auc; }

}  // namespace placenet
