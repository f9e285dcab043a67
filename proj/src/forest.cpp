#include "placenet/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "placenet/error.hpp"
#include "placenet/rng.hpp"

namespace placenet {

void Dataset::add(std::span<const double> row, bool positive) {
    if (row.size() != dim_)
        throw DataError("row has " + std::to_string(row.size()) + " features, expected " + std::to_string(dim_));
    values_.insert(values_.end(), row.begin(), row.end());
    labels_.push_back(positive ? 1 : 0);
}

std::size_t Dataset::positives() const noexcept {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), std::uint8_t{1}));
}

double DecisionTree::predict(std::span<const double> x) const noexcept {
    std::uint32_t at = 0;
    while (nodes_[at].feature != TreeNode::kLeaf)
        at = x[static_cast<std::size_t>(nodes_[at].feature)] <= nodes_[at].threshold ? nodes_[at].left
                                                                                       : nodes_[at].right;
    return nodes_[at].positive_probability;
}

Forest::Forest(std::size_t dim, std::vector<DecisionTree> trees, std::vector<double> importance)
    : dim_(dim), trees_(std::move(trees)), importance_(std::move(importance)) {
    importance_.resize(dim_, 0.0);
    const double total = std::accumulate(importance_.begin(), importance_.end(), 0.0);
    if (total > 0.0)
        for (double& v : importance_) v /= total;
    else
        std::fill(importance_.begin(), importance_.end(), dim_ ? 1.0 / static_cast<double>(dim_) : 0.0);
}

double Forest::predict_score(std::span<const double> x) const {
    if (x.size() != dim_)
        throw DataError("feature vector has " + std::to_string(x.size()) + " entries, model expects " +
                        std::to_string(dim_));
    if (trees_.empty()) return 0.0;
    double total = 0.0;
    for (const auto& t : trees_) total += t.predict(x);
    return total / static_cast<double>(trees_.size());
}

namespace {

double gini(double pos, double total) noexcept {
    if (total <= 0.0) return 0.0;
    const double p = pos / total;
    return 2.0 * p * (1.0 - p);
}

struct Split {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double gain = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const Dataset& data, const ForestParams& params, std::size_t features_per_split, Rng& rng)
        : data_(data), params_(params), features_per_split_(features_per_split), rng_(rng),
          weight_(data.size(), 0.0), importance_(data.dim(), 0.0) {}

    DecisionTree build() {
        for (std::size_t i = 0; i < data_.size(); ++i) weight_[rng_.index(data_.size())] += 1.0;
        std::vector<std::size_t> root;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (weight_[i] > 0.0) root.push_back(i);
        root_weight_ = static_cast<double>(data_.size());
        nodes_.clear();
        grow(std::move(root), 0);
        return DecisionTree(std::move(nodes_));
    }

    // Per-tree impurity decrease, normalized to sum 1 (all zero when unsplit).
    std::vector<double> importance() const {
        std::vector<double> out = importance_;
        const double total = std::accumulate(out.begin(), out.end(), 0.0);
        if (total > 0.0)
            for (double& v : out) v /= total;
        return out;
    }

private:
    std::uint32_t grow(std::vector<std::size_t> samples, std::size_t depth) {
        double total = 0.0, pos = 0.0;
        for (auto i : samples) {
            total += weight_[i];
            if (data_.label(i)) pos += weight_[i];
        }
        const auto index = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back(TreeNode{});
        nodes_[index].positive_probability = total > 0.0 ? pos / total : 0.0;

        const double impurity = gini(pos, total);
        const bool depth_ok = params_.max_depth == 0 || depth < params_.max_depth;
        if (impurity <= 0.0 || !depth_ok || samples.size() < 2 * std::max<std::size_t>(1, params_.min_leaf))
            return index;

        const Split split = best_split(samples, total, pos, impurity);
        if (!split.found) return index;

        importance_[split.feature] += total / root_weight_ * split.gain;
        std::vector<std::size_t> left, right;
        for (auto i : samples) (data_.row(i)[split.feature] <= split.threshold ? left : right).push_back(i);
        samples.clear();
        samples.shrink_to_fit();

        const auto l = grow(std::move(left), depth + 1);
        const auto r = grow(std::move(right), depth + 1);
        nodes_[index].feature = static_cast<std::int32_t>(split.feature);
        nodes_[index].threshold = split.threshold;
        nodes_[index].left = l;
        nodes_[index].right = r;
        return index;
    }

    Split best_split(const std::vector<std::size_t>& samples, double total, double pos, double impurity) {
        const std::size_t dim = data_.dim();
        std::vector<std::size_t> order(dim);
        std::iota(order.begin(), order.end(), 0);
        rng_.shuffle(order.begin(), order.end());

        // Visit features in random order until features_per_split
        // non-constant ones have been evaluated (more are visited when the
        // drawn ones are constant in this node).
        std::vector<std::pair<double, std::size_t>> column(samples.size());
        Split best;
        std::size_t evaluated = 0;
        for (std::size_t f : order) {
            if (evaluated >= features_per_split_) break;
            for (std::size_t k = 0; k < samples.size(); ++k) column[k] = {data_.row(samples[k])[f], samples[k]};
            std::sort(column.begin(), column.end());
            if (column.front().first == column.back().first) continue;
            ++evaluated;

            double left_w = 0.0, left_pos = 0.0;
            std::size_t left_n = 0;
            for (std::size_t k = 0; k + 1 < column.size(); ++k) {
                const auto i = column[k].second;
                left_w += weight_[i];
                if (data_.label(i)) left_pos += weight_[i];
                ++left_n;
                const double lo = column[k].first, hi = column[k + 1].first;
                if (lo == hi) continue;
                if (left_n < params_.min_leaf || column.size() - left_n < params_.min_leaf) continue;

                const double right_w = total - left_w;
                const double gain = impurity - (left_w / total) * gini(left_pos, left_w) -
                                    (right_w / total) * gini(pos - left_pos, right_w);
                double threshold = lo + (hi - lo) / 2.0;
                if (!(threshold < hi)) threshold = lo;

                const bool better =
                    !best.found || gain > best.gain ||
                    (gain == best.gain && (f < best.feature || (f == best.feature && threshold < best.threshold)));
                if (better) best = Split{true, f, threshold, gain};
            }
        }
        if (best.found) best.gain = std::max(best.gain, 0.0);
        return best;
    }

    const Dataset& data_;
    const ForestParams& params_;
    std::size_t features_per_split_;
    Rng& rng_;
    std::vector<double> weight_;
    std::vector<double> importance_;
    std::vector<TreeNode> nodes_;
    double root_weight_ = 0.0;
};

}  // namespace

Forest train_random_forest(const Dataset& data, const ForestParams& params) {
    const std::size_t pos = data.positives();
    if (pos == 0 || pos == data.size()) throw DataError("random forest training needs samples of both classes");
    if (params.n_trees == 0) throw DataError("random forest needs at least one tree");

    std::size_t per_split = params.features_per_split;
    if (per_split == 0) per_split = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(data.dim()))));
    per_split = std::clamp<std::size_t>(per_split, 1, std::max<std::size_t>(1, data.dim()));

    std::vector<DecisionTree> trees;
    trees.reserve(params.n_trees);
    std::vector<double> importance(data.dim(), 0.0);
    std::size_t split_trees = 0;
    for (std::size_t t = 0; t < params.n_trees; ++t) {
        Rng rng(derive_seed(params.seed, {t}));
        TreeBuilder builder(data, params, per_split, rng);
        trees.push_back(builder.build());
        const auto imp = builder.importance();
        if (std::accumulate(imp.begin(), imp.end(), 0.0) > 0.0) {
            ++split_trees;
            for (std::size_t f = 0; f < imp.size(); ++f) importance[f] += imp[f];
        }
    }
    if (split_trees > 0)
        for (double& v : importance) v /= static_cast<double>(split_trees);
    return Forest(data.dim(), std::move(trees), std::move(importance));
}

double roc_auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
    if (scores.size() != labels.size()) throw DataError("scores and labels differ in length");
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Sum of positive ranks with ties averaged; ranks doubled to stay integral.
    std::uint64_t rank_sum2 = 0;
    std::uint64_t positives = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const std::uint64_t twice_avg_rank = (i + 1) + j;  // (i+1 + j) = 2 * mean of ranks i+1..j
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]]) {
                rank_sum2 += twice_avg_rank;
                ++positives;
            }
        i = j;
    }
    const std::uint64_t negatives = n - positives;
    if (positives == 0 || negatives == 0) throw DataError("AUC needs both positive and negative samples");
    // 2U = 2 * rank_sum - P(P+1)
    const std::uint64_t u2 = rank_sum2 - positives * (positives + 1);
    return static_cast<double>(u2) / 2.0 / static_cast<double>(positives * negatives);
}

std::vector<std::size_t> stratified_folds(std::size_t n_a, std::size_t n_b, std::size_t folds, std::uint64_t seed) {
    std::vector<std::size_t> fold(n_a + n_b);
    std::size_t offset = 0;
    std::uint64_t cls = 0;
    for (std::size_t n : {n_a, n_b}) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), offset);
        Rng rng(derive_seed(seed, {0xf01dULL, cls++}));
        rng.shuffle(idx.begin(), idx.end());
        for (std::size_t p = 0; p < n; ++p) fold[idx[p]] = p % folds;
        offset += n;
    }
    return fold;
}

CvResult cross_validated_auc(std::span<const std::vector<double>> a, std::span<const std::vector<double>> b,
                             const CvParams& params) {
    if (params.folds < 2) throw DataError("cross-validation needs at least 2 folds");
    if (a.size() < params.folds || b.size() < params.folds)
        throw DataError("class with " + std::to_string(std::min(a.size(), b.size())) + " samples is smaller than " +
                        std::to_string(params.folds) + " folds");
    const std::size_t dim = a.front().size();

    std::vector<const std::vector<double>*> rows;
    std::vector<std::uint8_t> labels;
    for (const auto& r : a) {
        rows.push_back(&r);
        labels.push_back(1);
    }
    for (const auto& r : b) {
        rows.push_back(&r);
        labels.push_back(0);
    }
    for (const auto* r : rows)
        if (r->size() != dim) throw DataError("feature vectors differ in dimension");

    const auto fold = stratified_folds(a.size(), b.size(), params.folds, params.seed);
    CvResult result;
    result.importance.assign(dim, 0.0);
    double auc_total = 0.0;
    for (std::size_t f = 0; f < params.folds; ++f) {
        Dataset train(dim);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (fold[i] != f) train.add(*rows[i], labels[i] != 0);

        ForestParams fp = params.forest;
        fp.seed = derive_seed(params.seed, {0xf0e57ULL, f});
        const Forest forest = train_random_forest(train, fp);

        std::vector<double> scores;
        std::vector<std::uint8_t> held_labels;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (fold[i] != f) continue;
            scores.push_back(forest.predict_score(*rows[i]));
            held_labels.push_back(labels[i]);
        }
        auc_total += roc_auc(scores, held_labels);
        const auto imp = forest.importances();
        for (std::size_t k = 0; k < dim; ++k) result.importance[k] += imp[k];
    }
    result.mean_auc = auc_total / static_cast<double>(params.folds);
    for (double& v : result.importance) v /= static_cast<double>(params.folds);
    return result;
}

}  // namespace placenet
