#include "placenet/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "placenet/error.hpp"
#include "placenet/rng.hpp"

namespace placenet {

void Ensemble::add(const std::string& category, GraphFeatures member) {
    if (owner_.count(member.graph_id))
        throw DataError("graph id '" + member.graph_id + "' appears more than once in the ensemble");
    if (owner_.empty())
        dim_ = member.values.size();
    else if (member.values.size() != dim_)
        throw DataError("graph '" + member.graph_id + "' has " + std::to_string(member.values.size()) +
                        " features, expected " + std::to_string(dim_));
    owner_.emplace(member.graph_id, category);
    categories_[category].push_back(std::move(member));
}

std::vector<std::string> Ensemble::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : categories_) out.push_back(name);
    return out;
}

namespace {

std::vector<std::vector<double>> rows_of(const std::vector<GraphFeatures>& members) {
    std::vector<std::vector<double>> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.values);
    return out;
}

}  // namespace

SimilarityResult auc_matrix(const Ensemble& e, const SimilarityParams& params) {
    const auto names = e.names();
    const std::size_t n = names.size();
    if (n < 2) throw DataError("similarity needs at least two categories");
    for (const auto& [name, members] : e.categories())
        if (members.size() < params.folds)
            throw DataError("category '" + name + "' has " + std::to_string(members.size()) +
                            " graphs, fewer than " + std::to_string(params.folds) + " folds");

    std::vector<std::vector<std::vector<double>>> rows;
    for (const auto& name : names) rows.push_back(rows_of(e.categories().at(name)));

    SimilarityResult result;
    result.matrix.categories = names;
    result.matrix.values.assign(n * n, 0.5);
    result.importance.assign(e.dim(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            CvParams cv{params.folds, derive_seed(params.seed, {i, j}), params.forest};
            const auto r = cross_validated_auc(rows[i], rows[j], cv);
            const double folded = fold_auc(r.mean_auc);
            result.matrix.values[i * n + j] = folded;
            result.matrix.values[j * n + i] = folded;
            for (std::size_t f = 0; f < r.importance.size(); ++f) result.importance[f] += r.importance[f];
            ++result.pair_evaluations;
        }
    }
    for (double& v : result.importance) v /= static_cast<double>(result.pair_evaluations);
    return result;
}

double split_half_auc(std::span<const std::vector<double>> samples, const SimilarityParams& params) {
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(params.seed, {0x5911ULL}));
    rng.shuffle(order.begin(), order.end());
    const std::size_t half = samples.size() / 2;
    std::vector<std::vector<double>> a, b;
    for (std::size_t k = 0; k < 2 * half; ++k) (k < half ? a : b).push_back(samples[order[k]]);
    CvParams cv{params.folds, derive_seed(params.seed, {0x5912ULL}), params.forest};
    return fold_auc(cross_validated_auc(a, b, cv).mean_auc);
}

std::vector<RankedFeature> global_importance_ranking(std::span<const double> importance,
                                                     std::span<const std::string> names) {
    if (importance.size() != names.size()) throw DataError("importance and feature name counts differ");
    std::vector<std::size_t> order(importance.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return importance[a] > importance[b]; });
    std::vector<RankedFeature> out;
    for (std::size_t r = 0; r < order.size(); ++r) out.push_back({names[order[r]], importance[order[r]], r + 1});
    return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> rank(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) rank[order[k]] = avg;
        i = j;
    }
    return rank;
}

Representative representative_graph(const Ensemble& e, const std::string& category, std::span<const double> importance,
                                    const RepresentativeOptions& opts) {
    const auto it = e.categories().find(category);
    if (it == e.categories().end() || it->second.empty())
        throw DataError("unknown or empty category '" + category + "'");
    const std::size_t dim = e.dim();
    if (importance.size() != dim) throw DataError("importance vector does not match feature dimension");

    // Pool rows; the category's members occupy [begin, begin + size).
    std::vector<const GraphFeatures*> pool;
    std::size_t begin = 0;
    if (opts.pool == RankPool::all_categories) {
        for (const auto& [name, members] : e.categories()) {
            if (name == category) begin = pool.size();
            for (const auto& m : members) pool.push_back(&m);
        }
    } else {
        for (const auto& m : it->second) pool.push_back(&m);
    }
    const std::size_t count = it->second.size();

    std::vector<std::vector<double>> ranks(dim);
    std::vector<double> column(pool.size());
    for (std::size_t f = 0; f < dim; ++f) {
        for (std::size_t k = 0; k < pool.size(); ++k) column[k] = pool[k]->values[f];
        ranks[f] = average_ranks(column);
    }

    std::vector<double> mean(dim, 0.0);
    for (std::size_t f = 0; f < dim; ++f) {
        for (std::size_t k = begin; k < begin + count; ++k) mean[f] += ranks[f][k];
        mean[f] /= static_cast<double>(count);
    }

    Representative best;
    bool have = false;
    for (std::size_t k = begin; k < begin + count; ++k) {
        double acc = 0.0;
        for (std::size_t f = 0; f < dim; ++f) {
            const double dev = ranks[f][k] - mean[f];
            acc += opts.weighting == DistanceWeighting::squared_deviation ? importance[f] * dev * dev
                                                                         : std::pow(importance[f] * dev, 2);
        }
        const double dist = std::sqrt(acc);
        const auto& id = pool[k]->graph_id;
        if (!have || dist < best.distance || (dist == best.distance && id < best.graph_id)) {
            best = {id, dist};
            have = true;
        }
    }
    return best;
}

}  // namespace placenet
