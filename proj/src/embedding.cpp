#include "placenet/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "placenet/error.hpp"
#include "placenet/rng.hpp"
#include "placenet/simd/kernels.hpp"

namespace placenet {

CategoryCorpus read_corpus_jsonl(std::istream& in, const std::string& source) {
    CategoryCorpus corpus;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("categories") || !j["categories"].is_array())
            throw ParseError(source, lineno, "expected an object with a \"categories\" array");
        CategoryRecord record;
        for (const auto& label : j["categories"]) {
            if (!label.is_string() || label.get<std::string>().empty())
                throw ParseError(source, lineno, "category labels must be non-empty strings");
            record.push_back(label.get<std::string>());
        }
        std::sort(record.begin(), record.end());
        record.erase(std::unique(record.begin(), record.end()), record.end());
        if (record.empty() || record.size() > kMaxLabelsPerRecord)
            throw ParseError(source, lineno,
                             "a record needs between 1 and " + std::to_string(kMaxLabelsPerRecord) + " categories");
        corpus.records.push_back(std::move(record));
    }
    return corpus;
}

EmbeddingModel::EmbeddingModel(std::vector<std::string> vocabulary, std::size_t dim, std::vector<float> vectors,
                               std::vector<double> epoch_losses)
    : vocabulary_(std::move(vocabulary)), dim_(dim), vectors_(std::move(vectors)),
      epoch_losses_(std::move(epoch_losses)) {
    if (vectors_.size() != vocabulary_.size() * dim_)
        throw DataError("embedding matrix size does not match vocabulary and dimension");
    if (!std::is_sorted(vocabulary_.begin(), vocabulary_.end()) ||
        std::adjacent_find(vocabulary_.begin(), vocabulary_.end()) != vocabulary_.end())
        throw DataError("embedding vocabulary must be sorted and unique");
    norms_.resize(vocabulary_.size());
    for (std::size_t i = 0; i < vocabulary_.size(); ++i)
        norms_[i] = std::sqrt(static_cast<double>(simd::dot(vector(i), vector(i))));
}

std::optional<std::size_t> EmbeddingModel::index_of(const std::string& label) const {
    const auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), label);
    if (it == vocabulary_.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - vocabulary_.begin());
}

double EmbeddingModel::cosine(std::size_t a, std::size_t b) const noexcept {
    if (norms_[a] == 0.0 || norms_[b] == 0.0) return 0.0;
    if (a == b) return 1.0;
    const double c = static_cast<double>(simd::dot(vector(a), vector(b))) / (norms_[a] * norms_[b]);
    return std::clamp(c, -1.0, 1.0);
}

namespace {

double sigmoid(double x) noexcept { return 1.0 / (1.0 + std::exp(-x)); }

double log_sigmoid(double x) noexcept { return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

class NegativeSampler {
public:
    explicit NegativeSampler(const std::vector<std::size_t>& counts) : cumulative_(counts.size()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            acc += std::pow(static_cast<double>(counts[i]), 0.75);
            cumulative_[i] = acc;
        }
    }

    std::size_t draw(Rng& rng) const {
        const double u = rng.uniform01() * cumulative_.back();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
    }

private:
    std::vector<double> cumulative_;
};

}  // namespace

EmbeddingModel train_skipgram(const CategoryCorpus& corpus, const SkipGramParams& params) {
    if (corpus.records.empty()) throw DataError("embedding corpus is empty");
    if (params.dim == 0) throw DataError("embedding dimension must be positive");

    std::map<std::string, std::size_t> counts;
    for (const auto& r : corpus.records)
        for (const auto& label : r) ++counts[label];
    std::vector<std::string> vocab;
    std::vector<std::size_t> freq;
    for (const auto& [label, c] : counts)
        if (c >= params.min_count) {
            vocab.push_back(label);
            freq.push_back(c);
        }
    if (vocab.empty()) throw DataError("no category label reaches min_count " + std::to_string(params.min_count));

    auto index = [&](const std::string& label) -> std::optional<std::size_t> {
        const auto it = std::lower_bound(vocab.begin(), vocab.end(), label);
        if (it == vocab.end() || *it != label) return std::nullopt;
        return static_cast<std::size_t>(it - vocab.begin());
    };
    std::vector<std::vector<std::size_t>> windows;
    std::size_t pairs_per_epoch = 0;
    for (const auto& r : corpus.records) {
        std::vector<std::size_t> w;
        for (const auto& label : r)
            if (auto i = index(label)) w.push_back(*i);
        if (w.size() >= 2) {
            pairs_per_epoch += w.size() * (w.size() - 1);
            windows.push_back(std::move(w));
        }
    }

    const std::size_t dim = params.dim;
    const std::size_t v = vocab.size();
    Rng rng(derive_seed(params.seed, {0xe3bedULL}));
    std::vector<float> input(v * dim), output(v * dim, 0.0f);
    for (auto& x : input) x = static_cast<float>((rng.uniform01() - 0.5) / static_cast<double>(dim));

    const NegativeSampler sampler(freq);
    const double total_pairs = static_cast<double>(pairs_per_epoch * params.epochs);
    std::vector<float> grad(dim);
    std::vector<std::size_t> order(windows.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> losses;
    std::size_t processed = 0;

    for (std::size_t epoch = 0; epoch < params.epochs && pairs_per_epoch > 0; ++epoch) {
        rng.shuffle(order.begin(), order.end());
        double loss = 0.0;
        for (std::size_t w : order) {
            const auto& window = windows[w];
            for (std::size_t center : window) {
                for (std::size_t context : window) {
                    if (context == center) continue;
                    const double progress = static_cast<double>(processed++) / total_pairs;
                    const auto lr = static_cast<float>(params.learning_rate * std::max(1e-4, 1.0 - progress));
                    const std::span<float> h(input.data() + center * dim, dim);
                    std::fill(grad.begin(), grad.end(), 0.0f);

                    for (std::size_t s = 0; s <= params.negatives; ++s) {
                        std::size_t target = context;
                        float label = 1.0f;
                        if (s > 0) {
                            target = sampler.draw(rng);
                            if (target == context) continue;
                            label = 0.0f;
                        }
                        const std::span<float> u(output.data() + target * dim, dim);
                        const double score = simd::dot(std::span<const float>(h), std::span<const float>(u));
                        loss -= label > 0 ? log_sigmoid(score) : log_sigmoid(-score);
                        const float g = (label - static_cast<float>(sigmoid(score))) * lr;
                        simd::axpy(g, std::span<const float>(u), std::span<float>(grad));
                        simd::axpy(g, std::span<const float>(h), u);
                    }
                    simd::axpy(1.0f, std::span<const float>(grad), h);
                }
            }
        }
        losses.push_back(loss / static_cast<double>(pairs_per_epoch));
    }
    return EmbeddingModel(std::move(vocab), dim, std::move(input), std::move(losses));
}

std::vector<Neighbor> nearest_categories(const EmbeddingModel& model, const std::string& seed_label,
                                         std::size_t top_k) {
    const auto seed = model.index_of(seed_label);
    if (!seed) throw DataError("category '" + seed_label + "' is not in the embedding vocabulary");
    std::vector<Neighbor> all;
    for (std::size_t i = 0; i < model.size(); ++i)
        if (i != *seed) all.push_back({model.vocabulary()[i], model.cosine(*seed, i)});
    std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.cosine != b.cosine ? a.cosine > b.cosine : a.label < b.label;
    });
    if (all.size() > top_k) all.resize(top_k);
    return all;
}

void write_model_tsv(std::ostream& out, const EmbeddingModel& model) {
    const auto old = out.precision(9);
    for (std::size_t i = 0; i < model.size(); ++i) {
        out << model.vocabulary()[i];
        for (float x : model.vector(i)) out << '\t' << x;
        out << '\n';
    }
    out.precision(old);
}

EmbeddingModel read_model_tsv(std::istream& in, const std::string& source) {
    std::vector<std::pair<std::string, std::vector<float>>> rows;
    std::string line;
    std::size_t lineno = 0, dim = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string label, cell;
        std::getline(fields, label, '\t');
        std::vector<float> vec;
        while (std::getline(fields, cell, '\t')) {
            try {
                vec.push_back(std::stof(cell));
            } catch (const std::exception&) {
                throw ParseError(source, lineno, "invalid real '" + cell + "'");
            }
        }
        if (rows.empty()) dim = vec.size();
        if (label.empty() || vec.empty() || vec.size() != dim)
            throw ParseError(source, lineno, "expected a label and " + std::to_string(dim) + " values");
        rows.emplace_back(std::move(label), std::move(vec));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> vocab;
    std::vector<float> vectors;
    for (auto& [label, vec] : rows) {
        vocab.push_back(label);
        vectors.insert(vectors.end(), vec.begin(), vec.end());
    }
    return EmbeddingModel(std::move(vocab), dim, std::move(vectors));
}

std::vector<TaxonomyEntry> expand_taxonomy(const EmbeddingModel& model,
                                           const std::vector<std::pair<std::string, std::string>>& seeds,
                                           std::size_t top_k,
                                           const std::map<std::string, std::set<std::string>>& allowlist) {
    std::vector<TaxonomyEntry> out;
    for (const auto& [type, seed] : seeds) {
        TaxonomyEntry entry{type, seed, {seed}};
        const auto allowed = allowlist.find(type);
        for (const auto& n : nearest_categories(model, seed, top_k))
            if (allowed == allowlist.end() || allowed->second.count(n.label)) entry.matched.push_back(n.label);
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace placenet
