#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace placenet {

// The 1–3 category labels one page carries; order is irrelevant.
using CategoryRecord = std::vector<std::string>;

struct CategoryCorpus {
    std::vector<CategoryRecord> records;
};

inline constexpr std::size_t kMaxLabelsPerRecord = 3;

// JSON lines of the form {"categories": ["A", "B"]}. Duplicate labels in a
// record collapse. Throws ParseError on malformed lines, empty labels, or
// records with 0 or more than kMaxLabelsPerRecord labels.
CategoryCorpus read_corpus_jsonl(std::istream& in, const std::string& source = {});

struct SkipGramParams {
    std::size_t dim = 64;
    std::size_t epochs = 50;
    std::size_t negatives = 5;
    double learning_rate = 0.025;  // decays linearly towards 1e-4 of itself
    std::size_t min_count = 1;
    std::uint64_t seed = 0;
};

class EmbeddingModel {
public:
    EmbeddingModel(std::vector<std::string> vocabulary, std::size_t dim, std::vector<float> vectors,
                   std::vector<double> epoch_losses = {});

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return vocabulary_.size(); }
    const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
    std::optional<std::size_t> index_of(const std::string& label) const;
    std::span<const float> vector(std::size_t index) const noexcept {
        return {vectors_.data() + index * dim_, dim_};
    }

    // Cosine similarity of two vocabulary entries; 0 if either vector is zero.
    double cosine(std::size_t a, std::size_t b) const noexcept;

    // Mean negative-sampling loss per training pair, one entry per epoch.
    const std::vector<double>& epoch_losses() const noexcept { return epoch_losses_; }

private:
    std::vector<std::string> vocabulary_;  // sorted
    std::size_t dim_;
    std::vector<float> vectors_;
    std::vector<double> norms_;
    std::vector<double> epoch_losses_;
};

// Skip-gram with negative sampling where every record is one context window:
// each label predicts every other label of its record. Negatives are drawn
// from the unigram distribution raised to 3/4. Single-threaded and
// deterministic for a given seed. Throws DataError when the corpus is empty or
// no label survives min_count.
EmbeddingModel train_skipgram(const CategoryCorpus& corpus, const SkipGramParams& params);

struct Neighbor {
    std::string label;
    double cosine = 0.0;
};

// Up to top_k other labels by descending cosine, ties by label. Throws
// DataError for an unknown seed label.
std::vector<Neighbor> nearest_categories(const EmbeddingModel& model, const std::string& seed_label,
                                         std::size_t top_k);

// TSV: label, then dim tab-separated reals per line.
void write_model_tsv(std::ostream& out, const EmbeddingModel& model);
EmbeddingModel read_model_tsv(std::istream& in, const std::string& source = {});

struct TaxonomyEntry {
    std::string place_type;
    std::string seed_label;
    std::vector<std::string> matched;  // seed first, then retained neighbours in rank order
};

// For each (place type, seed label), retrieve top_k neighbours and keep those
// on the curated allowlist for that type. Types without an allowlist entry
// keep every neighbour.
std::vector<TaxonomyEntry> expand_taxonomy(const EmbeddingModel& model,
                                           const std::vector<std::pair<std::string, std::string>>& seeds,
                                           std::size_t top_k,
                                           const std::map<std::string, std::set<std::string>>& allowlist);

}  // namespace placenet
