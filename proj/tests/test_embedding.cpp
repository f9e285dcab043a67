#include <sstream>

#include "doctest.h"
#include "placenet/error.hpp"
#include "placenet/embedding.hpp"
#include "synthetic_corpus.hpp"

using namespace placenet;

namespace {

SkipGramParams quick(std::uint64_t seed) {
    SkipGramParams p;
    p.seed = seed;
    p.dim = 32;
    p.epochs = 10;
    return p;
}

}  // namespace

TEST_CASE("corpus reader validates records") {
    std::istringstream ok(R"({"categories": ["B", "A", "A"]}
{"categories": ["C"]}

)");
    const auto c = read_corpus_jsonl(ok);
    REQUIRE(c.records.size() == 2);
    CHECK(c.records[0] == CategoryRecord{"A", "B"});

    std::istringstream too_many(R"({"categories": ["A", "B", "C", "D"]})");
    CHECK_THROWS_AS(read_corpus_jsonl(too_many), ParseError);
    std::istringstream empty_label("{\"categories\": [\"A\"]}\n{\"categories\": [\"\"]}\n");
    try {
        read_corpus_jsonl(empty_label, "corpus.jsonl");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    std::istringstream broken("{not json");
    CHECK_THROWS_AS(read_corpus_jsonl(broken), ParseError);
    std::istringstream no_list(R"({"labels": ["A"]})");
    CHECK_THROWS_AS(read_corpus_jsonl(no_list), ParseError);
}

TEST_CASE("self-similarity is one") {
    const auto model = train_skipgram(testing_corpus::planted(1, 200), quick(1));
    for (std::size_t i = 0; i < model.size(); ++i) CHECK(model.cosine(i, i) == doctest::Approx(1.0));
}

TEST_CASE("planted co-occurrence beats a never co-occurring label") {
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto model = train_skipgram(testing_corpus::planted(100 + seed), quick(seed));
        const auto a = *model.index_of("ALPHA"), b = *model.index_of("BETA"), c = *model.index_of("GAMMA");
        if (model.cosine(a, b) > model.cosine(a, c)) ++wins;
    }
    CHECK(wins >= 9);
}

TEST_CASE("min_count drops rare labels") {
    CategoryCorpus c{{{"A", "B"}, {"A", "B"}, {"A", "RARE"}}};
    SkipGramParams p = quick(0);
    p.min_count = 2;
    const auto model = train_skipgram(c, p);
    CHECK_FALSE(model.index_of("RARE").has_value());
    CHECK(model.index_of("A").has_value());
    p.min_count = 10;
    CHECK_THROWS_AS(train_skipgram(c, p), DataError);
    CHECK_THROWS_AS(train_skipgram(CategoryCorpus{}, p), DataError);
}

TEST_CASE("training is deterministic and loss decreases") {
    const auto corpus = testing_corpus::planted(5, 400);
    const auto m1 = train_skipgram(corpus, quick(3));
    const auto m2 = train_skipgram(corpus, quick(3));
    for (std::size_t i = 0; i < m1.size(); ++i) {
        const auto v1 = m1.vector(i), v2 = m2.vector(i);
        CHECK(std::equal(v1.begin(), v1.end(), v2.begin()));
    }
    REQUIRE(m1.epoch_losses().size() == 10);
    CHECK(m1.epoch_losses().back() < m1.epoch_losses().front());
}

TEST_CASE("nearest categories: truncation, exclusion, ordering") {
    CategoryCorpus c{{{"A", "B"}, {"B", "C"}, {"A", "C"}}};
    const auto model = train_skipgram(c, quick(2));
    const auto top = nearest_categories(model, "A", 10);
    REQUIRE(top.size() == 2);
    for (const auto& n : top) {
        CHECK(n.label != "A");
        CHECK(n.cosine >= -1.0);
        CHECK(n.cosine <= 1.0);
    }
    CHECK(top[0].cosine >= top[1].cosine);
    CHECK(nearest_categories(model, "A", 1).size() == 1);
    CHECK_THROWS_AS(nearest_categories(model, "Z", 3), DataError);

    const auto big = train_skipgram(testing_corpus::planted(9), quick(9));
    const auto ranked = nearest_categories(big, "L3", 300);
    CHECK(ranked.size() == big.size() - 1);
    for (std::size_t i = 1; i < ranked.size(); ++i) CHECK(ranked[i - 1].cosine >= ranked[i].cosine);
}

TEST_CASE("model TSV round-trip preserves neighbours") {
    const auto model = train_skipgram(testing_corpus::planted(4, 300), quick(4));
    std::stringstream buf;
    write_model_tsv(buf, model);
    const auto back = read_model_tsv(buf);
    CHECK(back.vocabulary() == model.vocabulary());
    CHECK(back.dim() == model.dim());
    const auto a = nearest_categories(model, "ALPHA", 5);
    const auto b = nearest_categories(back, "ALPHA", 5);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].label == b[i].label);

    std::istringstream ragged("A\t1\t2\nB\t1\n");
    CHECK_THROWS_AS(read_model_tsv(ragged), ParseError);
}

TEST_CASE("taxonomy expansion filters by allowlist") {
    const auto model = train_skipgram(testing_corpus::planted(6), quick(6));
    const std::vector<std::pair<std::string, std::string>> seeds{{"alpha_places", "ALPHA"}, {"misc", "L1"}};
    const std::map<std::string, std::set<std::string>> allow{{"alpha_places", {"BETA"}}};
    const auto tax = expand_taxonomy(model, seeds, 300, allow);
    REQUIRE(tax.size() == 2);
    CHECK(tax[0].matched == std::vector<std::string>{"ALPHA", "BETA"});
    CHECK(tax[1].matched.size() == model.size());
}

TEST_CASE("planted partner ranks first among neighbours") {
    int first = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto model = train_skipgram(testing_corpus::planted(500 + seed), SkipGramParams{.seed = seed});
        if (nearest_categories(model, "ALPHA", 300).front().label == "BETA") ++first;
    }
    CHECK(first >= 9);
}
