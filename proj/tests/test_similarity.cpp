#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles/brute_force.hpp"
#include "placenet/error.hpp"
#include "placenet/features.hpp"
#include "placenet/similarity.hpp"

using namespace placenet;

namespace {

Ensemble noise_ensemble(std::mt19937_64& rng, std::size_t categories, std::size_t per, std::size_t dim,
                        double shift_first = 0.0) {
    std::normal_distribution<double> z(0.0, 1.0);
    Ensemble e;
    for (std::size_t c = 0; c < categories; ++c)
        for (std::size_t i = 0; i < per; ++i) {
            std::vector<double> v(dim);
            for (auto& x : v) x = z(rng);
            v[0] += shift_first * static_cast<double>(c);
            e.add("cat" + std::to_string(c), {"c" + std::to_string(c) + "_" + std::to_string(i), v});
        }
    return e;
}

}  // namespace

TEST_CASE("ensemble rejects duplicate ids and ragged vectors") {
    Ensemble e;
    e.add("a", {"g1", {1.0, 2.0}});
    CHECK_THROWS_AS(e.add("b", {"g1", {1.0, 2.0}}), DataError);
    CHECK_THROWS_AS(e.add("b", {"g2", {1.0}}), DataError);
}

TEST_CASE("auc matrix over twelve categories runs 66 pair evaluations") {
    std::mt19937_64 rng(1);
    const Ensemble e = noise_ensemble(rng, 12, 4, 3, 1.0);
    SimilarityParams p;
    p.folds = 2;
    p.forest.n_trees = 5;
    const auto r = auc_matrix(e, p);
    CHECK(r.pair_evaluations == 66);
    const std::size_t n = r.matrix.categories.size();
    REQUIRE(n == 12);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(r.matrix.at(i, i) == 0.5);
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(r.matrix.at(i, j) == r.matrix.at(j, i));
            CHECK(r.matrix.at(i, j) >= 0.5);
            CHECK(r.matrix.at(i, j) <= 1.0);
        }
    }
    CHECK(std::accumulate(r.importance.begin(), r.importance.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("identically distributed categories are nearly indistinguishable") {
    std::mt19937_64 rng(17);
    int inside = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const Ensemble e = noise_ensemble(rng, 2, 40, 4);
        SimilarityParams p;
        p.seed = static_cast<std::uint64_t>(rep);
        p.forest.n_trees = 40;
        const double v = auc_matrix(e, p).matrix.at(0, 1);
        if (v <= 0.65) ++inside;
    }
    CHECK(inside >= 18);
}

TEST_CASE("auc matrix is deterministic and rejects undersized categories") {
    std::mt19937_64 rng(2);
    const Ensemble e = noise_ensemble(rng, 3, 6, 2, 0.5);
    SimilarityParams p;
    p.folds = 3;
    p.forest.n_trees = 10;
    p.seed = 4;
    CHECK(auc_matrix(e, p).matrix.values == auc_matrix(e, p).matrix.values);

    p.folds = 7;
    try {
        auc_matrix(e, p);
        FAIL("expected DataError");
    } catch (const DataError& err) {
        CHECK(std::string(err.what()).find("cat0") != std::string::npos);
    }

    Ensemble single;
    single.add("only", {"x", {1.0}});
    CHECK_THROWS_AS(auc_matrix(single, p), DataError);
}

TEST_CASE("split-half of one pool stays near one half") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z;
    std::vector<std::vector<double>> pool(60, std::vector<double>(3));
    for (auto& r : pool)
        for (auto& v : r) v = z(rng);
    SimilarityParams p;
    p.forest.n_trees = 30;
    const double auc = split_half_auc(pool, p);
    CHECK(auc >= 0.5);
    CHECK(auc <= 0.75);
}

TEST_CASE("global importance ranking") {
    const std::vector<std::string> names{"f0", "f1", "f2", "f3"};
    const std::vector<double> uniform(4, 0.25);
    const auto u = global_importance_ranking(uniform, names);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(u[i].name == names[i]);
        CHECK(u[i].rank == i + 1);
    }
    const std::vector<double> peaked{0.02, 0.03, 0.9, 0.05};
    CHECK(global_importance_ranking(peaked, names).front().name == "f2");
    CHECK_THROWS_AS(global_importance_ranking(peaked, std::vector<std::string>{"x"}), DataError);
}

TEST_CASE("separable ensemble ranks its separating feature first") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    Ensemble e;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> a(5), b(5);
        for (auto& v : a) v = z(rng);
        for (auto& v : b) v = z(rng);
        a[0] = 0.0;
        b[0] = 1.0;
        e.add("a", {"a" + std::to_string(i), a});
        e.add("b", {"b" + std::to_string(i), b});
    }
    const auto r = auc_matrix(e, {});
    CHECK(r.matrix.at(0, 1) >= 0.99);
    const auto names = feature_names({1});
    const std::vector<std::string> five(names.begin(), names.begin() + 5);
    CHECK(global_importance_ranking(r.importance, five).front().name == five[0]);
}

TEST_CASE("average ranks share ties") {
    const std::vector<double> v{3.0, 1.0, 3.0, 2.0};
    CHECK(average_ranks(v) == std::vector<double>{3.5, 1.0, 3.5, 2.0});
}

TEST_CASE("representative of a single feature is the median-ranked graph") {
    Ensemble e;
    for (int i = 1; i <= 5; ++i) e.add("c", {"g" + std::to_string(i), {static_cast<double>(i)}});
    const std::vector<double> w{1.0};
    const auto r = representative_graph(e, "c", w);
    CHECK(r.graph_id == "g3");
    CHECK(r.distance == 0.0);
}

TEST_CASE("identical members resolve to the smallest id") {
    Ensemble e;
    for (const char* id : {"m3", "m1", "m2"}) e.add("c", {id, {4.0, 4.0}});
    e.add("other", {"z", {1.0, 9.0}});
    const std::vector<double> w{0.5, 0.5};
    CHECK(representative_graph(e, "c", w).graph_id == "m1");
}

TEST_CASE("zero-weight features are ignored") {
    // Feature 2 would pick g4; feature 1 alone picks g2.
    Ensemble e;
    e.add("c", {"g1", {1.0, 40.0}});
    e.add("c", {"g2", {2.0, 10.0}});
    e.add("c", {"g3", {4.0, 30.0}});
    e.add("c", {"g4", {8.0, 25.0}});
    e.add("d", {"h1", {3.0, 5.0}});
    const std::vector<double> w{1.0, 0.0};
    const auto got = representative_graph(e, "c", w).graph_id;
    CHECK(got == oracle::representative(e, "c", w));
    CHECK(got == "g2");
    const std::vector<double> w2{0.0, 1.0};
    CHECK(representative_graph(e, "c", w2).graph_id == oracle::representative(e, "c", w2));
}

TEST_CASE("representative selection is rank-invariant and scale-invariant in weights") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        Ensemble e, warped;
        const std::vector<double> w{u(rng), u(rng), u(rng)};
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < 6; ++i) {
                const std::string id = "g" + std::to_string(c) + std::to_string(i);
                std::vector<double> v{u(rng), std::round(u(rng)), u(rng)};
                e.add("c" + std::to_string(c), {id, v});
                warped.add("c" + std::to_string(c),
                           {id, {std::exp(v[0]), 3.0 * v[1] - 7.0, std::pow(v[2], 3.0)}});
            }
        const auto base = representative_graph(e, "c1", w).graph_id;
        CHECK(base == oracle::representative(e, "c1", w));
        CHECK(representative_graph(warped, "c1", w).graph_id == base);
        std::vector<double> scaled = w;
        for (auto& x : scaled) x *= 17.0;
        CHECK(representative_graph(e, "c1", scaled).graph_id == base);
    }
}

TEST_CASE("representative options and errors") {
    Ensemble e;
    e.add("c", {"g1", {1.0, 2.0}});
    e.add("c", {"g2", {2.0, 1.0}});
    const std::vector<double> w{1.0, 1.0};
    CHECK_THROWS_AS(representative_graph(e, "missing", w), DataError);
    CHECK_THROWS_AS(representative_graph(e, "c", std::vector<double>{1.0}), DataError);

    RepresentativeOptions opts;
    opts.pool = RankPool::within_category;
    opts.weighting = DistanceWeighting::deviation;
    CHECK(representative_graph(e, "c", w, opts).graph_id == "g1");
}
