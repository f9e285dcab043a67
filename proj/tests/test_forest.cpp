#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles/brute_force.hpp"
#include "placenet/error.hpp"
#include "placenet/forest.hpp"

using namespace placenet;

namespace {

std::vector<std::vector<double>> noise_class(std::mt19937_64& rng, std::size_t n, std::size_t dim,
                                             double first_feature = std::nan("")) {
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<std::vector<double>> out(n, std::vector<double>(dim));
    for (auto& row : out) {
        for (auto& v : row) v = z(rng);
        if (!std::isnan(first_feature)) row[0] = first_feature;
    }
    return out;
}

double auc_of(const std::vector<double>& s, const std::vector<std::uint8_t>& l) { return roc_auc(s, l); }

}  // namespace

TEST_CASE("separable single feature gives perfect holdout accuracy") {
    Dataset train(1);
    for (int i = 0; i < 20; ++i) {
        train.add(std::vector<double>{0.0}, true);
        train.add(std::vector<double>{1.0}, false);
    }
    ForestParams p;
    p.n_trees = 25;
    p.seed = 3;
    const Forest f = train_random_forest(train, p);
    CHECK(f.predict_score(std::vector<double>{0.0}) == 1.0);
    CHECK(f.predict_score(std::vector<double>{1.0}) == 0.0);
    CHECK(f.predict_score(std::vector<double>{-5.0}) == 1.0);
    CHECK(f.importances()[0] == doctest::Approx(1.0));
}

TEST_CASE("constant features give a balanced score") {
    Dataset train(3);
    for (int i = 0; i < 40; ++i) train.add(std::vector<double>{1.0, 2.0, 3.0}, i % 2 == 0);
    ForestParams p;
    p.n_trees = 200;
    p.seed = 1;
    const Forest f = train_random_forest(train, p);
    CHECK(f.predict_score(std::vector<double>{1.0, 2.0, 3.0}) == doctest::Approx(0.5).epsilon(0.05));
    // no splits anywhere: importances fall back to uniform
    for (double v : f.importances()) CHECK(v == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("training is deterministic for a fixed seed") {
    std::mt19937_64 rng(5);
    Dataset d(4);
    for (const auto& r : noise_class(rng, 30, 4)) d.add(r, true);
    for (const auto& r : noise_class(rng, 30, 4)) d.add(r, false);
    ForestParams p;
    p.seed = 77;
    p.n_trees = 30;
    const Forest f1 = train_random_forest(d, p);
    const Forest f2 = train_random_forest(d, p);
    for (int i = 0; i < 50; ++i) {
        const auto x = noise_class(rng, 1, 4)[0];
        CHECK(f1.predict_score(x) == f2.predict_score(x));
    }
    CHECK(std::equal(f1.importances().begin(), f1.importances().end(), f2.importances().begin()));
}

TEST_CASE("single-class data and dimension mismatch are errors") {
    Dataset d(2);
    d.add(std::vector<double>{0, 1}, true);
    d.add(std::vector<double>{1, 1}, true);
    CHECK_THROWS_AS(train_random_forest(d, {}), DataError);
    CHECK_THROWS_AS(d.add(std::vector<double>{1}, false), DataError);

    d.add(std::vector<double>{3, 3}, false);
    const Forest f = train_random_forest(d, {});
    CHECK_THROWS_AS(f.predict_score(std::vector<double>{1, 2, 3}), DataError);
}

TEST_CASE("predict_score averages tree leaves") {
    const DecisionTree one({TreeNode{TreeNode::kLeaf, 0.0, 0, 0, 1.0}});
    const DecisionTree zero({TreeNode{TreeNode::kLeaf, 0.0, 0, 0, 0.0}});
    CHECK(Forest(1, {one}, {}).predict_score(std::vector<double>{0.3}) == 1.0);
    CHECK(Forest(1, {one, zero}, {}).predict_score(std::vector<double>{0.3}) == 0.5);
}

TEST_CASE("training points of a separable problem are re-scored confidently") {
    std::mt19937_64 rng(2);
    Dataset d(3);
    const auto a = noise_class(rng, 40, 3, -2.0);
    const auto b = noise_class(rng, 40, 3, 2.0);
    for (const auto& r : a) d.add(r, true);
    for (const auto& r : b) d.add(r, false);
    ForestParams p;
    p.seed = 9;
    const Forest f = train_random_forest(d, p);
    for (const auto& r : a) CHECK(f.predict_score(r) >= 0.9);
    for (const auto& r : b) CHECK(f.predict_score(r) <= 0.1);
}

TEST_CASE("importances are non-negative and sum to one") {
    std::mt19937_64 rng(12);
    Dataset d(6);
    for (const auto& r : noise_class(rng, 50, 6)) d.add(r, true);
    for (const auto& r : noise_class(rng, 50, 6, 0.5)) d.add(r, false);
    const Forest f = train_random_forest(d, {});
    const auto imp = f.importances();
    for (double v : imp) CHECK(v >= 0.0);
    CHECK(std::accumulate(imp.begin(), imp.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("max_depth and min_leaf limit tree shape") {
    std::mt19937_64 rng(12);
    Dataset d(2);
    for (const auto& r : noise_class(rng, 60, 2)) d.add(r, true);
    for (const auto& r : noise_class(rng, 60, 2)) d.add(r, false);
    ForestParams stump;
    stump.n_trees = 5;
    stump.max_depth = 1;
    const Forest stumps = train_random_forest(d, stump);
    for (const auto& t : stumps.trees()) CHECK(t.nodes().size() <= 3);

    ForestParams chunky;
    chunky.n_trees = 5;
    chunky.min_leaf = 20;
    const Forest coarse = train_random_forest(d, chunky);
    for (const auto& t : coarse.trees()) CHECK(t.nodes().size() < 20);
}

TEST_CASE("roc_auc examples") {
    CHECK(auc_of({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}) == 1.0);
    CHECK(auc_of({0.4, 0.4, 0.4, 0.4}, {1, 0, 1, 0}) == 0.5);
    CHECK(auc_of({0.8, 0.3, 0.5, 0.1}, {1, 1, 0, 0}) == 0.75);
    CHECK_THROWS_AS(auc_of({0.1, 0.2}, {1, 1}), DataError);
}

TEST_CASE("roc_auc matches the pair-count oracle, flips exactly, and ignores monotone transforms") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> size(2, 25), level(0, 6);
    for (int t = 0; t < 300; ++t) {
        const int n = size(rng);
        std::vector<double> s(n);
        std::vector<std::uint8_t> l(n), flipped(n);
        for (int i = 0; i < n; ++i) {
            s[i] = level(rng) / 6.0;
            l[i] = static_cast<std::uint8_t>(i % 2);
            flipped[i] = 1 - l[i];
        }
        const double auc = roc_auc(s, l);
        CHECK(auc == oracle::auc_pairs(s, l));
        CHECK(auc + roc_auc(s, flipped) == 1.0);
        std::vector<double> warped(n);
        for (int i = 0; i < n; ++i) warped[i] = std::exp(3.0 * s[i]) - 7.0;
        CHECK(roc_auc(warped, l) == auc);
    }
}

TEST_CASE("stratified folds partition each class evenly") {
    for (std::size_t folds : {2u, 3u, 10u}) {
        const auto fold = stratified_folds(23, 31, folds, 4);
        REQUIRE(fold.size() == 54);
        std::vector<std::size_t> ca(folds, 0), cb(folds, 0);
        for (std::size_t i = 0; i < 23; ++i) ++ca.at(fold[i]);
        for (std::size_t i = 23; i < 54; ++i) ++cb.at(fold[i]);
        CHECK(*std::max_element(ca.begin(), ca.end()) - *std::min_element(ca.begin(), ca.end()) <= 1);
        CHECK(*std::max_element(cb.begin(), cb.end()) - *std::min_element(cb.begin(), cb.end()) <= 1);
    }
    CHECK(stratified_folds(10, 10, 5, 1) == stratified_folds(10, 10, 5, 1));
}

TEST_CASE("cross-validated AUC on separable data") {
    std::mt19937_64 rng(8);
    const auto a = noise_class(rng, 30, 5, 0.0);
    const auto b = noise_class(rng, 30, 5, 1.0);
    CvParams p;
    p.seed = 2;
    const auto res = cross_validated_auc(a, b, p);
    CHECK(res.mean_auc >= 0.99);
    CHECK(res.importance[0] > 0.5);
    CHECK(std::accumulate(res.importance.begin(), res.importance.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("cross-validated AUC under the null stays near one half") {
    std::mt19937_64 rng(15);
    int inside = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const auto a = noise_class(rng, 40, 4);
        const auto b = noise_class(rng, 40, 4);
        CvParams p;
        p.seed = static_cast<std::uint64_t>(rep);
        p.forest.n_trees = 50;
        const double auc = cross_validated_auc(a, b, p).mean_auc;
        if (auc >= 0.35 && auc <= 0.65) ++inside;
    }
    CHECK(inside >= 18);
}

TEST_CASE("folded AUC is symmetric under swapping the classes") {
    const std::vector<std::vector<double>> a{{0.0, 1.0}, {0.0, 2.0}};
    const std::vector<std::vector<double>> b{{1.0, 1.0}, {1.0, 2.0}};
    CvParams p;
    p.folds = 2;
    p.seed = 6;
    const double ab = fold_auc(cross_validated_auc(a, b, p).mean_auc);
    const double ba = fold_auc(cross_validated_auc(b, a, p).mean_auc);
    CHECK(ab == ba);
    CHECK(ab == 1.0);
}

TEST_CASE("cross-validation is deterministic and validates its inputs") {
    std::mt19937_64 rng(1);
    const auto a = noise_class(rng, 12, 3);
    const auto b = noise_class(rng, 12, 3, 0.3);
    CvParams p;
    p.folds = 4;
    p.seed = 10;
    const auto r1 = cross_validated_auc(a, b, p);
    const auto r2 = cross_validated_auc(a, b, p);
    CHECK(r1.mean_auc == r2.mean_auc);
    CHECK(r1.importance == r2.importance);

    p.folds = 13;
    CHECK_THROWS_AS(cross_validated_auc(a, b, p), DataError);
    p.folds = 1;
    CHECK_THROWS_AS(cross_validated_auc(a, b, p), DataError);
}
