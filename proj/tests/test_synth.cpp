#include <sstream>

#include "doctest.h"
#include "placenet/cores.hpp"
#include "placenet/error.hpp"
#include "placenet/features.hpp"
#include "placenet/synth.hpp"

using namespace placenet;

namespace {

bool is_complete(const Graph& g) {
    const auto n = g.num_nodes();
    return g.num_edges() == n * (n - 1) / 2;
}

}  // namespace

TEST_CASE("erdos renyi extremes and determinism") {
    auto empty = gen_er(15, 0.0, 1);
    CHECK(empty.num_nodes() == 15);
    CHECK(empty.num_edges() == 0);
    CHECK(empty.id(0) == "n00");
    CHECK(is_complete(gen_er(9, 1.0, 1)));
    CHECK(gen_er(200, 0.02, 7) == gen_er(200, 0.02, 7));
    CHECK_FALSE(gen_er(200, 0.02, 7) == gen_er(200, 0.02, 8));
    CHECK(gen_er(0, 0.5, 1).num_nodes() == 0);
    CHECK_THROWS_AS(gen_er(5, 1.5, 1), DataError);

    // expected edge count C(200,2)*0.02 = 398, sd about 19.7
    double total = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) total += static_cast<double>(gen_er(200, 0.02, s).num_edges());
    CHECK(total / 20.0 == doctest::Approx(398.0).epsilon(0.05));
}

TEST_CASE("core periphery degenerate blocks") {
    auto g = gen_core_periphery(6, 10, 1.0, 0.0, 0.0, 3);
    CHECK(g.num_nodes() == 16);
    CHECK(g.num_edges() == 15);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) CHECK(g.has_edge(g.find("c" + std::to_string(i)).value(), g.find("c" + std::to_string(j)).value()));
    for (std::size_t v = 0; v < g.num_nodes(); ++v)
        if (g.id(static_cast<Vertex>(v))[0] == 'p') CHECK(g.degree(static_cast<Vertex>(v)) == 0);

    // no core: same draws as ER on the periphery, only the prefix differs
    auto a = gen_core_periphery(0, 30, 0.9, 0.9, 0.2, 11);
    auto b = gen_er(30, 0.2, 11);
    CHECK(a.num_edges() == b.num_edges());
    for (auto [u, v] : b.edges()) {
        auto su = b.id(u), sv = b.id(v);
        CHECK(a.has_edge(a.find("p" + su.substr(1)).value(), a.find("p" + sv.substr(1)).value()));
    }
}

TEST_CASE("core periphery has one 2-core component") {
    int single = 0;
    const std::vector<int> ks = {2};
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto g = gen_core_periphery(15, 40, 1.0, 0.5, 0.0, s);
        single += k_core_counts(g, ks, CoreCount::components)[0] == 1;
    }
    CHECK(single >= 95);
}

TEST_CASE("dyad triad scatter") {
    auto d = gen_dyad_triad_scatter(5, 1.0, 2);
    CHECK(d.num_nodes() == 10);
    CHECK(d.num_edges() == 5);
    CHECK(connected_components(d).count() == 5);

    auto t = gen_dyad_triad_scatter(4, 0.0, 2);
    CHECK(t.num_edges() == 12);
    CHECK(avg_clustering(t) == 1.0);

    for (std::uint64_t s = 0; s < 10; ++s) {
        auto g = gen_dyad_triad_scatter(12, 0.5, s);
        CHECK(connected_components(g).count() == 12);
        CHECK(avg_path_length_lcc(g, 0, 0) == 1.0);
    }
}

TEST_CASE("multi core community") {
    MultiCoreParams m{.n_communities = 3, .n_core = 8, .n_periphery = 12, .p_cc = 1.0, .p_cp = 0.0, .p_pp = 0.0, .p_between = 0.0};
    auto g = gen_multi_core_community(m, 4);
    CHECK(g.num_nodes() == 60);
    CHECK(g.num_edges() == 3 * 28);
    const std::vector<int> ks = {2};
    CHECK(k_core_counts(g, ks, CoreCount::components)[0] == 3);
    CHECK(g.find("m2c7").has_value());
    CHECK(gen_multi_core_community({}, 9) == gen_multi_core_community({}, 9));
}

TEST_CASE("config parsing") {
    std::istringstream in(
        "seed = 42\n"
        "[cafe]\nkind = core_periphery\ncount = 3\nn_core = 5\nn_periphery = 20\np_cc = 0.5\np_cp = 0.1\np_pp = 0.01\n"
        "[bar]\nkind = erdos_renyi\ncount = 2\nn = 30\np = 0.1\n");
    auto cfg = parse_synth_config(in, "x.ini");
    REQUIRE(cfg.seed.has_value());
    CHECK(*cfg.seed == 42);
    REQUIRE(cfg.categories.size() == 2);
    CHECK(cfg.categories[0].first == "cafe");
    CHECK(cfg.categories[0].second.count == 3);
    CHECK(cfg.categories[1].second.kind == ArchetypeKind::erdos_renyi);
    auto g = generate(cfg.categories[1].second, graph_seed(42, "bar", 0));
    CHECK(g.num_nodes() == 30);
    CHECK(graph_seed(42, "bar", 0) != graph_seed(42, "bar", 1));
    CHECK(graph_seed(42, "bar", 0) != graph_seed(42, "cafe", 0));

    auto line_of_error = [](const std::string& text) -> std::size_t {
        std::istringstream s(text);
        try {
            parse_synth_config(s, "bad.ini");
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of_error("[a]\nkind = erdos_renyi\nn = 10\np = 2\n") == 1);
    CHECK(line_of_error("[a]\nkind = erdos_renyi\nn = ten\np = 0.1\n") == 3);
    CHECK(line_of_error("[a]\nkind = lattice\n") == 2);
    CHECK(line_of_error("[a]\nkind = erdos_renyi\nn = 10\np = 0.1\nq = 1\n") == 1);
    CHECK(line_of_error("[a]\nkind = erdos_renyi\nn = 10\n") == 1);
    CHECK(line_of_error("[a]\nkind = erdos_renyi\nn = 1.5\np = 0.1\n") == 1);
    CHECK(line_of_error("[a]\nkind = erdos_renyi\nn = 10\np = 0.1\n[a\n") == 5);
}
