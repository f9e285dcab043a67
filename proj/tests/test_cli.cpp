#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "placenet/csv.hpp"
#include "run_meta.hpp"

namespace fs = std::filesystem;
using placenet::cli::run;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("placenet_cli_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Result {
    int code;
    std::string out, err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

void write(const fs::path& p, const std::string& body) {
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << body;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string twelve_category_spec() {
    std::string s = "seed = 5\n";
    for (int c = 0; c < 12; ++c) {
        s += "[cat" + std::to_string(c) + "]\nkind = core_periphery\ncount = 8\n";
        s += "n_core = " + std::to_string(4 + c) + "\nn_periphery = 20\np_cc = 0.6\np_cp = 0.1\np_pp = 0.05\n";
    }
    return s;
}

}  // namespace

TEST_CASE("features shape on three tiny graphs") {
    TempDir d("shape");
    write(d.path / "in/g/a.edges", "a b\nb c\n");
    write(d.path / "in/g/b.edges", "# triangle\nx y\ny z\nx z\n");
    write(d.path / "in/g/c.edges", "1 2\n3 4\n");
    write(d.path / "in/m.jsonl",
          "{\"id\":\"A\",\"path\":\"g/a.edges\",\"category\":\"k\"}\n"
          "{\"id\":\"B\",\"path\":\"g/b.edges\",\"category\":\"k\"}\n"
          "\n{\"id\":\"C\",\"path\":\"g/c.edges\",\"category\":\"j\"}\n");
    const auto before = placenet::cli::sha256_file(d.path / "in/m.jsonl");
    auto r = cli({"features", "--manifest", (d.path / "in/m.jsonl").string(), "-o", (d.path / "out").string()});
    REQUIRE(r.code == 0);
    auto t = placenet::read_csv_file((d.path / "out/features.csv").string());
    CHECK(t.header.size() == 19);
    CHECK(t.rows.size() == 3);
    CHECK(t.rows[1][0] == "B");
    CHECK(t.rows[1][6] == "1");  // avg_clustering of a triangle
    CHECK(placenet::cli::sha256_file(d.path / "in/m.jsonl") == before);

    auto meta = nlohmann::json::parse(slurp(d.path / "out/run_meta.json"));
    CHECK(meta["seed"] == 0);
    CHECK(meta["inputs"][0]["sha256"] == before);
    CHECK(meta["options"]["k_set"] == nlohmann::json({2, 4, 8, 16}));
}

TEST_CASE("usage and data errors") {
    TempDir d("errors");
    CHECK(cli({}).code == 1);
    CHECK(cli({"bogus"}).code == 1);
    CHECK(cli({"features", "-o", d.path.string()}).code == 1);
    CHECK(cli({"features", "--manifest", "/no/such/file", "-o", d.path.string()}).code == 1);
    CHECK(cli({"--help"}).code == 0);

    write(d.path / "bad.edges", "a b\nc\n");
    write(d.path / "m.jsonl", "{\"id\":\"a\",\"path\":\"bad.edges\",\"category\":\"c\"}\n");
    auto r = cli({"features", "--manifest", (d.path / "m.jsonl").string(), "-o", (d.path / "o").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("bad.edges:2") != std::string::npos);

    write(d.path / "m2.jsonl", "{\"id\":\"a\",\"path\":\"bad.edges\",\"category\":\"c\"}\nnot json\n");
    r = cli({"features", "--manifest", (d.path / "m2.jsonl").string(), "-o", (d.path / "o").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("m2.jsonl:2") != std::string::npos);

    write(d.path / "spec.ini", "[x]\nkind = erdos_renyi\nn = 5\np = 3\n");
    r = cli({"generate", "--spec", (d.path / "spec.ini").string(), "-o", (d.path / "g").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("spec.ini:1") != std::string::npos);
}

TEST_CASE("similarity over twelve categories and rerun determinism") {
    TempDir d("twelve");
    write(d.path / "spec.ini", twelve_category_spec());
    const auto p = [&](const std::string& s) { return (d.path / s).string(); };
    REQUIRE(cli({"generate", "--spec", p("spec.ini"), "-o", p("gen")}).code == 0);
    REQUIRE(cli({"features", "--manifest", p("gen/manifest.jsonl"), "-o", p("feat")}).code == 0);
    for (const char* run_dir : {"sim1", "sim2"})
        REQUIRE(cli({"similarity", "--features", p("feat/features.csv"), "--labels", p("gen/manifest.jsonl"), "-o",
                     p(run_dir), "--seed", "9", "--trees", "20", "--folds", "4"})
                    .code == 0);
    auto m = placenet::read_csv_file(p("sim1/auc_matrix.csv"));
    CHECK(m.header.size() == 13);
    REQUIRE(m.rows.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(m.rows[i][i + 1] == "0.5000");
        for (std::size_t j = 0; j < 12; ++j) CHECK(m.rows[i][j + 1] == m.rows[j][i + 1]);
    }
    auto meta = nlohmann::json::parse(slurp(p("sim1/run_meta.json")));
    CHECK(meta["notes"]["pair_evaluations"] == 66);
    CHECK(slurp(p("sim1/auc_matrix.csv")) == slurp(p("sim2/auc_matrix.csv")));
    CHECK(slurp(p("sim1/importance.csv")) == slurp(p("sim2/importance.csv")));
    CHECK(slurp(p("sim1/run_meta.json")) == slurp(p("sim2/run_meta.json")));

    REQUIRE(cli({"similarity", "--features", p("feat/features.csv"), "--labels", p("gen/manifest.jsonl"), "-o",
                 p("sim3"), "--seed", "10", "--trees", "20", "--folds", "4"})
                .code == 0);
    CHECK(slurp(p("sim1/auc_matrix.csv")) != slurp(p("sim3/auc_matrix.csv")));

    auto r = cli({"represent", "--features", p("feat/features.csv"), "--importance", p("sim1/importance.csv"),
                  "--labels", p("gen/manifest.jsonl"), "-o", p("rep")});
    REQUIRE(r.code == 0);
    auto reps = placenet::read_csv_file(p("rep/representatives.csv"));
    CHECK(reps.rows.size() == 12);
    for (const auto& row : reps.rows) {
        CHECK(row[1].rfind(row[0] + "_", 0) == 0);
        CHECK(slurp(p("rep/" + row[3])) == slurp(p("gen/graphs/" + row[0] + "/" + row[1] + ".edges")));
    }
}

TEST_CASE("labels must cover the feature table") {
    TempDir d("labels");
    write(d.path / "f.csv", "graph_id,a,b\ng1,1,2\ng2,3,4\n");
    write(d.path / "l.jsonl", "{\"id\":\"g1\",\"path\":\"x\",\"category\":\"c\"}\n");
    auto r = cli({"similarity", "--features", (d.path / "f.csv").string(), "--labels", (d.path / "l.jsonl").string(), "-o",
                  (d.path / "o").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("g2") != std::string::npos);
}

TEST_CASE("embed writes model, neighbours and taxonomy") {
    TempDir d("embed");
    std::string corpus;
    for (int i = 0; i < 200; ++i) {
        corpus += i % 2 ? "{\"categories\": [\"Pub\", \"Bar\"]}\n" : "{\"categories\": [\"Cafe\", \"Bakery\", \"Tea Room\"]}\n";
    }
    write(d.path / "c.jsonl", corpus);
    write(d.path / "allow.csv", "place_type,label\nbars,Pub\n");
    const auto p = [&](const std::string& s) { return (d.path / s).string(); };
    for (const char* o : {"e1", "e2"})
        REQUIRE(cli({"embed", "--corpus", p("c.jsonl"), "-o", p(o), "--dim", "8", "--epochs", "3", "--seeds",
                     "bars=Bar,cafes=Cafe", "--allowlist", p("allow.csv"), "--top-k", "4"})
                    .code == 0);
    for (const char* f : {"model.tsv", "neighbors.csv", "taxonomy.csv", "run_meta.json"})
        CHECK(slurp(p(std::string("e1/") + f)) == slurp(p(std::string("e2/") + f)));
    auto nb = placenet::read_csv_file(p("e1/neighbors.csv"));
    CHECK(nb.rows.size() == 8);
    auto tax = placenet::read_csv_file(p("e1/taxonomy.csv"));
    // bars keeps only its allowlisted neighbour, cafes keeps all four
    REQUIRE(tax.rows.size() == 2 + 5);
    CHECK(tax.rows[0][3] == "Bar");
    CHECK(tax.rows[1][3] == "Pub");

    CHECK(cli({"embed", "--corpus", p("c.jsonl"), "-o", p("e3"), "--seeds", "Bar"}).code == 1);
    write(d.path / "bad.jsonl", "{\"categories\": [\"a\"]}\n{\"categories\": []}\n");
    auto r = cli({"embed", "--corpus", p("bad.jsonl"), "-o", p("e4")});
    CHECK(r.code == 2);
    CHECK(r.err.find("bad.jsonl:2") != std::string::npos);
}

TEST_CASE("prevalence tables") {
    TempDir d("prev");
    const auto p = [&](const std::string& s) { return (d.path / s).string(); };
    write(d.path / "places.csv",
          "page_id,region_id,categories\n"
          "p1,r1,bar;cafe\np2,r1,bar\np3,r2,bar\np4,r3,cafe\np5,r3,\n");
    write(d.path / "regions.csv",
          "region_id,population,rucc,income,education,foreign_born_share\n"
          "r1,2000,1,50,0.2,0.1\nr2,1000,5,40,0.3,0.2\nr3,4000,9,30,0.1,0.05\n");
    write(d.path / "ext.csv", "region_id,category,count\nr1,bar,3\nr2,bar,2\nr3,bar,0\nr1,cafe,1\n");
    auto r = cli({"prevalence", "--places", p("places.csv"), "--regions", p("regions.csv"), "--external", p("ext.csv"),
                  "-o", p("out")});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("p5") != std::string::npos);
    auto prev = placenet::read_csv_file(p("out/prevalence.csv"));
    CHECK(prev.rows.size() == 6);
    CHECK(prev.rows[0] == std::vector<std::string>{"r1", "bar", "1.5", "0.75", "7"});
    auto corr = placenet::read_csv_file(p("out/correlation.csv"));
    REQUIRE(corr.rows.size() == 2);
    CHECK(corr.rows[0] == std::vector<std::string>{"bar", "1", "2", "1"});
    CHECK(corr.rows[1][1] == "NA");
    auto med = placenet::read_csv_file(p("out/bin_medians.csv"));
    CHECK(med.rows.size() == 3 * 2 + 3 * 3 * 2);
    auto meta = nlohmann::json::parse(slurp(p("out/run_meta.json")));
    CHECK(meta["notes"]["rejected_records"] == nlohmann::json({"p5"}));

    write(d.path / "regions_bad.csv", "region_id,population,rucc,income,education,foreign_born_share\nr1,0,1,1,1,1\n");
    r = cli({"prevalence", "--places", p("places.csv"), "--regions", p("regions_bad.csv"), "-o", p("o2")});
    CHECK(r.code == 2);
    CHECK(r.err.find("regions_bad.csv:2") != std::string::npos);
}
