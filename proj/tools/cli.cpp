#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "placenet/error.hpp"

namespace placenet::cli {
namespace {

std::vector<int> normalized(std::vector<int> ks) {
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

void add_forest_options(CLI::App* sub, ForestOptions& f) {
    sub->add_option("--folds", f.folds, "Cross-validation folds")->check(CLI::Range(2, 1000))->capture_default_str();
    sub->add_option("--trees", f.trees, "Trees per forest")->check(CLI::Range(1, 100000))->capture_default_str();
    sub->add_option("--max-depth", f.max_depth, "Tree depth limit, 0 = unbounded")->capture_default_str();
    sub->add_option("--min-leaf", f.min_leaf, "Minimum samples per leaf")->check(CLI::Range(1, 1000000))->capture_default_str();
    sub->add_option("--features-per-split", f.features_per_split, "Features tried per split, 0 = ceil(sqrt(d))")
        ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"placenet: graph ensemble fingerprinting", "placenet"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI/TOML file; sections named after subcommands");
    app.set_version_flag("--version", "placenet 0.1.0");

    std::string out_dir;
    std::uint64_t seed = 0;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out-dir,-o", out_dir, "Output directory")->required();
        sub->add_option("--seed", seed, "Master seed")->capture_default_str();
    };

    FeaturesOptions fo;
    auto* features = app.add_subcommand("features", "Manifest of edge lists -> features.csv");
    common(features);
    features->add_option("--manifest", fo.manifest, "JSONL manifest {id, path, category}")->required()->check(CLI::ExistingFile);
    features->add_option("--k-set", fo.k_set, "Comma-separated k values for core and brace counts")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    features->add_option("--core-count", fo.core_count, "components | nodes")
        ->check(CLI::IsMember({"components", "nodes"}))
        ->capture_default_str();
    features->add_option("--spectrum-scope", fo.spectrum_scope, "largest_component | whole_graph")
        ->check(CLI::IsMember({"largest_component", "whole_graph"}))
        ->capture_default_str();
    features->add_option("--path-sample-sources", fo.path_sample_sources, "BFS sources for sampled path length, 0 = exact")
        ->capture_default_str();
    features->add_option("--path-sampling-threshold", fo.path_sampling_threshold,
                         "Sample only when the largest component exceeds this many nodes")
        ->capture_default_str();

    SimilarityOptions so;
    auto* similarity = app.add_subcommand("similarity", "features.csv + labels -> auc_matrix.csv, importance.csv");
    common(similarity);
    similarity->add_option("--features", so.features, "Feature CSV")->required()->check(CLI::ExistingFile);
    similarity->add_option("--labels", so.labels, "Manifest giving each graph's category")->required()->check(CLI::ExistingFile);
    add_forest_options(similarity, so.forest);

    RepresentOptions ro;
    auto* represent = app.add_subcommand("represent", "Pick the graph nearest each category's mean ranks");
    common(represent);
    represent->add_option("--features", ro.features, "Feature CSV")->required()->check(CLI::ExistingFile);
    represent->add_option("--importance", ro.importance, "importance.csv from similarity")->required()->check(CLI::ExistingFile);
    represent->add_option("--labels", ro.labels, "Manifest with categories and edge-list paths")->required()->check(CLI::ExistingFile);
    represent->add_option("--rank-pool", ro.rank_pool, "all_categories | within_category")
        ->check(CLI::IsMember({"all_categories", "within_category"}))
        ->capture_default_str();
    represent->add_option("--weighting", ro.weighting, "squared_deviation | deviation")
        ->check(CLI::IsMember({"squared_deviation", "deviation"}))
        ->capture_default_str();

    EmbedOptions eo;
    auto* embed = app.add_subcommand("embed", "Category corpus -> embedding model and neighbour reports");
    common(embed);
    embed->add_option("--corpus", eo.corpus, "JSONL {\"categories\": [...]}")->required()->check(CLI::ExistingFile);
    embed->add_option("--dim", eo.dim)->check(CLI::Range(1, 4096))->capture_default_str();
    embed->add_option("--epochs", eo.epochs)->check(CLI::Range(1, 100000))->capture_default_str();
    embed->add_option("--negatives", eo.negatives)->check(CLI::Range(0, 1000))->capture_default_str();
    embed->add_option("--learning-rate", eo.learning_rate)->check(CLI::PositiveNumber)->capture_default_str();
    embed->add_option("--min-count", eo.min_count)->check(CLI::Range(1, 1000000000))->capture_default_str();
    embed->add_option("--top-k", eo.top_k, "Neighbours retrieved per seed")->check(CLI::Range(1, 1000000))->capture_default_str();
    embed->add_option("--seeds", eo.seeds, "place_type=LABEL pairs")
        ->delimiter(',')
        ->check(
            [](const std::string& s) {
                const auto eq = s.find('=');
                return eq == std::string::npos || eq == 0 || eq + 1 == s.size() ? "expected place_type=LABEL, got '" + s + "'"
                                                                                   : std::string();
            },
            "TYPE=LABEL");
    embed->add_option("--allowlist", eo.allowlist, "CSV place_type,label of curated matches")->check(CLI::ExistingFile);
    embed->add_option("--query", eo.queries, "Labels to report neighbours for (default: every label)")->delimiter(',');

    PrevalenceOptions po;
    auto* prevalence = app.add_subcommand("prevalence", "Places + regions -> per-capita tables and correlations");
    common(prevalence);
    prevalence->add_option("--places", po.places, "CSV page_id,region_id,categories")->required()->check(CLI::ExistingFile);
    prevalence->add_option("--regions", po.regions, "CSV region_id,population,rucc,income,education,foreign_born_share")
        ->required()
        ->check(CLI::ExistingFile);
    prevalence->add_option("--external", po.external, "CSV region_id,category,count")->check(CLI::ExistingFile);
    prevalence->add_option("--bin-key", po.bin_keys, "Bins for median tables")
        ->delimiter(',')
        ->check(CLI::IsMember({"rucc", "income_decile", "education_decile", "foreign_born_decile"}));

    GenerateOptions go;
    auto* generate = app.add_subcommand("generate", "Archetype config -> edge lists + manifest");
    common(generate);
    generate->add_option("--spec", go.spec, "INI file, one section per category")->required()->check(CLI::ExistingFile);
    auto* seed_opt = generate->get_option("--seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        fo.k_set = normalized(fo.k_set);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, eo_;
        const int code = app.exit(e, o, eo_);
        out << o.str();
        err << eo_.str();
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }

    try {
        std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);
        if (features->parsed()) run_features(fo, dir, seed, out);
        if (similarity->parsed()) run_similarity(so, dir, seed, out);
        if (represent->parsed()) run_represent(ro, dir, seed, out);
        if (embed->parsed()) run_embed(eo, dir, seed, out, err);
        if (prevalence->parsed()) run_prevalence(po, dir, seed, out, err);
        if (generate->parsed()) run_generate(go, dir, seed_opt->count() ? std::optional(seed) : std::nullopt, out);
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return ExitCode::numerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::data;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::data;
    }
    return ExitCode::ok;
}

}  // namespace placenet::cli
