#include "commands.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "json.hpp"
#include "placenet/csv.hpp"
#include "placenet/embedding.hpp"
#include "placenet/error.hpp"
#include "placenet/features.hpp"
#include "placenet/graph.hpp"
#include "placenet/prevalence.hpp"
#include "placenet/rng.hpp"
#include "placenet/similarity.hpp"
#include "placenet/synth.hpp"
#include "run_meta.hpp"
#include "tables.hpp"

namespace placenet::cli {
namespace fs = std::filesystem;

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
    return h;
}

std::ofstream open_out(const fs::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw DataError("cannot write '" + file.string() + "'");
    return out;
}

// Features joined with manifest categories; both sides must cover the same ids.
Ensemble join_labels(const FeatureTable& t, const std::vector<ManifestEntry>& labels, const std::string& features_path,
                     const std::string& labels_path) {
    std::map<std::string, std::string> category;
    for (const auto& e : labels) category[e.id] = e.category;
    Ensemble ens;
    std::set<std::string> used;
    for (const auto& row : t.rows) {
        auto it = category.find(row.graph_id);
        if (it == category.end())
            throw DataError(features_path + ": graph '" + row.graph_id + "' has no entry in " + labels_path);
        ens.add(it->second, row);
        used.insert(row.graph_id);
    }
    for (const auto& e : labels)
        if (!used.count(e.id))
            throw ParseError(labels_path, e.line, "graph '" + e.id + "' is missing from " + features_path);
    return ens;
}

}  // namespace

void run_features(const FeaturesOptions& o, const fs::path& out_dir, std::uint64_t seed, std::ostream& log) {
    RunMeta meta("features");
    meta.seed(seed);
    meta.option("k_set", o.k_set);
    meta.option("core_count", o.core_count);
    meta.option("spectrum_scope", o.spectrum_scope);
    meta.option("path_sample_sources", o.path_sample_sources);
    meta.option("path_sampling_threshold", o.path_sampling_threshold);
    meta.input("manifest", o.manifest);

    const auto manifest = read_manifest(o.manifest);
    FeatureOptions fopt;
    fopt.k_set = o.k_set;
    fopt.core_count = o.core_count == "nodes" ? CoreCount::nodes : CoreCount::components;
    fopt.spectrum_scope = o.spectrum_scope == "whole_graph" ? SpectrumScope::whole_graph : SpectrumScope::largest_component;
    fopt.path_sample_sources = o.path_sample_sources;
    fopt.path_sampling_threshold = o.path_sampling_threshold;

    FeatureTable table;
    table.names = feature_names(o.k_set);
    for (const auto& e : manifest) {
        const auto g = read_edge_list_file(e.path.string());
        fopt.path_sample_seed = derive_seed(seed, {0xfea7, fnv1a(e.id)});
        table.rows.push_back({e.id, compute_features(g, fopt).flatten()});
    }
    write_feature_table(out_dir / "features.csv", table);
    meta.output("features.csv");
    meta.write(out_dir);
    log << "features: " << table.rows.size() << " graphs x " << table.names.size() << " features\n";
}

void run_similarity(const SimilarityOptions& o, const fs::path& out_dir, std::uint64_t seed, std::ostream& log) {
    RunMeta meta("similarity");
    meta.seed(seed);
    meta.option("folds", o.forest.folds);
    meta.option("trees", o.forest.trees);
    meta.option("max_depth", o.forest.max_depth);
    meta.option("min_leaf", o.forest.min_leaf);
    meta.option("features_per_split", o.forest.features_per_split);
    meta.input("features", o.features);
    meta.input("labels", o.labels);

    const auto table = read_feature_table(o.features);
    const auto ens = join_labels(table, read_manifest(o.labels), o.features, o.labels);
    if (ens.categories().size() < 2) throw DataError(o.labels + ": need at least two categories");

    SimilarityParams params;
    params.folds = o.forest.folds;
    params.seed = seed;
    params.forest = {o.forest.trees, o.forest.max_depth, o.forest.min_leaf, o.forest.features_per_split, 0};
    const auto res = auc_matrix(ens, params);
    write_auc_matrix(out_dir / "auc_matrix.csv", res.matrix);
    write_importance(out_dir / "importance.csv", global_importance_ranking(res.importance, table.names));
    meta.note("pair_evaluations", res.pair_evaluations);
    meta.output("auc_matrix.csv");
    meta.output("importance.csv");
    meta.write(out_dir);
    log << "similarity: " << res.matrix.categories.size() << " categories, " << res.pair_evaluations
        << " pairwise classifiers\n";
}

void run_represent(const RepresentOptions& o, const fs::path& out_dir, std::uint64_t seed, std::ostream& log) {
    RunMeta meta("represent");
    meta.seed(seed);
    meta.option("rank_pool", o.rank_pool);
    meta.option("weighting", o.weighting);
    meta.input("features", o.features);
    meta.input("importance", o.importance);
    meta.input("labels", o.labels);

    const auto table = read_feature_table(o.features);
    const auto labels = read_manifest(o.labels);
    const auto ens = join_labels(table, labels, o.features, o.labels);

    std::map<std::string, double> by_name;
    for (const auto& [name, v] : read_importance(o.importance))
        if (!by_name.emplace(name, v).second) throw DataError(o.importance + ": duplicate feature '" + name + "'");
    std::vector<double> w;
    for (const auto& n : table.names) {
        auto it = by_name.find(n);
        if (it == by_name.end()) throw DataError(o.importance + ": no importance for feature '" + n + "'");
        w.push_back(it->second);
    }
    if (by_name.size() != table.names.size())
        throw DataError(o.importance + ": features do not match the columns of " + o.features);

    RepresentativeOptions ropt;
    ropt.pool = o.rank_pool == "within_category" ? RankPool::within_category : RankPool::all_categories;
    ropt.weighting = o.weighting == "deviation" ? DistanceWeighting::deviation : DistanceWeighting::squared_deviation;

    std::map<std::string, fs::path> path_of;
    for (const auto& e : labels) path_of[e.id] = e.path;

    auto out = open_out(out_dir / "representatives.csv");
    out << "category,graph_id,distance,edge_list\n";
    for (const auto& [cat, _] : ens.categories()) {
        const auto rep = representative_graph(ens, cat, w, ropt);
        const fs::path rel = fs::path("representatives") / safe_component(cat) / (safe_component(rep.graph_id) + ".edges");
        fs::create_directories((out_dir / rel).parent_path());
        fs::copy_file(path_of.at(rep.graph_id), out_dir / rel, fs::copy_options::overwrite_existing);
        meta.input("edge_list", path_of.at(rep.graph_id));
        out << csv_field(cat) << ',' << csv_field(rep.graph_id) << ',' << format_real(rep.distance) << ','
            << csv_field(rel.generic_string()) << '\n';
        meta.output(rel.generic_string());
    }
    meta.output("representatives.csv");
    meta.write(out_dir);
    log << "represent: " << ens.categories().size() << " representatives\n";
}

void run_embed(const EmbedOptions& o, const fs::path& out_dir, std::uint64_t seed, std::ostream& log,
               std::ostream& warn) {
    RunMeta meta("embed");
    meta.seed(seed);
    meta.option("dim", o.dim);
    meta.option("epochs", o.epochs);
    meta.option("negatives", o.negatives);
    meta.option("learning_rate", o.learning_rate);
    meta.option("min_count", o.min_count);
    meta.option("top_k", o.top_k);
    meta.option("seeds", o.seeds);
    meta.option("query", o.queries);
    meta.input("corpus", o.corpus);

    std::vector<std::pair<std::string, std::string>> seeds;
    for (const auto& s : o.seeds) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
            throw DataError("--seeds entry '" + s + "' is not place_type=LABEL");
        seeds.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    std::map<std::string, std::set<std::string>> allowlist;
    if (!o.allowlist.empty()) {
        meta.input("allowlist", o.allowlist);
        const auto csv = read_csv_file(o.allowlist);
        const auto ct = csv.column("place_type"), cl = csv.column("label");
        for (const auto& row : csv.rows) allowlist[row[ct]].insert(row[cl]);
    }

    std::ifstream in(o.corpus);
    if (!in) throw DataError("cannot open '" + o.corpus + "'");
    const auto corpus = read_corpus_jsonl(in, o.corpus);
    SkipGramParams sp{o.dim, o.epochs, o.negatives, o.learning_rate, o.min_count, derive_seed(seed, {0xe3bed})};
    const auto model = train_skipgram(corpus, sp);
    {
        auto out = open_out(out_dir / "model.tsv");
        write_model_tsv(out, model);
    }
    meta.output("model.tsv");

    std::vector<std::string> queries = o.queries;
    for (const auto& [_, label] : seeds) queries.push_back(label);
    if (queries.empty()) queries = model.vocabulary();
    std::set<std::string> done;
    {
        auto out = open_out(out_dir / "neighbors.csv");
        out << "query,rank,label,cosine\n";
        for (const auto& q : queries) {
            if (!done.insert(q).second) continue;
            if (!model.index_of(q)) {
                warn << "warning: '" << q << "' is not in the model vocabulary\n";
                continue;
            }
            std::size_t rank = 0;
            for (const auto& nb : nearest_categories(model, q, o.top_k))
                out << csv_field(q) << ',' << ++rank << ',' << csv_field(nb.label) << ',' << format_real(nb.cosine) << '\n';
        }
    }
    meta.output("neighbors.csv");

    if (!seeds.empty()) {
        auto out = open_out(out_dir / "taxonomy.csv");
        out << "place_type,seed_label,rank,label\n";
        for (const auto& t : expand_taxonomy(model, seeds, o.top_k, allowlist))
            for (std::size_t i = 0; i < t.matched.size(); ++i)
                out << csv_field(t.place_type) << ',' << csv_field(t.seed_label) << ',' << i << ','
                    << csv_field(t.matched[i]) << '\n';
        meta.output("taxonomy.csv");
    }
    meta.note("epoch_losses", model.epoch_losses());
    meta.note("vocabulary_size", model.size());
    meta.write(out_dir);
    log << "embed: " << model.size() << " labels, " << corpus.records.size() << " records\n";
}

void run_prevalence(const PrevalenceOptions& o, const fs::path& out_dir, std::uint64_t seed, std::ostream& log,
                    std::ostream& warn) {
    RunMeta meta("prevalence");
    meta.seed(seed);
    std::vector<std::string> keys = o.bin_keys;
    if (keys.empty()) keys = {"rucc", "income_decile", "education_decile", "foreign_born_decile"};
    meta.option("bin_keys", keys);
    meta.input("places", o.places);
    meta.input("regions", o.regions);

    const auto places = read_places_csv(o.places);
    const auto regions = read_regions_csv(o.regions);
    const auto fc = fractional_counts(places);
    for (const auto& id : fc.rejected) warn << "warning: page '" << id << "' has no category; skipped\n";
    meta.note("accepted_records", fc.accepted);
    meta.note("rejected_records", fc.rejected);
    const auto table = per_capita(fc.counts(), regions);
    {
        auto out = open_out(out_dir / "prevalence.csv");
        out << "region_id,category,weighted_count,per_1000,decile\n";
        for (const auto& [k, e] : table)
            out << csv_field(k.first) << ',' << csv_field(k.second) << ',' << format_real(e.weighted_count) << ','
                << format_real(e.per_1000) << ',' << e.decile << '\n';
    }
    meta.output("prevalence.csv");
    {
        auto out = open_out(out_dir / "bin_medians.csv");
        out << "bin_key,bin,category,median_per_1000\n";
        for (const auto& key : keys)
            for (const auto& [bin, cats] : bin_medians(table, regions, parse_bin_key(key)))
                for (const auto& [cat, m] : cats)
                    out << key << ',' << bin << ',' << csv_field(cat) << ',' << format_real(m) << '\n';
    }
    meta.output("bin_medians.csv");

    if (!o.external.empty()) {
        meta.input("external", o.external);
        const auto ext = read_external_counts_csv(o.external);
        std::map<std::string, std::map<std::string, double>> x, y;
        for (const auto& [k, e] : table) x[k.second][k.first] = e.weighted_count;
        for (const auto& [k, v] : ext) y[k.second][k.first] = v;
        auto out = open_out(out_dir / "correlation.csv");
        out << "category,r,n_pairs,n_dropped\n";
        for (const auto& [cat, xs] : x) {
            auto it = y.find(cat);
            if (it == y.end()) continue;
            try {
                const auto c = log_pearson(xs, it->second);
                out << csv_field(cat) << ',' << format_real(c.r) << ',' << c.n_pairs << ',' << c.n_dropped << '\n';
            } catch (const DataError& e) {
                std::size_t pairs = 0, dropped = 0;
                for (const auto& [rid, v] : xs) {
                    auto jt = it->second.find(rid);
                    if (jt == it->second.end()) continue;
                    (v > 0.0 && jt->second > 0.0 ? pairs : dropped) += 1;
                }
                warn << "warning: " << cat << ": " << e.what() << '\n';
                out << csv_field(cat) << ",NA," << pairs << ',' << dropped << '\n';
            }
        }
        meta.output("correlation.csv");
    }
    meta.write(out_dir);
    log << "prevalence: " << fc.accepted << " pages over " << regions.size() << " regions\n";
}

void run_generate(const GenerateOptions& o, const fs::path& out_dir, std::optional<std::uint64_t> seed,
                  std::ostream& log) {
    RunMeta meta("generate");
    meta.input("spec", o.spec);
    const auto cfg = read_synth_config(o.spec);
    const std::uint64_t master = seed ? *seed : cfg.seed.value_or(0);
    meta.seed(master);

    auto manifest = open_out(out_dir / "manifest.jsonl");
    std::size_t total = 0;
    nlohmann::json isolated = nlohmann::json::object();
    for (const auto& [category, spec] : cfg.categories) {
        const auto dir = fs::path("graphs") / safe_component(category);
        fs::create_directories(out_dir / dir);
        const std::size_t width = std::to_string(spec.count > 0 ? spec.count - 1 : 0).size();
        std::size_t dropped = 0;
        for (std::size_t i = 0; i < spec.count; ++i) {
            auto digits = std::to_string(i);
            const auto id = safe_component(category) + "_" + std::string(width - digits.size(), '0') + digits;
            const auto g = generate(spec, graph_seed(master, category, i));
            for (Vertex v = 0; v < g.num_nodes(); ++v) dropped += g.degree(v) == 0;
            const auto rel = dir / (id + ".edges");
            auto out = open_out(out_dir / rel);
            write_edge_list(out, g);
            nlohmann::json line = {{"id", id}, {"path", rel.generic_string()}, {"category", category}};
            manifest << line.dump() << '\n';
            ++total;
        }
        isolated[category] = dropped;
    }
    // the edge-list format has no way to list a node without edges
    meta.note("isolated_nodes_not_written", isolated);
    meta.output("manifest.jsonl");
    meta.write(out_dir);
    log << "generate: " << total << " graphs in " << cfg.categories.size() << " categories\n";
}

}  // namespace placenet::cli
