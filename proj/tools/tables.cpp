#include "tables.hpp"

#include <fstream>
#include <set>

#include "json.hpp"
#include "placenet/csv.hpp"
#include "placenet/error.hpp"

namespace placenet::cli {
namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw DataError("cannot write '" + file.string() + "'");
    return out;
}

}  // namespace

std::vector<ManifestEntry> read_manifest(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open '" + file.string() + "'");
    const auto src = file.string();
    const auto base = file.parent_path();
    std::vector<ManifestEntry> out;
    std::set<std::string> seen;
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(src, no, "invalid JSON");
        }
        ManifestEntry e;
        e.line = no;
        for (auto [key, dst] : {std::pair{"id", &e.id}, {"category", &e.category}}) {
            if (!j.is_object() || !j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty())
                throw ParseError(src, no, std::string("missing or empty string field '") + key + "'");
            *dst = j[key].get<std::string>();
        }
        if (!j.contains("path") || !j["path"].is_string())
            throw ParseError(src, no, "missing string field 'path'");
        fs::path p = j["path"].get<std::string>();
        e.path = p.is_absolute() ? p : base / p;
        if (!seen.insert(e.id).second) throw ParseError(src, no, "duplicate id '" + e.id + "'");
        out.push_back(std::move(e));
    }
    if (out.empty()) throw ParseError(src, 0, "manifest is empty");
    return out;
}

void write_feature_table(const fs::path& file, const FeatureTable& t) {
    auto out = open_out(file);
    out << "graph_id";
    for (const auto& n : t.names) out << ',' << n;
    out << '\n';
    for (const auto& r : t.rows) {
        out << csv_field(r.graph_id);
        for (double v : r.values) out << ',' << format_real(v);
        out << '\n';
    }
}

FeatureTable read_feature_table(const fs::path& file) {
    const auto csv = read_csv_file(file.string());
    if (csv.header.size() < 2 || csv.header[0] != "graph_id")
        throw ParseError(csv.source, 1, "expected header 'graph_id,<features...>'");
    FeatureTable t;
    t.names.assign(csv.header.begin() + 1, csv.header.end());
    std::set<std::string> seen;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const auto& row = csv.rows[i];
        if (!seen.insert(row[0]).second) throw ParseError(csv.source, csv.lines[i], "duplicate graph id '" + row[0] + "'");
        GraphFeatures g{row[0], {}};
        for (std::size_t c = 1; c < row.size(); ++c) g.values.push_back(parse_real(row[c], csv.source, csv.lines[i]));
        t.rows.push_back(std::move(g));
    }
    return t;
}

void write_auc_matrix(const fs::path& file, const AucMatrix& m) {
    auto out = open_out(file);
    out << "category";
    for (const auto& c : m.categories) out << ',' << csv_field(c);
    out << '\n';
    for (std::size_t i = 0; i < m.categories.size(); ++i) {
        out << csv_field(m.categories[i]);
        for (std::size_t j = 0; j < m.categories.size(); ++j) out << ',' << format_fixed(m.at(i, j), 4);
        out << '\n';
    }
}

void write_importance(const fs::path& file, const std::vector<RankedFeature>& ranking) {
    auto out = open_out(file);
    out << "feature,importance,rank\n";
    for (const auto& r : ranking) out << csv_field(r.name) << ',' << format_real(r.importance) << ',' << r.rank << '\n';
}

std::vector<std::pair<std::string, double>> read_importance(const fs::path& file) {
    const auto csv = read_csv_file(file.string());
    const auto cf = csv.column("feature"), ci = csv.column("importance");
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const double v = parse_real(csv.rows[i][ci], csv.source, csv.lines[i]);
        if (!(v >= 0.0)) throw ParseError(csv.source, csv.lines[i], "importance must be non-negative");
        out.emplace_back(csv.rows[i][cf], v);
    }
    return out;
}

std::string safe_component(const std::string& name) {
    std::string out = name;
    for (auto& c : out)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-')) c = '_';
    if (out.empty() || out == "." || out == "..") out = "_" + out;
    return out;
}

}  // namespace placenet::cli
