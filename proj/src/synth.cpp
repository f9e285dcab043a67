#include "placenet/synth.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "placenet/error.hpp"
#include "placenet/rng.hpp"

namespace placenet {
namespace {

std::string padded(const std::string& prefix, std::size_t i, std::size_t n) {
    const std::size_t width = std::to_string(n > 0 ? n - 1 : 0).size();
    std::string digits = std::to_string(i);
    return prefix + std::string(width - digits.size(), '0') + digits;
}

void check_probability(const char* name, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DataError(std::string(name) + " must lie in [0,1]");
}

// Pairs (i, j) with i < j, edge drawn with probability block_p(i, j).
template <class BlockP>
Graph sample_blocks(const std::vector<std::string>& ids, BlockP block_p, std::uint64_t seed) {
    Rng rng(seed);
    GraphBuilder b;
    for (const auto& id : ids) b.add_node(id);
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            if (rng.bernoulli(block_p(i, j))) b.add_edge(ids[i], ids[j]);
    return b.build();
}

struct KindInfo {
    ArchetypeKind kind;
    std::vector<std::string> counts;
    std::vector<std::string> probabilities;
};

const std::vector<KindInfo>& kinds() {
    static const std::vector<KindInfo> table = {
        {ArchetypeKind::erdos_renyi, {"n"}, {"p"}},
        {ArchetypeKind::core_periphery, {"n_core", "n_periphery"}, {"p_cc", "p_cp", "p_pp"}},
        {ArchetypeKind::dyad_triad_scatter, {"n_components"}, {"dyad_fraction"}},
        {ArchetypeKind::multi_core_community,
         {"n_communities", "n_core", "n_periphery"},
         {"p_cc", "p_cp", "p_pp", "p_between"}},
    };
    return table;
}

const KindInfo& info_of(ArchetypeKind k) {
    for (const auto& i : kinds())
        if (i.kind == k) return i;
    throw DataError("unknown archetype");
}

std::size_t as_count(const ArchetypeSpec& s, const std::string& key) { return static_cast<std::size_t>(s.params.at(key)); }

}  // namespace

Graph gen_er(std::size_t n, double p, std::uint64_t seed) {
    check_probability("p", p);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(padded("n", i, n));
    return sample_blocks(ids, [p](std::size_t, std::size_t) { return p; }, seed);
}

Graph gen_core_periphery(std::size_t n_core, std::size_t n_periphery, double p_cc, double p_cp, double p_pp,
                         std::uint64_t seed) {
    check_probability("p_cc", p_cc);
    check_probability("p_cp", p_cp);
    check_probability("p_pp", p_pp);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n_core; ++i) ids.push_back(padded("c", i, n_core));
    for (std::size_t i = 0; i < n_periphery; ++i) ids.push_back(padded("p", i, n_periphery));
    return sample_blocks(
        ids,
        [&](std::size_t i, std::size_t j) {
            const bool ci = i < n_core, cj = j < n_core;
            return ci && cj ? p_cc : (ci || cj ? p_cp : p_pp);
        },
        seed);
}

Graph gen_dyad_triad_scatter(std::size_t n_components, double dyad_fraction, std::uint64_t seed) {
    check_probability("dyad_fraction", dyad_fraction);
    Rng rng(seed);
    GraphBuilder b;
    for (std::size_t c = 0; c < n_components; ++c) {
        const auto base = padded("g", c, n_components) + "_";
        if (rng.bernoulli(dyad_fraction)) {
            b.add_edge(base + "0", base + "1");
        } else {
            b.add_edge(base + "0", base + "1");
            b.add_edge(base + "1", base + "2");
            b.add_edge(base + "0", base + "2");
        }
    }
    return b.build();
}

Graph gen_multi_core_community(const MultiCoreParams& m, std::uint64_t seed) {
    for (auto [name, p] : {std::pair{"p_cc", m.p_cc}, {"p_cp", m.p_cp}, {"p_pp", m.p_pp}, {"p_between", m.p_between}})
        check_probability(name, p);
    std::vector<std::string> ids;
    std::vector<std::size_t> block;
    std::vector<bool> core;
    for (std::size_t c = 0; c < m.n_communities; ++c) {
        const auto prefix = padded("m", c, m.n_communities);
        for (std::size_t i = 0; i < m.n_core; ++i) {
            ids.push_back(prefix + padded("c", i, m.n_core));
            block.push_back(c);
            core.push_back(true);
        }
        for (std::size_t i = 0; i < m.n_periphery; ++i) {
            ids.push_back(prefix + padded("p", i, m.n_periphery));
            block.push_back(c);
            core.push_back(false);
        }
    }
    return sample_blocks(
        ids,
        [&](std::size_t i, std::size_t j) {
            if (block[i] != block[j]) return m.p_between;
            return core[i] && core[j] ? m.p_cc : (core[i] || core[j] ? m.p_cp : m.p_pp);
        },
        seed);
}

const char* archetype_name(ArchetypeKind kind) {
    switch (kind) {
        case ArchetypeKind::erdos_renyi: return "erdos_renyi";
        case ArchetypeKind::core_periphery: return "core_periphery";
        case ArchetypeKind::dyad_triad_scatter: return "dyad_triad_scatter";
        case ArchetypeKind::multi_core_community: return "multi_core_community";
    }
    return "?";
}

void validate(const ArchetypeSpec& spec) {
    const auto& info = info_of(spec.kind);
    std::set<std::string> allowed(info.counts.begin(), info.counts.end());
    allowed.insert(info.probabilities.begin(), info.probabilities.end());
    for (const auto& [k, v] : spec.params)
        if (!allowed.count(k))
            throw DataError("unknown parameter '" + k + "' for " + archetype_name(spec.kind));
    for (const auto& k : allowed)
        if (!spec.params.count(k))
            throw DataError("missing parameter '" + k + "' for " + archetype_name(spec.kind));
    for (const auto& k : info.counts) {
        const double v = spec.params.at(k);
        if (!(v >= 0.0) || v != std::floor(v) || v > 1e9)
            throw DataError("'" + k + "' must be a non-negative integer");
    }
    for (const auto& k : info.probabilities) check_probability(k.c_str(), spec.params.at(k));
}

Graph generate(const ArchetypeSpec& s, std::uint64_t seed) {
    validate(s);
    const auto& p = s.params;
    switch (s.kind) {
        case ArchetypeKind::erdos_renyi: return gen_er(as_count(s, "n"), p.at("p"), seed);
        case ArchetypeKind::core_periphery:
            return gen_core_periphery(as_count(s, "n_core"), as_count(s, "n_periphery"), p.at("p_cc"), p.at("p_cp"),
                                      p.at("p_pp"), seed);
        case ArchetypeKind::dyad_triad_scatter:
            return gen_dyad_triad_scatter(as_count(s, "n_components"), p.at("dyad_fraction"), seed);
        case ArchetypeKind::multi_core_community: {
            MultiCoreParams m{as_count(s, "n_communities"), as_count(s, "n_core"), as_count(s, "n_periphery"),
                              p.at("p_cc"),
                              p.at("p_cp"),
                              p.at("p_pp"),
                              p.at("p_between")};
            return gen_multi_core_community(m, seed);
        }
    }
    throw DataError("unknown archetype");
}

std::uint64_t graph_seed(std::uint64_t master, const std::string& category, std::size_t index) {
    // FNV-1a of the name keeps seeds independent of section order
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : category) h = (h ^ c) * 0x100000001b3ULL;
    return derive_seed(master, {0x5e17, h, index});
}

namespace {

// ptree drops positions, so remember where each section and key sits.
struct LineIndex {
    std::map<std::pair<std::string, std::string>, std::size_t> at;

    explicit LineIndex(const std::string& text) {
        std::istringstream in(text);
        std::string line, section;
        for (std::size_t no = 1; std::getline(in, line); ++no) {
            const auto b = line.find_first_not_of(" \t");
            if (b == std::string::npos || line[b] == ';' || line[b] == '#') continue;
            if (line[b] == '[') {
                section = line.substr(b + 1, line.find(']', b) - b - 1);
                at.emplace(std::pair{section, std::string()}, no);
                continue;
            }
            auto key = line.substr(b, line.find('=', b) - b);
            key.erase(key.find_last_not_of(" \t") + 1);
            at.emplace(std::pair{section, key}, no);
        }
    }

    std::size_t operator()(const std::string& section, const std::string& key = {}) const {
        auto it = at.find({section, key});
        return it == at.end() ? 0 : it->second;
    }
};

}  // namespace

SynthConfig parse_synth_config(std::istream& in, const std::string& source) {
    namespace pt = boost::property_tree;
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    const LineIndex line_of(text);
    pt::ptree tree;
    try {
        std::istringstream body(text);
        pt::read_ini(body, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(source, e.line(), e.message());
    }
    SynthConfig cfg;
    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            if (name != "seed") throw ParseError(source, line_of("", name), "unknown top-level key '" + name + "'");
            try {
                cfg.seed = std::stoull(node.data());
            } catch (const std::exception&) {
                throw ParseError(source, line_of("", name), "invalid seed '" + node.data() + "'");
            }
            continue;
        }
        ArchetypeSpec spec;
        bool have_kind = false;
        for (const auto& [key, val] : node) {
            const auto& text = val.data();
            if (key == "kind") {
                have_kind = false;
                for (const auto& i : kinds())
                    if (text == archetype_name(i.kind)) {
                        spec.kind = i.kind;
                        have_kind = true;
                    }
                if (!have_kind) throw ParseError(source, line_of(name, key), "unknown kind '" + text + "'");
                continue;
            }
            double v = 0.0;
            try {
                std::size_t used = 0;
                v = std::stod(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
            } catch (const std::exception&) {
                throw ParseError(source, line_of(name, key), "invalid number for '" + key + "': '" + text + "'");
            }
            if (key == "count") {
                if (!(v >= 0.0) || v != std::floor(v))
                    throw ParseError(source, line_of(name, key), "count must be a non-negative integer");
                spec.count = static_cast<std::size_t>(v);
            } else {
                spec.params[key] = v;
            }
        }
        if (!have_kind) throw ParseError(source, line_of(name), "[" + name + "] missing 'kind'");
        try {
            validate(spec);
        } catch (const DataError& e) {
            throw ParseError(source, line_of(name), "[" + name + "] " + e.what());
        }
        cfg.categories.emplace_back(name, std::move(spec));
    }
    if (cfg.categories.empty()) throw ParseError(source, 0, "no category sections");
    return cfg;
}

SynthConfig read_synth_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return parse_synth_config(in, path);
}

}  // namespace placenet
