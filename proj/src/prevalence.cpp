#include "placenet/prevalence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "placenet/csv.hpp"
#include "placenet/error.hpp"

namespace placenet {

FractionalCounts fractional_counts(std::span<const PlaceRecord> records) {
    FractionalCounts out;
    for (const auto& rec : records) {
        std::set<std::string> cats(rec.categories.begin(), rec.categories.end());
        cats.erase(std::string());
        if (cats.empty()) {
            out.rejected.push_back(rec.page_id);
            continue;
        }
        if (cats.size() > 3) throw DataError("page '" + rec.page_id + "' has more than 3 categories");
        const auto w = kCountDenominator / static_cast<std::int64_t>(cats.size());
        for (const auto& c : cats) out.sixths[{rec.region_id, c}] += w;
        ++out.accepted;
    }
    return out;
}

RegionCategoryCounts FractionalCounts::counts() const {
    RegionCategoryCounts out;
    for (const auto& [k, v] : sixths) out.emplace(k, static_cast<double>(v) / kCountDenominator);
    return out;
}

double FractionalCounts::total() const {
    std::int64_t s = 0;
    for (const auto& [_, v] : sixths) s += v;
    return static_cast<double>(s) / kCountDenominator;
}

std::map<std::string, int> decile_assign(const std::map<std::string, double>& values) {
    std::vector<std::pair<double, std::string>> order;
    order.reserve(values.size());
    for (const auto& [k, v] : values) order.emplace_back(v, k);
    // map iteration already orders keys, so a stable sort on value keeps key ties
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const auto n = static_cast<long long>(order.size());
    std::map<std::string, int> out;
    for (long long i = 0; i < n; ++i) {
        const long long rank = i + 1;
        long long d = (10 * rank + n - 1) / n;
        out[order[i].second] = static_cast<int>(std::clamp<long long>(d, 1, 10));
    }
    return out;
}

PrevalenceTable per_capita(const RegionCategoryCounts& counts, const RegionTable& regions) {
    std::set<std::string> categories;
    for (const auto& [key, w] : counts) {
        if (!regions.count(key.first))
            throw DataError("region '" + key.first + "' has counts but no population record");
        categories.insert(key.second);
    }
    PrevalenceTable out;
    for (const auto& cat : categories) {
        std::map<std::string, double> rates;
        for (const auto& [rid, info] : regions) {
            if (!(info.population > 0.0))
                throw DataError("region '" + rid + "' has non-positive population");
            auto it = counts.find({rid, cat});
            PrevalenceEntry e;
            e.weighted_count = it == counts.end() ? 0.0 : it->second;
            e.per_1000 = 1000.0 * e.weighted_count / info.population;
            rates[rid] = e.per_1000;
            out[{rid, cat}] = e;
        }
        for (const auto& [rid, d] : decile_assign(rates)) out[{rid, cat}].decile = d;
    }
    return out;
}

const char* bin_key_name(BinKey key) {
    switch (key) {
        case BinKey::rucc: return "rucc";
        case BinKey::income_decile: return "income_decile";
        case BinKey::education_decile: return "education_decile";
        case BinKey::foreign_born_decile: return "foreign_born_decile";
    }
    return "?";
}

BinKey parse_bin_key(const std::string& name) {
    for (auto k : {BinKey::rucc, BinKey::income_decile, BinKey::education_decile, BinKey::foreign_born_decile})
        if (name == bin_key_name(k)) return k;
    throw DataError("unknown bin key '" + name + "'");
}

double lower_median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    const std::size_t mid = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    return values[mid];
}

std::map<int, std::map<std::string, double>> bin_medians(const PrevalenceTable& p,
                                                         const RegionTable& regions, BinKey key) {
    std::map<std::string, int> bin;
    if (key == BinKey::rucc) {
        for (const auto& [rid, info] : regions) bin[rid] = info.rucc;
    } else {
        std::map<std::string, double> v;
        for (const auto& [rid, info] : regions) {
            v[rid] = key == BinKey::income_decile      ? info.income
                     : key == BinKey::education_decile ? info.education
                                                       : info.foreign_born_share;
        }
        bin = decile_assign(v);
    }
    std::map<int, std::map<std::string, std::vector<double>>> groups;
    for (const auto& [k, e] : p) {
        auto it = bin.find(k.first);
        if (it == bin.end()) throw DataError("region '" + k.first + "' has no bin values");
        groups[it->second][k.second].push_back(e.per_1000);
    }
    std::map<int, std::map<std::string, double>> out;
    for (auto& [b, cats] : groups)
        for (auto& [c, vals] : cats) out[b][c] = lower_median(std::move(vals));
    return out;
}

Correlation log_pearson(const std::map<std::string, double>& x, const std::map<std::string, double>& y) {
    std::vector<double> lx, ly;
    Correlation res;
    for (const auto& [k, xv] : x) {
        auto it = y.find(k);
        if (it == y.end()) continue;
        if (!(xv > 0.0) || !(it->second > 0.0)) {
            ++res.n_dropped;
            continue;
        }
        lx.push_back(std::log(xv));
        ly.push_back(std::log(it->second));
    }
    res.n_pairs = lx.size();
    if (res.n_pairs < 2)
        throw DataError("log correlation needs at least 2 positive pairs, found " + std::to_string(res.n_pairs));
    const double n = static_cast<double>(res.n_pairs);
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double a = lx[i] - mx, b = ly[i] - my;
        sxx += a * a;
        syy += b * b;
        sxy += a * b;
    }
    if (sxx <= 0.0 || syy <= 0.0) throw DataError("log correlation undefined: zero variance");
    res.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    return res;
}

namespace {

std::vector<std::string> split_semicolons(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(';', start);
        if (end == std::string::npos) end = s.size();
        std::string part = s.substr(start, end - start);
        const auto b = part.find_first_not_of(" \t");
        const auto e = part.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(part.substr(b, e - b + 1));
        start = end + 1;
    }
    return out;
}

}  // namespace

std::vector<PlaceRecord> read_places_csv(const std::string& path) {
    const auto t = read_csv_file(path);
    const auto ci = t.column("page_id"), cr = t.column("region_id"), cc = t.column("categories");
    std::vector<PlaceRecord> out;
    out.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        if (row[ci].empty()) throw ParseError(path, t.lines[i], "empty page_id");
        if (row[cr].empty()) throw ParseError(path, t.lines[i], "empty region_id");
        auto cats = split_semicolons(row[cc]);
        if (cats.size() > 3) throw ParseError(path, t.lines[i], "more than 3 categories");
        out.push_back({row[ci], row[cr], std::move(cats)});
    }
    return out;
}

RegionTable read_regions_csv(const std::string& path) {
    const auto t = read_csv_file(path);
    const auto cid = t.column("region_id"), cp = t.column("population"), cr = t.column("rucc"),
               ci = t.column("income"), ce = t.column("education"), cf = t.column("foreign_born_share");
    RegionTable out;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        const auto line = t.lines[i];
        RegionInfo info;
        info.population = parse_real(row[cp], path, line);
        if (!(info.population > 0.0)) throw ParseError(path, line, "population must be positive");
        const auto rucc = parse_integer(row[cr], path, line);
        if (rucc < 1 || rucc > 9) throw ParseError(path, line, "rucc must be an integer in 1..9");
        info.rucc = static_cast<int>(rucc);
        info.income = parse_real(row[ci], path, line);
        info.education = parse_real(row[ce], path, line);
        info.foreign_born_share = parse_real(row[cf], path, line);
        if (!out.emplace(row[cid], info).second)
            throw ParseError(path, line, "duplicate region '" + row[cid] + "'");
    }
    return out;
}

RegionCategoryCounts read_external_counts_csv(const std::string& path) {
    const auto t = read_csv_file(path);
    const auto cr = t.column("region_id"), cc = t.column("category"), cn = t.column("count");
    RegionCategoryCounts out;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        const double v = parse_real(row[cn], path, t.lines[i]);
        if (v < 0.0) throw ParseError(path, t.lines[i], "negative count");
        out[{row[cr], row[cc]}] += v;
    }
    return out;
}

}  // namespace placenet
