#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace placenet {

struct PlaceRecord {
    std::string page_id;
    std::string region_id;
    std::vector<std::string> categories;
};

struct RegionInfo {
    double population = 0.0;
    int rucc = 1;
    double income = 0.0;
    double education = 0.0;
    double foreign_born_share = 0.0;
};

using RegionTable = std::map<std::string, RegionInfo>;

// (region, category) -> weighted count
using RegionCategoryCounts = std::map<std::pair<std::string, std::string>, double>;

// Weights are 1, 1/2 or 1/3, so counts are kept exactly in sixths.
inline constexpr std::int64_t kCountDenominator = 6;

struct FractionalCounts {
    std::map<std::pair<std::string, std::string>, std::int64_t> sixths;
    std::size_t accepted = 0;
    std::vector<std::string> rejected;  // page ids with no category

    RegionCategoryCounts counts() const;
    double total() const;
};

// Each page splits one unit evenly over its distinct categories. Throws
// DataError naming the page if it has more than 3.
FractionalCounts fractional_counts(std::span<const PlaceRecord> records);

struct PrevalenceEntry {
    double weighted_count = 0.0;
    double per_1000 = 0.0;
    int decile = 1;
};

using PrevalenceTable = std::map<std::pair<std::string, std::string>, PrevalenceEntry>;

// Every region in `regions` gets a row for every counted category, zero if
// unseen. Deciles are per category across regions. Throws DataError if a
// counted region is missing from the table.
PrevalenceTable per_capita(const RegionCategoryCounts& counts, const RegionTable& regions);

// Rank-based: sort ascending, ties by key, decile = ceil(10 * rank / n).
std::map<std::string, int> decile_assign(const std::map<std::string, double>& values);

enum class BinKey { rucc, income_decile, education_decile, foreign_born_decile };

const char* bin_key_name(BinKey key);
BinKey parse_bin_key(const std::string& name);

// Lower of the two middle elements for even sizes. Empty input -> 0.
double lower_median(std::vector<double> values);

// bin -> category -> median per_1000
std::map<int, std::map<std::string, double>> bin_medians(const PrevalenceTable& p,
                                                         const RegionTable& regions, BinKey key);

struct Correlation {
    double r = 0.0;
    std::size_t n_pairs = 0;
    std::size_t n_dropped = 0;
};

// Pearson r of (ln x, ln y) over regions present in both maps. Pairs with a
// non-positive value are dropped and counted. Throws DataError with fewer
// than two pairs or zero variance.
Correlation log_pearson(const std::map<std::string, double>& x, const std::map<std::string, double>& y);

// CSV inputs. Category lists are semicolon-joined.
std::vector<PlaceRecord> read_places_csv(const std::string& path);
RegionTable read_regions_csv(const std::string& path);
RegionCategoryCounts read_external_counts_csv(const std::string& path);

}  // namespace placenet
