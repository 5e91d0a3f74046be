#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cookiescope::crawl {

struct Target {
  int rank = 0;
  std::string domain;
  bool operator==(const Target&) const = default;
};

using RankRange = std::pair<int, int>;  // inclusive

// Popular, mid and long-tail slices of a 10k list.
inline const std::vector<RankRange> kTieredRanges = {{1, 100}, {1001, 1100}, {9901, 10000}};

// "rank,domain" per line; blank lines and '#' comments skipped. Throws
// std::invalid_argument naming the line for malformed rows, non-positive
// or repeated ranks, and duplicate domains.
std::vector<Target> parse_targets(std::string_view text);
std::vector<Target> load_targets(const std::filesystem::path& path);

// Targets whose rank falls in any range, input order kept.
std::vector<Target> select_ranges(const std::vector<Target>& targets,
                                  const std::vector<RankRange>& ranges);

// "1-100,1001-1100" or "tiered". Throws std::invalid_argument.
std::vector<RankRange> parse_ranges(std::string_view text);

// Index of the range containing the rank, or -1.
int range_index(const std::vector<RankRange>& ranges, int rank);

}  // namespace cookiescope::crawl
