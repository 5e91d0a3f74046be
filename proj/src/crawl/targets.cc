#include "cookiescope/crawl/targets.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cookiescope::crawl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_int(std::string_view text, int& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::vector<Target> parse_targets(std::string_view text) {
  std::vector<Target> targets;
  std::set<std::string> domains;
  std::set<int> ranks;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const std::string where = "targets line " + std::to_string(line_no);
    const std::size_t comma = row.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument(where + ": expected rank,domain");
    Target t;
    if (!parse_int(trim(row.substr(0, comma)), t.rank) || t.rank <= 0) {
      throw std::invalid_argument(where + ": bad rank");
    }
    t.domain = lower(trim(row.substr(comma + 1)));
    if (t.domain.empty() || t.domain.find_first_of(" ,/") != std::string::npos) {
      throw std::invalid_argument(where + ": bad domain");
    }
    if (!domains.insert(t.domain).second) {
      throw std::invalid_argument(where + ": duplicate domain " + t.domain);
    }
    if (!ranks.insert(t.rank).second) {
      throw std::invalid_argument(where + ": duplicate rank " + std::to_string(t.rank));
    }
    targets.push_back(std::move(t));
  }
  return targets;
}

std::vector<Target> load_targets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open target list " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_targets(buffer.str());
}

std::vector<Target> select_ranges(const std::vector<Target>& targets,
                                  const std::vector<RankRange>& ranges) {
  std::vector<Target> out;
  std::copy_if(targets.begin(), targets.end(), std::back_inserter(out),
               [&](const Target& t) { return range_index(ranges, t.rank) >= 0; });
  return out;
}

std::vector<RankRange> parse_ranges(std::string_view text) {
  if (trim(text) == "tiered") return kTieredRanges;
  std::vector<RankRange> ranges;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view part = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    const std::size_t dash = part.find('-');
    RankRange r;
    if (dash == std::string_view::npos || !parse_int(trim(part.substr(0, dash)), r.first) ||
        !parse_int(trim(part.substr(dash + 1)), r.second) || r.first <= 0 || r.second < r.first) {
      throw std::invalid_argument("bad rank range '" + std::string(part) + "'");
    }
    ranges.push_back(r);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ranges;
}

int range_index(const std::vector<RankRange>& ranges, int rank) {
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (rank >= ranges[i].first && rank <= ranges[i].second) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace cookiescope::crawl
