#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>

namespace cookiescope::classify {

// Whole-domain tracker list: one domain per line, '#' comments. A leading
// "0.0.0.0 " or "127.0.0.1 " hosts-file prefix is tolerated.
class Blocklist {
 public:
  Blocklist() = default;
  static Blocklist parse(std::string_view text);
  static Blocklist load(const std::filesystem::path& path);

  void add(std::string_view domain);
  bool contains(std::string_view domain) const;
  std::size_t size() const { return domains_.size(); }

 private:
  std::unordered_set<std::string> domains_;
};

}  // namespace cookiescope::classify
