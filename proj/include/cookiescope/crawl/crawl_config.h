#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cookiescope/crawl/targets.h"
#include "cookiescope/engine/button_selector.h"
#include "cookiescope/session/deadline.h"
#include "cookiescope/session/device_profile.h"

namespace cookiescope::crawl {

using session::Millis;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Timeouts {
  Millis load{60000};   // page-load budget
  Millis dwell{30000};  // stay on the page after load
  Millis hard{360000};  // whole visit
  Millis post_click_settle{10000};
  Millis settings_settle{1000};
};

struct ResourcePaths {
  std::filesystem::path corpus;
  std::filesystem::path psl;
  std::filesystem::path blocklist;
  std::filesystem::path cmp_registry;
  std::filesystem::path dnsmpi_phrases;
};

// Bundled data directory (build-time default, overridable by
// COOKIESCOPE_DATA_DIR).
std::filesystem::path default_data_dir();
ResourcePaths default_resource_paths();

struct CrawlConfig {
  std::vector<Target> targets;
  std::vector<engine::InteractionMode> modes{engine::InteractionMode::kNone};
  int repetitions = 1;
  std::vector<session::DeviceProfile> profiles{session::desktop_profile()};
  int workers = 7;
  Timeouts timeouts;
  std::vector<Millis> detection_schedule{Millis(0), Millis(10000), Millis(20000)};
  ResourcePaths resources = default_resource_paths();
  bool include_corpus_supplement = false;
  std::filesystem::path output_dir = "crawl-out";
  std::string endpoint = "http://127.0.0.1:4444";
  std::optional<std::filesystem::path> probe_bundle;
  std::string location = "local";
  bool headless = true;
  bool find_dnsmpi = false;
  bool inner_pages = false;
  Millis politeness_delay{0};
  std::string contact;  // appended to the user agent when set
  int max_session_failures = 5;
  Millis max_schedule_skew{3600000};
  bool screenshots = true;
};

// hard >= load + dwell; schedule strictly increasing, non-negative and
// below dwell + 30 s; at least one mode and profile; workers and
// repetitions >= 1. Throws ConfigError.
void validate(const CrawlConfig& config);

nlohmann::ordered_json to_json(const CrawlConfig& config);
// Keys as written by to_json; missing keys keep defaults. "targets_file"
// may replace "targets". Relative paths resolve against `base_dir`.
CrawlConfig config_from_json(const nlohmann::json& value,
                             const std::filesystem::path& base_dir = {});
CrawlConfig load_config_file(const std::filesystem::path& path);

// SHA-256 over the canonical JSON of everything except output_dir.
std::string config_hash(const CrawlConfig& config);

}  // namespace cookiescope::crawl
