#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cookiescope/discovery/discovery.h"
#include "cookiescope/session/visit_record.h"

namespace cookiescope::crawl {

inline constexpr std::string_view kRecordsFile = "records.jsonl";
inline constexpr std::string_view kManifestFile = "manifest.json";
inline constexpr int kManifestVersion = 1;

struct InnerPagesRecord {
  std::string site;
  std::string location;
  std::string profile;
  discovery::InnerPageSet pages;
  bool operator==(const InnerPagesRecord&) const = default;
};

struct StoreContents {
  std::vector<session::VisitRecord> visits;
  std::vector<InnerPagesRecord> inner_pages;
  std::vector<std::string> rejected_lines;  // "line N: reason"
};

// Append-only JSON-lines store: one record per line, each carrying
// "record_version" and "kind" ("visit" or "inner_pages"). Appends from any
// thread are serialized and flushed line by line, so a crash loses at most
// the line being written; a torn last line is reported and skipped on read.
class RecordStore {
 public:
  explicit RecordStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path records_path() const { return dir_ / kRecordsFile; }

  void append(const session::VisitRecord& record);
  void append(const InnerPagesRecord& record);

  static StoreContents read(const std::filesystem::path& records_file);

 private:
  void write_line(const std::string& line);

  std::filesystem::path dir_;
  std::mutex mutex_;
  std::ofstream out_;
};

struct RunManifest {
  std::string config_hash;
  std::string started_at;
  std::string finished_at;
  std::map<std::string, std::size_t> status_counts;  // every status present, zero or not
  std::size_t scheduled = 0;
  std::size_t attempted = 0;
  std::size_t resumed_skipped = 0;
  bool aborted = false;
  std::string abort_reason;
  std::string cookie_mechanism;
  std::vector<std::string> skew_violations;  // sites over the skew bound
  std::map<std::string, std::string> tool_versions;
};

nlohmann::ordered_json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& value);
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& dir);

nlohmann::ordered_json to_json(const InnerPagesRecord& record);
InnerPagesRecord inner_pages_from_json(const nlohmann::json& value);

}  // namespace cookiescope::crawl
