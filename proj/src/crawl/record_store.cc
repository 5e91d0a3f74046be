#include "cookiescope/crawl/record_store.h"

#include <stdexcept>

namespace cookiescope::crawl {

using nlohmann::json;
using nlohmann::ordered_json;

RecordStore::RecordStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
  // A torn last line must not swallow the next record.
  bool needs_newline = false;
  if (std::ifstream in(records_path(), std::ios::binary); in && in.seekg(0, std::ios::end) && in.tellg() > 0) {
    in.seekg(-1, std::ios::end);
    needs_newline = in.get() != '\n';
  }
  out_.open(records_path(), std::ios::app | std::ios::binary);
  if (!out_) throw std::runtime_error("cannot open record store " + records_path().string());
  if (needs_newline) out_ << '\n' << std::flush;
}

void RecordStore::write_line(const std::string& line) {
  std::lock_guard lock(mutex_);
  out_ << line << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("write to record store failed");
}

void RecordStore::append(const session::VisitRecord& record) {
  write_line(session::to_json(record).dump());
}

void RecordStore::append(const InnerPagesRecord& record) { write_line(to_json(record).dump()); }

StoreContents RecordStore::read(const std::filesystem::path& records_file) {
  StoreContents contents;
  std::ifstream in(records_file, std::ios::binary);
  if (!in) return contents;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (line.empty()) continue;
    json doc = json::parse(line, nullptr, false);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (doc.is_discarded() || !doc.is_object()) {
      contents.rejected_lines.push_back(where + "not JSON");
      continue;
    }
    try {
      const std::string kind = doc.value("kind", std::string());
      if (kind == "visit") {
        contents.visits.push_back(session::visit_record_from_json(doc));
      } else if (kind == "inner_pages") {
        contents.inner_pages.push_back(inner_pages_from_json(doc));
      } else {
        contents.rejected_lines.push_back(where + "unknown kind '" + kind + "'");
      }
    } catch (const std::exception& e) {
      contents.rejected_lines.push_back(where + e.what());
    }
  }
  return contents;
}

ordered_json to_json(const InnerPagesRecord& r) {
  ordered_json out;
  out["record_version"] = session::kRecordVersion;
  out["kind"] = "inner_pages";
  out["site"] = r.site;
  out["location"] = r.location;
  out["profile"] = r.profile;
  out["landing_url"] = r.pages.landing_url;
  out["inner_urls"] = r.pages.inner_urls;
  out["links_tested"] = r.pages.links_tested;
  return out;
}

InnerPagesRecord inner_pages_from_json(const json& v) {
  if (v.value("record_version", 0) != session::kRecordVersion) {
    throw std::invalid_argument("unsupported record_version");
  }
  InnerPagesRecord r;
  r.site = v.at("site").get<std::string>();
  r.location = v.value("location", std::string());
  r.profile = v.value("profile", std::string());
  r.pages.landing_url = v.at("landing_url").get<std::string>();
  r.pages.inner_urls = v.at("inner_urls").get<std::vector<std::string>>();
  r.pages.links_tested = v.at("links_tested").get<std::size_t>();
  return r;
}

ordered_json to_json(const RunManifest& m) {
  ordered_json out;
  out["manifest_version"] = kManifestVersion;
  out["config_hash"] = m.config_hash;
  out["started_at"] = m.started_at;
  out["finished_at"] = m.finished_at;
  ordered_json counts = ordered_json::object();
  for (session::VisitStatus s : session::kAllStatuses) {
    const std::string key(session::to_string(s));
    auto it = m.status_counts.find(key);
    counts[key] = it == m.status_counts.end() ? 0 : it->second;
  }
  out["status_counts"] = std::move(counts);
  out["scheduled"] = m.scheduled;
  out["attempted"] = m.attempted;
  out["resumed_skipped"] = m.resumed_skipped;
  out["aborted"] = m.aborted;
  out["abort_reason"] = m.abort_reason;
  out["cookie_mechanism"] = m.cookie_mechanism;
  out["skew_violations"] = m.skew_violations;
  out["tool_versions"] = m.tool_versions;
  return out;
}

RunManifest manifest_from_json(const json& v) {
  if (v.value("manifest_version", 0) != kManifestVersion) {
    throw std::invalid_argument("unsupported manifest_version");
  }
  RunManifest m;
  m.config_hash = v.at("config_hash").get<std::string>();
  m.started_at = v.value("started_at", std::string());
  m.finished_at = v.value("finished_at", std::string());
  m.status_counts = v.at("status_counts").get<std::map<std::string, std::size_t>>();
  m.scheduled = v.value("scheduled", std::size_t{0});
  m.attempted = v.value("attempted", std::size_t{0});
  m.resumed_skipped = v.value("resumed_skipped", std::size_t{0});
  m.aborted = v.value("aborted", false);
  m.abort_reason = v.value("abort_reason", std::string());
  m.cookie_mechanism = v.value("cookie_mechanism", std::string());
  m.skew_violations = v.value("skew_violations", std::vector<std::string>{});
  m.tool_versions = v.value("tool_versions", std::map<std::string, std::string>{});
  return m;
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path tmp = dir / (std::string(kManifestFile) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << to_json(manifest).dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write manifest");
  }
  std::filesystem::rename(tmp, dir / kManifestFile);
}

RunManifest read_manifest(const std::filesystem::path& dir) {
  std::ifstream in(dir / kManifestFile);
  if (!in) throw std::runtime_error("no manifest in " + dir.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw std::runtime_error("manifest is not JSON");
  return manifest_from_json(doc);
}

}  // namespace cookiescope::crawl
