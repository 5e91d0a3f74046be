#include "cookiescope/crawl/crawl_config.h"

#include <cstdlib>
#include <fstream>

#include <openssl/evp.h>

#ifndef COOKIESCOPE_DATA_DIR
#define COOKIESCOPE_DATA_DIR "data"
#endif

namespace cookiescope::crawl {

using nlohmann::json;
using nlohmann::ordered_json;

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("COOKIESCOPE_DATA_DIR"); env && *env) return env;
  return COOKIESCOPE_DATA_DIR;
}

ResourcePaths default_resource_paths() {
  const std::filesystem::path dir = default_data_dir();
  return {dir / "corpus.tsv", dir / "public_suffix_list.dat", dir / "justdomains_sample.txt",
          dir / "cmp_registry.tsv", dir / "dnsmpi_phrases.txt"};
}

void validate(const CrawlConfig& c) {
  const Timeouts& t = c.timeouts;
  if (t.load.count() <= 0 || t.dwell.count() < 0 || t.hard.count() <= 0) {
    throw ConfigError("timeouts must be positive");
  }
  if (t.hard < t.load + t.dwell) {
    throw ConfigError("hard timeout must be at least load + dwell");
  }
  if (c.detection_schedule.empty()) throw ConfigError("detection schedule is empty");
  for (std::size_t i = 0; i < c.detection_schedule.size(); ++i) {
    if (c.detection_schedule[i].count() < 0) throw ConfigError("negative detection offset");
    if (i > 0 && c.detection_schedule[i] <= c.detection_schedule[i - 1]) {
      throw ConfigError("detection offsets must be strictly increasing");
    }
  }
  if (c.detection_schedule.back() >= t.dwell + Millis(30000)) {
    throw ConfigError("detection offsets must stay below dwell + 30 s");
  }
  if (c.modes.empty()) throw ConfigError("no interaction mode selected");
  if (c.profiles.empty()) throw ConfigError("no device profile selected");
  for (const auto& p : c.profiles) session::validate(p);
  if (c.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
  if (c.max_session_failures < 1) throw ConfigError("max_session_failures must be >= 1");
}

ordered_json to_json(const CrawlConfig& c) {
  ordered_json out;
  ordered_json targets = ordered_json::array();
  for (const Target& t : c.targets) targets.push_back({t.rank, t.domain});
  out["targets"] = std::move(targets);
  ordered_json modes = ordered_json::array();
  for (auto m : c.modes) modes.push_back(std::string(engine::to_string(m)));
  out["modes"] = std::move(modes);
  out["repetitions"] = c.repetitions;
  ordered_json profiles = ordered_json::array();
  for (const auto& p : c.profiles) {
    profiles.push_back({{"name", p.name},
                        {"user_agent", p.user_agent},
                        {"width", p.screen.width},
                        {"height", p.screen.height}});
  }
  out["profiles"] = std::move(profiles);
  out["workers"] = c.workers;
  out["timeouts_ms"] = {{"load", c.timeouts.load.count()},
                        {"dwell", c.timeouts.dwell.count()},
                        {"hard", c.timeouts.hard.count()},
                        {"post_click_settle", c.timeouts.post_click_settle.count()},
                        {"settings_settle", c.timeouts.settings_settle.count()}};
  ordered_json schedule = ordered_json::array();
  for (Millis m : c.detection_schedule) schedule.push_back(m.count());
  out["detection_schedule_ms"] = std::move(schedule);
  out["resources"] = {{"corpus", c.resources.corpus.string()},
                      {"psl", c.resources.psl.string()},
                      {"blocklist", c.resources.blocklist.string()},
                      {"cmp_registry", c.resources.cmp_registry.string()},
                      {"dnsmpi_phrases", c.resources.dnsmpi_phrases.string()}};
  out["include_corpus_supplement"] = c.include_corpus_supplement;
  out["output_dir"] = c.output_dir.string();
  out["endpoint"] = c.endpoint;
  out["probe_bundle"] = c.probe_bundle ? ordered_json(c.probe_bundle->string()) : ordered_json();
  out["location"] = c.location;
  out["headless"] = c.headless;
  out["find_dnsmpi"] = c.find_dnsmpi;
  out["inner_pages"] = c.inner_pages;
  out["politeness_delay_ms"] = c.politeness_delay.count();
  out["contact"] = c.contact;
  out["max_session_failures"] = c.max_session_failures;
  out["max_schedule_skew_ms"] = c.max_schedule_skew.count();
  out["screenshots"] = c.screenshots;
  return out;
}

CrawlConfig config_from_json(const json& v, const std::filesystem::path& base_dir) {
  const auto resolve = [&base_dir](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  CrawlConfig c;
  try {
    if (auto t = v.find("targets"); t != v.end()) {
      for (const json& row : *t) c.targets.push_back({row.at(0).get<int>(), row.at(1).get<std::string>()});
    }
    if (auto f = v.find("targets_file"); f != v.end()) {
      c.targets = load_targets(resolve(f->get<std::string>()));
    }
    if (auto tiers = v.find("rank_ranges"); tiers != v.end()) {
      c.targets = select_ranges(c.targets, parse_ranges(tiers->get<std::string>()));
    }
    if (auto m = v.find("modes"); m != v.end()) {
      c.modes.clear();
      for (const json& name : *m) {
        auto mode = engine::interaction_mode_from_string(name.get<std::string>());
        if (!mode) throw ConfigError("unknown mode " + name.dump());
        c.modes.push_back(*mode);
      }
    }
    c.repetitions = v.value("repetitions", c.repetitions);
    if (auto p = v.find("profiles"); p != v.end()) {
      c.profiles.clear();
      for (const json& entry : *p) {
        if (entry.is_string()) {
          auto profile = session::profile_by_name(entry.get<std::string>());
          if (!profile) throw ConfigError("unknown profile " + entry.dump());
          c.profiles.push_back(*profile);
        } else {
          c.profiles.push_back({entry.at("name").get<std::string>(),
                                entry.at("user_agent").get<std::string>(),
                                {entry.at("width").get<int>(), entry.at("height").get<int>()}});
        }
      }
    }
    c.workers = v.value("workers", c.workers);
    if (auto t = v.find("timeouts_ms"); t != v.end()) {
      c.timeouts.load = Millis(t->value("load", c.timeouts.load.count()));
      c.timeouts.dwell = Millis(t->value("dwell", c.timeouts.dwell.count()));
      c.timeouts.hard = Millis(t->value("hard", c.timeouts.hard.count()));
      c.timeouts.post_click_settle = Millis(t->value("post_click_settle", c.timeouts.post_click_settle.count()));
      c.timeouts.settings_settle = Millis(t->value("settings_settle", c.timeouts.settings_settle.count()));
    }
    if (auto s = v.find("detection_schedule_ms"); s != v.end()) {
      c.detection_schedule.clear();
      for (const json& ms : *s) c.detection_schedule.emplace_back(ms.get<long long>());
    }
    if (auto r = v.find("resources"); r != v.end()) {
      if (r->contains("corpus")) c.resources.corpus = resolve(r->at("corpus").get<std::string>());
      if (r->contains("psl")) c.resources.psl = resolve(r->at("psl").get<std::string>());
      if (r->contains("blocklist")) c.resources.blocklist = resolve(r->at("blocklist").get<std::string>());
      if (r->contains("cmp_registry")) c.resources.cmp_registry = resolve(r->at("cmp_registry").get<std::string>());
      if (r->contains("dnsmpi_phrases")) c.resources.dnsmpi_phrases = resolve(r->at("dnsmpi_phrases").get<std::string>());
    }
    c.include_corpus_supplement = v.value("include_corpus_supplement", c.include_corpus_supplement);
    if (v.contains("output_dir")) c.output_dir = resolve(v.at("output_dir").get<std::string>());
    c.endpoint = v.value("endpoint", c.endpoint);
    if (auto p = v.find("probe_bundle"); p != v.end() && !p->is_null()) {
      c.probe_bundle = resolve(p->get<std::string>());
    }
    c.location = v.value("location", c.location);
    c.headless = v.value("headless", c.headless);
    c.find_dnsmpi = v.value("find_dnsmpi", c.find_dnsmpi);
    c.inner_pages = v.value("inner_pages", c.inner_pages);
    c.politeness_delay = Millis(v.value("politeness_delay_ms", c.politeness_delay.count()));
    c.contact = v.value("contact", c.contact);
    c.max_session_failures = v.value("max_session_failures", c.max_session_failures);
    c.max_schedule_skew = Millis(v.value("max_schedule_skew_ms", c.max_schedule_skew.count()));
    c.screenshots = v.value("screenshots", c.screenshots);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

CrawlConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ConfigError("config is not a JSON object");
  return config_from_json(doc, path.parent_path());
}

std::string config_hash(const CrawlConfig& config) {
  ordered_json doc = to_json(config);
  doc.erase("output_dir");
  const std::string text = doc.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

}  // namespace cookiescope::crawl
