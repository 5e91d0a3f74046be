#include "cookiescope/fixtures/fixture_world.h"

#include <cstdlib>
#include <fstream>

#include "cookiescope/dom/snapshot_io.h"
#include "cookiescope/session/probe_protocol.h"

#ifndef COOKIESCOPE_FIXTURE_DIR
#define COOKIESCOPE_FIXTURE_DIR "fixtures"
#endif

namespace cookiescope::fixtures {

namespace {

using nlohmann::json;

PageAction parse_action(const json& j) {
  PageAction a;
  a.load = j.value("load", std::vector<std::string>{});
  a.remove = j.value("remove", std::vector<dom::NodeId>{});
  a.show = j.value("show", std::vector<dom::NodeId>{});
  if (j.contains("navigate")) a.navigate = j.at("navigate").get<std::string>();
  return a;
}

std::optional<dom::DomSnapshot> snapshot_at(const json& j, const char* key,
                                            const std::filesystem::path& base) {
  if (!j.contains(key)) return std::nullopt;
  dom::DomSnapshot s = dom::load_snapshot_file(base / j.at(key).get<std::string>());
  dom::validate(s);
  return s;
}

FixturePage parse_page(const json& j, const std::filesystem::path& base) {
  FixturePage p;
  p.snapshot = snapshot_at(j, "snapshot", base);
  p.before_banner = snapshot_at(j, "before_banner", base);
  p.banner_delay_ms = j.value("banner_delay_ms", std::int64_t{0});
  p.set_cookie = j.value("set_cookie", std::vector<std::string>{});
  p.subresources = j.value("subresources", std::vector<std::string>{});
  if (j.contains("redirect")) p.redirect = j.at("redirect").get<std::string>();
  p.hang_ms = j.value("hang_ms", std::int64_t{0});
  p.freeze = j.value("freeze", false);
  if (j.contains("cmp")) p.cmp = session::cmp_answer_from_json(j.at("cmp"));
  const json cmp_reject = j.value("cmp_reject", json::object());
  for (const auto& [marker, action] : cmp_reject.items()) {
    p.cmp_reject[marker] = parse_action(action);
  }
  const json actions = j.value("actions", json::object());
  for (const auto& [key, action] : actions.items()) {
    p.actions[key] = parse_action(action);
  }
  return p;
}

}  // namespace

const FixturePage* FixtureWorld::find(const std::string& host, const std::string& target) const {
  auto h = hosts.find(host);
  if (h == hosts.end()) return nullptr;
  auto p = h->second.find(target);
  if (p != h->second.end()) return &p->second;
  // Query strings fall back to the bare path.
  const auto q = target.find('?');
  if (q == std::string::npos) return nullptr;
  p = h->second.find(target.substr(0, q));
  return p == h->second.end() ? nullptr : &p->second;
}

std::string action_key(const dom::FramePath& frame_path, dom::NodeId node_id) {
  std::string key;
  for (dom::NodeId frame : frame_path) key += std::to_string(frame) + "/";
  return key + std::to_string(node_id);
}

FixtureWorld parse_world(const json& doc, const std::filesystem::path& base_dir) {
  FixtureWorld world;
  try {
    for (const auto& [host, pages] : doc.at("hosts").items()) {
      for (const auto& [path, page] : pages.items()) {
        world.hosts[host][path] = parse_page(page, base_dir);
      }
    }
  } catch (const json::exception& e) {
    throw WorldError(std::string("bad world description: ") + e.what());
  } catch (const dom::SnapshotError& e) {
    throw WorldError(std::string("bad world snapshot: ") + e.what());
  }
  return world;
}

FixtureWorld load_world(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw WorldError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw WorldError(path.string() + ": " + e.what());
  }
  return parse_world(doc, path.parent_path());
}

std::filesystem::path default_fixture_dir() {
  if (const char* env = std::getenv("COOKIESCOPE_FIXTURE_DIR"); env && *env) return env;
  return COOKIESCOPE_FIXTURE_DIR;
}

}  // namespace cookiescope::fixtures
