#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cookiescope/dom/dom_model.h"
#include "cookiescope/engine/cmp.h"

// A closed world of virtual hosts used in place of the live web: what each
// URL serves over HTTP and how its rendered page reacts to clicks and CMP
// calls.
namespace cookiescope::fixtures {

class WorldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Effect of a click or CMP call on the rendered page.
struct PageAction {
  std::vector<std::string> load;        // absolute URLs fetched afterwards
  std::vector<dom::NodeId> remove;      // main-document subtrees dropped
  std::vector<dom::NodeId> show;        // display_none cleared on the subtree
  std::optional<std::string> navigate;  // absolute URL
};

struct FixturePage {
  std::optional<dom::DomSnapshot> snapshot;  // absent: not renderable (pixel, script)
  std::vector<std::string> set_cookie;       // raw Set-Cookie headers
  std::vector<std::string> subresources;     // absolute URLs loaded with the page
  std::optional<std::string> redirect;       // Location header
  std::int64_t hang_ms = 0;                  // server stalls before answering
  bool freeze = false;                       // page scripts never return
  engine::CmpAnswer cmp;
  std::map<std::string, PageAction> cmp_reject;  // marker -> effect
  // Key: node id for the main document, "<iframe id>/.../<id>" inside frames.
  std::map<std::string, PageAction> actions;
  // Snapshot shown a given number of milliseconds after load instead of
  // `snapshot` until then (late banners).
  std::int64_t banner_delay_ms = 0;
  std::optional<dom::DomSnapshot> before_banner;
};

struct FixtureWorld {
  // host -> path (with query) -> page
  std::map<std::string, std::map<std::string, FixturePage>> hosts;

  const FixturePage* find(const std::string& host, const std::string& target) const;
  bool knows_host(const std::string& host) const { return hosts.contains(host); }
};

std::string action_key(const dom::FramePath& frame_path, dom::NodeId node_id);

// Snapshot paths resolve against `base_dir`.
FixtureWorld parse_world(const nlohmann::json& doc, const std::filesystem::path& base_dir);
FixtureWorld load_world(const std::filesystem::path& path);

// Bundled fixture directory (build-time default, overridable by
// COOKIESCOPE_FIXTURE_DIR).
std::filesystem::path default_fixture_dir();

}  // namespace cookiescope::fixtures
