#include "cookiescope/fixtures/fixture_browser.h"

#include <chrono>
#include <ctime>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <httplib.h>

#include "cookiescope/discovery/url.h"
#include "cookiescope/session/browser_session.h"
#include "cookiescope/session/cookie.h"
#include "cookiescope/session/probe_protocol.h"

namespace cookiescope::fixtures {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct FixtureBrowser::Session {
  std::mutex mutex;
  std::string user_agent = "fixture-browser";
  bool tracking_pref = false;
  int width = 1366;
  int height = 768;
  std::int64_t page_load_ms = 300000;
  bool chrome = false;
  std::string url = "about:blank";
  const FixturePage* page = nullptr;
  dom::DomSnapshot doc;
  Clock::time_point loaded_at;
  session::CookieJar jar;
  json log = json::array();
};

namespace {

struct DriverError {
  int status;
  std::string error;
  std::string message;
};

void reply(httplib::Response& res, const json& value) {
  res.set_content(json{{"value", value}}.dump(), "application/json");
}

void reply_error(httplib::Response& res, const DriverError& e) {
  res.status = e.status;
  res.set_content(json{{"value", {{"error", e.error}, {"message", e.message}, {"stacktrace", ""}}}}.dump(),
                  "application/json");
}

std::string utc_now() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));
}

dom::DomSnapshot blank_document() {
  dom::DomSnapshot s;
  s.root.node_id = 1;
  s.root.tag = "body";
  s.root.bbox = {0, 0, 1, 1};
  s.viewport = {1, 1};
  return s;
}

bool remove_subtree(dom::DomNode& node, dom::NodeId id) {
  auto& kids = node.children;
  for (auto it = kids.begin(); it != kids.end(); ++it) {
    if (it->node_id == id) {
      kids.erase(it);
      return true;
    }
    if (remove_subtree(*it, id)) return true;
  }
  return false;
}

void unhide(dom::DomNode& node) {
  node.display_none = false;
  for (dom::DomNode& child : node.children) unhide(child);
}

dom::DomNode* find_mut(dom::DomNode& node, dom::NodeId id) {
  if (node.node_id == id) return &node;
  for (dom::DomNode& child : node.children) {
    if (auto* hit = find_mut(child, id)) return hit;
  }
  return nullptr;
}

enum class FetchStatus { kOk, kUnreachable, kTimeout };

struct Fetch {
  FetchStatus status = FetchStatus::kOk;
  std::string final_url;
};

}  // namespace

FixtureBrowser::FixtureBrowser(const FixtureWorld& world, int server_port, BrowserOptions options)
    : world_(world),
      server_port_(server_port),
      options_(options),
      server_(std::make_unique<httplib::Server>()),
      grants_left_(options.grant_session_starts),
      refusals_left_(options.fail_session_starts) {
  server_->new_task_queue = [] { return new httplib::ThreadPool(32); };
  install_routes();
  port_ = server_->bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw std::runtime_error("fixture browser cannot bind");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

FixtureBrowser::~FixtureBrowser() { stop(); }

void FixtureBrowser::stop() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

int FixtureBrowser::live_sessions() const {
  std::lock_guard lock(mutex_);
  return static_cast<int>(sessions_.size());
}

bool FixtureBrowser::stall(std::int64_t ms) {
  std::unique_lock lock(mutex_);
  return !wake_.wait_for(lock, std::chrono::milliseconds(ms), [this] { return stopping_; });
}

void FixtureBrowser::install_routes() {
  auto session_of = [this](const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw DriverError{404, "invalid session id", "no session " + id};
    return it->second;
  };

  // Loads one URL (following redirects) over HTTP, applying cookies.
  auto fetch = [this](Session& s, std::string url, Clock::time_point deadline) {
    Fetch out;
    for (int hop = 0; hop < 10; ++hop) {
      const auto parsed = discovery::parse_url(url);
      if (!parsed || !world_.knows_host(parsed->host)) {
        out.status = FetchStatus::kUnreachable;
        return out;
      }
      const auto left = std::chrono::duration_cast<std::chrono::microseconds>(deadline - Clock::now());
      if (left.count() <= 0) {
        out.status = FetchStatus::kTimeout;
        return out;
      }
      httplib::Client client("127.0.0.1", server_port_);
      client.set_read_timeout(left.count() / 1000000, left.count() % 1000000);
      const std::string target = parsed->path + (parsed->query ? "?" + *parsed->query : "");
      auto res = client.Get(target, httplib::Headers{{"Host", parsed->host}, {"User-Agent", s.user_agent}});
      if (!res) {
        out.status = Clock::now() >= deadline || res.error() == httplib::Error::Read ? FetchStatus::kTimeout
                                                                                  : FetchStatus::kUnreachable;
        return out;
      }
      const std::int64_t now = std::time(nullptr);
      for (std::size_t i = 0, n = res->get_header_value_count("Set-Cookie"); i < n; ++i) {
        const std::string header = res->get_header_value("Set-Cookie", i);
        s.jar.apply(header, parsed->host, parsed->path, now);
        s.log.push_back({{"host", parsed->host}, {"path", parsed->path}, {"header", header}, {"time", now}});
      }
      out.final_url = parsed->to_string();
      if (res->status >= 300 && res->status < 400 && res->has_header("Location")) {
        const auto next = discovery::resolve_url(*parsed, res->get_header_value("Location"));
        if (!next) return out;
        url = next->to_string();
        continue;
      }
      return out;
    }
    return out;
  };

  // Top-level navigation; throws DriverError the way a browser would.
  auto navigate = [this, fetch](Session& s, const std::string& url) {
    const Clock::time_point deadline = Clock::now() + std::chrono::milliseconds(s.page_load_ms);
    const Fetch main = fetch(s, url, deadline);
    if (main.status == FetchStatus::kUnreachable) {
      throw DriverError{500, "unknown error",
                        "Reached error page: about:neterror?e=dnsNotFound&u=" + url};
    }
    if (main.status == FetchStatus::kTimeout) {
      throw DriverError{500, "timeout", fmt::format("Timed out after {} ms", s.page_load_ms)};
    }
    const auto parsed = discovery::parse_url(main.final_url);
    s.url = main.final_url;
    s.page = world_.find(parsed->host, parsed->path + (parsed->query ? "?" + *parsed->query : ""));
    s.doc = s.page && s.page->snapshot ? *s.page->snapshot : blank_document();
    if (s.page) {
      for (const std::string& sub : s.page->subresources) {
        if (fetch(s, sub, deadline).status == FetchStatus::kTimeout) {
          throw DriverError{500, "timeout", fmt::format("Timed out after {} ms", s.page_load_ms)};
        }
      }
    }
    s.loaded_at = Clock::now();
  };

  auto apply_action = [fetch, navigate](Session& s, const PageAction& a, session::ClickResult& r) {
    for (const std::string& url : a.load) {
      fetch(s, url, Clock::now() + std::chrono::milliseconds(s.page_load_ms));
    }
    for (dom::NodeId id : a.remove) r.mutated |= remove_subtree(s.doc.root, id);
    for (dom::NodeId id : a.show) {
      if (dom::DomNode* n = find_mut(s.doc.root, id)) {
        unhide(*n);
        r.mutated = true;
      }
    }
    if (a.navigate) {
      navigate(s, *a.navigate);
      r.navigated = true;
    }
  };

  auto current_snapshot = [](const Session& s) {
    dom::DomSnapshot snap = s.doc;
    if (s.page && s.page->before_banner &&
        Clock::now() - s.loaded_at < std::chrono::milliseconds(s.page->banner_delay_ms)) {
      snap = *s.page->before_banner;
    }
    snap.viewport = {static_cast<double>(s.width), static_cast<double>(s.height)};
    snap.url = s.url;
    snap.captured_at = utc_now();
    return snap;
  };

  auto dispatch = [this, apply_action, current_snapshot](Session& s, const json& req) -> json {
    const std::string op = req.value("op", "");
    if (op == "capture") return session::snapshot_message(current_snapshot(s));
    if (op == "query_cmp") {
      engine::CmpAnswer answer;
      if (s.page) {
        answer.tcf = s.page->cmp.tcf;
        const auto wanted = req.value("markers", std::vector<std::string>{});
        for (const std::string& m : s.page->cmp.custom_markers) {
          if (std::find(wanted.begin(), wanted.end(), m) != wanted.end()) answer.custom_markers.push_back(m);
        }
        for (const std::string& m : s.page->cmp.callable_rejects) {
          if (std::find(wanted.begin(), wanted.end(), m) != wanted.end()) answer.callable_rejects.push_back(m);
        }
      }
      return session::cmp_message(answer);
    }
    if (op == "cmp_reject") {
      session::ClickResult r;
      const std::string marker = req.value("marker", "");
      if (s.page) {
        if (auto it = s.page->cmp_reject.find(marker); it != s.page->cmp_reject.end()) {
          r.success = true;
          apply_action(s, it->second, r);
          return session::click_message(r);
        }
      }
      r.reason = "no reject call on " + marker;
      return session::click_message(r);
    }
    if (op == "click") {
      const auto frame = req.value("frame_path", dom::FramePath{});
      const dom::NodeId id = req.value("node_id", dom::NodeId{-1});
      const dom::DomSnapshot* doc = dom::resolve_frame(s.doc, frame);
      const dom::DomNode* node = nullptr;
      std::optional<dom::DocumentView> view;
      if (doc) {
        view.emplace(*doc);
        node = view->find(id);
      }
      if (!node) return session::error_message("stale-node", fmt::format("node {} is not attached", id));
      session::ClickResult r;
      dom::Viewport vp{static_cast<double>(s.width), static_cast<double>(s.height)};
      if (!dom::is_visible(*node, vp)) {
        r.reason = "not-interactable";
        return session::click_message(r);
      }
      r.success = true;
      if (s.page) {
        if (auto it = s.page->actions.find(action_key(frame, id)); it != s.page->actions.end()) {
          const PageAction action = it->second;
          apply_action(s, action, r);
        }
      }
      return session::click_message(r);
    }
    return session::error_message("unknown-op", "unknown op '" + op + "'");
  };

  auto guarded = [](auto body) {
    return [body](const httplib::Request& req, httplib::Response& res) {
      try {
        body(req, res);
      } catch (const DriverError& e) {
        reply_error(res, e);
      } catch (const std::exception& e) {
        reply_error(res, {500, "unknown error", e.what()});
      }
    };
  };

  server_->Post("/session", guarded([this](const httplib::Request& req, httplib::Response& res) {
    if (grants_left_.fetch_sub(1) <= 0 && refusals_left_.fetch_sub(1) > 0) {
      throw DriverError{500, "session not created", "browser failed to start"};
    }
    const json body = json::parse(req.body);
    const json prefs = body.value("/capabilities/alwaysMatch/moz:firefoxOptions/prefs"_json_pointer, json::object());
    auto s = std::make_shared<Session>();
    s->user_agent = prefs.value("general.useragent.override", s->user_agent);
    s->tracking_pref = prefs.value("privacy.trackingprotection.enabled", true);
    s->doc = blank_document();
    const std::string id = fmt::format("fixture-{}", ++sessions_created_);
    {
      std::lock_guard lock(mutex_);
      sessions_[id] = s;
    }
    reply(res, {{"sessionId", id}, {"capabilities", {{"browserName", "firefox"}, {"userAgent", s->user_agent}}}});
  }));

  server_->Delete(R"(/session/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(mutex_);
    sessions_.erase(req.matches[1].str());
    reply(res, nullptr);
  }));

  server_->Post(R"(/session/([^/]+)/timeouts)", guarded([session_of](const httplib::Request& req, httplib::Response& res) {
    auto s = session_of(req.matches[1].str());
    const json body = json::parse(req.body);
    std::lock_guard lock(s->mutex);
    s->page_load_ms = body.value("pageLoad", s->page_load_ms);
    reply(res, nullptr);
  }));

  server_->Post(R"(/session/([^/]+)/window/rect)", guarded([session_of](const httplib::Request& req, httplib::Response& res) {
    auto s = session_of(req.matches[1].str());
    const json body = json::parse(req.body);
    std::lock_guard lock(s->mutex);
    s->width = body.value("width", s->width);
    s->height = body.value("height", s->height);
    reply(res, {{"x", 0}, {"y", 0}, {"width", s->width}, {"height", s->height}});
  }));

  server_->Post(R"(/session/([^/]+)/url)", guarded([session_of, navigate](const httplib::Request& req, httplib::Response& res) {
    auto s = session_of(req.matches[1].str());
    const json body = json::parse(req.body);
    std::lock_guard lock(s->mutex);
    navigate(*s, body.at("url").get<std::string>());
    reply(res, nullptr);
  }));

  server_->Get(R"(/session/([^/]+)/url)", guarded([session_of](const httplib::Request& req, httplib::Response& res) {
    auto s = session_of(req.matches[1].str());
    std::lock_guard lock(s->mutex);
    reply(res, s->url);
  }));

  server_->Post(R"(/session/([^/]+)/moz/context)", guarded([this, session_of](const httplib::Request& req, httplib::Response& res) {
    if (options_.channel != CookieChannel::kBoth && options_.channel != CookieChannel::kChromeOnly) {
      throw DriverError{404, "unknown command", "chrome context unavailable"};
    }
    auto s = session_of(req.matches[1].str());
    const json body = json::parse(req.body);
    std::lock_guard lock(s->mutex);
    s->chrome = body.value("context", "content") == "chrome";
    reply(res, nullptr);
  }));

  server_->Get(R"(/session/([^/]+)/cookiescope/set-cookie-log)", guarded([this, session_of](const httplib::Request& req, httplib::Response& res) {
    if (options_.channel != CookieChannel::kBoth && options_.channel != CookieChannel::kLogOnly) {
      throw DriverError{404, "unknown command", "no instrumentation extension"};
    }
    auto s = session_of(req.matches[1].str());
    std::lock_guard lock(s->mutex);
    reply(res, s->log);
  }));

  server_->Get(R"(/session/([^/]+)/screenshot)", guarded([session_of](const httplib::Request& req, httplib::Response& res) {
    session_of(req.matches[1].str());
    reply(res, std::string(kBlankPngBase64));
  }));

  server_->Post(R"(/session/([^/]+)/execute/sync)", guarded([this, session_of, dispatch](const httplib::Request& req, httplib::Response& res) {
    auto s = session_of(req.matches[1].str());
    const json body = json::parse(req.body);
    const std::string script = body.value("script", "");
    std::unique_lock lock(s->mutex);
    if (s->chrome) {
      if (script == session::kChromeCookieScript) {
        json out = json::array();
        for (const session::CookieRecord& c : s->jar.snapshot(session::Phase::kPreInteraction)) {
          out.push_back({{"name", c.name}, {"value", c.value}, {"domain", c.domain_attr}, {"path", c.path},
                         {"secure", c.secure}, {"httpOnly", c.http_only},
                         {"expiry", c.expiry ? json(*c.expiry) : json(nullptr)}});
        }
        return reply(res, out);
      }
      if (script == session::kChromeTrackingPrefScript) {
        return reply(res, options_.force_tracking_protection || s->tracking_pref);
      }
      return reply(res, nullptr);
    }
    if (script != session::kProbeDispatchScript) return reply(res, true);  // probe bundle injection
    if (s->page && s->page->freeze) {
      lock.unlock();
      stall(options_.freeze_ms);
      throw DriverError{500, "script timeout", "page did not respond"};
    }
    const json args = body.value("args", json::array());
    if (args.empty()) throw DriverError{400, "invalid argument", "probe request missing"};
    reply(res, dispatch(*s, args.at(0)));
  }));
}

}  // namespace cookiescope::fixtures
