#include "cookiescope/session/browser_session.h"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>
#include <spdlog/spdlog.h>

namespace cookiescope::session {

using nlohmann::json;

namespace {

bool looks_unreachable(const WebDriverError& e) {
  static constexpr std::string_view kMarkers[] = {
      "neterror", "dnsNotFound", "connectionFailure", "Reached error page",
      "NS_ERROR_UNKNOWN_HOST", "NS_ERROR_CONNECTION_REFUSED", "netTimeout"};
  for (std::string_view marker : kMarkers) {
    if (e.detail().find(marker) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(CookieMechanism mechanism) {
  return mechanism == CookieMechanism::kChromeJar ? "chrome-jar" : "set-cookie-log";
}

std::optional<CookieMechanism> cookie_mechanism_from_string(std::string_view text) {
  if (text == "chrome-jar") return CookieMechanism::kChromeJar;
  if (text == "set-cookie-log") return CookieMechanism::kSetCookieLog;
  return std::nullopt;
}

BrowserSession::BrowserSession(WebDriverClient client, std::string id, SessionOptions options)
    : client_(std::move(client)), id_(std::move(id)), options_(std::move(options)) {}

BrowserSession::~BrowserSession() { close(); }

std::unique_ptr<BrowserSession> BrowserSession::start(const SessionOptions& options,
                                                      const Deadline& deadline) {
  validate(options.profile);
  std::string probe_source;
  if (options.probe_bundle) {
    std::ifstream in(*options.probe_bundle);
    if (!in) throw SessionStartError("cannot read probe bundle " + options.probe_bundle->string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    probe_source = buffer.str();
  }

  json prefs = {
      {"general.useragent.override", options.profile.user_agent},
      {"privacy.trackingprotection.enabled", false},
      {"privacy.trackingprotection.pbmode.enabled", false},
      {"privacy.trackingprotection.socialtracking.enabled", false},
      {"network.cookie.cookieBehavior", 0},
  };
  json firefox = {{"prefs", prefs}, {"args", json::array()}};
  if (options.headless) firefox["args"].push_back("-headless");
  json caps = {{"capabilities",
                {{"alwaysMatch",
                  {{"browserName", "firefox"},
                   {"acceptInsecureCerts", true},
                   {"pageLoadStrategy", "normal"},
                   {"moz:firefoxOptions", firefox}}}}}};

  WebDriverClient client(options.endpoint);
  std::string id;
  try {
    json value = client.post("/session", caps, deadline);
    id = value.at("sessionId").get<std::string>();
  } catch (const std::exception& e) {
    throw SessionStartError(std::string("cannot start browser session: ") + e.what());
  }
  std::unique_ptr<BrowserSession> session(new BrowserSession(std::move(client), id, options));
  session->probe_source_ = std::move(probe_source);
  try {
    const std::string base = "/session/" + id;
    session->client_.post(base + "/timeouts",
                          {{"pageLoad", options.page_load_timeout.count()},
                           {"script", options.script_timeout.count()},
                           {"implicit", 0}},
                          deadline);
    session->client_.post(base + "/window/rect",
                          {{"width", options.profile.screen.width},
                           {"height", options.profile.screen.height}},
                          deadline);
  } catch (const std::exception& e) {
    throw SessionStartError(std::string("cannot configure browser session: ") + e.what());
  }
  return session;
}

void BrowserSession::close() {
  if (closed_) return;
  closed_ = true;
  try {
    client_.del("/session/" + id_, Deadline::after(Millis(10000)));
  } catch (const std::exception& e) {
    spdlog::debug("closing session {}: {}", id_, e.what());
  }
}

NavigationOutcome BrowserSession::navigate(const std::string& url, const Deadline& deadline) {
  NavigationOutcome outcome;
  try {
    client_.post("/session/" + id_ + "/url", {{"url", url}}, deadline);
  } catch (const WebDriverError& e) {
    if (e.error() == "timeout") {
      outcome.status = NavigationStatus::kLoadTimeout;
    } else if (looks_unreachable(e)) {
      outcome.status = NavigationStatus::kUnreachable;
    } else {
      throw;
    }
    outcome.error = e.what();
    return outcome;
  } catch (const TransportError& e) {
    if (!e.deadline_hit() && !deadline.expired()) throw;
    outcome.status = NavigationStatus::kCrawlTimeout;
    outcome.error = e.what();
    return outcome;
  }
  outcome.final_url = current_url(deadline);
  inject_probe(deadline);
  return outcome;
}

std::string BrowserSession::current_url(const Deadline& deadline) {
  return client_.get("/session/" + id_ + "/url", deadline).get<std::string>();
}

void BrowserSession::inject_probe(const Deadline& deadline) {
  if (probe_source_.empty()) return;
  client_.post("/session/" + id_ + "/execute/sync",
               {{"script", probe_source_ + "\nreturn true;"}, {"args", json::array()}}, deadline);
}

ProbeMessage BrowserSession::probe(const json& request, const Deadline& deadline) {
  json value;
  try {
    value = client_.post("/session/" + id_ + "/execute/sync",
                         {{"script", std::string(kProbeDispatchScript)},
                          {"args", json::array({request})}},
                         deadline);
  } catch (const WebDriverError& e) {
    if (e.error() == "javascript error") {
      throw ProbeProtocolError(std::string("probe unavailable: ") + e.what());
    }
    throw;
  }
  return parse_probe_message(value);
}

dom::DomSnapshot BrowserSession::capture(const Deadline& deadline) {
  return decode_snapshot(probe(capture_request(), deadline));
}

ClickResult BrowserSession::click(const dom::FramePath& frame_path, dom::NodeId node_id,
                                  const Deadline& deadline) {
  return decode_click(probe(click_request(frame_path, node_id), deadline));
}

engine::CmpAnswer BrowserSession::query_cmp(const std::vector<std::string>& markers,
                                            const Deadline& deadline) {
  return decode_cmp_answer(probe(query_cmp_request(markers), deadline));
}

ClickResult BrowserSession::cmp_reject(std::string_view marker, const Deadline& deadline) {
  return decode_click(probe(cmp_reject_request(marker), deadline));
}

json BrowserSession::run_chrome(std::string_view script, const Deadline& deadline) {
  const std::string base = "/session/" + id_;
  client_.post(base + "/moz/context", {{"context", "chrome"}}, deadline);
  json value;
  try {
    value = client_.post(base + "/execute/sync",
                         {{"script", std::string(script)}, {"args", json::array()}}, deadline);
  } catch (...) {
    try {
      client_.post(base + "/moz/context", {{"context", "content"}}, deadline);
    } catch (const std::exception&) {
    }
    throw;
  }
  client_.post(base + "/moz/context", {{"context", "content"}}, deadline);
  return value;
}

std::optional<CookieMechanism> BrowserSession::detect_cookie_mechanism(const Deadline& deadline) {
  try {
    if (run_chrome(kChromeCookieScript, deadline).is_array()) return CookieMechanism::kChromeJar;
  } catch (const WebDriverError& e) {
    spdlog::debug("chrome cookie jar unavailable: {}", e.what());
  }
  try {
    if (client_.get("/session/" + id_ + std::string(kSetCookieLogPath), deadline).is_array()) {
      return CookieMechanism::kSetCookieLog;
    }
  } catch (const WebDriverError& e) {
    spdlog::debug("set-cookie log unavailable: {}", e.what());
  }
  return std::nullopt;
}

std::vector<CookieRecord> BrowserSession::capture_cookies(CookieMechanism mechanism, Phase phase,
                                                          const Deadline& deadline) {
  std::vector<CookieRecord> out;
  if (mechanism == CookieMechanism::kChromeJar) {
    for (const json& c : run_chrome(kChromeCookieScript, deadline)) {
      out.push_back(cookie_from_webdriver(c, phase));
    }
    sort_cookies(out);
  } else {
    out = replay_set_cookie_log(
        client_.get("/session/" + id_ + std::string(kSetCookieLogPath), deadline), phase);
  }
  return out;
}

std::optional<bool> BrowserSession::tracking_protection_enabled(const Deadline& deadline) {
  try {
    json value = run_chrome(kChromeTrackingPrefScript, deadline);
    if (value.is_boolean()) return value.get<bool>();
  } catch (const WebDriverError& e) {
    spdlog::debug("tracking protection pref unreadable: {}", e.what());
  }
  return std::nullopt;
}

bool BrowserSession::screenshot(const std::filesystem::path& path, const Deadline& deadline) {
  try {
    const std::string png =
        decode_base64(client_.get("/session/" + id_ + "/screenshot", deadline).get<std::string>());
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out.write(png.data(), static_cast<std::streamsize>(png.size()));
    return static_cast<bool>(out);
  } catch (const std::exception& e) {
    spdlog::warn("screenshot {} failed: {}", path.string(), e.what());
    return false;
  }
}

CookieRecord cookie_from_webdriver(const json& value, Phase phase) {
  CookieRecord c;
  c.name = value.at("name").get<std::string>();
  c.value = value.value("value", std::string());
  c.domain_attr = value.value("domain", std::string());
  c.path = value.value("path", std::string("/"));
  c.secure = value.value("secure", false);
  c.http_only = value.value("httpOnly", false);
  if (auto it = value.find("expiry"); it != value.end() && it->is_number()) {
    c.expiry = it->get<std::int64_t>();
  }
  c.observed_at = phase;
  return c;
}

std::vector<CookieRecord> replay_set_cookie_log(const json& log, Phase phase) {
  CookieJar jar;
  for (const json& entry : log) {
    jar.apply(entry.at("header").get<std::string>(), entry.at("host").get<std::string>(),
              entry.value("path", std::string("/")), entry.value("time", std::int64_t{0}));
  }
  return jar.snapshot(phase);
}

std::string decode_base64(std::string_view text) {
  std::string input(text);
  std::erase_if(input, [](char c) { return c == '\n' || c == '\r' || c == ' '; });
  while (input.size() % 4 != 0) input.push_back('=');
  std::string out(input.size() / 4 * 3, '\0');
  const int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(input.data()),
                                static_cast<int>(input.size()));
  if (n < 0) throw std::invalid_argument("invalid base64");
  std::size_t padding = 0;
  for (auto it = input.rbegin(); it != input.rend() && *it == '='; ++it) ++padding;
  out.resize(static_cast<std::size_t>(n) - std::min<std::size_t>(padding, static_cast<std::size_t>(n)));
  return out;
}

}  // namespace cookiescope::session
