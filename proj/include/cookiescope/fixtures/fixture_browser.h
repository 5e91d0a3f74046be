#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "cookiescope/fixtures/fixture_world.h"

namespace httplib {
class Server;
}

namespace cookiescope::fixtures {

// Which cookie instrumentation the emulated browser exposes.
enum class CookieChannel { kBoth, kChromeOnly, kLogOnly, kNone };

struct BrowserOptions {
  CookieChannel channel = CookieChannel::kBoth;
  bool force_tracking_protection = false;  // ignore the pref the client sets
  int grant_session_starts = 0;            // grant this many new sessions first
  int fail_session_starts = 0;             // then refuse this many
  std::int64_t freeze_ms = 600000;         // how long a frozen page blocks a script
};

// WebDriver endpoint that "renders" world pages from their snapshots and
// fetches every page and subresource from a FixtureServer, so cookies,
// redirects, user agents and stalls travel over real HTTP. Each session
// owns a fresh cookie jar.
class FixtureBrowser {
 public:
  FixtureBrowser(const FixtureWorld& world, int server_port, BrowserOptions options = {});
  ~FixtureBrowser();
  FixtureBrowser(const FixtureBrowser&) = delete;
  FixtureBrowser& operator=(const FixtureBrowser&) = delete;

  int port() const { return port_; }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int sessions_created() const { return sessions_created_; }
  int live_sessions() const;
  void stop();

  struct Session;

 private:
  void install_routes();
  bool stall(std::int64_t ms);

  const FixtureWorld& world_;
  int server_port_;
  BrowserOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  mutable std::mutex mutex_;
  std::condition_variable wake_;
  bool stopping_ = false;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::atomic<int> sessions_created_{0};
  std::atomic<int> grants_left_{0};
  std::atomic<int> refusals_left_{0};
};

// 1x1 transparent PNG, base64.
inline constexpr std::string_view kBlankPngBase64 =
    "iVBORw0KGgoAAAANSUhEUgAAAAEAAAABCAYAAAAfFcSJAAAADUlEQVR42mNkYPhfDwAChwGA60e6kgAAAABJRU5ErkJggg==";

}  // namespace cookiescope::fixtures
