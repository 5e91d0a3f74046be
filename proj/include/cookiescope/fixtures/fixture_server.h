#pragma once

#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "cookiescope/fixtures/fixture_world.h"

namespace httplib {
class Server;
}

namespace cookiescope::fixtures {

struct ServedRequest {
  std::string host;
  std::string target;
  std::string user_agent;
};

// Virtual-host HTTP server for every host of a world, on one loopback
// port; the Host header picks the site.
class FixtureServer {
 public:
  explicit FixtureServer(const FixtureWorld& world);
  ~FixtureServer();
  FixtureServer(const FixtureServer&) = delete;
  FixtureServer& operator=(const FixtureServer&) = delete;

  int port() const { return port_; }
  std::vector<ServedRequest> requests() const;
  // Wakes stalled handlers and stops listening. Idempotent.
  void stop();

 private:
  // Sleeps up to `ms`; false when interrupted by stop().
  bool stall(std::int64_t ms);

  const FixtureWorld& world_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  mutable std::mutex mutex_;
  std::condition_variable wake_;
  bool stopping_ = false;
  std::vector<ServedRequest> requests_;
};

}  // namespace cookiescope::fixtures
