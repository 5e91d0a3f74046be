#include "cookiescope/fixtures/fixture_server.h"

#include <chrono>

#include <httplib.h>

namespace cookiescope::fixtures {

namespace {

std::string host_without_port(const std::string& host) {
  const auto colon = host.rfind(':');
  return colon == std::string::npos ? host : host.substr(0, colon);
}

}  // namespace

FixtureServer::FixtureServer(const FixtureWorld& world)
    : world_(world), server_(std::make_unique<httplib::Server>()) {
  server_->new_task_queue = [] { return new httplib::ThreadPool(32); };
  server_->Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string host = host_without_port(req.get_header_value("Host"));
    std::string target = req.path;
    if (!req.params.empty()) {
      // Rebuild the raw query; the world keys pages by path plus query.
      std::string query;
      for (const auto& [k, v] : req.params) query += (query.empty() ? "" : "&") + k + "=" + v;
      target += "?" + query;
    }
    {
      std::lock_guard lock(mutex_);
      requests_.push_back({host, target, req.get_header_value("User-Agent")});
    }
    const FixturePage* page = world_.find(host, target);
    if (!page) {
      res.status = 404;
      res.set_content("not found", "text/plain");
      return;
    }
    if (page->hang_ms > 0 && !stall(page->hang_ms)) {
      res.status = 503;
      return;
    }
    for (const std::string& cookie : page->set_cookie) res.headers.emplace("Set-Cookie", cookie);
    if (page->redirect) {
      res.status = 302;
      res.set_header("Location", *page->redirect);
      return;
    }
    res.set_content("<!doctype html><title>fixture</title>", "text/html");
  });
  port_ = server_->bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw std::runtime_error("fixture server cannot bind");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

FixtureServer::~FixtureServer() { stop(); }

void FixtureServer::stop() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

bool FixtureServer::stall(std::int64_t ms) {
  std::unique_lock lock(mutex_);
  return !wake_.wait_for(lock, std::chrono::milliseconds(ms), [this] { return stopping_; });
}

std::vector<ServedRequest> FixtureServer::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

}  // namespace cookiescope::fixtures
