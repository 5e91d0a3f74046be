#pragma once

#include <string>
#include <string_view>
#include <stdexcept>

#include <json.hpp>

#include "cookiescope/session/deadline.h"

namespace cookiescope::session {

// The endpoint answered with a W3C error object.
class WebDriverError : public std::runtime_error {
 public:
  WebDriverError(std::string error, std::string message, int http_status)
      : std::runtime_error(error + ": " + message),
        error_(std::move(error)),
        message_(std::move(message)),
        http_status_(http_status) {}
  const std::string& error() const { return error_; }  // e.g. "timeout"
  const std::string& detail() const { return message_; }
  int http_status() const { return http_status_; }

 private:
  std::string error_;
  std::string message_;
  int http_status_;
};

// No answer: connection refused, or the deadline passed mid-request.
class TransportError : public std::runtime_error {
 public:
  TransportError(std::string message, bool deadline_hit)
      : std::runtime_error(std::move(message)), deadline_hit_(deadline_hit) {}
  bool deadline_hit() const { return deadline_hit_; }

 private:
  bool deadline_hit_;
};

// Minimal W3C WebDriver transport. Every call is bounded by the deadline;
// the response's "value" member is returned.
class WebDriverClient {
 public:
  // endpoint: "http://host:port" optionally followed by a base path.
  explicit WebDriverClient(std::string endpoint);

  nlohmann::json get(std::string_view path, const Deadline& deadline) const;
  nlohmann::json post(std::string_view path, const nlohmann::json& body,
                      const Deadline& deadline) const;
  nlohmann::json del(std::string_view path, const Deadline& deadline) const;

  const std::string& endpoint() const { return endpoint_; }

 private:
  nlohmann::json send(std::string_view method, std::string_view path,
                      const nlohmann::json* body, const Deadline& deadline) const;

  std::string endpoint_;
  std::string base_path_;
  std::string host_;
  int port_ = 80;
};

}  // namespace cookiescope::session
