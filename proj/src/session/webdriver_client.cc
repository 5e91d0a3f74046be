#include "cookiescope/session/webdriver_client.h"

#include <httplib.h>

#include "cookiescope/discovery/url.h"

namespace cookiescope::session {

using nlohmann::json;

WebDriverClient::WebDriverClient(std::string endpoint) : endpoint_(std::move(endpoint)) {
  auto url = discovery::parse_url(endpoint_);
  if (!url || url->scheme != "http") {
    throw std::invalid_argument("WebDriver endpoint must be an http:// URL: " + endpoint_);
  }
  host_ = url->host;
  port_ = url->port.value_or(80);
  base_path_ = url->path == "/" ? "" : url->path;
  if (base_path_.ends_with('/')) base_path_.pop_back();
}

json WebDriverClient::get(std::string_view path, const Deadline& deadline) const {
  return send("GET", path, nullptr, deadline);
}

json WebDriverClient::post(std::string_view path, const json& body,
                           const Deadline& deadline) const {
  return send("POST", path, &body, deadline);
}

json WebDriverClient::del(std::string_view path, const Deadline& deadline) const {
  return send("DELETE", path, nullptr, deadline);
}

json WebDriverClient::send(std::string_view method, std::string_view path, const json* body,
                           const Deadline& deadline) const {
  const Millis budget = deadline.remaining();
  if (budget.count() <= 0) throw TransportError("deadline passed before request", true);

  httplib::Client client(host_, port_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(budget);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(budget - secs);
  client.set_connection_timeout(std::min<time_t>(secs.count(), 10), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  const std::string full = base_path_ + std::string(path);
  httplib::Result res;
  if (method == "GET") {
    res = client.Get(full);
  } else if (method == "DELETE") {
    res = client.Delete(full);
  } else {
    res = client.Post(full, body ? body->dump() : std::string("{}"), "application/json");
  }
  if (!res) {
    const bool hit = deadline.expired() || res.error() == httplib::Error::Read;
    throw TransportError("WebDriver " + std::string(method) + " " + full + ": " +
                             httplib::to_string(res.error()),
                         hit && deadline.remaining() < Millis(50));
  }
  json doc = json::parse(res->body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw WebDriverError("invalid response", "non-JSON body from " + full, res->status);
  }
  json value = doc.value("value", json());
  if (res->status >= 400 || (value.is_object() && value.contains("error"))) {
    std::string error = value.is_object() ? value.value("error", "unknown error") : "unknown error";
    std::string message = value.is_object() ? value.value("message", "") : "";
    throw WebDriverError(std::move(error), std::move(message), res->status);
  }
  return value;
}

}  // namespace cookiescope::session
