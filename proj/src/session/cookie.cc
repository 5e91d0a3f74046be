#include "cookiescope/session/cookie.h"

#include <algorithm>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace cookiescope::session {

std::string_view to_string(Phase phase) {
  return phase == Phase::kPreInteraction ? "pre-interaction" : "post-interaction";
}

std::optional<Phase> phase_from_string(std::string_view text) {
  if (text == "pre-interaction") return Phase::kPreInteraction;
  if (text == "post-interaction") return Phase::kPostInteraction;
  return std::nullopt;
}

std::string cookie_host(const CookieRecord& cookie) {
  std::string_view domain = cookie.domain_attr;
  if (domain.starts_with('.')) domain.remove_prefix(1);
  std::string out(domain);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

void sort_cookies(std::vector<CookieRecord>& cookies) {
  std::sort(cookies.begin(), cookies.end(), [](const CookieRecord& a, const CookieRecord& b) {
    return std::tie(a.name, a.domain_attr, a.path, a.value, a.secure, a.http_only, a.expiry,
                    a.observed_at) < std::tie(b.name, b.domain_attr, b.path, b.value, b.secure,
                                              b.http_only, b.expiry, b.observed_at);
  });
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

bool domain_matches(std::string_view host, std::string_view domain) {
  return host == domain ||
         (host.size() > domain.size() && host.ends_with(domain) &&
          host[host.size() - domain.size() - 1] == '.');
}

std::string default_path(std::string_view request_path) {
  if (request_path.empty() || request_path.front() != '/') return "/";
  auto slash = request_path.rfind('/');
  if (slash == 0) return "/";
  return std::string(request_path.substr(0, slash));
}

std::optional<std::int64_t> parse_http_date(std::string_view text) {
  std::tm tm{};
  std::istringstream in{std::string(text)};
  in >> std::get_time(&tm, "%a, %d %b %Y %H:%M:%S");
  if (in.fail()) {
    in.clear();
    in.str(std::string(text));
    in >> std::get_time(&tm, "%a, %d-%b-%Y %H:%M:%S");
    if (in.fail()) return std::nullopt;
  }
  return static_cast<std::int64_t>(timegm(&tm));
}

}  // namespace

std::optional<ParsedSetCookie> parse_set_cookie(std::string_view header,
                                                std::string_view request_host,
                                                std::string_view request_path,
                                                std::int64_t now) {
  std::vector<std::string_view> parts;
  for (std::size_t start = 0;;) {
    std::size_t semi = header.find(';', start);
    parts.push_back(trim(header.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start)));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  const std::string_view pair = parts.front();
  const std::size_t eq = pair.find('=');
  if (eq == std::string_view::npos) return std::nullopt;
  ParsedSetCookie out;
  CookieRecord& c = out.cookie;
  c.name = std::string(trim(pair.substr(0, eq)));
  c.value = std::string(trim(pair.substr(eq + 1)));
  if (c.name.empty()) return std::nullopt;

  const std::string host = lower(request_host);
  std::optional<std::string> domain;
  std::optional<std::int64_t> max_age, expires;
  c.path = default_path(request_path);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::size_t aeq = parts[i].find('=');
    const std::string key = lower(trim(parts[i].substr(0, aeq)));
    const std::string_view value =
        aeq == std::string_view::npos ? std::string_view() : trim(parts[i].substr(aeq + 1));
    if (key == "domain" && !value.empty()) {
      std::string d = lower(value);
      if (d.front() == '.') d.erase(0, 1);
      domain = d;
    } else if (key == "path" && value.starts_with('/')) {
      c.path = std::string(value);
    } else if (key == "secure") {
      c.secure = true;
    } else if (key == "httponly") {
      c.http_only = true;
    } else if (key == "max-age") {
      try {
        max_age = std::stoll(std::string(value));
      } catch (const std::exception&) {
      }
    } else if (key == "expires") {
      expires = parse_http_date(value);
    }
  }
  if (domain) {
    if (!domain_matches(host, *domain)) return std::nullopt;
    c.domain_attr = "." + *domain;
  } else {
    c.domain_attr = host;
  }
  if (max_age) {
    out.expired = *max_age <= 0;
    c.expiry = now + std::max<std::int64_t>(*max_age, 0);
  } else if (expires) {
    out.expired = *expires <= now;
    c.expiry = *expires;
  }
  return out;
}

bool CookieJar::apply(std::string_view header, std::string_view request_host,
                      std::string_view request_path, std::int64_t now) {
  auto parsed = parse_set_cookie(header, request_host, request_path, now);
  if (!parsed) return false;
  const CookieKey key = cookie_key(parsed->cookie);
  std::erase_if(cookies_, [&key](const CookieRecord& c) { return cookie_key(c) == key; });
  if (!parsed->expired) cookies_.push_back(std::move(parsed->cookie));
  return true;
}

std::vector<CookieRecord> CookieJar::snapshot(Phase phase) const {
  std::vector<CookieRecord> out = cookies_;
  for (CookieRecord& c : out) c.observed_at = phase;
  sort_cookies(out);
  return out;
}

}  // namespace cookiescope::session
