#include "cookiescope/discovery/url.h"

#include <algorithm>
#include <charconv>
#include <vector>

namespace cookiescope::discovery {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

int default_port(std::string_view scheme) { return scheme == "http" ? 80 : 443; }

std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string_view> out;
  std::size_t start = 1;  // skip the leading '/'
  bool trailing_slash = false;
  while (start <= path.size()) {
    std::size_t slash = path.find('/', start);
    std::string_view seg = path.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
    trailing_slash = false;
    if (seg == "..") {
      if (!out.empty()) out.pop_back();
      trailing_slash = true;
    } else if (seg == ".") {
      trailing_slash = true;
    } else {
      out.push_back(seg);
    }
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  std::string result;
  for (std::string_view seg : out) {
    result += '/';
    result += seg;
  }
  if (trailing_slash || result.empty()) result += '/';
  return result;
}

}  // namespace

std::string Url::origin() const {
  std::string out = scheme + "://" + host;
  if (port) out += ":" + std::to_string(*port);
  return out;
}

std::string Url::without_fragment() const {
  std::string out = origin() + path;
  if (query) out += "?" + *query;
  return out;
}

std::string Url::to_string() const {
  std::string out = without_fragment();
  if (fragment) out += "#" + *fragment;
  return out;
}

std::optional<Url> parse_url(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  Url url;
  std::size_t scheme_end = text.find("://");
  std::size_t first_delim = text.find_first_of("/?#");
  if (scheme_end != std::string_view::npos && scheme_end < first_delim) {
    url.scheme = lower(text.substr(0, scheme_end));
    text.remove_prefix(scheme_end + 3);
  } else if (text.find(':') != std::string_view::npos &&
             text.find(':') < first_delim &&
             !std::all_of(text.begin() + static_cast<std::ptrdiff_t>(text.find(':')) + 1,
                          text.begin() + static_cast<std::ptrdiff_t>(std::min(first_delim, text.size())),
                          [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;  // mailto:, javascript:, ...
  } else {
    url.scheme = "https";
  }
  if (url.scheme != "http" && url.scheme != "https") return std::nullopt;

  std::size_t auth_end = text.find_first_of("/?#");
  std::string_view authority = text.substr(0, auth_end);
  text.remove_prefix(auth_end == std::string_view::npos ? text.size() : auth_end);
  if (auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
  if (auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    std::string_view port_text = authority.substr(colon + 1);
    int port = 0;
    if (!port_text.empty()) {
      auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
      if (ec != std::errc() || ptr != port_text.data() + port_text.size() || port <= 0 || port > 65535) {
        return std::nullopt;
      }
      if (port != default_port(url.scheme)) url.port = port;
    }
    authority = authority.substr(0, colon);
  }
  if (authority.empty()) return std::nullopt;
  url.host = lower(authority);

  if (auto hash = text.find('#'); hash != std::string_view::npos) {
    url.fragment = std::string(text.substr(hash + 1));
    text = text.substr(0, hash);
  }
  if (auto q = text.find('?'); q != std::string_view::npos) {
    url.query = std::string(text.substr(q + 1));
    text = text.substr(0, q);
  }
  url.path = text.empty() ? "/" : std::string(text);
  return url;
}

std::optional<Url> resolve_url(const Url& base, std::string_view href) {
  while (!href.empty() && (href.front() == ' ' || href.front() == '\n')) href.remove_prefix(1);
  if (href.starts_with("//")) return parse_url(base.scheme + ":" + std::string(href));
  const std::size_t delim = href.find_first_of("/?#");
  const std::size_t colon = href.find(':');
  if (colon != std::string_view::npos && (delim == std::string_view::npos || colon < delim)) {
    return parse_url(href);  // has a scheme
  }
  Url out = base;
  out.fragment.reset();
  if (href.empty()) return out;
  if (href.front() == '#') {
    out.fragment = std::string(href.substr(1));
    return out;
  }
  std::string_view rest = href;
  std::optional<std::string> fragment;
  if (auto hash = rest.find('#'); hash != std::string_view::npos) {
    fragment = std::string(rest.substr(hash + 1));
    rest = rest.substr(0, hash);
  }
  std::optional<std::string> query;
  if (auto q = rest.find('?'); q != std::string_view::npos) {
    query = std::string(rest.substr(q + 1));
    rest = rest.substr(0, q);
  }
  if (rest.empty()) {
    out.query = query ? query : base.query;
  } else if (rest.front() == '/') {
    out.path = remove_dot_segments(rest);
    out.query = query;
  } else {
    std::string merged = base.path.substr(0, base.path.rfind('/') + 1) + std::string(rest);
    out.path = remove_dot_segments(merged);
    out.query = query;
  }
  out.fragment = fragment;
  return out;
}

std::string normalize_url(const Url& url) {
  Url copy = url;
  copy.fragment.reset();
  if (copy.path.empty()) copy.path = "/";
  return copy.without_fragment();
}

bool same_origin_prefix(const Url& landing, const Url& candidate) {
  return landing.scheme == candidate.scheme && landing.host == candidate.host &&
         landing.port == candidate.port;
}

}  // namespace cookiescope::discovery
