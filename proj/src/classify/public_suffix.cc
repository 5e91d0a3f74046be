#include "cookiescope/classify/public_suffix.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include <unicode/uidna.h>

namespace cookiescope::classify {

namespace {

const UIDNA* idna() {
  static const UIDNA* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    UIDNA* u = uidna_openUTS46(UIDNA_NONTRANSITIONAL_TO_ASCII, &status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU IDNA unavailable");
    return u;
  }();
  return instance;
}

std::vector<std::string_view> split_labels(std::string_view host) {
  std::vector<std::string_view> labels;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = host.find('.', start);
    labels.push_back(host.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return labels;
}

// Suffix made of the last `n` labels.
std::string_view last_labels(std::string_view host, std::size_t n) {
  std::size_t pos = host.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t dot = pos == 0 ? std::string_view::npos : host.rfind('.', pos - 1);
    if (dot == std::string_view::npos) return host;
    pos = dot;
  }
  return host.substr(pos + 1);
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

}  // namespace

std::string host_to_ascii(std::string_view host) {
  if (host.empty()) throw DomainError("empty host");
  for (std::string_view label : split_labels(host)) {
    if (label.empty()) throw DomainError("empty label in '" + std::string(host) + "'");
  }
  std::string out(host.size() * 4 + 64, '\0');
  UIDNAInfo info = UIDNA_INFO_INITIALIZER;
  UErrorCode status = U_ZERO_ERROR;
  int32_t len = uidna_nameToASCII_UTF8(idna(), host.data(), static_cast<int32_t>(host.size()),
                                       out.data(), static_cast<int32_t>(out.size()), &info,
                                       &status);
  // Hyphen placement errors are tolerated: registries publish such labels.
  const uint32_t fatal = info.errors & ~static_cast<uint32_t>(UIDNA_ERROR_LEADING_HYPHEN |
                                                             UIDNA_ERROR_TRAILING_HYPHEN |
                                                             UIDNA_ERROR_HYPHEN_3_4);
  if (U_FAILURE(status) || fatal != 0) {
    throw DomainError("not a valid host name: '" + std::string(host) + "'");
  }
  out.resize(static_cast<std::size_t>(len));
  return ascii_lower(out);
}

SuffixRules SuffixRules::parse(std::string_view text) {
  SuffixRules rules;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    std::istringstream fields(line);
    std::string rule;
    if (!(fields >> rule) || rule.starts_with("//")) continue;
    const std::string where = "psl line " + std::to_string(line_no);

    std::unordered_set<std::string>* target = &rules.normal_;
    std::string_view body = rule;
    if (body.starts_with('!')) {
      target = &rules.exception_;
      body.remove_prefix(1);
    } else if (body.starts_with("*.")) {
      target = &rules.wildcard_;
      body.remove_prefix(2);
    }
    std::string ace;
    try {
      ace = host_to_ascii(body);
    } catch (const DomainError& e) {
      throw PslParseError(where + ": " + e.what());
    }
    if (!target->insert(ace).second) {
      throw PslParseError(where + ": duplicate rule '" + rule + "'");
    }
  }
  for (const std::string& exception : rules.exception_) {
    auto dot = exception.find('.');
    if (dot == std::string::npos || !rules.wildcard_.contains(exception.substr(dot + 1))) {
      throw PslParseError("exception rule !" + exception + " has no covering wildcard");
    }
  }
  return rules;
}

SuffixRules SuffixRules::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PslParseError("cannot open public suffix list " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::size_t SuffixRules::suffix_label_count(std::string_view ace_host) const {
  const std::size_t total = split_labels(ace_host).size();
  std::size_t best = 1;  // implicit "*"
  std::size_t exception = 0;  // longest matching exception wins outright
  for (std::size_t n = 1; n <= total; ++n) {
    const std::string suffix(last_labels(ace_host, n));
    if (exception_.contains(suffix)) exception = n;
    if (normal_.contains(suffix)) best = std::max(best, n);
    if (n < total && wildcard_.contains(suffix)) best = std::max(best, n + 1);
  }
  return exception > 0 ? exception - 1 : best;
}

std::string SuffixRules::public_suffix(std::string_view host) const {
  const std::string lowered = ascii_lower(host);
  const std::string ace = host_to_ascii(lowered);
  return std::string(last_labels(lowered, suffix_label_count(ace)));
}

std::string SuffixRules::etld_plus_one(std::string_view host) const {
  const std::string lowered = ascii_lower(host);
  const std::string ace = host_to_ascii(lowered);
  const std::size_t labels = split_labels(ace).size();
  const std::size_t suffix = suffix_label_count(ace);
  if (labels <= suffix) {
    throw NoRegistrableDomain("'" + std::string(host) + "' is a public suffix");
  }
  return std::string(last_labels(lowered, suffix + 1));
}

}  // namespace cookiescope::classify
