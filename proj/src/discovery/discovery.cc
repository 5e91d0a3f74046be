#include "cookiescope/discovery/discovery.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "cookiescope/corpus/text_normalize.h"
#include "cookiescope/discovery/url.h"

namespace cookiescope::discovery {

namespace {

void append_text(const dom::DomNode& node, std::string& out) {
  if (!node.own_text.empty()) {
    if (!out.empty()) out += ' ';
    out += node.own_text;
  }
  for (const dom::DomNode& child : node.children) append_text(child, out);
}

}  // namespace

InnerPageSet find_inner_pages(Navigator& navigator, const std::string& landing_url,
                              const dom::DomSnapshot& landing_snapshot) {
  const std::optional<Url> landing = parse_url(landing_url);
  if (!landing) throw std::invalid_argument("landing URL is not http(s): " + landing_url);

  InnerPageSet result;
  result.landing_url = normalize_url(*landing);
  std::set<std::string> seen{result.landing_url};
  std::set<std::string> accepted;

  const dom::DocumentView view(landing_snapshot);
  for (const dom::DomNode* node : view.document_order()) {
    if (result.inner_urls.size() >= kMaxInnerPages || result.links_tested >= kMaxLinksTested) break;
    if (node->tag != "a" || !node->href) continue;
    const std::optional<Url> candidate = resolve_url(*landing, *node->href);
    if (!candidate || !same_origin_prefix(*landing, *candidate)) continue;
    const std::string normalized = normalize_url(*candidate);
    if (!seen.insert(normalized).second) continue;

    ++result.links_tested;
    const std::optional<std::string> final_text = navigator.final_url(normalized);
    if (!final_text) continue;
    const std::optional<Url> final_url = parse_url(*final_text);
    if (!final_url || !same_origin_prefix(*landing, *final_url)) continue;
    const std::string final_normalized = normalize_url(*final_url);
    if (final_normalized == result.landing_url) continue;
    if (!accepted.insert(final_normalized).second) continue;
    result.inner_urls.push_back(final_normalized);
  }
  return result;
}

std::vector<std::string> load_phrases(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open phrase list " + path.string());
  std::vector<std::string> phrases;
  for (std::string line; std::getline(in, line);) {
    const std::string collapsed = corpus::collapse_whitespace(line);
    if (collapsed.empty() || collapsed.front() == '#') continue;
    phrases.push_back(collapsed);
  }
  if (phrases.empty()) throw std::runtime_error("phrase list is empty: " + path.string());
  return phrases;
}

DnsmpiFinding find_dnsmpi(const dom::DomSnapshot& snapshot,
                          const std::vector<std::string>& phrases) {
  std::vector<std::pair<std::string, std::string>> normalized;  // (normalized, original)
  for (const std::string& p : phrases) normalized.emplace_back(corpus::normalize_for_match(p), p);

  const dom::DocumentView view(snapshot);
  for (const dom::DomNode* node : view.document_order()) {
    if (node->tag != "a" || !node->href || node->href->empty()) continue;
    std::string text;
    append_text(*node, text);
    const std::string haystack = corpus::normalize_for_match(text);
    for (const auto& [needle, original] : normalized) {
      if (!needle.empty() && haystack.find(needle) != std::string::npos) {
        return {true, original, *node->href};
      }
    }
  }
  return {};
}

}  // namespace cookiescope::discovery
