#include "cookiescope/engine/banner_detector.h"

#include <algorithm>

namespace cookiescope::engine {

namespace {

using dom::DocumentView;
using dom::DomNode;
using dom::DomSnapshot;
using dom::NodeId;

bool is_anchor(const DomNode& node) {
  return node.position == dom::Position::kFixed ||
         (node.z_index && *node.z_index > 0);
}

bool contains_all(const DocumentView& view, NodeId ancestor,
                  const std::vector<NodeId>& nodes) {
  return std::all_of(nodes.begin(), nodes.end(), [&](NodeId id) {
    return view.is_ancestor_or_self(ancestor, id);
  });
}

std::optional<BannerFinding> detect_in_document(const DomSnapshot& doc,
                                                const corpus::Corpus& corpus,
                                                const dom::FramePath& path) {
  const DocumentView view(doc);
  const DomNode* body = view.body();
  if (!body) {
    if (path.empty()) throw dom::SnapshotError("document has no <body>");
    return std::nullopt;
  }

  const corpus::CategorySet detection{corpus::Category::kDetection};
  std::vector<const DomNode*> candidates;
  for (const DomNode* node : view.document_order()) {
    if (node->own_text.empty()) continue;
    if (!dom::is_banner_word_candidate(view, node->node_id)) continue;
    if (corpus::match_text(node->own_text, corpus, detection).empty()) continue;
    candidates.push_back(node);
  }

  if (candidates.empty()) {
    for (const DomNode* node : view.document_order()) {
      if (node->tag != "iframe" || !node->iframe_doc) continue;
      if (!dom::is_visible(*node, view.viewport())) continue;
      dom::FramePath nested = path;
      nested.push_back(node->node_id);
      if (auto found = detect_in_document(*node->iframe_doc, corpus, nested)) {
        return found;
      }
    }
    return std::nullopt;
  }

  const DomNode* anchor = nullptr;
  for (const DomNode* cur = candidates.front(); cur;
       cur = view.parent(cur->node_id)) {
    if (is_anchor(*cur)) {
      anchor = cur;
      break;
    }
  }
  if (!anchor) anchor = body;

  std::vector<NodeId> held;
  for (const DomNode* c : candidates) {
    if (view.is_ancestor_or_self(anchor->node_id, c->node_id)) {
      held.push_back(c->node_id);
    }
  }

  const DomNode* banner = anchor;
  while (true) {
    const DomNode* next = nullptr;
    for (const DomNode& child : banner->children) {
      if (contains_all(view, child.node_id, held)) {
        next = &child;
        break;
      }
    }
    if (!next) break;
    banner = next;
  }

  BannerFinding finding;
  finding.banner_node = banner->node_id;
  finding.anchor_node = anchor->node_id;
  finding.frame_path = path;
  for (NodeId id : held) {
    for (auto& m : corpus::match_text(view.node(id).own_text, corpus, detection)) {
      finding.matched_words.push_back({id, std::move(m.phrase), m.category});
    }
  }
  return finding;
}

}  // namespace

std::optional<BannerFinding> detect_banner(const DomSnapshot& snapshot,
                                           const corpus::Corpus& corpus) {
  return detect_in_document(snapshot, corpus, {});
}

std::optional<std::string> check_finding(const DomSnapshot& snapshot,
                                         const BannerFinding& finding) {
  const DomSnapshot* doc = dom::resolve_frame(snapshot, finding.frame_path);
  if (!doc) return "frame path does not resolve";
  const DocumentView view(*doc);
  if (!view.find(finding.banner_node) || !view.find(finding.anchor_node)) {
    return "banner or anchor node missing from document";
  }
  if (!view.is_ancestor_or_self(finding.anchor_node, finding.banner_node)) {
    return "banner node is not inside the anchor";
  }
  std::vector<NodeId> words;
  for (const auto& m : finding.matched_words) {
    if (!view.find(m.node_id)) return "matched word node missing";
    if (!dom::is_visible(view.node(m.node_id), view.viewport())) continue;
    if (std::find(words.begin(), words.end(), m.node_id) == words.end()) {
      words.push_back(m.node_id);
    }
  }
  if (words.empty()) return "no visible matched word";
  if (!contains_all(view, finding.banner_node, words)) {
    return "banner node does not contain every matched word";
  }
  for (const DomNode& child : view.node(finding.banner_node).children) {
    if (contains_all(view, child.node_id, words)) {
      return "child " + std::to_string(child.node_id) +
             " already contains every matched word";
    }
  }
  return std::nullopt;
}

}  // namespace cookiescope::engine
