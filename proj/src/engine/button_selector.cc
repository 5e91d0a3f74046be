#include "cookiescope/engine/button_selector.h"

#include <algorithm>
#include <tuple>

#include "cookiescope/corpus/text_normalize.h"

namespace cookiescope::engine {

namespace {

using corpus::Category;
using dom::DocumentView;
using dom::DomNode;

void append_subtree_text(const DomNode& node, std::string& out) {
  if (!node.own_text.empty()) {
    if (!out.empty()) out += ' ';
    out += node.own_text;
  }
  for (const DomNode& child : node.children) append_subtree_text(child, out);
}

bool is_clickable(const DomNode& node) {
  return node.tag == "button" || node.tag == "a" || node.tag == "input" ||
         node.has_click_handler;
}

}  // namespace

std::string_view to_string(InteractionMode mode) {
  switch (mode) {
    case InteractionMode::kAccept: return "accept";
    case InteractionMode::kReject: return "reject";
    case InteractionMode::kNone: break;
  }
  return "no-interaction";
}

std::optional<InteractionMode> interaction_mode_from_string(std::string_view text) {
  for (auto mode : {InteractionMode::kNone, InteractionMode::kAccept, InteractionMode::kReject}) {
    if (to_string(mode) == text) return mode;
  }
  return std::nullopt;
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kWordClick: return "word-click";
    case Strategy::kCmpApi: return "cmp-api";
    case Strategy::kSettingsThenWord: return "settings-then-word";
  }
  return "word-click";
}

std::optional<Strategy> strategy_from_string(std::string_view text) {
  for (auto s : {Strategy::kWordClick, Strategy::kCmpApi, Strategy::kSettingsThenWord}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::string button_text(const DocumentView& /*view*/, const DomNode& node) {
  if (node.tag == "input") {
    if (node.attr_text.empty()) return node.own_text;
    if (node.own_text.empty()) return node.attr_text;
    return node.attr_text + " " + node.own_text;
  }
  if (is_clickable(node)) {
    std::string text;
    append_subtree_text(node, text);
    return text;
  }
  return node.own_text;
}

int tag_priority(const DomNode& node) {
  if (node.tag == "button") return 0;
  if (node.tag == "input") return 1;
  if (node.tag == "a") return 2;
  if (node.has_click_handler) return 3;
  return 4;
}

std::optional<dom::NodeId> select_button(const dom::DomSnapshot& snapshot,
                                         const BannerFinding& finding,
                                         const corpus::Corpus& corpus,
                                         Category category) {
  const dom::DomSnapshot* doc = dom::resolve_frame(snapshot, finding.frame_path);
  if (!doc) return std::nullopt;
  const DocumentView view(*doc);
  const DomNode* banner = view.find(finding.banner_node);
  if (!banner) return std::nullopt;

  const auto interaction = corpus::CategorySet::interaction();
  using Rank = std::tuple<int, std::size_t, std::size_t>;
  std::optional<Rank> best_rank;
  std::optional<dom::NodeId> best;

  for (const DomNode* node : view.document_order()) {
    if (!view.is_ancestor_or_self(banner->node_id, node->node_id)) continue;
    if (!dom::is_visible(*node, view.viewport())) continue;
    const std::string text = button_text(view, *node);
    if (text.empty()) continue;
    const std::string normalized = corpus::normalize_for_match(text);
    bool wanted = false, accept = false, reject = false;
    for (const auto& m : corpus::maximal_matches(normalized, corpus, interaction)) {
      wanted |= m.entry->category == category;
      accept |= m.entry->category == Category::kAccept;
      reject |= m.entry->category == Category::kReject;
    }
    if (!wanted || (accept && reject)) continue;

    Rank rank{tag_priority(*node), corpus::count_words(text),
              view.order_index(node->node_id)};
    if (!best_rank || rank < *best_rank) {
      best_rank = rank;
      best = node->node_id;
    }
  }
  return best;
}

InteractionPlan plan_interaction(const dom::DomSnapshot& snapshot,
                                 const BannerFinding& finding,
                                 const corpus::Corpus& corpus,
                                 InteractionMode mode,
                                 const CmpAnswer& cmp_answer,
                                 const CmpRegistry& registry) {
  InteractionPlan plan;
  plan.mode = mode;
  if (mode == InteractionMode::kNone) return plan;

  if (mode == InteractionMode::kAccept) {
    if (auto target = select_button(snapshot, finding, corpus, Category::kAccept)) {
      plan.steps.push_back({Strategy::kWordClick, target, finding.frame_path, {}, {}});
    } else {
      plan.note = std::string(kNoExplicitAccept);
    }
    return plan;
  }

  if (auto target = select_button(snapshot, finding, corpus, Category::kReject)) {
    plan.steps.push_back({Strategy::kWordClick, target, finding.frame_path, {}, {}});
  }
  for (const std::string& marker : cmp_answer.custom_markers) {
    const CustomApi* api = registry.find_marker(marker);
    if (!api || api->reject_call.empty()) continue;
    plan.steps.push_back({Strategy::kCmpApi, std::nullopt, {}, api->marker, api->reject_call});
  }
  if (auto settings = select_button(snapshot, finding, corpus, Category::kSettings)) {
    plan.steps.push_back({Strategy::kSettingsThenWord, settings, finding.frame_path, {}, {}});
  }
  if (plan.steps.empty()) plan.note = "no reject route";
  return plan;
}

}  // namespace cookiescope::engine
