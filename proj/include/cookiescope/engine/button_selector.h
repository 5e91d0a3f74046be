#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cookiescope/corpus/corpus.h"
#include "cookiescope/dom/dom_model.h"
#include "cookiescope/engine/banner_detector.h"
#include "cookiescope/engine/cmp.h"

namespace cookiescope::engine {

enum class InteractionMode { kNone, kAccept, kReject };
std::string_view to_string(InteractionMode mode);  // no-interaction|accept|reject
std::optional<InteractionMode> interaction_mode_from_string(std::string_view text);

// Text a node offers for interaction matching: the full subtree text for
// buttons, links and click-handler elements, attribute plus own text for
// <input>, own text otherwise.
std::string button_text(const dom::DocumentView& view, const dom::DomNode& node);

// 0 button, 1 input, 2 a, 3 other element with a click handler, 4 anything.
int tag_priority(const dom::DomNode& node);

// Best visible element under the banner whose text matches `category`:
// lowest tag priority, then fewest words, then document order. Elements
// that match both accept and reject words (after dropping matches nested
// inside longer ones) are ambiguous and skipped.
std::optional<dom::NodeId> select_button(const dom::DomSnapshot& snapshot,
                                         const BannerFinding& finding,
                                         const corpus::Corpus& corpus,
                                         corpus::Category category);

enum class Strategy { kWordClick, kCmpApi, kSettingsThenWord };
std::string_view to_string(Strategy strategy);
std::optional<Strategy> strategy_from_string(std::string_view text);

struct PlanStep {
  Strategy strategy = Strategy::kWordClick;
  // word-click: the button; settings-then-word: the settings button. The
  // reject button inside the opened dialog is chosen after re-capture.
  std::optional<dom::NodeId> target;
  dom::FramePath frame_path;
  std::string api_marker;  // cmp-api only
  std::string api_call;    // cmp-api only
  bool operator==(const PlanStep&) const = default;
};

struct InteractionPlan {
  InteractionMode mode = InteractionMode::kAccept;
  std::vector<PlanStep> steps;
  std::string note;  // "no explicit accept" for an empty accept plan
};

inline constexpr std::string_view kNoExplicitAccept = "no explicit accept";

// accept: one word-click step on an explicit accept button or no step at
// all. reject: word-click, then a cmp-api step per detected custom API with
// a reject call, then settings-then-word; the executor stops at the first
// step that succeeds.
InteractionPlan plan_interaction(const dom::DomSnapshot& snapshot,
                                 const BannerFinding& finding,
                                 const corpus::Corpus& corpus,
                                 InteractionMode mode,
                                 const CmpAnswer& cmp_answer = {},
                                 const CmpRegistry& registry = {});

}  // namespace cookiescope::engine
