#include <gtest/gtest.h>

#include "cookiescope/engine/banner_detector.h"
#include "cookiescope/corpus/text_normalize.h"
#include "cookiescope/engine/button_selector.h"
#include "testkit/testkit.h"

namespace {

using namespace cookiescope;
using engine::InteractionMode;
using engine::Strategy;

class InteractionFixture : public ::testing::TestWithParam<testkit::InteractionCase> {};

TEST_P(InteractionFixture, PlansExpectedSteps) {
  const testkit::InteractionCase& c = GetParam();
  const dom::DomSnapshot snap = testkit::load_fixture_snapshot("interaction", c.file);
  const auto finding = engine::detect_banner(snap, testkit::bundled_corpus());
  ASSERT_TRUE(finding) << c.file;
  const auto mode = engine::interaction_mode_from_string(c.mode);
  ASSERT_TRUE(mode);
  const auto plan = engine::plan_interaction(snap, *finding, testkit::bundled_corpus(), *mode, c.cmp,
                                             testkit::bundled_registry());
  ASSERT_EQ(plan.steps.size(), c.expected_steps.size()) << c.file;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto& got = plan.steps[i];
    const auto& want = c.expected_steps[i];
    EXPECT_EQ(engine::to_string(got.strategy), want.strategy) << c.file << " step " << i;
    if (want.target) EXPECT_EQ(got.target, want.target) << c.file << " step " << i;
    if (!want.api_call.empty()) EXPECT_EQ(got.api_call, want.api_call) << c.file << " step " << i;
  }
  EXPECT_EQ(plan.note, c.expected_note);
}

std::string case_name(const ::testing::TestParamInfo<testkit::InteractionCase>& info) {
  return info.param.file.substr(0, info.param.file.find('.'));
}

INSTANTIATE_TEST_SUITE_P(Fixtures, InteractionFixture, ::testing::ValuesIn(testkit::interaction_cases()),
                         case_name);

dom::DomNode node(dom::NodeId id, std::string tag, std::string text = {}) {
  dom::DomNode n;
  n.node_id = id;
  n.tag = std::move(tag);
  n.own_text = std::move(text);
  n.bbox = {0, 0, 200, 40};
  return n;
}

dom::DomSnapshot banner_with(std::vector<dom::DomNode> controls) {
  dom::DomSnapshot s;
  s.viewport = {1000, 800};
  s.root = node(1, "body");
  s.root.bbox = {0, 0, 1000, 800};
  dom::DomNode banner = node(10, "div");
  banner.position = dom::Position::kFixed;
  // Two word-bearing paragraphs keep the banner at the wrapper.
  banner.children.push_back(node(11, "p", "We use cookies on this site"));
  banner.children.push_back(node(12, "p", "Cookies help us improve it"));
  for (auto& c : controls) banner.children.push_back(std::move(c));
  s.root.children.push_back(std::move(banner));
  return s;
}

engine::BannerFinding finding_for(const dom::DomSnapshot& s) {
  auto f = engine::detect_banner(s, testkit::bundled_corpus());
  EXPECT_TRUE(f);
  return f.value_or(engine::BannerFinding{});
}

TEST(SelectButton, PrefersButtonOverLinkAndDivHandler) {
  auto div = node(20, "div", "Accept");
  div.has_click_handler = true;
  auto link = node(21, "a", "Accept");
  auto button = node(22, "button", "Accept all cookies");
  const auto s = banner_with({div, link, button});
  EXPECT_EQ(engine::select_button(s, finding_for(s), testkit::bundled_corpus(), corpus::Category::kAccept),
            dom::NodeId{22});
}

TEST(SelectButton, FewerWordsWinWithinATag) {
  const auto s = banner_with({node(20, "button", "Accept all cookies"), node(21, "button", "Accept")});
  EXPECT_EQ(engine::select_button(s, finding_for(s), testkit::bundled_corpus(), corpus::Category::kAccept),
            dom::NodeId{21});
}

TEST(SelectButton, InvisibleButtonsAreIgnored) {
  auto hidden = node(20, "button", "Accept");
  hidden.visibility_hidden = true;
  const auto s = banner_with({hidden});
  EXPECT_EQ(engine::select_button(s, finding_for(s), testkit::bundled_corpus(), corpus::Category::kAccept),
            std::nullopt);
}

TEST(SelectButton, InputUsesAttributeText) {
  auto input = node(20, "input");
  input.attr_text = "Reject all";
  const auto s = banner_with({input});
  EXPECT_EQ(engine::select_button(s, finding_for(s), testkit::bundled_corpus(), corpus::Category::kReject),
            dom::NodeId{20});
}

TEST(SelectButton, ButtonTextSpansChildren) {
  auto button = node(20, "button");
  button.children.push_back(node(21, "span", "Reject"));
  const auto s = banner_with({button});
  EXPECT_EQ(engine::select_button(s, finding_for(s), testkit::bundled_corpus(), corpus::Category::kReject),
            dom::NodeId{20});
}

TEST(PlanInteraction, NoInteractionModeHasNoSteps) {
  const auto s = banner_with({node(20, "button", "Accept")});
  const auto plan = engine::plan_interaction(s, finding_for(s), testkit::bundled_corpus(), InteractionMode::kNone);
  EXPECT_TRUE(plan.steps.empty());
  EXPECT_TRUE(plan.note.empty());
}

TEST(PlanInteraction, RejectOrderIsWordThenApiThenSettings) {
  const auto s = banner_with({node(20, "button", "Reject all"), node(21, "button", "Cookie settings")});
  engine::CmpAnswer cmp;
  cmp.custom_markers = {"OneTrust", "_sp_"};  // _sp_ has no reject call
  const auto plan = engine::plan_interaction(s, finding_for(s), testkit::bundled_corpus(), InteractionMode::kReject,
                                             cmp, testkit::bundled_registry());
  ASSERT_EQ(plan.steps.size(), 3u);
  EXPECT_EQ(plan.steps[0].strategy, Strategy::kWordClick);
  EXPECT_EQ(plan.steps[0].target, dom::NodeId{20});
  EXPECT_EQ(plan.steps[1].strategy, Strategy::kCmpApi);
  EXPECT_EQ(plan.steps[1].api_call, "OneTrust.RejectAll()");
  EXPECT_EQ(plan.steps[2].strategy, Strategy::kSettingsThenWord);
  EXPECT_EQ(plan.steps[2].target, dom::NodeId{21});
}

TEST(PlanInteraction, EnumRoundTrips) {
  for (auto m : {InteractionMode::kNone, InteractionMode::kAccept, InteractionMode::kReject}) {
    EXPECT_EQ(engine::interaction_mode_from_string(engine::to_string(m)), m);
  }
  for (auto st : {Strategy::kWordClick, Strategy::kCmpApi, Strategy::kSettingsThenWord}) {
    EXPECT_EQ(engine::strategy_from_string(engine::to_string(st)), st);
  }
  EXPECT_EQ(engine::interaction_mode_from_string("later"), std::nullopt);
}

// Whatever the banner holds, a selected accept button never also carries a
// reject word and always lies inside the banner.
TEST(SelectButtonProperty, SelectionIsUnambiguousAndContained) {
  static const char* kTexts[] = {"Accept", "Reject", "Accept all", "Reject all", "Settings", "OK", "More info",
                                 "Accept or reject", "Agree", "Decline", "Close"};
  testkit::Rng rng(31);
  std::uniform_int_distribution<int> pick(0, 10), count(1, 6), tag(0, 2);
  const char* kTags[] = {"button", "a", "span"};
  for (int round = 0; round < 1000; ++round) {
    std::vector<dom::DomNode> controls;
    for (int i = count(rng); i > 0; --i) {
      controls.push_back(node(100 + static_cast<int>(controls.size()), kTags[tag(rng)], kTexts[pick(rng)]));
    }
    const auto s = banner_with(controls);
    const auto f = finding_for(s);
    const auto chosen = engine::select_button(s, f, testkit::bundled_corpus(), corpus::Category::kAccept);
    if (!chosen) continue;
    const dom::DocumentView view(s);
    ASSERT_TRUE(view.is_ancestor_or_self(f.banner_node, *chosen));
    const std::string text = corpus::normalize_for_match(engine::button_text(view, view.node(*chosen)));
    bool reject = false;
    for (const auto& m : corpus::maximal_matches(text, testkit::bundled_corpus(), corpus::CategorySet::interaction())) {
      reject |= m.entry->category == corpus::Category::kReject;
    }
    ASSERT_FALSE(reject) << text;
  }
}

}  // namespace
