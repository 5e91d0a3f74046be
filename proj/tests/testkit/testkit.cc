#include "testkit/testkit.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>

#include "cookiescope/dom/snapshot_io.h"
#include "cookiescope/session/probe_protocol.h"

namespace testkit {

using nlohmann::json;

std::filesystem::path data_dir() { return COOKIESCOPE_SOURCE_DATA_DIR; }
std::filesystem::path fixture_dir() { return COOKIESCOPE_SOURCE_FIXTURE_DIR; }
std::filesystem::path test_data_dir() { return COOKIESCOPE_TEST_DATA_DIR; }

std::filesystem::path scratch_dir(const std::string& name) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("cookiescope-" + name + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

const cs::corpus::Corpus& bundled_corpus() {
  static const cs::corpus::Corpus c = cs::corpus::load_corpus(data_dir() / "corpus.tsv");
  return c;
}

const cs::classify::SuffixRules& bundled_psl() {
  static const cs::classify::SuffixRules r = cs::classify::SuffixRules::load(data_dir() / "public_suffix_list.dat");
  return r;
}

const cs::engine::CmpRegistry& bundled_registry() {
  static const cs::engine::CmpRegistry r = cs::engine::load_cmp_registry(data_dir() / "cmp_registry.tsv");
  return r;
}

namespace {

json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  return json::parse(in);
}

}  // namespace

bool DetectionCase::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

std::vector<DetectionCase> detection_cases() {
  std::vector<DetectionCase> out;
  for (const json& e : read_json(fixture_dir() / "detection" / "manifest.json")) {
    DetectionCase c;
    c.file = e.at("file");
    if (!e.at("expected_banner").is_null()) c.expected_banner = e.at("expected_banner").get<cs::dom::NodeId>();
    c.expected_frame_path = e.at("expected_frame_path").get<cs::dom::FramePath>();
    c.tags = e.at("tags").get<std::vector<std::string>>();
    c.language = e.value("language", "en");
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<InteractionCase> interaction_cases() {
  std::vector<InteractionCase> out;
  for (const json& e : read_json(fixture_dir() / "interaction" / "manifest.json")) {
    InteractionCase c;
    c.file = e.at("file");
    c.mode = e.at("mode");
    if (e.contains("cmp")) c.cmp = cs::session::cmp_answer_from_json(e.at("cmp"));
    for (const json& s : e.at("expected_steps")) {
      ExpectedStep step;
      step.strategy = s.at("strategy");
      if (s.contains("target")) step.target = s.at("target").get<cs::dom::NodeId>();
      step.api_call = s.value("api_call", "");
      c.expected_steps.push_back(step);
    }
    c.expected_note = e.value("expected_note", "");
    out.push_back(std::move(c));
  }
  return out;
}

cs::dom::DomSnapshot load_fixture_snapshot(const std::string& subdir, const std::string& file) {
  return cs::dom::load_snapshot_file(fixture_dir() / subdir / file);
}

std::vector<PslVector> psl_vectors() {
  std::ifstream in(test_data_dir() / "test_psl.txt");
  if (!in) throw std::runtime_error("missing test_psl.txt");
  static const std::regex line_re(R"(^checkPublicSuffix\((null|'[^']*'),\s*(null|'[^']*')\);)");
  auto arg = [](const std::string& s) -> std::optional<std::string> {
    if (s == "null") return std::nullopt;
    return s.substr(1, s.size() - 2);
  };
  std::vector<PslVector> out;
  for (std::string line; std::getline(in, line);) {
    std::smatch m;
    if (std::regex_search(line, m, line_re)) out.push_back({arg(m[1]), arg(m[2])});
  }
  return out;
}

namespace {

std::vector<std::string> labels_of(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string l; std::getline(in, l, '.');) out.push_back(l);
  return out;
}

}  // namespace

std::optional<std::string> psl_oracle(const std::vector<std::string>& rules, const std::string& host) {
  if (host.empty() || host.front() == '.') return std::nullopt;
  std::string lower = host;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  const auto hl = labels_of(lower);
  std::optional<std::size_t> best_exception;
  std::size_t best_normal = 1;  // implicit "*"
  for (const std::string& raw : rules) {
    const bool exception = raw.starts_with('!');
    const auto rl = labels_of(exception ? raw.substr(1) : raw);
    if (rl.size() > hl.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < rl.size(); ++i) {
      const std::string& r = rl[rl.size() - 1 - i];
      if (r != "*" && r != hl[hl.size() - 1 - i]) match = false;
    }
    if (!match) continue;
    if (exception) {
      best_exception = std::max(best_exception.value_or(0), rl.size());
    } else {
      best_normal = std::max(best_normal, rl.size());
    }
  }
  const std::size_t suffix = best_exception ? *best_exception - 1 : best_normal;
  if (hl.size() <= suffix) return std::nullopt;
  std::string out;
  for (std::size_t i = hl.size() - suffix - 1; i < hl.size(); ++i) out += (out.empty() ? "" : ".") + hl[i];
  return out;
}

double mwu_oracle_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size(), na = a.size();
  auto u_of = [&](std::uint32_t mask) {
    double u = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1u) continue;
        u += pooled[i] > pooled[j] ? 1.0 : pooled[i] == pooled[j] ? 0.5 : 0.0;
      }
    }
    return u;
  };
  const double mid = static_cast<double>(na * b.size()) / 2;
  const double observed = std::abs(u_of((1u << na) - 1) - mid);
  std::size_t extreme = 0, total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != na) continue;
    ++total;
    if (std::abs(u_of(mask) - mid) >= observed - 1e-9) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(total);
}

FixtureWeb::FixtureWeb(cs::fixtures::BrowserOptions options)
    : world(cs::fixtures::load_world(fixture_dir() / "world.json")),
      server(std::make_unique<cs::fixtures::FixtureServer>(world)),
      browser(std::make_unique<cs::fixtures::FixtureBrowser>(world, server->port(), options)) {}

void PrintTo(const DetectionCase& c, std::ostream* os) { *os << c.file; }
void PrintTo(const InteractionCase& c, std::ostream* os) { *os << c.file; }

cs::crawl::CrawlConfig e2e_config(const FixtureWeb& web, const std::filesystem::path& out,
                                  const std::vector<std::string>& hosts) {
  using cs::crawl::Millis;
  cs::crawl::CrawlConfig c;
  int rank = 1;
  for (const std::string& h : hosts) c.targets.push_back({rank++, h});
  c.endpoint = web.browser->endpoint();
  c.output_dir = out;
  c.workers = 3;
  c.timeouts.load = Millis(1500);
  c.timeouts.dwell = Millis(300);
  c.timeouts.hard = Millis(3600);
  c.timeouts.post_click_settle = Millis(100);
  c.timeouts.settings_settle = Millis(50);
  c.detection_schedule = {Millis(0), Millis(100), Millis(200)};
  c.resources.blocklist = fixture_dir() / "blocklist.txt";
  c.screenshots = true;
  c.location = "fixture";
  return c;
}

}  // namespace testkit
