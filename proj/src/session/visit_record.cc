#include "cookiescope/session/visit_record.h"

#include <stdexcept>

namespace cookiescope::session {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename T, typename F>
T parse_enum(const json& value, std::string_view field, F from_string) {
  const std::string text = value.at(std::string(field)).get<std::string>();
  auto parsed = from_string(text);
  if (!parsed) throw std::invalid_argument("bad " + std::string(field) + " '" + text + "'");
  return *parsed;
}

ordered_json cookie_to_json(const CookieRecord& c) {
  ordered_json out;
  out["name"] = c.name;
  out["value"] = c.value;
  out["domain"] = c.domain_attr;
  out["path"] = c.path;
  out["secure"] = c.secure;
  out["http_only"] = c.http_only;
  out["expiry"] = c.expiry ? ordered_json(*c.expiry) : ordered_json();
  out["phase"] = std::string(to_string(c.observed_at));
  return out;
}

CookieRecord cookie_from_json(const json& v) {
  CookieRecord c;
  c.name = v.at("name").get<std::string>();
  c.value = v.value("value", std::string());
  c.domain_attr = v.at("domain").get<std::string>();
  c.path = v.value("path", std::string("/"));
  c.secure = v.value("secure", false);
  c.http_only = v.value("http_only", false);
  if (auto e = v.find("expiry"); e != v.end() && !e->is_null()) c.expiry = e->get<std::int64_t>();
  c.observed_at = parse_enum<Phase>(v, "phase", phase_from_string);
  return c;
}

}  // namespace

std::string_view to_string(VisitStatus status) {
  switch (status) {
    case VisitStatus::kOk: return "ok";
    case VisitStatus::kUnreachable: return "unreachable";
    case VisitStatus::kLoadTimeout: return "load-timeout";
    case VisitStatus::kCrawlTimeout: return "crawl-timeout";
    case VisitStatus::kException: break;
  }
  return "exception";
}

std::optional<VisitStatus> visit_status_from_string(std::string_view text) {
  for (VisitStatus s : kAllStatuses) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

VisitKey visit_key(const VisitRecord& r) {
  return {r.site, r.target_url, std::string(engine::to_string(r.mode)), r.profile, r.repetition};
}

std::vector<CookieRecord> cookies_in_phase(const VisitRecord& record, Phase phase) {
  std::vector<CookieRecord> out;
  for (const CookieRecord& c : record.cookies) {
    if (c.observed_at == phase) out.push_back(c);
  }
  return out;
}

ordered_json to_json(const classify::ClassCounts& c) {
  ordered_json out;
  out["first_party"] = c.first_party;
  out["third_party"] = c.third_party;
  out["tracking"] = c.tracking;
  out["tp_tracking"] = c.tp_tracking;
  out["unclassified"] = c.unclassified;
  return out;
}

classify::ClassCounts class_counts_from_json(const json& v) {
  return {v.at("first_party").get<std::size_t>(), v.at("third_party").get<std::size_t>(),
          v.at("tracking").get<std::size_t>(), v.value("tp_tracking", std::size_t{0}),
          v.value("unclassified", std::size_t{0})};
}

ordered_json to_json(const VisitRecord& r) {
  ordered_json out;
  out["record_version"] = kRecordVersion;
  out["kind"] = "visit";
  out["site"] = r.site;
  out["rank"] = r.rank;
  out["location"] = r.location;
  out["page_kind"] = r.page_kind;
  out["target_url"] = r.target_url;
  out["url_final"] = r.url_final;
  out["mode"] = std::string(engine::to_string(r.mode));
  out["profile"] = r.profile;
  out["repetition"] = r.repetition;
  out["status"] = std::string(to_string(r.status));
  out["error"] = r.error;
  if (r.banner) {
    ordered_json b;
    b["banner_node"] = r.banner->banner_node;
    b["anchor_node"] = r.banner->anchor_node;
    b["frame_path"] = r.banner->frame_path;
    b["attempt_index"] = r.banner->attempt_index;
    b["matched_phrases"] = r.banner->matched_phrases;
    out["banner"] = std::move(b);
  } else {
    out["banner"] = nullptr;
  }
  out["detection_attempts"] = r.detection_attempts;
  if (r.interaction) {
    const InteractionResult& i = *r.interaction;
    ordered_json j;
    j["mode"] = std::string(engine::to_string(i.mode));
    j["strategy"] = i.strategy ? ordered_json(std::string(engine::to_string(*i.strategy))) : ordered_json();
    j["clicked_node"] = i.clicked_node ? ordered_json(*i.clicked_node) : ordered_json();
    j["api_call"] = i.api_call;
    j["success"] = i.success;
    j["clicks"] = i.clicks;
    j["steps_attempted"] = i.steps_attempted;
    j["note"] = i.note;
    out["interaction"] = std::move(j);
  } else {
    out["interaction"] = nullptr;
  }
  ordered_json cmp;
  cmp["detected_via"] = std::string(engine::to_string(r.cmp.detected_via));
  cmp["cmp_name"] = r.cmp.cmp_name;
  cmp["cmp_id"] = r.cmp.cmp_id ? ordered_json(*r.cmp.cmp_id) : ordered_json();
  out["cmp"] = std::move(cmp);
  out["cookie_mechanism"] = r.cookie_mechanism ? ordered_json(*r.cookie_mechanism) : ordered_json();
  ordered_json cookies = ordered_json::array();
  for (const CookieRecord& c : r.cookies) cookies.push_back(cookie_to_json(c));
  out["cookies"] = std::move(cookies);
  out["counts_pre"] = r.counts_pre ? to_json(*r.counts_pre) : ordered_json();
  out["counts_post"] = r.counts_post ? to_json(*r.counts_post) : ordered_json();
  out["screenshots"] = r.screenshots;
  if (r.dnsmpi) {
    ordered_json d;
    d["present"] = r.dnsmpi->present;
    d["link_text"] = r.dnsmpi->link_text;
    d["href"] = r.dnsmpi->href;
    out["dnsmpi"] = std::move(d);
  } else {
    out["dnsmpi"] = nullptr;
  }
  ordered_json t;
  t["started_at"] = r.timings.started_at;
  t["schedule_ms"] = r.timings.schedule_ms;
  t["load_ms"] = r.timings.load_ms;
  t["total_ms"] = r.timings.total_ms;
  out["timings"] = std::move(t);
  return out;
}

VisitRecord visit_record_from_json(const json& v) {
  try {
    if (v.value("record_version", 0) != kRecordVersion) {
      throw std::invalid_argument("unsupported record_version");
    }
    if (v.value("kind", std::string()) != "visit") throw std::invalid_argument("not a visit record");
    VisitRecord r;
    r.site = v.at("site").get<std::string>();
    r.rank = v.value("rank", 0);
    r.location = v.value("location", std::string());
    r.page_kind = v.value("page_kind", std::string("landing"));
    r.target_url = v.at("target_url").get<std::string>();
    r.url_final = v.value("url_final", std::string());
    r.mode = parse_enum<engine::InteractionMode>(v, "mode", engine::interaction_mode_from_string);
    r.profile = v.at("profile").get<std::string>();
    r.repetition = v.at("repetition").get<int>();
    r.status = parse_enum<VisitStatus>(v, "status", visit_status_from_string);
    r.error = v.value("error", std::string());
    if (auto b = v.find("banner"); b != v.end() && !b->is_null()) {
      BannerSummary s;
      s.banner_node = b->at("banner_node").get<dom::NodeId>();
      s.anchor_node = b->at("anchor_node").get<dom::NodeId>();
      s.frame_path = b->value("frame_path", dom::FramePath{});
      s.attempt_index = b->value("attempt_index", 0);
      s.matched_phrases = b->value("matched_phrases", std::vector<std::string>{});
      r.banner = std::move(s);
    }
    r.detection_attempts = v.value("detection_attempts", 0);
    if (auto i = v.find("interaction"); i != v.end() && !i->is_null()) {
      InteractionResult res;
      res.mode = parse_enum<engine::InteractionMode>(*i, "mode", engine::interaction_mode_from_string);
      if (auto s = i->find("strategy"); s != i->end() && !s->is_null()) {
        res.strategy = engine::strategy_from_string(s->get<std::string>());
      }
      if (auto n = i->find("clicked_node"); n != i->end() && !n->is_null()) {
        res.clicked_node = n->get<dom::NodeId>();
      }
      res.api_call = i->value("api_call", std::string());
      res.success = i->value("success", false);
      res.clicks = i->value("clicks", 0);
      res.steps_attempted = i->value("steps_attempted", 0);
      res.note = i->value("note", std::string());
      r.interaction = std::move(res);
    }
    if (auto c = v.find("cmp"); c != v.end() && !c->is_null()) {
      r.cmp.detected_via = parse_enum<engine::DetectedVia>(*c, "detected_via", engine::detected_via_from_string);
      r.cmp.cmp_name = c->value("cmp_name", std::string(engine::kUnknownCmp));
      if (auto id = c->find("cmp_id"); id != c->end() && !id->is_null()) r.cmp.cmp_id = id->get<int>();
    }
    if (auto m = v.find("cookie_mechanism"); m != v.end() && !m->is_null()) {
      r.cookie_mechanism = m->get<std::string>();
    }
    for (const json& c : v.value("cookies", json::array())) r.cookies.push_back(cookie_from_json(c));
    if (auto c = v.find("counts_pre"); c != v.end() && !c->is_null()) r.counts_pre = class_counts_from_json(*c);
    if (auto c = v.find("counts_post"); c != v.end() && !c->is_null()) r.counts_post = class_counts_from_json(*c);
    r.screenshots = v.value("screenshots", std::vector<std::string>{});
    if (auto d = v.find("dnsmpi"); d != v.end() && !d->is_null()) {
      r.dnsmpi = discovery::DnsmpiFinding{d->value("present", false), d->value("link_text", std::string()),
                                          d->value("href", std::string())};
    }
    if (auto t = v.find("timings"); t != v.end() && !t->is_null()) {
      r.timings.started_at = t->value("started_at", std::string());
      r.timings.schedule_ms = t->value("schedule_ms", std::int64_t{0});
      r.timings.load_ms = t->value("load_ms", std::int64_t{0});
      r.timings.total_ms = t->value("total_ms", std::int64_t{0});
    }
    if (r.repetition < 1) throw std::invalid_argument("repetition must be >= 1");
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed visit record: ") + e.what());
  }
}

}  // namespace cookiescope::session
