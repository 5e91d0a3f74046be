#include "cookiescope/session/probe_protocol.h"

#include "cookiescope/dom/snapshot_io.h"

namespace cookiescope::session {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::pair<ProbeKind, std::string_view> kKindNames[] = {
    {ProbeKind::kSnapshot, "snapshot"},
    {ProbeKind::kClickResult, "click-result"},
    {ProbeKind::kCmpAnswer, "cmp-answer"},
    {ProbeKind::kError, "error"},
};

void expect_kind(const ProbeMessage& message, ProbeKind kind) {
  if (message.kind == ProbeKind::kError && kind != ProbeKind::kError) {
    const ProbeFailure f = decode_failure(message);
    throw ProbeProtocolError("probe error " + f.code + ": " + f.message);
  }
  if (message.kind != kind) {
    throw ProbeProtocolError("expected " + std::string(to_string(kind)) + " message, got " +
                             std::string(to_string(message.kind)));
  }
}

}  // namespace

std::string_view to_string(ProbeKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "error";
}

json capture_request() { return {{"op", "capture"}}; }

json click_request(const dom::FramePath& frame_path, dom::NodeId node_id) {
  return {{"op", "click"}, {"frame_path", frame_path}, {"node_id", node_id}};
}

json query_cmp_request(const std::vector<std::string>& markers) {
  return {{"op", "query_cmp"}, {"markers", markers}};
}

json cmp_reject_request(std::string_view marker) {
  return {{"op", "cmp_reject"}, {"marker", marker}};
}

ordered_json make_message(ProbeKind kind, ordered_json payload) {
  ordered_json out;
  out["protocol"] = kProbeProtocolVersion;
  out["kind"] = std::string(to_string(kind));
  out["payload"] = std::move(payload);
  return out;
}

ordered_json snapshot_message(const dom::DomSnapshot& snapshot) {
  return make_message(ProbeKind::kSnapshot, dom::snapshot_to_json(snapshot));
}

ordered_json click_message(const ClickResult& result) {
  ordered_json payload;
  payload["success"] = result.success;
  payload["reason"] = result.reason;
  payload["navigated"] = result.navigated;
  payload["mutated"] = result.mutated;
  return make_message(ProbeKind::kClickResult, std::move(payload));
}

ordered_json cmp_message(const engine::CmpAnswer& answer) {
  return make_message(ProbeKind::kCmpAnswer, cmp_answer_to_json(answer));
}

ordered_json error_message(std::string_view code, std::string_view message) {
  ordered_json payload;
  payload["code"] = std::string(code);
  payload["message"] = std::string(message);
  return make_message(ProbeKind::kError, std::move(payload));
}

ProbeMessage parse_probe_message(const json& value) {
  if (!value.is_object()) throw ProbeProtocolError("probe message is not an object");
  auto protocol = value.find("protocol");
  if (protocol == value.end() || !protocol->is_number_integer()) {
    throw ProbeProtocolError("probe message without protocol version");
  }
  if (protocol->get<int>() != kProbeProtocolVersion) {
    throw ProbeProtocolError("unsupported probe protocol " + protocol->dump());
  }
  auto kind = value.find("kind");
  if (kind == value.end() || !kind->is_string()) {
    throw ProbeProtocolError("probe message without kind");
  }
  ProbeMessage message;
  message.protocol = protocol->get<int>();
  bool known = false;
  for (const auto& [k, name] : kKindNames) {
    if (name == kind->get<std::string>()) {
      message.kind = k;
      known = true;
    }
  }
  if (!known) throw ProbeProtocolError("unknown probe message kind " + kind->dump());
  message.payload = value.value("payload", json());
  return message;
}

dom::DomSnapshot decode_snapshot(const ProbeMessage& message) {
  expect_kind(message, ProbeKind::kSnapshot);
  try {
    dom::DomSnapshot snapshot = dom::snapshot_from_json(message.payload);
    dom::validate(snapshot);
    return snapshot;
  } catch (const dom::SnapshotError& e) {
    throw ProbeProtocolError(std::string("bad snapshot payload: ") + e.what());
  }
}

ClickResult decode_click(const ProbeMessage& message) {
  expect_kind(message, ProbeKind::kClickResult);
  try {
    const json& p = message.payload;
    return {p.at("success").get<bool>(), p.value("reason", std::string()),
            p.value("navigated", false), p.value("mutated", false)};
  } catch (const json::exception& e) {
    throw ProbeProtocolError(std::string("bad click payload: ") + e.what());
  }
}

engine::CmpAnswer decode_cmp_answer(const ProbeMessage& message) {
  expect_kind(message, ProbeKind::kCmpAnswer);
  return cmp_answer_from_json(message.payload);
}

ProbeFailure decode_failure(const ProbeMessage& message) {
  if (message.kind != ProbeKind::kError) throw ProbeProtocolError("not an error message");
  return {message.payload.value("code", std::string("unknown")),
          message.payload.value("message", std::string())};
}

ordered_json cmp_answer_to_json(const engine::CmpAnswer& answer) {
  ordered_json out;
  if (answer.tcf) {
    ordered_json tcf = ordered_json::object();
    tcf["cmp_id"] = answer.tcf->cmp_id ? ordered_json(*answer.tcf->cmp_id) : ordered_json();
    tcf["cmp_name"] = answer.tcf->cmp_name ? ordered_json(*answer.tcf->cmp_name) : ordered_json();
    out["tcf"] = std::move(tcf);
  } else {
    out["tcf"] = nullptr;
  }
  out["custom_markers"] = answer.custom_markers;
  out["callable_rejects"] = answer.callable_rejects;
  return out;
}

engine::CmpAnswer cmp_answer_from_json(const json& value) {
  try {
    engine::CmpAnswer answer;
    if (auto tcf = value.find("tcf"); tcf != value.end() && !tcf->is_null()) {
      engine::TcfPing ping;
      if (auto id = tcf->find("cmp_id"); id != tcf->end() && !id->is_null()) ping.cmp_id = id->get<int>();
      if (auto name = tcf->find("cmp_name"); name != tcf->end() && !name->is_null()) {
        ping.cmp_name = name->get<std::string>();
      }
      answer.tcf = ping;
    }
    answer.custom_markers = value.value("custom_markers", std::vector<std::string>{});
    answer.callable_rejects = value.value("callable_rejects", std::vector<std::string>{});
    return answer;
  } catch (const json::exception& e) {
    throw ProbeProtocolError(std::string("bad cmp payload: ") + e.what());
  }
}

}  // namespace cookiescope::session
