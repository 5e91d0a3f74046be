#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cookiescope/dom/dom_model.h"
#include "cookiescope/engine/cmp.h"

namespace cookiescope::session {

// Messages exchanged with the in-page probe over the automation channel's
// script-return path. Requests are passed as the single script argument;
// every response is {"protocol": 1, "kind": ..., "payload": ...}.
//
// Requests:
//   {"op": "capture"}                                  -> snapshot
//   {"op": "click", "frame_path": [..], "node_id": n}  -> click-result
//   {"op": "query_cmp", "markers": [..]}               -> cmp-answer
//   {"op": "cmp_reject", "marker": m}                  -> click-result
// Any request may instead produce an error message.

inline constexpr int kProbeProtocolVersion = 1;
inline constexpr std::string_view kProbeGlobal = "__cookiescopeProbe";
inline constexpr std::string_view kProbeDispatchScript =
    "return window.__cookiescopeProbe.dispatch(arguments[0]);";

enum class ProbeKind { kSnapshot, kClickResult, kCmpAnswer, kError };
std::string_view to_string(ProbeKind kind);

class ProbeProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProbeMessage {
  int protocol = kProbeProtocolVersion;
  ProbeKind kind = ProbeKind::kError;
  nlohmann::json payload;
};

struct ClickResult {
  bool success = false;
  std::string reason;   // why success is false, e.g. "disabled"
  bool navigated = false;
  bool mutated = false;  // DOM changed within the settle window
  bool operator==(const ClickResult&) const = default;
};

// Error payload: {"code": ..., "message": ...}. Codes in use:
// "stale-node", "detached", "unknown-op", "no-probe".
struct ProbeFailure {
  std::string code;
  std::string message;
};

nlohmann::json capture_request();
nlohmann::json click_request(const dom::FramePath& frame_path, dom::NodeId node_id);
nlohmann::json query_cmp_request(const std::vector<std::string>& markers);
nlohmann::json cmp_reject_request(std::string_view marker);

nlohmann::ordered_json make_message(ProbeKind kind, nlohmann::ordered_json payload);
nlohmann::ordered_json snapshot_message(const dom::DomSnapshot& snapshot);
nlohmann::ordered_json click_message(const ClickResult& result);
nlohmann::ordered_json cmp_message(const engine::CmpAnswer& answer);
nlohmann::ordered_json error_message(std::string_view code, std::string_view message);

// Checks the envelope (version, kind). Throws ProbeProtocolError.
ProbeMessage parse_probe_message(const nlohmann::json& value);

// Payload decoders; each throws ProbeProtocolError for the wrong kind or a
// malformed body. A snapshot payload is also validated.
dom::DomSnapshot decode_snapshot(const ProbeMessage& message);
ClickResult decode_click(const ProbeMessage& message);
engine::CmpAnswer decode_cmp_answer(const ProbeMessage& message);
ProbeFailure decode_failure(const ProbeMessage& message);

nlohmann::ordered_json cmp_answer_to_json(const engine::CmpAnswer& answer);
engine::CmpAnswer cmp_answer_from_json(const nlohmann::json& value);

}  // namespace cookiescope::session
