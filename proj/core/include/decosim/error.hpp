#pragma once

#include <stdexcept>
#include <string>

namespace decosim {

enum class ErrorCode {
  invalid_argument,
  schedule_in_past,
  no_devices,
  no_gateway_candidate,
  no_candidates,
  generation_failed,
  invalid_origin,
  io_error,
  scenario_syntax,
  scenario_schema,
  scenario_duplicate_id,
  scenario_out_of_range,
  scenario_bad_reference,
};

constexpr const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::schedule_in_past: return "schedule-in-past";
    case ErrorCode::no_devices: return "no-devices";
    case ErrorCode::no_gateway_candidate: return "no-gateway-candidate";
    case ErrorCode::no_candidates: return "no-candidates";
    case ErrorCode::generation_failed: return "generation-failed";
    case ErrorCode::invalid_origin: return "invalid-origin";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::scenario_syntax: return "scenario-syntax";
    case ErrorCode::scenario_schema: return "scenario-schema";
    case ErrorCode::scenario_duplicate_id: return "scenario-duplicate-id";
    case ErrorCode::scenario_out_of_range: return "scenario-out-of-range";
    case ErrorCode::scenario_bad_reference: return "scenario-bad-reference";
  }
  return "unknown";
}

/// Exception carrying a stable error code next to the human-readable message.
class SimError : public std::runtime_error {
 public:
  SimError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Scenario parsing/validation error; remembers where in the config it happened.
class ScenarioError : public SimError {
 public:
  ScenarioError(ErrorCode code, const std::string& path, const std::string& message)
      : SimError(code, path + ": " + message), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace decosim
