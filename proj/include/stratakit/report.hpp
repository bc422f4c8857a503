#pragma once

#include <string>

#include "stratakit/jobspec.hpp"

namespace stratakit {

inline constexpr const char* kVersion = "strata-kit 0.1.0";

// Outcome of one command: the input echo, a command-specific payload, and
// wall-clock timing. Everything except timing_ms is deterministic for a
// fixed input and seed.
struct Report {
  std::string command;
  Json input;
  Json payload;
  long timing_ms = 0;
};

// Dispatches spec.command. Valid commands: slope, stratum, depth-map, katz,
// pullback, check-fundamental, regular-singular, associates. Errors surface
// as stratakit::Error with their code.
Report run(const JobSpec& spec);

Json report_to_json(const Report& r, bool include_timing = true);
std::string report_to_human(const Report& r);

// Stable mapping from error codes to process exit codes (0 = success).
int exit_code_for(const std::string& error_code);

}  // namespace stratakit
