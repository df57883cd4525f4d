// Declarative experiment runner.
//
// A Scenario names a checker, its parameters, and optionally the verdict
// it is expected to produce; run_scenario dispatches, wraps the outcome
// in a RunReport, and the emitters render it as JSON or markdown.  With
// fixed seeds the whole pipeline is reproducible byte for byte, so the
// bundled scenario suite doubles as a regression harness.
#pragma once

#include <filesystem>
#include <optional>

#include "cstar/serialize.hpp"

namespace cstar {

inline constexpr const char* kToolVersion = "1.0.0";

struct Scenario {
  std::string name;
  std::string checker;  // one of known_checkers()
  std::string claim;    // human-readable statement the run exercises
  Json params = Json::object();
  std::string expect;  // optional: pass|fail|evidence|accept|reject
};

const std::vector<std::string>& known_checkers();

Scenario scenario_from_json(const Json& j);
Scenario load_scenario(const std::filesystem::path& file);
Json to_json(const Scenario& s);

struct RunOptions {
  std::optional<std::uint64_t> seed_override;  // replaces the run seed
  std::optional<double> tol_override;          // replaces the default tol
  bool include_timing = false;  // wall clock is off by default so reports
                                // stay byte-identical across runs
};

struct RunReport {
  Scenario scenario;
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;  // effective run seed
  bool is_transcript = false;
  CheckReport report;    // payload when is_transcript is false
  Transcript transcript; // payload when is_transcript is true
  std::string verdict;   // pass|fail|evidence or accept|reject
  bool matched = true;   // verdict vs scenario.expect, true when no expect
  double wall_seconds = 0.0;
};

RunReport run_scenario(const Scenario& s, const RunOptions& opt = {});

Json to_json(const RunReport& r, bool include_timing = false);
std::string to_markdown(const RunReport& r);

// 0 when the verdict matched the expectation (or none was stated), 1
// otherwise.  Configuration and numerical failures are exceptions.
int exit_code(const RunReport& r);

// Bundled scenario files in a directory, sorted by filename.
std::vector<std::filesystem::path> list_scenarios(
    const std::filesystem::path& dir);

}  // namespace cstar
