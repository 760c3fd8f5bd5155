#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ustat {

inline constexpr const char* kToolVersion = "ustat 0.1.0";

// Parsed command line. One struct covers all subcommands; each handler reads
// the fields its command defines and ignores the rest.
struct RunConfig {
  std::string command;
  std::string kernel_path;
  std::string seq_path;
  std::string corpus_path;
  int theorem = 1;
  double p = 2.0;
  std::optional<std::int64_t> n;
  std::vector<std::int64_t> n_grid;
  double gamma = 1.0;
  double s = 1.0;
  int k = 0;
  int l = 0;
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
  bool absolute = true;  // --signed clears it
  std::optional<double> class_budget;  // --budget, else USTAT_BUDGET, else default
  std::optional<double> eval_budget;   // --eval-budget
  std::int64_t mc_outer = 20000;
  std::int64_t mc_inner = 4000;
  std::string format = "json";  // json|csv
  std::string output_path;      // empty: stdout
};

struct RunOutcome {
  nlohmann::json report;
  std::string csv;  // filled instead of report text when format == "csv"
  int exit_code = 0;
};

// Thrown by parse_args after CLI11 has already printed its help text or
// diagnostic; main returns `code` without printing anything further.
struct CliExit {
  int code = 0;
};

// Grid syntax: "3,5,9" (explicit), "3:12" (step 1), "4:20:4" (arithmetic
// step), "8:128:x2" (geometric, integer factor >= 2). Entries must end up
// strictly increasing and >= 1.
std::vector<std::int64_t> parse_n_grid(const std::string& text);

// Decimal or 0x-prefixed hex.
std::uint64_t parse_seed(const std::string& text);

// Exit-code policy on a command's results: 2 when a constant-free invariant
// is violated (a negative verify slack beyond tolerance, a p = 2
// orthogonality deviation, a negative sequence-inequality slack, or a forced
// cross-level ratio above 1), 0 otherwise. Usage and IO failures never reach
// here; main maps those to 1.
int violation_exit_code(const std::string& command, const nlohmann::json& results);

// Throws CliExit after printing usage diagnostics (or help) itself.
RunConfig parse_args(int argc, const char* const* argv);

// Executes the command and assembles the report envelope
// {command, config, version, wall_time_seconds, results}.
RunOutcome run(const RunConfig& config);

}  // namespace ustat
