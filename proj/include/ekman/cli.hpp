#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ekman/diagnostics.hpp"
#include "ekman/dynamics.hpp"

namespace ekman::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kInvariantAbort = 2, kConditionFailed = 3 };

/// Raised for malformed or out-of-range configuration; the message starts with the key path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  SimConfig sim;
  SmallnessParams smallness;
};

/// Strict parse: unknown keys and wrong types are rejected. Missing keys take
/// their defaults. Runs every module's validation.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);
/// Canonical JSON form of a parsed config; parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& config);

/// Sets `dotted.key` in `doc` to `value`, parsed as JSON when possible and
/// kept as a string otherwise. Intermediate objects are created as needed.
void set_dotted(nlohmann::json& doc, const std::string& dotted_key, const std::string& value);

// Output.
std::string format_number(double v);  // %.17e
std::vector<std::string> csv_columns(std::size_t tracked);
void write_records_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records,
                       std::size_t tracked);
void write_records_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records,
                       std::size_t tracked);
nlohmann::json to_json(const ConditionReport& report);
nlohmann::json to_json(const DecayFit& fit);
nlohmann::json to_json(const BkmReport& report);

/// Condition reports that apply to the configured gamma, and whether the
/// applicable theorem holds (gamma = 1: either the planar or the general
/// condition; gamma = 0: the general condition).
struct CheckOutcome {
  std::vector<ConditionReport> reports;
  bool satisfied = false;
  std::string note;  // set when no report could be evaluated
};
CheckOutcome evaluate_conditions(const RunConfig& config);

/// Everything summary.json holds except the config echo.
nlohmann::json summarize(const RunConfig& config, const SimulationResult& result);

// Subcommands. Human-readable output goes to `out`, diagnostics to `err`.
int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
            std::ostream& out, std::ostream& err);
int cmd_check(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::filesystem::path& config_path, const std::string& param,
              const std::vector<std::string>& values, const std::filesystem::path& out_dir,
              std::ostream& out, std::ostream& err);

struct VerifyCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  bool full = false;
  /// Perturbs one filter profile before the harmonic-analysis checks.
  bool inject_fault = false;
};

std::vector<VerifyCheck> run_verification(const VerifyOptions& options);
int cmd_verify(const std::string& level, bool inject_fault, std::ostream& out, std::ostream& err);

/// THREADS if set to a positive integer, else the hardware concurrency (at least 1).
unsigned sweep_threads();

}  // namespace ekman::cli
