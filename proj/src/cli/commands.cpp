#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "ekman/cli.hpp"

namespace ekman::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void write_json(const fs::path& path, const json& doc) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error(path.string() + ": cannot open for writing");
  os << doc.dump(2) << '\n';
  if (!os) throw std::runtime_error(path.string() + ": write failed");
}

struct RunOutcome {
  int code = kOk;
  json summary;
};

// Runs one configured simulation into out_dir. Output errors surface as exceptions.
RunOutcome run_into(const RunConfig& config, const fs::path& out_dir, std::ostream& err) {
  fs::create_directories(out_dir);
  const SimulationResult result = run_simulation(config.sim);
  RunOutcome o;
  o.summary = summarize(config, result);
  if (const auto& cfl = o.summary["cfl"]; cfl.is_number() && cfl.get<double>() > 0.5) {
    err << "warning: CFL number " << cfl.get<double>() << " exceeds 0.5\n";
  }
  write_records_csv(out_dir / "records.csv", result.records, config.sim.besov_indices.size());
  write_json(out_dir / "summary.json", o.summary);
  if (!result.completed) {
    err << "run aborted at step " << result.steps + 1 << ": " << result.failure << '\n';
    o.code = kInvariantAbort;
  }
  return o;
}

std::string directory_name(std::size_t index, const std::string& value) {
  std::string safe;
  for (char c : value) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_';
    safe += ok ? c : '_';
  }
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%03zu_", index);
  return prefix + safe;
}

}  // namespace

unsigned sweep_threads() {
  if (const char* env = std::getenv("THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_run(const fs::path& config_path, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    const RunOutcome o = run_into(config, out_dir, err);
    out << "wrote " << (out_dir / "records.csv").string() << " (" << o.summary["records"].get<std::size_t>()
        << " records) and " << (out_dir / "summary.json").string() << '\n';
    return o.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvariantAbort;
  }
}

int cmd_check(const fs::path& config_path, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  const CheckOutcome check = evaluate_conditions(config);
  json reports = json::array();
  for (const auto& r : check.reports) reports.push_back(to_json(r));
  json doc = {{"reports", reports}, {"satisfied", check.satisfied}};
  if (!check.note.empty()) doc["note"] = check.note;
  out << doc.dump(2) << '\n';
  return check.satisfied ? kOk : kConditionFailed;
}

int cmd_sweep(const fs::path& config_path, const std::string& param, const std::vector<std::string>& values,
              const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  std::vector<RunConfig> configs;
  try {
    if (values.empty()) throw ConfigError("sweep: empty value list");
    if (std::set<std::string>(values.begin(), values.end()).size() != values.size()) {
      throw ConfigError("sweep: repeated value");
    }
    const json base = read_json_file(config_path);
    (void)parse_config(base);
    for (const auto& v : values) {
      json doc = base;
      set_dotted(doc, param, v);
      configs.push_back(parse_config(doc));
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const json::exception& e) {
    err << "config error: " << param << ": " << e.what() << '\n';
    return kConfigError;
  }

  try {
    fs::create_directories(out_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvariantAbort;
  }

  std::vector<RunOutcome> outcomes(configs.size());
  std::vector<std::string> messages(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      std::ostringstream run_err;
      try {
        outcomes[i] = run_into(configs[i], out_dir / directory_name(i, values[i]), run_err);
      } catch (const std::exception& e) {
        run_err << "error: " << e.what() << '\n';
        outcomes[i].code = kInvariantAbort;
      }
      messages[i] = run_err.str();
    }
  };
  const unsigned threads = std::min<std::size_t>(sweep_threads(), configs.size());
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  json runs = json::object();
  int code = kOk;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!messages[i].empty()) err << "[" << param << "=" << values[i] << "] " << messages[i];
    const json& s = outcomes[i].summary;
    json entry = {{"dir", directory_name(i, values[i])}, {"exit_code", outcomes[i].code}};
    if (!s.is_null()) {
      entry["completed"] = s["completed"];
      const json& fit = s["decay_fits"]["l2_u"];
      entry["l2_rate"] = fit.contains("rate") ? fit["rate"] : json(nullptr);
      entry["conditions_satisfied"] = s["conditions"]["satisfied"];
      for (const auto& r : s["conditions"]["reports"]) {
        entry[r["theorem_id"].get<std::string>() + "_lhs"] = r["lhs"];
      }
    }
    runs[values[i]] = entry;
    if (outcomes[i].code != kOk) code = kInvariantAbort;
  }
  const json summary = {{"param", param}, {"values", values}, {"runs", runs}};
  try {
    write_json(out_dir / "sweep_summary.json", summary);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvariantAbort;
  }
  out << "swept " << param << " over " << values.size() << " values with " << threads << " thread(s); wrote "
      << (out_dir / "sweep_summary.json").string() << '\n';
  return code;
}

}  // namespace ekman::cli
