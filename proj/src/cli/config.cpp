#include <cmath>
#include <fstream>
#include <set>

#include "ekman/cli.hpp"

namespace ekman::cli {

using nlohmann::json;

namespace {

// Reads the members of one JSON object and rejects any it was not asked about.
class Section {
 public:
  Section(const json& doc, std::string path) : path_(std::move(path)) {
    if (!doc.is_object()) fail(path_.empty() ? "config" : path_, "must be a JSON object");
    doc_ = &doc;
  }

  [[nodiscard]] std::string key(const std::string& name) const {
    return path_.empty() ? name : path_ + "." + name;
  }

  const json* find(const std::string& name) {
    seen_.insert(name);
    auto it = doc_->find(name);
    return it == doc_->end() ? nullptr : &*it;
  }

  double number(const std::string& name, double fallback) {
    const json* v = find(name);
    if (v == nullptr) return fallback;
    return as_number(*v, key(name));
  }

  std::optional<double> optional_number(const std::string& name) {
    const json* v = find(name);
    if (v == nullptr || v->is_null()) return std::nullopt;
    return as_number(*v, key(name));
  }

  long long integer(const std::string& name, long long fallback) {
    const json* v = find(name);
    if (v == nullptr) return fallback;
    if (v->is_number_integer() || v->is_number_unsigned()) return v->get<long long>();
    if (v->is_number_float()) {
      const double d = v->get<double>();
      if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    fail(key(name), "must be an integer");
  }

  std::string string(const std::string& name, const std::string& fallback) {
    const json* v = find(name);
    if (v == nullptr) return fallback;
    if (!v->is_string()) fail(key(name), "must be a string");
    return v->get<std::string>();
  }

  Section child(const std::string& name) {
    static const json kEmpty = json::object();
    const json* v = find(name);
    return Section(v == nullptr ? kEmpty : *v, key(name));
  }

  void finish() const {
    for (const auto& [k, _] : doc_->items()) {
      if (!seen_.contains(k)) fail(key(k), "unknown key");
    }
  }

  [[noreturn]] static void fail(const std::string& key, const std::string& what) {
    throw ConfigError(key + ": " + what);
  }

  static double as_number(const json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string() && v.get<std::string>() == "inf") return kInf;
    fail(key, "must be a number");
  }

 private:
  const json* doc_ = nullptr;
  std::string path_;
  std::set<std::string> seen_;
};

json exponent_json(double v) { return std::isinf(v) ? json("inf") : json(v); }

BesovIndex parse_index(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3) Section::fail(key, "must be an [s, p, r] triple");
  BesovIndex idx{Section::as_number(v[0], key + "[0]"), Section::as_number(v[1], key + "[1]"),
                 Section::as_number(v[2], key + "[2]")};
  if (!std::isfinite(idx.s)) Section::fail(key, "s must be finite");
  if (!(idx.p >= 1.0)) Section::fail(key, "p must be >= 1");
  if (!(idx.r >= 1.0)) Section::fail(key, "r must be >= 1");
  return idx;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  RunConfig cfg;
  SimConfig& sim = cfg.sim;
  Section root(doc, "");

  {
    Section s = root.child("physics");
    sim.alpha = s.number("alpha", sim.alpha);
    const long long gamma = s.integer("gamma", sim.gamma);
    if (gamma != 0 && gamma != 1) Section::fail("physics.gamma", "must be 0 or 1");
    sim.gamma = static_cast<int>(gamma);
    s.finish();
  }
  {
    Section s = root.child("grid");
    const long long n = s.integer("n", sim.grid.n);
    if (n < 8 || n > (1 << 14)) Section::fail("grid.n", "must be a power of two in [8, 16384]");
    sim.grid.n = static_cast<int>(n);
    sim.grid.dealias_fraction = s.number("dealias_fraction", sim.grid.dealias_fraction);
    s.finish();
  }
  {
    Section s = root.child("time");
    sim.dt = s.number("dt", sim.dt);
    sim.t_end = s.number("t_end", sim.t_end);
    const long long every = s.integer("record_every", sim.record_every);
    if (every < 1 || every > (1LL << 30)) Section::fail("time.record_every", "must be >= 1");
    sim.record_every = static_cast<int>(every);
    s.finish();
  }
  {
    Section s = root.child("ic");
    const std::string u_name = s.string("u_preset", to_string(sim.u0.kind));
    const auto u_kind = parse_velocity_kind(u_name);
    if (!u_kind) Section::fail("ic.u_preset", "unknown preset '" + u_name + "'");
    sim.u0.kind = *u_kind;
    {
      Section p = s.child("u_params");
      sim.u0.amplitude = p.number("amplitude", sim.u0.amplitude);
      sim.u0.shell = static_cast<int>(p.integer("shell", sim.u0.shell));
      p.finish();
    }
    const std::string r_name = s.string("rho_preset", to_string(sim.rho0.kind));
    const auto r_kind = parse_density_kind(r_name);
    if (!r_kind) Section::fail("ic.rho_preset", "unknown preset '" + r_name + "'");
    sim.rho0.kind = *r_kind;
    {
      Section p = s.child("rho_params");
      sim.rho0.value = p.number("value", sim.rho0.value);
      sim.rho0.amplitude = p.number("amplitude", sim.rho0.amplitude);
      sim.rho0.kx = static_cast<int>(p.integer("kx", sim.rho0.kx));
      sim.rho0.ky = static_cast<int>(p.integer("ky", sim.rho0.ky));
      sim.rho0.width = p.number("width", sim.rho0.width);
      sim.rho0.lower = p.optional_number("lower");
      sim.rho0.upper = p.optional_number("upper");
      p.finish();
    }
    const long long seed = s.integer("seed", static_cast<long long>(sim.u0.seed));
    if (seed < 0) Section::fail("ic.seed", "must be >= 0");
    sim.u0.seed = static_cast<std::uint64_t>(seed);
    s.finish();
  }
  {
    Section s = root.child("pressure");
    sim.pressure.tol = s.number("tol", sim.pressure.tol);
    const long long it = s.integer("max_iter", sim.pressure.max_iter);
    if (it < 1 || it > (1LL << 30)) Section::fail("pressure.max_iter", "must be >= 1");
    sim.pressure.max_iter = static_cast<int>(it);
    s.finish();
  }
  {
    Section s = root.child("track");
    if (const json* v = s.find("besov_indices")) {
      if (!v->is_array()) Section::fail("track.besov_indices", "must be an array of [s, p, r] triples");
      sim.besov_indices.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        sim.besov_indices.push_back(parse_index((*v)[i], "track.besov_indices[" + std::to_string(i) + "]"));
      }
    }
    s.finish();
  }
  {
    Section s = root.child("smallness");
    cfg.smallness.K = s.number("K", cfg.smallness.K);
    cfg.smallness.eta = s.number("eta", cfg.smallness.eta);
    cfg.smallness.eta_2d = s.number("eta_2d", cfg.smallness.eta_2d);
    cfg.smallness.delta = s.number("delta", cfg.smallness.delta);
    s.finish();
  }
  root.finish();

  try {
    sim.validate();
    cfg.smallness.validate();
    if (sim.t_end > 0.0 && std::abs(sim.step_count() * sim.dt - sim.t_end) > 1e-9 * sim.t_end) {
      throw std::invalid_argument("time.t_end: must be an integer multiple of time.dt");
    }
    // Build the initial data once so preset parameters are range-checked here.
    (void)make_velocity(sim.grid, sim.u0);
    (void)make_density(sim.grid, sim.rho0);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) { return parse_config(read_json_file(path)); }

json to_json(const RunConfig& config) {
  const SimConfig& s = config.sim;
  json rho_params = {{"value", s.rho0.value},
                     {"amplitude", s.rho0.amplitude},
                     {"kx", s.rho0.kx},
                     {"ky", s.rho0.ky},
                     {"width", s.rho0.width}};
  if (s.rho0.lower) rho_params["lower"] = *s.rho0.lower;
  if (s.rho0.upper) rho_params["upper"] = *s.rho0.upper;
  json indices = json::array();
  for (const auto& idx : s.besov_indices) {
    indices.push_back(json::array({idx.s, exponent_json(idx.p), exponent_json(idx.r)}));
  }
  return {
      {"physics", {{"alpha", s.alpha}, {"gamma", s.gamma}}},
      {"grid", {{"n", s.grid.n}, {"dealias_fraction", s.grid.dealias_fraction}}},
      {"time", {{"dt", s.dt}, {"t_end", s.t_end}, {"record_every", s.record_every}}},
      {"ic",
       {{"u_preset", to_string(s.u0.kind)},
        {"u_params", {{"amplitude", s.u0.amplitude}, {"shell", s.u0.shell}}},
        {"rho_preset", to_string(s.rho0.kind)},
        {"rho_params", rho_params},
        {"seed", s.u0.seed}}},
      {"pressure", {{"tol", s.pressure.tol}, {"max_iter", s.pressure.max_iter}}},
      {"track", {{"besov_indices", indices}}},
      {"smallness",
       {{"K", config.smallness.K},
        {"eta", config.smallness.eta},
        {"eta_2d", config.smallness.eta_2d},
        {"delta", config.smallness.delta}}},
  };
}

void set_dotted(json& doc, const std::string& dotted_key, const std::string& value) {
  if (dotted_key.empty()) throw ConfigError("sweep parameter: empty key");
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;
  }
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted_key.find('.', start);
    const std::string part = dotted_key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError(dotted_key + ": malformed key");
    if (!node->is_object()) throw ConfigError(dotted_key + ": '" + part + "' is not inside an object");
    if (dot == std::string::npos) {
      (*node)[part] = parsed;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

}  // namespace ekman::cli
