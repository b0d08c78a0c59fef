#include "lamens/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace lamens {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "dim",          "grid_n",         "mu",          "lambda",        "lambda_list",      "t_end",
      "dt_init",      "dt_min",         "picard_tol",  "picard_max",    "cfl_constant",     "dealias",
      "skew_symmetric", "initial_condition", "amplitude", "seed",       "spectrum_slope",   "snapshot_path",
      "output_dir",   "snapshot_every", "abort_h1_factor", "hk_orders"};
  return keys;
}

class Reader {
public:
  explicit Reader(std::vector<ConfigViolation>& violations) : violations_(violations) {}

  void bad(const std::string& key, const std::string& message) {
    violations_.push_back({ErrorKind::ConstraintViolation, key, message});
  }

  std::optional<double> number(const std::string& key, const std::string& raw) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc{} || ptr != raw.data() + raw.size() || !std::isfinite(value)) {
      bad(key, "'" + raw + "' is not a finite number");
      return std::nullopt;
    }
    return value;
  }

  std::optional<long long> integer(const std::string& key, const std::string& raw) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc{} || ptr != raw.data() + raw.size()) {
      bad(key, "'" + raw + "' is not an integer");
      return std::nullopt;
    }
    return value;
  }

  std::optional<bool> boolean(const std::string& key, const std::string& raw) {
    std::string lower = raw;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "true" || lower == "1" || lower == "yes" || lower == "on") return true;
    if (lower == "false" || lower == "0" || lower == "no" || lower == "off") return false;
    bad(key, "'" + raw + "' is not a boolean");
    return std::nullopt;
  }

  std::vector<std::string> list(const std::string& raw) {
    std::string body = raw;
    if (!body.empty() && body.front() == '[') {
      body = body.back() == ']' ? body.substr(1, body.size() - 2) : body.substr(1);
    }
    std::vector<std::string> items;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string t = trim(item);
      if (!t.empty()) items.push_back(t);
    }
    return items;
  }

private:
  std::vector<ConfigViolation>& violations_;
};

std::optional<InitialCondition> parse_initial_condition(const std::string& name) {
  static const std::map<std::string, InitialCondition> names{
      {"taylor_green_2d", InitialCondition::TaylorGreen2D},
      {"taylor_green_3d", InitialCondition::TaylorGreen3D},
      {"abc_flow", InitialCondition::AbcFlow},
      {"gradient_cole_hopf", InitialCondition::GradientColeHopf},
      {"random_solenoidal", InitialCondition::RandomSolenoidal},
      {"snapshot_file", InitialCondition::SnapshotFile},
  };
  const auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::string describe(const std::vector<ConfigViolation>& violations) {
  std::ostringstream out;
  out << violations.size() << " configuration problem" << (violations.size() == 1 ? "" : "s") << ":";
  for (const auto& v : violations) out << "\n  [" << to_string(v.kind) << "] " << v.key << ": " << v.message;
  return out.str();
}

ErrorKind dominant_kind(const std::vector<ConfigViolation>& violations) {
  for (const auto& v : violations) {
    if (v.kind == ErrorKind::UnknownKey) return ErrorKind::UnknownKey;
  }
  return ErrorKind::ConstraintViolation;
}

}  // namespace

std::string_view to_string(InitialCondition ic) noexcept {
  switch (ic) {
    case InitialCondition::TaylorGreen2D: return "taylor_green_2d";
    case InitialCondition::TaylorGreen3D: return "taylor_green_3d";
    case InitialCondition::AbcFlow: return "abc_flow";
    case InitialCondition::GradientColeHopf: return "gradient_cole_hopf";
    case InitialCondition::RandomSolenoidal: return "random_solenoidal";
    case InitialCondition::SnapshotFile: return "snapshot_file";
  }
  return "unknown";
}

std::vector<double> RunConfig::lambdas() const {
  if (sweep_mode()) return lambda_list;
  if (lambda) return {*lambda};
  return {};
}

ConfigError::ConfigError(std::vector<ConfigViolation> violations)
    : Error(dominant_kind(violations), describe(violations)), violations_(std::move(violations)) {}

RunConfig parse_config(std::string_view text) {
  std::vector<ConfigViolation> violations;
  Reader read(violations);
  RunConfig cfg;
  std::set<std::string> seen;

  std::istringstream lines{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      violations.push_back({ErrorKind::ConstraintViolation, "line " + std::to_string(line_no),
                            "expected 'key = value', got '" + stripped + "'"});
      continue;
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = unquote(trim(stripped.substr(eq + 1)));
    if (!known_keys().contains(key)) {
      violations.push_back({ErrorKind::UnknownKey, key, "unknown key"});
      continue;
    }
    if (!seen.insert(key).second) {
      read.bad(key, "key given more than once");
      continue;
    }

    if (key == "dim") {
      if (auto v = read.integer(key, value)) cfg.dim = static_cast<int>(*v);
    } else if (key == "grid_n") {
      if (auto v = read.integer(key, value)) cfg.grid_n = static_cast<int>(*v);
    } else if (key == "mu") {
      if (auto v = read.number(key, value)) cfg.mu = *v;
    } else if (key == "lambda") {
      if (auto v = read.number(key, value)) cfg.lambda = *v;
    } else if (key == "lambda_list") {
      for (const auto& item : read.list(value)) {
        if (auto v = read.number(key, item)) cfg.lambda_list.push_back(*v);
      }
      if (cfg.lambda_list.empty()) read.bad(key, "list is empty");
    } else if (key == "t_end") {
      if (auto v = read.number(key, value)) cfg.t_end = *v;
    } else if (key == "dt_init") {
      if (auto v = read.number(key, value)) cfg.stepper.dt_init = *v;
    } else if (key == "dt_min") {
      if (auto v = read.number(key, value)) cfg.stepper.dt_min = *v;
    } else if (key == "picard_tol") {
      if (auto v = read.number(key, value)) cfg.stepper.picard_tol = *v;
    } else if (key == "picard_max") {
      if (auto v = read.integer(key, value)) cfg.stepper.picard_max = static_cast<int>(*v);
    } else if (key == "cfl_constant") {
      if (auto v = read.number(key, value)) cfg.stepper.cfl_constant = *v;
    } else if (key == "dealias") {
      if (auto v = read.boolean(key, value)) cfg.stepper.dealias_enabled = *v;
    } else if (key == "skew_symmetric") {
      if (auto v = read.boolean(key, value)) cfg.stepper.skew_symmetric = *v;
    } else if (key == "initial_condition") {
      if (auto ic = parse_initial_condition(value)) {
        cfg.initial_condition = *ic;
      } else {
        read.bad(key, "unknown initial condition '" + value + "'");
      }
    } else if (key == "amplitude") {
      if (auto v = read.number(key, value)) cfg.amplitude = *v;
    } else if (key == "seed") {
      if (auto v = read.integer(key, value)) {
        if (*v < 0) {
          read.bad(key, "seed must be nonnegative");
        } else {
          cfg.seed = static_cast<std::uint64_t>(*v);
        }
      }
    } else if (key == "spectrum_slope") {
      if (auto v = read.number(key, value)) cfg.spectrum_slope = *v;
    } else if (key == "snapshot_path") {
      cfg.snapshot_path = value;
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "snapshot_every") {
      if (auto v = read.integer(key, value)) cfg.stepper.snapshot_every = static_cast<int>(*v);
    } else if (key == "abort_h1_factor") {
      if (auto v = read.number(key, value)) cfg.stepper.abort_h1_factor = *v;
    } else if (key == "hk_orders") {
      cfg.stepper.hk_orders.clear();
      for (const auto& item : read.list(value)) {
        if (auto v = read.integer(key, item)) cfg.stepper.hk_orders.push_back(static_cast<int>(*v));
      }
    }
  }

  for (const char* required : {"dim", "grid_n", "mu", "t_end"}) {
    if (!seen.contains(required)) read.bad(required, "required key is missing");
  }
  if (!seen.contains("lambda") && !seen.contains("lambda_list")) {
    read.bad("lambda", "either lambda or lambda_list is required");
  }
  if (seen.contains("lambda") && seen.contains("lambda_list")) {
    read.bad("lambda_list", "give either lambda or lambda_list, not both");
  }

  if (cfg.dim != 2 && cfg.dim != 3) read.bad("dim", "must be 2 or 3");
  if (cfg.grid_n < 4 || cfg.grid_n % 2 != 0) read.bad("grid_n", "must be even and at least 4");
  if (!(cfg.mu > 0.0)) read.bad("mu", "must be positive");
  if (!(cfg.t_end > 0.0)) read.bad("t_end", "must be positive");
  auto check_lame = [&](const char* key, double lambda) {
    if (cfg.mu > 0.0 && lambda + cfg.mu < 0.0) {
      read.bad(key, "Lamé constants must satisfy mu > 0 and lambda + mu >= 0 (lambda=" + format_double(lambda) +
                        ", mu=" + format_double(cfg.mu) + ")");
    }
  };
  if (cfg.lambda) check_lame("lambda", *cfg.lambda);
  for (std::size_t i = 0; i < cfg.lambda_list.size(); ++i) {
    check_lame("lambda_list", cfg.lambda_list[i]);
    if (i > 0 && !(cfg.lambda_list[i] > cfg.lambda_list[i - 1])) {
      read.bad("lambda_list", "values must be strictly increasing");
    }
  }

  const StepperConfig& s = cfg.stepper;
  if (!(s.dt_min > 0.0)) read.bad("dt_min", "must be positive");
  if (!(s.dt_init > s.dt_min)) read.bad("dt_init", "must exceed dt_min");
  if (!(s.picard_tol > 0.0)) read.bad("picard_tol", "must be positive");
  if (s.picard_max < 2) read.bad("picard_max", "must be at least 2");
  if (!(s.cfl_constant > 0.0)) read.bad("cfl_constant", "must be positive");
  if (!(s.abort_h1_factor > 1.0)) read.bad("abort_h1_factor", "must exceed 1");
  if (s.snapshot_every < 1) read.bad("snapshot_every", "must be at least 1");
  for (int k : s.hk_orders) {
    if (k < 0) read.bad("hk_orders", "orders must be nonnegative");
  }

  switch (cfg.initial_condition) {
    case InitialCondition::TaylorGreen2D:
      if (cfg.dim != 2) read.bad("initial_condition", "taylor_green_2d needs dim = 2");
      break;
    case InitialCondition::TaylorGreen3D:
    case InitialCondition::AbcFlow:
      if (cfg.dim != 3) read.bad("initial_condition", std::string(to_string(cfg.initial_condition)) + " needs dim = 3");
      break;
    case InitialCondition::SnapshotFile:
      if (cfg.snapshot_path.empty()) read.bad("snapshot_path", "required for initial_condition = snapshot_file");
      break;
    case InitialCondition::RandomSolenoidal:
      if (!seen.contains("seed")) read.bad("seed", "required for initial_condition = random_solenoidal");
      break;
    case InitialCondition::GradientColeHopf:
      break;
  }

  if (!violations.empty()) throw ConfigError(std::move(violations));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  out << "dim = " << c.dim << "\n";
  out << "grid_n = " << c.grid_n << "\n";
  out << "mu = " << format_double(c.mu) << "\n";
  if (c.sweep_mode()) {
    out << "lambda_list = [";
    for (std::size_t i = 0; i < c.lambda_list.size(); ++i) out << (i ? ", " : "") << format_double(c.lambda_list[i]);
    out << "]\n";
  } else if (c.lambda) {
    out << "lambda = " << format_double(*c.lambda) << "\n";
  }
  out << "t_end = " << format_double(c.t_end) << "\n";
  out << "dt_init = " << format_double(c.stepper.dt_init) << "\n";
  out << "dt_min = " << format_double(c.stepper.dt_min) << "\n";
  out << "picard_tol = " << format_double(c.stepper.picard_tol) << "\n";
  out << "picard_max = " << c.stepper.picard_max << "\n";
  out << "cfl_constant = " << format_double(c.stepper.cfl_constant) << "\n";
  out << "dealias = " << (c.stepper.dealias_enabled ? "true" : "false") << "\n";
  out << "skew_symmetric = " << (c.stepper.skew_symmetric ? "true" : "false") << "\n";
  out << "initial_condition = " << to_string(c.initial_condition) << "\n";
  out << "amplitude = " << format_double(c.amplitude) << "\n";
  out << "seed = " << c.seed << "\n";
  out << "spectrum_slope = " << format_double(c.spectrum_slope) << "\n";
  if (!c.snapshot_path.empty()) out << "snapshot_path = \"" << c.snapshot_path << "\"\n";
  out << "output_dir = \"" << c.output_dir << "\"\n";
  out << "snapshot_every = " << c.stepper.snapshot_every << "\n";
  out << "abort_h1_factor = " << format_double(c.stepper.abort_h1_factor) << "\n";
  out << "hk_orders = [";
  for (std::size_t i = 0; i < c.stepper.hk_orders.size(); ++i) out << (i ? ", " : "") << c.stepper.hk_orders[i];
  out << "]\n";
  return out.str();
}

}  // namespace lamens
