#include "bhs/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "bhs/errors.hpp"

namespace bhs {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view raw) {
  const std::string_view text = trim(raw);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw ConfigError(std::string(key), "malformed number '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view key, std::string_view raw) {
  std::vector<double> out;
  std::string_view rest = trim(raw);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    out.push_back(parse_number(key, rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

// Key/value pairs of one document; every lookup consumes its key so that
// leftovers can be reported as unknown.
class Document {
 public:
  explicit Document(std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
      ++line_no;
      const auto nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
      }
      const std::string key(trim(line.substr(0, eq)));
      if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
      if (!entries_.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
        throw ConfigError(key, "duplicate key");
      }
    }
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    std::string value = std::move(it->second);
    entries_.erase(it);
    return value;
  }

  void number(const std::string& key, double& target, bool required) {
    if (auto raw = take(key)) {
      target = parse_number(key, *raw);
    } else if (required) {
      throw ConfigError(key, "missing required key");
    }
  }

  void reject_leftovers() const {
    if (!entries_.empty()) throw ConfigError(entries_.begin()->first, "unknown key");
  }

 private:
  std::map<std::string, std::string> entries_;
};

RunConfig read_run(Document& doc, Defaults defaults) {
  const bool strict = defaults == Defaults::Disabled;
  RunConfig cfg;
  cfg.output.dir = default_output_root();

  double k = cfg.model.k;
  double nu = cfg.model.nu;
  double p_max = cfg.model.p_max();
  doc.number("model.k", k, strict);
  doc.number("model.nu", nu, strict);
  doc.number("model.p_max", p_max, strict);
  if (auto law = doc.take("model.growth"); law && *law != "linear") {
    throw ConfigError("model.growth", "only the linear growth law is available");
  }
  if (!(k > 2.0)) throw ConfigError("model.k", "k must exceed 2");
  if (!(nu >= 0.0)) throw ConfigError("model.nu", "nu must be nonnegative");
  if (!(p_max > 0.0)) throw ConfigError("model.p_max", "p_max must be positive");
  cfg.model = ModelParams::linear(k, nu, p_max);

  doc.number("grid.L", cfg.half_width, strict);
  doc.number("grid.dx", cfg.dx, strict);
  if (auto bc = doc.take("grid.bc")) {
    if (*bc == "robin") {
      cfg.bc = BoundaryCondition::robin();
    } else if (*bc == "dirichlet") {
      cfg.bc = BoundaryCondition::dirichlet();
    } else {
      throw ConfigError("grid.bc", "expected robin or dirichlet");
    }
  }

  doc.number("time.cfl", cfg.time.cfl, false);
  doc.number("time.dt_max", cfg.time.dt_max, false);
  doc.number("time.t_end", cfg.time.t_end, strict);

  doc.number("initial.a", cfg.initial.a, false);
  doc.number("initial.b", cfg.initial.b, false);

  if (auto dir = doc.take("output.dir")) cfg.output.dir = *dir;
  doc.number("output.snapshot_every", cfg.output.snapshot_every, false);
  if (auto times = doc.take("output.snapshot_times")) {
    cfg.output.snapshot_times = parse_list("output.snapshot_times", *times);
  }
  doc.number("output.diagnostics_every", cfg.output.diagnostics_every, false);
  cfg.time.snapshot_every = cfg.output.snapshot_every;

  doc.number("diagnostics.beta1", cfg.diagnostics.beta1, false);
  doc.number("diagnostics.beta2", cfg.diagnostics.beta2, false);
  doc.number("diagnostics.fit_start", cfg.fit_start, false);
  doc.number("diagnostics.fit_end", cfg.fit_end, false);
  return cfg;
}

}  // namespace

std::string default_output_root() {
  const char* env = std::getenv("BHS_OUTPUT_ROOT");
  return env && *env ? std::string(env) : std::string("bhs_out");
}

void RunConfig::validate() const {
  try {
    model.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("model", e.what());
  }
  if (!(half_width > 0.0)) throw ConfigError("grid.L", "must be positive");
  if (!(dx > 0.0)) throw ConfigError("grid.dx", "must be positive");
  if (2.0 * half_width / dx < 4.0) throw ConfigError("grid.dx", "grid needs at least 4 cells");
  if (2.0 * half_width / dx > 1e8) throw ConfigError("grid.dx", "grid exceeds 1e8 cells");
  if (!(time.cfl > 0.0 && time.cfl <= 1.0)) throw ConfigError("time.cfl", "must lie in (0, 1]");
  if (!(time.dt_max > 0.0)) throw ConfigError("time.dt_max", "must be positive");
  if (!(time.t_end >= 0.0)) throw ConfigError("time.t_end", "must be >= 0");
  if (!(initial.a < initial.b)) throw ConfigError("initial.a", "need a < b");
  if (!(initial.a > -half_width && initial.b < half_width)) {
    throw ConfigError("initial.b", "[a, b] must lie inside (-L, L)");
  }
  if (output.dir.empty()) throw ConfigError("output.dir", "must not be empty");
  if (!(output.snapshot_every >= 0.0)) throw ConfigError("output.snapshot_every", "must be >= 0");
  if (!(output.diagnostics_every >= 0.0)) {
    throw ConfigError("output.diagnostics_every", "must be >= 0");
  }
  for (double t : output.snapshot_times) {
    if (!(t >= 0.0)) throw ConfigError("output.snapshot_times", "times must be >= 0");
  }
  if (!(diagnostics.beta1 > 0.0)) throw ConfigError("diagnostics.beta1", "must be positive");
  if (!(diagnostics.beta2 > 0.0)) throw ConfigError("diagnostics.beta2", "must be positive");
  if (!model.is_darcy() && !(diagnostics.beta2 < min_limit_pressure(model))) {
    throw ConfigError("diagnostics.beta2", "must be below p_m = H(0)");
  }
  if (!(fit_lo() <= fit_hi())) throw ConfigError("diagnostics.fit_start", "fit window is empty");
}

RunConfig SweepConfig::member(double value) const {
  RunConfig cfg = base;
  if (axis == SweepAxis::K) {
    cfg.model.k = value;
  } else {
    cfg.model.nu = value;
  }
  cfg.output.dir = base.output.dir + "/" + member_name(value);
  return cfg;
}

std::string SweepConfig::member_name(double value) const {
  std::ostringstream os;
  os << (axis == SweepAxis::K ? "k_" : "nu_") << value;
  return os.str();
}

RunConfig parse_config(std::string_view text, Defaults defaults) {
  Document doc(text);
  RunConfig cfg = read_run(doc, defaults);
  doc.reject_leftovers();
  cfg.validate();
  return cfg;
}

SweepConfig parse_sweep_config(std::string_view text, Defaults defaults) {
  Document doc(text);
  SweepConfig sweep;
  const auto axis = doc.take("sweep.axis");
  const auto values = doc.take("sweep.values");
  sweep.base = read_run(doc, defaults);
  doc.reject_leftovers();
  sweep.base.validate();

  if (!axis) throw ConfigError("sweep.axis", "missing required key");
  if (*axis == "k") {
    sweep.axis = SweepAxis::K;
  } else if (*axis == "nu") {
    sweep.axis = SweepAxis::Nu;
  } else {
    throw ConfigError("sweep.axis", "expected k or nu");
  }
  if (!values) throw ConfigError("sweep.values", "missing required key");
  sweep.values = parse_list("sweep.values", *values);
  if (sweep.values.empty()) throw ConfigError("sweep.values", "values must be nonempty");
  for (double v : sweep.values) {
    if (sweep.axis == SweepAxis::K && !(v > 2.0)) {
      throw ConfigError("sweep.values", "k must exceed 2");
    }
    if (sweep.axis == SweepAxis::Nu && !(v >= 0.0)) {
      throw ConfigError("sweep.values", "nu must be nonnegative");
    }
    sweep.member(v).validate();
  }
  return sweep;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bhs
