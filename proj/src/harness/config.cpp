#include "leibenson/harness/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "leibenson/errors.hpp"

namespace leibenson::harness {

std::string to_string(Campaign campaign) {
  switch (campaign) {
    case Campaign::solve:
      return "solve";
    case Campaign::decay_fit:
      return "decay-fit";
    case Campaign::fujita_scan:
      return "fujita-scan";
    case Campaign::ladder:
      return "ladder";
    case Campaign::verify_inequality:
      return "verify-inequality";
  }
  return "unknown";
}

std::optional<Campaign> parse_campaign(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '_', '-');
  for (Campaign c : {Campaign::solve, Campaign::decay_fit, Campaign::fujita_scan, Campaign::ladder,
                     Campaign::verify_inequality}) {
    if (key == to_string(c)) {
      return c;
    }
  }
  return std::nullopt;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
    ++a;
  }
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
    --b;
  }
  return std::string(s.substr(a, b - a));
}

std::optional<double> parse_number(const std::string& text) {
  std::string lower = trim(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "+inf" || lower == "infinity" || lower == ".inf") {
    return kInfinity;
  }
  if (lower.empty()) {
    return std::nullopt;
  }
  std::size_t used = 0;
  try {
    const double value = std::stod(lower, &used);
    if (used == lower.size()) {
      return value;
    }
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

/// Typed reader over a YAML map that records every problem instead of throwing.
class Reader {
 public:
  Reader(YAML::Node node, std::string prefix, std::vector<std::string>& errors)
      : node_(std::move(node)), prefix_(std::move(prefix)), errors_(errors) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      error("", "expected a table");
      node_ = YAML::Node(YAML::NodeType::Map);
    }
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_ && node_.IsMap() && node_[key] && !node_[key].IsNull();
  }

  YAML::Node raw(const std::string& key) {
    seen_.insert(key);
    return has(key) ? node_[key] : YAML::Node();
  }

  Reader child(const std::string& key) { return Reader(raw(key), qualified(key) + ".", errors_); }

  void number(const std::string& key, double& out) {
    if (!has(key)) {
      return;
    }
    const YAML::Node value = node_[key];
    if (!value.IsScalar()) {
      error(key, "expected a number");
      return;
    }
    if (auto parsed = parse_number(value.Scalar())) {
      out = *parsed;
    } else {
      error(key, "expected a number, got '" + value.Scalar() + "'");
    }
  }

  void number(const std::string& key, std::optional<double>& out) {
    if (has(key)) {
      double v = 0.0;
      number(key, v);
      out = v;
    }
  }

  template <class Int>
  void integer(const std::string& key, Int& out) {
    if (!has(key)) {
      return;
    }
    double v = 0.0;
    number(key, v);
    if (!std::isfinite(v) || v < 0.0 || v != std::floor(v)) {
      error(key, "expected a non-negative integer");
      return;
    }
    out = static_cast<Int>(v);
  }

  void boolean(const std::string& key, bool& out) {
    if (!has(key)) {
      return;
    }
    try {
      out = node_[key].as<bool>();
    } catch (const YAML::Exception&) {
      error(key, "expected true or false");
    }
  }

  void boolean(const std::string& key, std::optional<bool>& out) {
    if (has(key)) {
      bool v = false;
      boolean(key, v);
      out = v;
    }
  }

  void text(const std::string& key, std::string& out) {
    if (!has(key)) {
      return;
    }
    if (!node_[key].IsScalar()) {
      error(key, "expected a string");
      return;
    }
    out = node_[key].Scalar();
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    if (!has(key)) {
      return;
    }
    const YAML::Node list = node_[key];
    if (!list.IsSequence()) {
      error(key, "expected a list of numbers");
      return;
    }
    out.clear();
    for (const auto& item : list) {
      auto parsed = item.IsScalar() ? parse_number(item.Scalar()) : std::nullopt;
      if (!parsed) {
        error(key, "expected a list of numbers");
        return;
      }
      out.push_back(*parsed);
    }
  }

  void strings(const std::string& key, std::vector<std::string>& out) {
    if (!has(key)) {
      return;
    }
    const YAML::Node list = node_[key];
    if (!list.IsSequence()) {
      error(key, "expected a list of strings");
      return;
    }
    out.clear();
    for (const auto& item : list) {
      out.push_back(item.IsScalar() ? item.Scalar() : std::string());
    }
  }

  template <std::size_t K>
  void pair(const std::string& key, std::array<double, K>& out) {
    if (!has(key)) {
      return;
    }
    std::vector<double> values;
    numbers(key, values);
    if (values.size() != K) {
      error(key, "expected " + std::to_string(K) + " numbers");
      return;
    }
    std::copy(values.begin(), values.end(), out.begin());
  }

  template <std::size_t K>
  void pair(const std::string& key, std::optional<std::array<double, K>>& out) {
    if (has(key)) {
      std::array<double, K> v{};
      pair(key, v);
      out = v;
    }
  }

  void error(const std::string& key, const std::string& message) {
    errors_.push_back(key.empty() ? prefix_ + ": " + message : qualified(key) + ": " + message);
  }

  /// Reports keys that were never asked for.
  void reject_unknown() {
    if (!node_ || !node_.IsMap()) {
      return;
    }
    for (const auto& entry : node_) {
      const std::string key = entry.first.as<std::string>();
      if (!seen_.contains(key)) {
        errors_.push_back("unknown key '" + qualified(key) + "'");
      }
    }
  }

 private:
  std::string qualified(const std::string& key) const { return prefix_ + key; }

  YAML::Node node_;
  std::string prefix_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

std::vector<std::string> split_arguments(std::string_view inner) {
  std::vector<std::string> args;
  std::string current;
  for (char c : inner) {
    if (c == ',') {
      args.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  args.push_back(trim(current));
  if (args.size() == 1 && args[0].empty()) {
    args.clear();
  }
  return args;
}

void apply_override(YAML::Node& root, const std::string& assignment, std::vector<std::string>& errors) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    errors.push_back("override '" + assignment + "' is not of the form key=value");
    return;
  }
  const std::string path = trim(std::string_view(assignment).substr(0, eq));
  const std::string value_text = std::string(assignment.substr(eq + 1));
  YAML::Node value;
  try {
    value = YAML::Load(value_text);
  } catch (const YAML::Exception& e) {
    errors.push_back("override '" + assignment + "': " + e.what());
    return;
  }
  std::vector<std::string> keys;
  std::stringstream stream(path);
  for (std::string part; std::getline(stream, part, '.');) {
    keys.push_back(part);
  }
  // yaml-cpp nodes are handles; reassigning walks the tree without copying it.
  std::vector<YAML::Node> chain{root};
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    YAML::Node next = chain.back()[keys[i]];
    if (!next || next.IsNull()) {
      chain.back()[keys[i]] = YAML::Node(YAML::NodeType::Map);
      next = chain.back()[keys[i]];
    } else if (!next.IsMap()) {
      errors.push_back("override '" + assignment + "': '" + keys[i] + "' is not a table");
      return;
    }
    chain.push_back(next);
  }
  chain.back()[keys.back()] = value;
}

std::optional<Termination> parse_termination(const std::string& name) {
  for (Termination t : {Termination::completed, Termination::blowup, Termination::step_underflow}) {
    if (name == to_string(t)) {
      return t;
    }
  }
  return std::nullopt;
}

void read_evolution(Reader& r, EvolutionParams& params) {
  r.number("m", params.m);
  r.number("p", params.p);
  r.number("q", params.q);
  r.number("k", params.k);
  r.number("epsilon", params.epsilon);
  r.boolean("reaction_on", params.reaction_on);
  r.number("t_end", params.t_end);
  r.number("cfl_safety", params.cfl_safety);
  r.number("blowup_threshold", params.blowup_threshold);
  r.number("dt_max", params.dt_max);
  r.numbers("norm_exponents", params.norm_exponents);
  r.numbers("snapshot_times", params.snapshot_times);
  r.boolean("allow_out_of_range", params.allow_out_of_range);
  std::string backend;
  r.text("backend", backend);
  if (backend == "serial") {
    params.backend = Backend::serial;
  } else if (backend == "openmp") {
    if (!openmp_available()) {
      r.error("backend", "this build has no OpenMP backend");
    }
    params.backend = Backend::openmp;
  } else if (!backend.empty()) {
    r.error("backend", "expected serial or openmp");
  }
}

void read_ladder(Reader r, LadderSpec& spec) {
  r.number("dr", spec.dr);
  r.numbers("probe_times", spec.probe_times);
  r.number("tolerance", spec.tolerance);
  r.boolean("require_convergence", spec.require_convergence);
  r.boolean("require_monotone", spec.require_monotone);
  const YAML::Node levels = r.raw("levels");
  if (r.has("levels")) {
    if (!levels.IsSequence()) {
      r.error("levels", "expected a list of {k, R, h} tables");
    } else {
      spec.levels.clear();
      std::vector<std::string> level_errors;
      for (std::size_t j = 0; j < levels.size(); ++j) {
        Reader lr(levels[j], "ladder.levels[" + std::to_string(j) + "].", level_errors);
        LadderLevel level;
        lr.number("k", level.k);
        lr.number("R", level.R);
        lr.number("h", level.h);
        lr.reject_unknown();
        spec.levels.push_back(level);
      }
      for (auto& e : level_errors) {
        r.error("levels", e);
      }
    }
  }
  r.reject_unknown();
}

void read_inequality(Reader r, InequalitySpec& spec) {
  std::string which;
  r.text("which", which);
  if (which == "sobolev") {
    spec.which = Inequality::sobolev;
  } else if (which == "poincare" || which.empty()) {
    spec.which = Inequality::poincare;
  } else {
    r.error("which", "expected sobolev or poincare");
  }
  r.number("p", spec.p);
  r.text("family", spec.family);
  r.pair("lower", spec.lower);
  r.pair("upper", spec.upper);
  r.number("support_ratio", spec.support_ratio);
  r.integer("n_cells", spec.n_cells);
  r.number("max_spacing", spec.max_spacing);
  r.integer("max_cells", spec.max_cells);
  r.integer("doublings", spec.doublings);
  r.integer("grid_points", spec.search.grid_points);
  r.integer("golden_sweeps", spec.search.golden_sweeps);
  r.integer("golden_iterations", spec.search.golden_iterations);
  r.integer("random_starts", spec.search.random_starts);
  r.boolean("expect_positive", spec.expect_positive);
  r.number("stabilization", spec.stabilization);
  r.number("expect_below", spec.expect_below);
  if (spec.family != "exp_taper" && spec.family != "power" && spec.family != "bump") {
    r.error("family", "expected exp_taper, power or bump");
  }
  if (!(spec.p > 1.0)) {
    r.error("p", "must exceed 1");
  }
  if (spec.doublings < 1) {
    r.error("doublings", "must be at least 1");
  }
  r.reject_unknown();
}

void validate(ExperimentConfig& config, std::vector<std::string>& errors) {
  const int N = config.manifold.dimension;
  const bool evolves = config.campaign != Campaign::verify_inequality;
  if (evolves) {
    for (auto& v : config.params.violations(N)) {
      errors.push_back(v);
    }
    for (std::size_t i = 1; i < config.params.snapshot_times.size(); ++i) {
      if (!(config.params.snapshot_times[i] > config.params.snapshot_times[i - 1])) {
        errors.emplace_back("snapshot_times must be strictly increasing");
        break;
      }
    }
  }
  if (evolves && config.campaign != Campaign::ladder) {
    if (!(config.R > 0.0) || !std::isfinite(config.R)) {
      errors.emplace_back("R must be positive and finite");
    }
    if (config.n_cells < RadialGrid::min_cells) {
      errors.emplace_back("n_cells must be at least " + std::to_string(RadialGrid::min_cells));
    }
  }
  if (config.datum.kind == DatumSpec::Kind::file && evolves && !std::filesystem::exists(config.datum.path)) {
    errors.push_back("datum file '" + config.datum.path.string() + "' does not exist");
  }
  if (config.datum.kind == DatumSpec::Kind::barenblatt && evolves) {
    const double mp1 = config.params.m * (config.params.p - 1.0);
    if (!(mp1 > 1.0)) {
      errors.emplace_back("barenblatt datum needs m(p-1) > 1");
    }
  }
  if (config.manifold.kind == "tabulated" && !std::filesystem::exists(config.manifold.warping_file)) {
    errors.push_back("warping file '" + config.manifold.warping_file.string() + "' does not exist");
  }
  if (config.workers < 1) {
    errors.emplace_back("workers must be at least 1");
  }

  switch (config.campaign) {
    case Campaign::fujita_scan: {
      const auto& scan = config.scan;
      if (scan.axis != "q" && scan.axis != "amplitude") {
        errors.emplace_back("scan.axis must be q or amplitude");
      }
      if (scan.axis == "amplitude" && config.datum.kind != DatumSpec::Kind::bump) {
        errors.emplace_back("scan.axis = amplitude needs a bump datum");
      }
      if (scan.values.empty() && !scan.bracket) {
        errors.emplace_back("scan needs values or a bracket");
      }
      if (!scan.expected.empty() && scan.expected.size() != scan.values.size()) {
        errors.emplace_back("scan.expected must have one entry per scan value");
      }
      for (const auto& e : scan.expected) {
        if (e != "blowup" && e != "global" && e != "undecided" && e != "any") {
          errors.push_back("scan.expected: unknown verdict '" + e + "'");
        }
      }
      if (scan.bisection_steps < 1 || scan.bisection_steps > 12) {
        errors.emplace_back("scan.bisection_steps must be in [1, 12]");
      }
      if (!(scan.horizon_factor > 0.0)) {
        errors.emplace_back("scan.horizon_factor must be positive");
      }
      if (scan.axis == "q" && !config.params.allow_out_of_range) {
        const double mp1 = config.params.m * (config.params.p - 1.0);
        std::vector<double> qs = scan.values;
        if (scan.bracket) {
          qs.push_back((*scan.bracket)[0]);
          qs.push_back((*scan.bracket)[1]);
        }
        for (double q : qs) {
          if (!(q > mp1)) {
            errors.push_back("scan value q = " + std::to_string(q) + " violates q > m(p-1)");
          }
        }
      }
      break;
    }
    case Campaign::ladder:
      if (config.ladder.levels.size() < 2) {
        errors.emplace_back("ladder.levels needs at least two levels");
      }
      if (config.ladder.probe_times.empty()) {
        errors.emplace_back("ladder.probe_times must not be empty");
      }
      break;
    case Campaign::verify_inequality:
      if (config.inequality.which == Inequality::sobolev && !(config.inequality.p < N)) {
        errors.emplace_back("inequality.p must be below the dimension for sobolev");
      }
      break;
    case Campaign::decay_fit:
      if (!(config.decay_fit.s >= 1.0)) {
        errors.emplace_back("decay_fit.s must be >= 1");
      }
      break;
    case Campaign::solve:
      break;
  }
}

}  // namespace

DatumSpec parse_datum(std::string_view text, const std::filesystem::path& base) {
  const std::string s = trim(text);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    throw ConfigError("initial_datum '" + s + "': expected name(arguments)");
  }
  const std::string name = trim(std::string_view(s).substr(0, open));
  const auto args = split_arguments(std::string_view(s).substr(open + 1, s.size() - open - 2));
  DatumSpec spec;
  spec.text = s;
  auto two_numbers = [&](const char* what) {
    if (args.size() != 2) {
      throw ConfigError("initial_datum " + name + ": expected " + what);
    }
    auto a = parse_number(args[0]);
    auto b = parse_number(args[1]);
    if (!a || !b || !std::isfinite(*a) || !std::isfinite(*b)) {
      throw ConfigError("initial_datum " + name + ": expected " + what);
    }
    spec.first = *a;
    spec.second = *b;
  };
  if (name == "zero") {
    if (!args.empty()) {
      throw ConfigError("initial_datum zero takes no arguments");
    }
    spec.kind = DatumSpec::Kind::zero;
  } else if (name == "barenblatt") {
    spec.kind = DatumSpec::Kind::barenblatt;
    two_numbers("(mass, t0)");
    if (!(spec.first >= 0.0) || !(spec.second > 0.0)) {
      throw ConfigError("initial_datum barenblatt needs mass >= 0 and t0 > 0");
    }
  } else if (name == "bump") {
    spec.kind = DatumSpec::Kind::bump;
    two_numbers("(amplitude, radius)");
    if (!(spec.first >= 0.0) || !(spec.second > 0.0)) {
      throw ConfigError("initial_datum bump needs amplitude >= 0 and radius > 0");
    }
  } else if (name == "file") {
    if (args.size() != 1 || args[0].empty()) {
      throw ConfigError("initial_datum file: expected (path)");
    }
    spec.kind = DatumSpec::Kind::file;
    std::filesystem::path path = args[0];
    spec.path = path.is_relative() && !base.empty() ? base / path : path;
  } else {
    throw ConfigError("initial_datum: unknown kind '" + name + "'");
  }
  return spec;
}

ModelManifold ManifoldSpec::build() const {
  if (kind == "euclidean") {
    return ModelManifold::euclidean(dimension);
  }
  if (kind == "hyperbolic") {
    return ModelManifold::hyperbolic(dimension, curvature);
  }
  if (kind == "tabulated") {
    return ModelManifold::from_file(dimension, warping_file);
  }
  throw ConfigError("manifold must be euclidean, hyperbolic or tabulated");
}

TrialFamily InequalitySpec::build_family() const {
  if (family == "exp_taper") {
    return TrialFamily::exp_taper(lower[0], upper[0], lower[1], upper[1]);
  }
  if (family == "power") {
    return TrialFamily::power(lower[0], upper[0], lower[1], upper[1], support_ratio);
  }
  return TrialFamily::bump(lower[0], upper[0], lower[1], upper[1]);
}

ExperimentConfig parse_config(std::string_view yaml, Campaign campaign, const std::vector<std::string>& overrides,
                              const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  if (root.IsNull()) {
    root = YAML::Node(YAML::NodeType::Map);
  }
  if (!root.IsMap()) {
    throw ConfigError("config must be a table of key: value entries");
  }
  std::vector<std::string> errors;
  for (const auto& o : overrides) {
    apply_override(root, o, errors);
  }

  ExperimentConfig config;
  config.campaign = campaign;
  config.base_dir = base_dir;
  Reader r(root, "", errors);

  std::string declared;
  r.text("campaign", declared);
  if (!declared.empty()) {
    auto c = parse_campaign(declared);
    if (!c) {
      r.error("campaign", "unknown campaign '" + declared + "'");
    } else if (*c != campaign) {
      r.error("campaign", "config declares '" + to_string(*c) + "' but '" + to_string(campaign) + "' was requested");
    }
  }

  r.text("manifold", config.manifold.kind);
  r.integer("dimension", config.manifold.dimension);
  r.number("curvature", config.manifold.curvature);
  std::string warping;
  r.text("warping_file", warping);
  if (!warping.empty()) {
    std::filesystem::path path = warping;
    config.manifold.warping_file = path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  }
  if (config.manifold.kind != "euclidean" && config.manifold.kind != "hyperbolic" &&
      config.manifold.kind != "tabulated") {
    r.error("manifold", "expected euclidean, hyperbolic or tabulated");
  }
  if (config.manifold.dimension < 2) {
    r.error("dimension", "must be at least 2");
  }
  if (config.manifold.kind == "hyperbolic" && !(config.manifold.curvature > 0.0)) {
    r.error("curvature", "must be positive");
  }
  if (config.manifold.kind == "tabulated" && warping.empty()) {
    r.error("warping_file", "required for a tabulated manifold");
  }

  r.number("R", config.R);
  r.integer("n_cells", config.n_cells);
  read_evolution(r, config.params);
  std::string datum = "zero()";
  r.text("initial_datum", datum);
  try {
    config.datum = parse_datum(datum, base_dir);
  } catch (const ConfigError& e) {
    errors.emplace_back(e.what());
  }
  r.integer("seed", config.seed);
  r.integer("workers", config.workers);
  config.inequality.search.seed = config.seed;

  {
    Reader e = r.child("expect");
    std::string termination;
    e.text("termination", termination);
    if (!termination.empty()) {
      config.expect.termination = parse_termination(termination);
      if (!config.expect.termination) {
        e.error("termination", "expected completed, blowup or step_underflow");
      }
    }
    e.number("max_clipped_fraction", config.expect.max_clipped_fraction);
    e.reject_unknown();
  }
  {
    Reader d = r.child("decay_fit");
    d.number("s", config.decay_fit.s);
    d.number("t_begin", config.decay_fit.t_begin);
    d.number("t_end", config.decay_fit.t_end);
    d.number("expected_slope", config.decay_fit.expected_slope);
    d.number("tolerance", config.decay_fit.tolerance);
    d.numbers("monotone_exponents", config.decay_fit.monotone_exponents);
    d.number("monotone_tolerance", config.decay_fit.monotone_tolerance);
    d.reject_unknown();
  }
  {
    Reader s = r.child("scan");
    s.text("axis", config.scan.axis);
    s.numbers("values", config.scan.values);
    s.number("horizon", config.scan.horizon);
    s.number("horizon_factor", config.scan.horizon_factor);
    s.pair("bracket", config.scan.bracket);
    s.integer("bisection_steps", config.scan.bisection_steps);
    s.strings("expected", config.scan.expected);
    s.pair("expect_boundary", config.scan.expect_boundary);
    s.reject_unknown();
  }
  read_ladder(r.child("ladder"), config.ladder);
  read_inequality(r.child("inequality"), config.inequality);
  r.reject_unknown();

  validate(config, errors);
  if (errors.empty() && config.campaign != Campaign::ladder) {
    try {
      (void)config.manifold.build();
    } catch (const Error& e) {
      errors.emplace_back(e.what());
    }
  }
  if (!errors.empty()) {
    std::string message = "invalid configuration:";
    for (const auto& e : errors) {
      message += "\n  - " + e;
    }
    throw ConfigError(message);
  }
  YAML::Emitter out;
  out << root;
  config.effective_text = out.c_str();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& file, Campaign campaign,
                             const std::vector<std::string>& overrides) {
  std::ifstream in(file);
  if (!in) {
    throw ConfigError("cannot open config file '" + file.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), campaign, overrides, file.parent_path());
}

}  // namespace leibenson::harness
