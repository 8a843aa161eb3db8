#include "oddflow/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace oddflow {

namespace pt = boost::property_tree;

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': expected a number, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("'" + key + "': trailing characters in '" + v + "'");
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': expected an integer, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("'" + key + "': trailing characters in '" + v + "'");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  unsigned long long out = 0;
  try {
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    out = std::stoull(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': expected an unsigned integer, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("'" + key + "': trailing characters in '" + v + "'");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  if (out.empty()) throw ConfigError("'" + key + "': empty list");
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt_double(v[i]);
  return out;
}

// One entry per recognized key: how to apply a value and how to print it.
struct KeyBinding {
  std::function<void(Config&, const std::string&, const std::string&)> set;
  std::function<std::string(const Config&)> get;
};

const std::map<std::string, KeyBinding>& bindings() {
  static const std::map<std::string, KeyBinding> table = [] {
    std::map<std::string, KeyBinding> m;
    auto num = [&m](const std::string& key, std::function<double&(Config&)> ref) {
      m[key] = {[ref](Config& c, const std::string& k, const std::string& v) { ref(c) = to_double(k, v); },
                [ref](const Config& c) {
                  Config copy = c;
                  return fmt_double(ref(copy));
                }};
    };
    auto integer = [&m](const std::string& key, std::function<void(Config&, long long)> set,
                        std::function<long long(const Config&)> get) {
      m[key] = {[set](Config& c, const std::string& k, const std::string& v) { set(c, to_integer(k, v)); },
                [get](const Config& c) { return std::to_string(get(c)); }};
    };

    integer("grid.n", [](Config& c, long long v) {
      if (v <= 0) throw ConfigError("'grid.n' must be positive");
      c.n = static_cast<std::size_t>(v);
    }, [](const Config& c) { return static_cast<long long>(c.n); });
    num("grid.length", [](Config& c) -> double& { return c.length; });

    num("physics.nu0", [](Config& c) -> double& { return c.nu0; });
    m["physics.formulation"] = {
        [](Config& c, const std::string&, const std::string& v) {
          try {
            c.solver.formulation = parse_formulation(v);
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
        },
        [](const Config& c) { return to_string(c.solver.formulation); }};

    num("time.t_end", [](Config& c) -> double& { return c.solver.t_end; });
    num("time.dt_max", [](Config& c) -> double& { return c.solver.dt_max; });
    num("time.cfl_adv", [](Config& c) -> double& { return c.solver.cfl_adv; });
    num("time.cfl_odd", [](Config& c) -> double& { return c.solver.cfl_odd; });
    num("time.fixed_dt", [](Config& c) -> double& { return c.solver.fixed_dt; });
    num("time.rho_floor", [](Config& c) -> double& { return c.solver.rho_floor; });
    num("time.rtol", [](Config& c) -> double& { return c.solver.elliptic.rtol; });
    integer("time.reproject_every", [](Config& c, long long v) { c.solver.reproject_every = static_cast<int>(v); },
            [](const Config& c) { return static_cast<long long>(c.solver.reproject_every); });
    integer("time.max_iters", [](Config& c, long long v) { c.solver.elliptic.max_iters = static_cast<int>(v); },
            [](const Config& c) { return static_cast<long long>(c.solver.elliptic.max_iters); });

    m["scenario.family"] = {[](Config& c, const std::string&, const std::string& v) { c.scenario.family = v; },
                            [](const Config& c) { return c.scenario.family; }};
    num("scenario.amplitude", [](Config& c) -> double& { return c.scenario.amplitude; });
    num("scenario.epsilon", [](Config& c) -> double& { return c.scenario.epsilon; });
    integer("scenario.m1", [](Config& c, long long v) { c.scenario.m1 = static_cast<int>(v); },
            [](const Config& c) { return static_cast<long long>(c.scenario.m1); });
    integer("scenario.m2", [](Config& c, long long v) { c.scenario.m2 = static_cast<int>(v); },
            [](const Config& c) { return static_cast<long long>(c.scenario.m2); });
    m["scenario.seed"] = {[](Config& c, const std::string& k, const std::string& v) { c.scenario.seed = to_u64(k, v); },
                          [](const Config& c) { return std::to_string(c.scenario.seed); }};
    num("scenario.slope", [](Config& c) -> double& { return c.scenario.slope; });
    num("scenario.cutoff", [](Config& c) -> double& { return c.scenario.cutoff; });
    num("scenario.shear_width", [](Config& c) -> double& { return c.scenario.shear_width; });

    num("output.sample_every", [](Config& c) -> double& { return c.output.sample_every; });
    num("output.snapshot_every", [](Config& c) -> double& { return c.output.snapshot_every; });
    num("output.besov_s", [](Config& c) -> double& { return c.output.besov_s; });
    num("output.besov_r", [](Config& c) -> double& { return c.output.besov_r; });

    m["sweep.epsilons"] = {
        [](Config& c, const std::string& k, const std::string& v) { c.sweep.epsilons = to_list(k, v); },
        [](const Config& c) { return join(c.sweep.epsilons); }};
    num("sweep.t_max", [](Config& c) -> double& { return c.sweep.t_max; });
    num("sweep.K", [](Config& c) -> double& { return c.sweep.K; });
    num("sweep.stop_ratio", [](Config& c) -> double& { return c.sweep.stop_ratio; });
    return m;
  }();
  return table;
}

void apply(Config& c, const std::string& key, const std::string& value) {
  const auto it = bindings().find(key);
  if (it == bindings().end()) throw ConfigError("unknown configuration key '" + key + "'");
  it->second.set(c, key, trim(value));
}

void apply_tree(Config& c, const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("key '" + section + "' outside any section");
    for (const auto& [key, value] : body) apply(c, section + "." + key, value.data());
  }
}

void apply_overrides(Config& c, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + o + "' is not of the form section.key=value");
    apply(c, trim(o.substr(0, eq)), o.substr(eq + 1));
  }
}

Config finish(Config c) {
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

}  // namespace

void Config::validate() const {
  if (n < 8 || (n & (n - 1)) != 0) throw ConfigError("grid.n must be a power of two >= 8");
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("grid.length must be positive");
  if (nu0 == 0.0 || !std::isfinite(nu0)) throw ConfigError("physics.nu0 must be finite and nonzero");
  solver.validate();
  scenario.validate();
  if (output.sample_every < 0.0 || output.snapshot_every < 0.0) throw ConfigError("output intervals must be >= 0");
  BesovIndex{output.besov_s, Lebesgue::infinity, output.besov_r}.validate();
  for (double e : sweep.epsilons) {
    if (!(e > 0.0 && e <= 0.9)) throw ConfigError("sweep.epsilons entries must lie in (0, 0.9]");
  }
  if (!(sweep.t_max > 0.0) || !(sweep.K > 0.0) || !(sweep.stop_ratio >= 0.0)) {
    throw ConfigError("sweep.t_max and sweep.K must be positive");
  }
}

Config parse_config_text(const std::string& text, const std::vector<std::string>& overrides) {
  Config c;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  apply_tree(c, tree);
  apply_overrides(c, overrides);
  return finish(std::move(c));
}

Config load_config(const std::string& path, const std::vector<std::string>& overrides) {
  if (path.empty()) {
    Config c;
    apply_overrides(c, overrides);
    return finish(std::move(c));
  }
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), overrides);
}

std::string canonical_text(const Config& c) {
  std::string out;
  for (const auto& [key, binding] : bindings()) out += key + "=" + binding.get(c) + "\n";
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

}  // namespace oddflow
