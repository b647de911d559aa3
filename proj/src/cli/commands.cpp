#include "diracqes/cli.hpp"

#include "diracqes/error.hpp"
#include "diracqes/exact.hpp"
#include "diracqes/json_io.hpp"
#include "diracqes/model.hpp"
#include "diracqes/oracle.hpp"
#include "diracqes/qes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

namespace diracqes::cli {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

using Cell = std::variant<double, int, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  if (auto i = std::get_if<int>(&c)) return std::to_string(*i);
  if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return std::isfinite(*d) ? nlohmann::ordered_json(*d) : nullptr;
  if (auto i = std::get_if<int>(&c)) return *i;
  if (auto b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

void write_table(const Table& t, bool json, std::ostream& os) {
  if (json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj;
      for (size_t j = 0; j < t.columns.size(); ++j) obj[t.columns[j]] = json_cell(row[j]);
      arr.push_back(obj);
    }
    // max_digits10 round-trips doubles exactly
    os << arr.dump(2) << '\n';
    return;
  }
  for (size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
  os << '\n';
  for (const auto& row : t.rows) {
    for (size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_cell(row[j]);
    os << '\n';
  }
}

struct Options {
  std::string preset;
  std::map<std::string, std::optional<double>> values;
  std::optional<int> n;
  int n_max = 3;
  std::string sweep;
  std::string out;
  bool json = false;
  double tol = 1e-6;
  std::vector<double> eps;
  bool from_algebra = false;
  std::string instance;
};

/// Flag spelling to preset key.
const std::vector<std::pair<std::string, std::string>>& parameter_flags() {
  static const std::vector<std::pair<std::string, std::string>> flags = {
      {"M", "M"},         {"kappa", "kappa"},   {"mu-n", "mu_n"},     {"alpha", "alpha"}, {"beta", "beta"},
      {"beta1", "beta1"}, {"gamma0", "gamma0"}, {"gamma1", "gamma1"}, {"btilde", "Btilde"}};
  return flags;
}

void add_parameter_flags(CLI::App* cmd, Options& o) {
  for (const auto& [flag, key] : parameter_flags()) cmd->add_option("--" + flag, o.values[key], key);
}

std::string flag_of(const std::string& key) {
  for (const auto& [flag, k] : parameter_flags())
    if (k == key) return "--" + flag;
  return key;
}

std::map<std::string, double> defaults_for(PresetName name) {
  switch (name) {
  case PresetName::ExtendedOscillatorES:
  case PresetName::ExtendedOscillatorQES: return {{"kappa", 1.0}};
  case PresetName::DiracCoulomb: return {{"beta", 0.0}};
  case PresetName::PlanarCoulombMagnetic: return {{"Btilde", 1.0}};
  default: return {};
  }
}

/// Preset parameters from the flags. Keys in `free` are solved for or swept and must not
/// be given; every other supplied flag must belong to the preset.
std::map<std::string, double> gather(PresetName name, const Options& o, const std::vector<std::string>& free = {}) {
  const auto& required = preset_parameters(name);
  for (const auto& [key, v] : o.values) {
    if (!v) continue;
    if (std::find(free.begin(), free.end(), key) != free.end())
      throw ConfigError(flag_of(key) + " is determined by the command and cannot be given");
    if (std::find(required.begin(), required.end(), key) == required.end())
      throw ConfigError(flag_of(key) + " is not a parameter of " + to_string(name));
  }
  std::map<std::string, double> out = defaults_for(name);
  for (const auto& key : required) {
    if (std::find(free.begin(), free.end(), key) != free.end()) continue;
    auto it = o.values.find(key);
    if (it != o.values.end() && it->second) out[key] = *it->second;
    else if (!out.count(key)) throw ConfigError("missing " + flag_of(key));
  }
  return out;
}

int as_int(double v, const char* what) {
  if (v != std::round(v)) throw ValidationError(std::string(what) + " must be an integer");
  return static_cast<int>(v);
}

/// Half-width of the oracle search window around level `e` of a ladder.
double search_width(double e, const std::vector<double>& all) {
  double gap = std::numeric_limits<double>::infinity();
  for (double x : all)
    if (x != e) gap = std::min(gap, std::abs(x - e));
  return std::clamp(0.4 * gap, 1e-4, 0.05);
}

// ---------------------------------------------------------------------------

ExactSpectrumResult exact_spectrum(PresetName name, const Options& o) {
  const auto p = gather(name, o);
  const ProblemInstance inst = preset(name, p);
  switch (name) {
  case PresetName::DiracOscillator: return oscillator_spectrum(inst.params, o.n_max);
  case PresetName::ExtendedOscillatorES:
    return extended_oscillator_spectrum(p.at("M"), as_int(p.at("kappa"), "kappa"), p.at("beta1"), p.at("gamma1"),
                                        o.n_max);
  case PresetName::DiracCoulomb: return coulomb_spectrum(inst.params, p.at("alpha"), p.at("beta"), o.n_max);
  default: throw ConfigError("spectrum supports oscillator, extended-oscillator and coulomb");
  }
}

std::vector<double> ladder_energies(const ExactSpectrumResult& r) {
  std::vector<double> all;
  for (const auto& l : r.levels) {
    if (l.plus.admits_polynomial) all.push_back(l.plus.epsilon);
    if (l.minus.admits_polynomial) all.push_back(l.minus.epsilon);
  }
  return all;
}

int cmd_spectrum(const Options& o, std::ostream& os, std::ostream& err) {
  const PresetName name = preset_from_string(o.preset);
  const ExactSpectrumResult res = exact_spectrum(name, o);
  const auto all = ladder_energies(res);
  Table t{{"n", "eps_plus", "eps_minus", "residual", "oracle_eps", "abs_delta"}, {}};
  bool oracle_failed = false;
  for (const auto& l : res.levels) {
    const ExactRoot& primary = l.plus.admits_polynomial ? l.plus : l.minus;
    double oracle = nan_value;
    try {
      oracle = nearest_eigenvalue(res.instance, primary.epsilon, search_width(primary.epsilon, all)).epsilon;
    } catch (const Error& e) {
      oracle_failed = true;
      err << "warning: oracle failed at n = " << l.n << ": " << e.what() << '\n';
    }
    t.rows.push_back({l.n, l.epsilon_plus, l.epsilon_minus, primary.residual, oracle, std::abs(oracle - primary.epsilon)});
  }
  write_table(t, o.json, os);
  return oracle_failed ? NumericalFailure : Success;
}

// ---------------------------------------------------------------------------

template <class F> std::vector<std::vector<ScanRoot>> parallel_points(int points, F&& at) {
  std::vector<std::vector<ScanRoot>> out(points);
  std::vector<std::string> errors(points);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < points; i = next++) {
      try {
        out[i] = at(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int n = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, points);
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (int i = 0; i < points; ++i)
    if (!errors[i].empty()) throw NumericalError("sweep point " + std::to_string(i) + ": " + errors[i]);
  return out;
}

std::vector<ScanRoot> to_scan_roots(const std::vector<QesSolution>& sols) {
  std::vector<ScanRoot> r;
  for (const auto& s : sols) r.push_back({s.fixed_coupling, s.epsilon, s.sigma_min, s.branch_id});
  return r;
}

int cmd_qes_scan(const Options& o, std::ostream& os, std::ostream& err) {
  const PresetName name = preset_from_string(o.preset);
  if (o.sweep.empty()) throw ConfigError("qes-scan needs --sweep param:start:stop:points");
  const Sweep sw = parse_sweep(o.sweep);
  std::vector<std::vector<ScanRoot>> roots;

  if (name == PresetName::PlanarCoulombMagnetic) {
    if (sw.param != "M") throw ConfigError("planar scans sweep M");
    const auto p = gather(name, o, {"M", "alpha", "Btilde"});
    if (!o.n) throw ConfigError("missing --n");
    const int n = *o.n;
    const double kappa = p.at("kappa");
    planar_build(n, kappa, 0.0);
    roots = parallel_points(sw.points, [&](int i) {
      const PlanarSystem sys = planar_build(n, kappa, sw.value(i));
      return to_scan_roots(planar_solve(sys, {-std::abs(kappa), std::abs(kappa)}, 401));
    });
  } else if (name == PresetName::ExtendedOscillatorQES) {
    if (sw.param != "M" && sw.param != "alpha") throw ConfigError("extended-qes scans sweep M or alpha");
    const auto p = gather(name, o, {sw.param, "gamma0"});
    const int n = o.n.value_or(1);
    const int kappa = as_int(p.at("kappa"), "kappa");
    roots = parallel_points(sw.points, [&](int i) {
      const double v = sw.value(i);
      const double M = sw.param == "M" ? v : p.at("M");
      const double alpha = sw.param == "alpha" ? v : p.at("alpha");
      std::vector<ScanRoot> out;
      try {
        const ExtendedQesSystem sys = extended_build(n, kappa, M, alpha, p.at("beta1"), p.at("gamma1"));
        for (auto b : {EnergyBranch::Plus, EnergyBranch::Minus}) {
          auto r = to_scan_roots(extended_solve(sys, {-200.0, 200.0}, 4001, b));
          out.insert(out.end(), r.begin(), r.end());
        }
      } catch (const DomainError&) {
      }
      return out;
    });
  } else {
    throw ConfigError("qes-scan supports planar and extended-qes");
  }

  std::vector<double> xs(sw.points);
  for (int i = 0; i < sw.points; ++i) xs[i] = sw.value(i);
  Table t{{"sweep_value", "branch_id", "fixed_coupling", "epsilon", "sigma_min"}, {}};
  for (const auto& r : track_branches(xs, roots))
    t.rows.push_back({r.sweep_value, r.branch_id, r.fixed_coupling, r.epsilon, r.sigma_min});
  if (t.rows.empty()) err << "warning: no algebraic roots found over the sweep\n";
  write_table(t, o.json, os);
  return Success;
}

// ---------------------------------------------------------------------------

struct VerifyCase {
  int level;
  double coupling;
  double epsilon;
  ProblemInstance instance;
  double width;
};

std::vector<VerifyCase> algebraic_cases(PresetName name, const Options& o) {
  std::vector<VerifyCase> cases;
  switch (name) {
  case PresetName::DiracOscillator:
  case PresetName::ExtendedOscillatorES:
  case PresetName::DiracCoulomb: {
    const auto res = exact_spectrum(name, o);
    const auto all = ladder_energies(res);
    for (const auto& l : res.levels) {
      for (const ExactRoot* r : {&l.plus, &l.minus}) {
        if (!r->admits_polynomial) continue;
        if (r == &l.minus && l.minus.epsilon == l.plus.epsilon && l.plus.admits_polynomial) continue;
        cases.push_back({l.n, nan_value, r->epsilon, res.instance, search_width(r->epsilon, all)});
      }
    }
    break;
  }
  case PresetName::PlanarCoulombMagnetic: {
    const auto p = gather(name, o, {"alpha"});
    if (!o.n) throw ConfigError("missing --n");
    const double kappa = p.at("kappa"), B = p.at("Btilde");
    if (!(B > 0.0)) throw DomainError("--btilde must be positive");
    // The algebraic system lives in x = r sqrt(B): energies and masses scale with sqrt(B).
    const double s = std::sqrt(B);
    const PlanarSystem sys = planar_build(*o.n, kappa, p.at("M") / s);
    const auto sols = *o.n == 0 ? planar_n0_closed_form(kappa, sys.M)
                                : planar_solve(sys, {-std::abs(kappa), std::abs(kappa)}, 401);
    int k = 0;
    for (const auto& sol : sols) {
      auto q = p;
      q["alpha"] = sol.fixed_coupling;
      cases.push_back({k++, sol.fixed_coupling, sol.epsilon * s, preset(name, q), 0.05});
    }
    break;
  }
  case PresetName::ExtendedOscillatorQES: {
    const auto p = gather(name, o, {"gamma0"});
    const ExtendedQesSystem sys = extended_build(o.n.value_or(1), as_int(p.at("kappa"), "kappa"), p.at("M"),
                                                 p.at("alpha"), p.at("beta1"), p.at("gamma1"));
    int k = 0;
    for (auto b : {EnergyBranch::Plus, EnergyBranch::Minus})
      for (const auto& sol : extended_solve(sys, {-200.0, 200.0}, 4001, b)) {
        auto q = p;
        q["gamma0"] = sol.fixed_coupling;
        cases.push_back({k++, sol.fixed_coupling, sol.epsilon, preset(name, q), 0.05});
      }
    break;
  }
  }
  return cases;
}

int cmd_verify(const Options& o, std::ostream& os, std::ostream& err) {
  if (o.from_algebra == !o.eps.empty()) throw ConfigError("verify needs exactly one of --eps and --from-algebra");
  std::vector<VerifyCase> cases;
  if (!o.instance.empty()) {
    if (!o.preset.empty()) throw ConfigError("give either a preset or --instance, not both");
    if (o.from_algebra) throw ConfigError("--from-algebra needs a preset");
    const ProblemInstance inst = load_instance(o.instance);
    for (size_t i = 0; i < o.eps.size(); ++i) cases.push_back({int(i), nan_value, o.eps[i], inst, 0.05});
  } else {
    if (o.preset.empty()) throw ConfigError("verify needs a preset or --instance");
    const PresetName name = preset_from_string(o.preset);
    if (o.from_algebra) {
      cases = algebraic_cases(name, o);
    } else {
      const ProblemInstance inst = preset(name, gather(name, o));
      for (size_t i = 0; i < o.eps.size(); ++i) cases.push_back({int(i), nan_value, o.eps[i], inst, 0.05});
    }
  }
  if (cases.empty()) err << "warning: nothing to verify\n";

  Table t{{"level", "coupling", "eps_algebraic", "eps_oracle", "abs_delta", "nodes", "normalizable", "status"}, {}};
  std::vector<std::string> failures;
  for (const auto& c : cases) {
    double eo = nan_value;
    int nodes = -1;
    bool normalizable = false;
    try {
      const ShootingResult r = nearest_eigenvalue(c.instance, c.epsilon, c.width);
      eo = r.epsilon;
      nodes = r.node_count;
      normalizable = r.normalizable;
    } catch (const Error& e) {
      err << "oracle: " << e.what() << '\n';
    }
    const double d = std::abs(eo - c.epsilon);
    const bool pass = d < o.tol && normalizable;
    t.rows.push_back({c.level, c.coupling, c.epsilon, eo, d, nodes, normalizable, std::string(pass ? "PASS" : "FAIL")});
    if (!pass) failures.push_back("level " + std::to_string(c.level) + ": eps " + format_double(c.epsilon) +
                                  " oracle " + format_double(eo) + " |delta| " + format_double(d));
  }
  write_table(t, o.json, os);
  for (const auto& f : failures) err << "FAIL " << f << '\n';
  return failures.empty() ? Success : VerifyFailure;
}

int cmd_preset_dump(const Options& o, std::ostream& os) {
  const PresetName name = preset_from_string(o.preset);
  os << to_json(preset(name, gather(name, o))) << '\n';
  return Success;
}

} // namespace

double Sweep::value(int i) const {
  return i + 1 == points ? stop : start + (stop - start) * i / (points - 1);
}

Sweep parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw ConfigError("--sweep expects param:start:stop:points, got '" + text + "'");
  Sweep s;
  s.param = parts[0];
  try {
    size_t used = 0;
    s.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("start");
    s.stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("stop");
    s.points = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("points");
  } catch (const std::logic_error&) {
    throw ConfigError("malformed --sweep '" + text + "'");
  }
  if (!std::isfinite(s.start) || !std::isfinite(s.stop) || !(s.start < s.stop))
    throw ConfigError("--sweep needs finite bounds with start < stop");
  if (s.points < 2) throw ConfigError("--sweep needs at least 2 points");
  return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algebraic and shooting spectra of the radial Dirac equation", "diracqes"};
  app.require_subcommand(1);
  Options o;
  const std::string presets = "oscillator, extended-oscillator, coulomb, planar, extended-qes";

  auto common = [&](CLI::App* cmd, bool needs_preset) {
    auto* opt = cmd->add_option("preset", o.preset, presets);
    if (needs_preset) opt->required();
    add_parameter_flags(cmd, o);
    cmd->add_option("--out", o.out, "Write output to this file");
    cmd->add_flag("--json", o.json, "JSON instead of CSV");
  };
  auto* spectrum = app.add_subcommand("spectrum", "Exact spectrum with oracle cross-check");
  common(spectrum, true);
  spectrum->add_option("--n-max", o.n_max, "Highest level")->check(CLI::NonNegativeNumber);

  auto* scan = app.add_subcommand("qes-scan", "Track QES roots along a parameter sweep");
  common(scan, true);
  scan->add_option("--n", o.n, "Polynomial degree")->check(CLI::NonNegativeNumber);
  scan->add_option("--sweep", o.sweep, "param:start:stop:points");

  auto* verify = app.add_subcommand("verify", "Confirm energies with the shooting oracle");
  common(verify, false);
  verify->add_option("--n", o.n, "Polynomial degree")->check(CLI::NonNegativeNumber);
  verify->add_option("--n-max", o.n_max, "Highest level")->check(CLI::NonNegativeNumber);
  verify->add_option("--eps", o.eps, "Energies to check")->delimiter(',');
  verify->add_flag("--from-algebra", o.from_algebra, "Check the algebraic energies");
  verify->add_option("--instance", o.instance, "Problem-instance JSON file");
  verify->add_option("--tol", o.tol, "Largest accepted |delta eps|")->check(CLI::PositiveNumber);

  auto* dump = app.add_subcommand("preset-dump", "Print the problem instance of a preset");
  common(dump, true);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Success : ConfigFailure;
  }

  try {
    std::ofstream file;
    if (!o.out.empty()) {
      file.open(o.out);
      if (!file) throw ConfigError("cannot write " + o.out);
    }
    std::ostream& os = o.out.empty() ? out : file;
    if (spectrum->parsed()) return cmd_spectrum(o, os, err);
    if (scan->parsed()) return cmd_qes_scan(o, os, err);
    if (verify->parsed()) return cmd_verify(o, os, err);
    return cmd_preset_dump(o, os);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return ConfigFailure;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return ConfigFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return ConfigFailure;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return NumericalFailure;
  }
}

} // namespace diracqes::cli
