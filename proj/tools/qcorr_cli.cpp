// Command-line front end: single-point evaluation, parameter sweeps, critical
// values, and the randomized cross-validation suite.
//
// Exit codes: 0 success, 1 usage/configuration error, 2 physics validation
// failure (positivity or steady-state balance outside tolerance).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcorr/analysis.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/model.hpp"
#include "qcorr/observables.hpp"
#include "qcorr/redfield.hpp"

using namespace qcorr;

namespace {

// ---------------------------------------------------------------- formatting

// 12 significant digits, scientific below 1e-4; byte-stable across runs.
std::string fmt(double x) {
  if (x == 0.0) return "0";
  if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
  char buf[40];
  if (std::abs(x) < 1e-4)
    std::snprintf(buf, sizeof buf, "%.11e", x);
  else
    std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string json_kv(const std::string& key, const std::string& raw, bool quoted) {
  return "  \"" + key + "\": " + (quoted ? "\"" + raw + "\"" : raw);
}

// ---------------------------------------------------------------- run config

enum class Route { Nullspace, Closed, Leading, Evolve };

Route parse_route(const std::string& s) {
  if (s == "nullspace") return Route::Nullspace;
  if (s == "closed") return Route::Closed;
  if (s == "leading") return Route::Leading;
  if (s == "evolve") return Route::Evolve;
  throw CLI::ValidationError("--route", "unknown route '" + s + "'");
}

struct RunConfig {
  std::string kind = "fermionic";
  SystemParams params;
  double t1 = 0.2, t2 = 0.2;
  double mu1 = 0.0, mu2 = 0.0;
  std::string route = "nullspace";
  bool oracle_cc = false;

  ReservoirKind reservoir_kind() const {
    if (kind == "bosonic") return ReservoirKind::Bosonic;
    if (kind == "fermionic") return ReservoirKind::Fermionic;
    throw CLI::ValidationError("--kind", "must be 'bosonic' or 'fermionic'");
  }
  ReservoirSpec res1() const { return {reservoir_kind(), t1, mu1}; }
  ReservoirSpec res2() const { return {reservoir_kind(), t2, mu2}; }
};

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
  cmd->add_option("--kind", cfg.kind, "reservoir statistics: bosonic|fermionic");
  cmd->add_option("--omega1", cfg.params.omega1, "site-1 energy");
  cmd->add_option("--omega2", cfg.params.omega2, "site-2 energy");
  cmd->add_option("--delta", cfg.params.delta, "inter-site tunneling rate");
  cmd->add_option("--gamma1", cfg.params.gamma1, "decay rate (lower eigenmode)");
  cmd->add_option("--gamma2", cfg.params.gamma2, "decay rate (upper eigenmode)");
  cmd->add_option("--t1", cfg.t1, "reservoir-1 temperature");
  cmd->add_option("--t2", cfg.t2, "reservoir-2 temperature");
  cmd->add_option("--mu1", cfg.mu1, "reservoir-1 chemical potential");
  cmd->add_option("--mu2", cfg.mu2, "reservoir-2 chemical potential");
  // the file itself is applied before CLI11 parsing so flags override it;
  // registered here so it shows in --help and is accepted by the parser
  cmd->add_option("--config", config_path,
                  "config file (key=value per line; flags override)");
}

// The config file sets defaults and explicit flags override them, so it is
// applied to the RunConfig before CLI11 sees the command line.
void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno)
                                  + ": expected key=value");
    std::string key = line.substr(start, eq - start);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::string value = line.substr(eq + 1);
    const auto vstart = value.find_first_not_of(" \t");
    value = (vstart == std::string::npos) ? "" : value.substr(vstart);
    if (key == "kind") cfg.kind = value;
    else if (key == "route") cfg.route = value;
    else {
      double v;
      try {
        v = std::stod(value);
      } catch (...) {
        throw std::invalid_argument("config key '" + key + "': bad number '" + value + "'");
      }
      if (key == "omega1") cfg.params.omega1 = v;
      else if (key == "omega2") cfg.params.omega2 = v;
      else if (key == "delta") cfg.params.delta = v;
      else if (key == "gamma1") cfg.params.gamma1 = v;
      else if (key == "gamma2") cfg.params.gamma2 = v;
      else if (key == "t1") cfg.t1 = v;
      else if (key == "t2") cfg.t2 = v;
      else if (key == "mu1") cfg.mu1 = v;
      else if (key == "mu2") cfg.mu2 = v;
      else
        throw std::invalid_argument("config key '" + key + "' is not recognized");
    }
  }
}

void check_bosonic_mu(const RunConfig& cfg) {
  if (cfg.reservoir_kind() == ReservoirKind::Bosonic && (cfg.mu1 != 0.0 || cfg.mu2 != 0.0))
    throw CLI::ValidationError("--mu1/--mu2",
                               "bosonic reservoirs require zero chemical potential");
}

// Per-point evaluation shared by `point` and `sweep`.
struct PointResult {
  XState energy;
  XState local;     // canonicalized
  XState local_raw; // before canonicalization (signed coherence)
  CorrelationReport corr;
  CurrentReport cur;
  double min_eig;
  double residual;
  double condition;
  std::optional<double> g;
};

PointResult evaluate_point(const RunConfig& cfg, Route route, bool with_oracle) {
  const SystemParams& p = cfg.params;
  validate(p);
  const ReservoirSpec r1 = cfg.res1();
  const ReservoirSpec r2 = cfg.res2();
  validate(r1);
  validate(r2);
  const EigenData eig = diagonalize(p);
  const Generator gen = build_generator(p, r1, r2, eig);

  PointResult out;
  out.residual = 0.0;
  out.condition = 0.0;
  switch (route) {
    case Route::Nullspace: {
      const auto ss = steady_state_nullspace(gen);
      out.energy = ss.state;
      out.residual = ss.residual;
      out.condition = ss.condition;
      break;
    }
    case Route::Closed: {
      out.energy = steady_state_closed_form(p, r1, r2);
      out.residual = (gen.m * components(out.energy)).cwiseAbs().maxCoeff();
      break;
    }
    case Route::Leading: {
      const auto lo = steady_state_leading_order(p, r1, r2);
      out.energy = lo.state;
      out.g = lo.g;
      out.residual = (gen.m * components(out.energy)).cwiseAbs().maxCoeff();
      if (lo.g_warning)
        std::cerr << "warning: |g| = " << fmt(std::abs(lo.g))
                  << " > 1/4, leading order unreliable\n";
      break;
    }
    case Route::Evolve: {
      XState ground;
      ground.basis = Basis::Energy;
      const auto traj =
          time_evolve(gen, ground, default_dt(p, eig), default_t_end(p));
      out.energy = traj.states.back();
      out.residual = (gen.m * components(out.energy)).cwiseAbs().maxCoeff();
      break;
    }
  }
  out.local_raw = to_local(out.energy, eig);
  out.local = canonicalize_phase(out.local_raw);
  out.corr = discord(out.local, with_oracle);
  out.cur = currents(p, r1, r2, eig, out.energy);
  out.min_eig = min_eigenvalue(out.energy);
  return out;
}

// ---------------------------------------------------------------- point

int cmd_point(const RunConfig& cfg) {
  check_bosonic_mu(cfg);
  const Route route = parse_route(cfg.route);
  const PointResult r = evaluate_point(cfg, route, cfg.oracle_cc);

  std::vector<std::string> lines;
  auto num = [&](const std::string& k, double v) { lines.push_back(json_kv(k, fmt(v), false)); };
  auto str = [&](const std::string& k, const std::string& v) {
    lines.push_back(json_kv(k, v, true));
  };
  str("kind", cfg.kind);
  num("omega1", cfg.params.omega1);
  num("omega2", cfg.params.omega2);
  num("delta", cfg.params.delta);
  num("gamma1", cfg.params.gamma1);
  num("gamma2", cfg.params.gamma2);
  num("t1", cfg.t1);
  num("t2", cfg.t2);
  num("mu1", cfg.mu1);
  num("mu2", cfg.mu2);
  str("route", cfg.route);
  num("energy.rho11", r.energy.p11);
  num("energy.rho22", r.energy.p22);
  num("energy.rho33", r.energy.p33);
  num("energy.rho44", r.energy.p44);
  num("energy.re_rho23", r.energy.rho23.real());
  num("energy.im_rho23", r.energy.rho23.imag());
  num("local.rho11", r.local_raw.p11);
  num("local.rho22", r.local_raw.p22);
  num("local.rho33", r.local_raw.p33);
  num("local.rho44", r.local_raw.p44);
  num("local.re_rho23", r.local_raw.rho23.real());
  num("local.im_rho23", r.local_raw.rho23.imag());
  num("concurrence", r.corr.concurrence);
  num("qmi", r.corr.qmi);
  num("cc", r.corr.cc);
  num("qd", r.corr.qd);
  num("s1", r.corr.s1);
  num("s2", r.corr.s2);
  str("cc_branch", r.corr.branch == CCBranch::S1 ? "S1" : "S2");
  if (r.corr.cc_oracle) {
    num("cc_oracle", *r.corr.cc_oracle);
    num("oracle_gap", *r.corr.oracle_gap);
  }
  num("j1", r.cur.j1);
  num("j2", r.cur.j2);
  num("balance", r.cur.balance);
  const auto [ns1, ns2] = site_populations(r.local);
  num("n_site1", ns1);
  num("n_site2", ns2);
  num("min_eig", r.min_eig);
  num("residual", r.residual);
  num("condition", r.condition);
  if (r.g) num("g", *r.g);
  const bool positivity_ok = r.min_eig >= -1e-8;
  lines.push_back(json_kv("positivity_ok", positivity_ok ? "true" : "false", false));

  std::cout << "{\n";
  for (std::size_t i = 0; i < lines.size(); ++i)
    std::cout << lines[i] << (i + 1 < lines.size() ? "," : "") << "\n";
  std::cout << "}\n";

  if (!positivity_ok) return 2;
  if (route == Route::Nullspace && std::abs(r.cur.balance) > 1e-10) return 2;
  return 0;
}

// ---------------------------------------------------------------- sweep

struct Axis {
  std::string name;
  double start, stop;
  int count;
};

Axis parse_axis(const std::string& s) {
  Axis a;
  std::stringstream ss(s);
  std::string tok;
  std::vector<std::string> parts;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() != 4)
    throw CLI::ValidationError("--axis", "expected NAME:START:STOP:COUNT, got '" + s + "'");
  a.name = parts[0];
  a.start = std::stod(parts[1]);
  a.stop = std::stod(parts[2]);
  a.count = std::stoi(parts[3]);
  if (a.count < 1) throw CLI::ValidationError("--axis", "COUNT must be >= 1");
  if (!std::isfinite(a.start) || !std::isfinite(a.stop))
    throw CLI::ValidationError("--axis", "non-finite grid");
  static const char* known[] = {"t1", "t2", "mu1", "mu2", "delta", "gamma1",
                                "gamma2", "omega1", "omega2", "delta_t", "delta_mu"};
  if (std::find_if(std::begin(known), std::end(known),
                   [&](const char* k) { return a.name == k; }) == std::end(known))
    throw CLI::ValidationError("--axis", "unknown axis name '" + a.name + "'");
  return a;
}

double axis_value(const Axis& a, int i) {
  if (a.count == 1) return a.start;
  return a.start + (a.stop - a.start) * i / (a.count - 1);
}

// Applies an axis value to a copy of the configuration. delta_t means
// t2 = t1 + v with t1 from the base config (hold=t1) or t1/t2 = tavg -/+ v/2
// around tavg = (t1 + t2)/2 (hold=tavg); delta_mu likewise.
void apply_axis(RunConfig& cfg, const Axis& a, double v, const std::string& hold_t,
                const std::string& hold_mu) {
  if (a.name == "t1") cfg.t1 = v;
  else if (a.name == "t2") cfg.t2 = v;
  else if (a.name == "mu1") cfg.mu1 = v;
  else if (a.name == "mu2") cfg.mu2 = v;
  else if (a.name == "delta") cfg.params.delta = v;
  else if (a.name == "gamma1") cfg.params.gamma1 = v;
  else if (a.name == "gamma2") cfg.params.gamma2 = v;
  else if (a.name == "omega1") cfg.params.omega1 = v;
  else if (a.name == "omega2") cfg.params.omega2 = v;
  else if (a.name == "delta_t") {
    if (hold_t == "tavg") {
      const double tavg = 0.5 * (cfg.t1 + cfg.t2);
      cfg.t1 = tavg - 0.5 * v;
      cfg.t2 = tavg + 0.5 * v;
    } else {
      cfg.t2 = cfg.t1 + v;
    }
  } else if (a.name == "delta_mu") {
    if (hold_mu == "muavg") {
      const double muavg = 0.5 * (cfg.mu1 + cfg.mu2);
      cfg.mu1 = muavg - 0.5 * v;
      cfg.mu2 = muavg + 0.5 * v;
    } else {
      cfg.mu2 = cfg.mu1 + v;
    }
  }
}

const char* kCsvHeader =
    "kind,omega1,omega2,delta,gamma1,gamma2,t1,t2,mu1,mu2,"
    "rho11,rho22,rho33,rho44,re_rho23,im_rho23,"
    "qmi,cc,qd,concurrence,s1,s2,j1,j2,min_eig,residual,oracle_gap";

int cmd_sweep(const RunConfig& base, const std::string& axis1_s,
              const std::string& axis2_s, const std::string& out_path,
              const std::string& hold_t, const std::string& hold_mu,
              const std::string& outputs) {
  check_bosonic_mu(base);
  const Route route = parse_route(base.route);
  const Axis axis1 = parse_axis(axis1_s);
  std::optional<Axis> axis2;
  if (!axis2_s.empty()) axis2 = parse_axis(axis2_s);

  const bool want_corr = outputs.find("correlations") != std::string::npos;
  const bool want_cur = outputs.find("currents") != std::string::npos;

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot open '" << out_path << "' for writing\n";
      return 1;
    }
    os = &file;
  }

  *os << "# qcorr sweep kind=" << base.kind << " omega1=" << fmt(base.params.omega1)
      << " omega2=" << fmt(base.params.omega2) << " delta=" << fmt(base.params.delta)
      << " gamma1=" << fmt(base.params.gamma1) << " gamma2=" << fmt(base.params.gamma2)
      << " t1=" << fmt(base.t1) << " t2=" << fmt(base.t2) << " mu1=" << fmt(base.mu1)
      << " mu2=" << fmt(base.mu2) << " route=" << base.route << " axis1=" << axis1_s
      << (axis2 ? " axis2=" + axis2_s : "") << " hold=" << hold_t
      << " hold-mu=" << hold_mu << " outputs=" << outputs
      << (base.oracle_cc ? " oracle-cc=1" : "") << "\n";
  *os << kCsvHeader << "\n";

  const int n2 = axis2 ? axis2->count : 1;
  for (int i = 0; i < axis1.count; ++i) {
    for (int j = 0; j < n2; ++j) {
      RunConfig cfg = base;
      apply_axis(cfg, axis1, axis_value(axis1, i), hold_t, hold_mu);
      if (axis2) apply_axis(cfg, *axis2, axis_value(*axis2, j), hold_t, hold_mu);
      const PointResult r = evaluate_point(cfg, route, base.oracle_cc);
      std::vector<std::string> f;
      f.push_back(cfg.kind);
      for (double v : {cfg.params.omega1, cfg.params.omega2, cfg.params.delta,
                       cfg.params.gamma1, cfg.params.gamma2, cfg.t1, cfg.t2, cfg.mu1,
                       cfg.mu2, r.local_raw.p11, r.local_raw.p22, r.local_raw.p33,
                       r.local_raw.p44, r.local_raw.rho23.real(),
                       r.local_raw.rho23.imag()})
        f.push_back(fmt(v));
      if (want_corr) {
        for (double v : {r.corr.qmi, r.corr.cc, r.corr.qd, r.corr.concurrence,
                         r.corr.s1, r.corr.s2})
          f.push_back(fmt(v));
      } else {
        for (int k = 0; k < 6; ++k) f.push_back("");
      }
      if (want_cur) {
        f.push_back(fmt(r.cur.j1));
        f.push_back(fmt(r.cur.j2));
      } else {
        f.push_back("");
        f.push_back("");
      }
      f.push_back(fmt(r.min_eig));
      f.push_back(fmt(r.residual));
      f.push_back(r.corr.oracle_gap ? fmt(*r.corr.oracle_gap) : "");
      for (std::size_t k = 0; k < f.size(); ++k)
        *os << f[k] << (k + 1 < f.size() ? "," : "");
      *os << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------- critical

int cmd_critical(const RunConfig& cfg) {
  const CriticalValues cv = critical_values(cfg.params, cfg.t1);
  std::cout << "{\n";
  std::cout << json_kv("t_critical", fmt(cv.t_critical), false) << ",\n";
  if (cv.mu_star)
    std::cout << json_kv("mu_star", fmt(*cv.mu_star), false) << ",\n";
  else
    std::cout << json_kv("mu_star", "\"undefined above critical temperature\"", false)
              << ",\n";
  std::cout << json_kv("mu_star_min", fmt(cv.mu_star_min), false) << ",\n";
  std::cout << json_kv("delta_star", fmt(cv.delta_star), false) << "\n";
  std::cout << "}\n";
  return 0;
}

// ---------------------------------------------------------------- validate

#include "validate_suites.ipp"

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Redfield steady states and quantum correlations of two coupled "
               "fermion sites in bosonic or fermionic reservoirs"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path, axis1, axis2, out_path;
  std::string hold_t = "t1", hold_mu = "mu1";
  std::string outputs = "correlations,currents";
  std::uint64_t seed = 12345;
  int samples = 200;

  // config file first, explicit flags override
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        load_config_file(argv[i + 1], cfg);
      } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
      }
      break;
    }
  }

  CLI::App* point = app.add_subcommand("point", "evaluate a single parameter point");
  add_common_options(point, cfg, config_path);
  point->add_option("--route", cfg.route, "nullspace|closed|leading|evolve");
  point->add_flag("--oracle-cc", cfg.oracle_cc, "attach the brute-force cc oracle");

  CLI::App* sweep = app.add_subcommand("sweep", "write a CSV over one or two axes");
  add_common_options(sweep, cfg, config_path);
  sweep->add_option("--route", cfg.route, "nullspace|closed|leading|evolve");
  sweep->add_flag("--oracle-cc", cfg.oracle_cc, "attach the brute-force cc oracle");
  sweep->add_option("--axis1", axis1, "NAME:START:STOP:COUNT")->required();
  sweep->add_option("--axis2", axis2, "NAME:START:STOP:COUNT");
  sweep->add_option("--out", out_path, "output path ('-' for stdout)");
  sweep->add_option("--hold", hold_t, "delta_t convention: t1 (t2=t1+v) or tavg");
  sweep->add_option("--hold-mu", hold_mu, "delta_mu convention: mu1 or muavg");
  sweep->add_option("--outputs", outputs, "comma list: correlations,currents");

  CLI::App* critical = app.add_subcommand("critical", "closed-form critical values");
  add_common_options(critical, cfg, config_path);

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "randomized cross-route and oracle checks");
  validate_cmd->add_option("--seed", seed, "RNG seed");
  validate_cmd->add_option("--samples", samples, "samples per suite")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (point->parsed()) return cmd_point(cfg);
    if (sweep->parsed())
      return cmd_sweep(cfg, axis1, axis2, out_path, hold_t, hold_mu, outputs);
    if (critical->parsed()) return cmd_critical(cfg);
    if (validate_cmd->parsed()) return cmd_validate(seed, samples);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
