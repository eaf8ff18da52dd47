#include "wgf/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "wgf/counterexamples.hpp"
#include "wgf/csv.hpp"
#include "wgf/fokker_planck.hpp"
#include "wgf/kl_functional.hpp"
#include "wgf/pgd.hpp"

namespace wgf::cli {

namespace {

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"example1", {"h", "n", "out"}},
    {"example2", {"h", "n", "out"}},
    {"pgd", {"epsilon", "N", "d", "h_policy", "h", "max_iters", "seed", "m", "out"}},
    {"rates",
     {"epsilon", "N", "d", "h_policy", "h", "max_iters", "seed", "m", "convex_diag", "out"}},
    {"fe-vs-fp", {"h_list", "T_end", "out", "snapshots"}},
};

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

nlohmann::json base_metadata(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["subcommand"] = cfg.subcommand;
  j["timestamp"] = timestamp_utc();
  for (const auto& [k, v] : cfg.kv) j["config"][k] = v;
  return j;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

StepPolicy parse_policy(const std::string& name) {
  if (name == "theoretical") return StepPolicy::Theoretical;
  if (name == "empirical") return StepPolicy::Empirical;
  if (name == "fixed") return StepPolicy::Fixed;
  throw std::invalid_argument("unknown h_policy '" + name + "'");
}

struct PgdSetup {
  RegKlConfig reg;
  SolverConfig solver;
  ParticleEnsemble init;
};

PgdSetup make_pgd_setup(const ExperimentConfig& cfg) {
  const int d = cfg.get_int("d", 1);
  const ConvexDomain domain =
      d == 1 ? ConvexDomain::Interval(-1.0, 1.0) : ConvexDomain::Ball(Eigen::VectorXd::Zero(d), 1.0);
  const TargetPotential target = TargetPotential::Quadratic(d);
  const double r0 = domain.enclosing_radius();
  RegKlConfig reg{cfg.get_double("epsilon", 0.5 * r0 * r0), domain, target};

  SolverConfig solver;
  solver.policy = parse_policy(cfg.get("h_policy", "empirical"));
  solver.fixed_h = cfg.get_double("h", 0.0);
  if (solver.policy == StepPolicy::Fixed && !(solver.fixed_h > 0.0))
    throw std::invalid_argument("h_policy=fixed requires h > 0");
  solver.max_iters = cfg.get_int("max_iters", 500);
  solver.seed = cfg.get_u64("seed", 1);
  if (cfg.has("m")) solver.strong_convexity_m = cfg.get_double("m", 0.0);
  solver.convex_rate_diagnostic = cfg.get_int("convex_diag", 0) != 0;

  if (solver.policy == StepPolicy::Fixed &&
      solver.fixed_h > 1.0 / lipschitz_bound(reg) + 1e-18) {
    std::cerr << "warning: fixed step " << solver.fixed_h
              << " exceeds 1/L = " << 1.0 / lipschitz_bound(reg)
              << "; the descent guarantee does not apply\n";
  }

  Rng rng(solver.seed);
  ParticleEnsemble init = ParticleEnsemble::UniformIn(domain, cfg.get_int("N", 200), rng);
  return {std::move(reg), std::move(solver), std::move(init)};
}

}  // namespace

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}
double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : std::stod(it->second);
}
int ExperimentConfig::get_int(const std::string& key, int fallback) const {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : std::stoi(it->second);
}
std::uint64_t ExperimentConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : static_cast<std::uint64_t>(std::stoull(it->second));
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line without '=': " + line);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line with empty key: " + line);
    kv[key] = value;
  }
  return kv;
}

void validate_keys(const ExperimentConfig& cfg) {
  const auto it = kKnownKeys.find(cfg.subcommand);
  if (it == kKnownKeys.end())
    throw std::invalid_argument("unknown subcommand '" + cfg.subcommand + "'");
  for (const auto& [k, v] : cfg.kv)
    if (!it->second.count(k))
      throw std::invalid_argument("unknown key '" + k + "' for subcommand " + cfg.subcommand);
}

int run_example1(const ExperimentConfig& cfg) {
  const double h = cfg.get_double("h", 1.0 / 27.0);
  const int n_samples = cfg.get_int("n", 400);
  const Example1Geometry geo = Example1Geometry::For(h);
  const PiecewiseMap1D map = fe_map_example1(h);
  const PiecewiseDensity1D rho0 = PiecewiseDensity1D::StandardGaussian();
  const auto density0 = [&rho0](double x) { return rho0(x); };

  nlohmann::json meta = base_metadata(cfg);
  meta["h"] = h;
  meta["r"] = geo.r;
  meta["critical_x"] = geo.critical_x;
  CsvWriter csv(cfg.get("out", "example1.csv"), meta.dump(), {"y", "branch_count", "rho1"});

  // offset sweep: half-integer spacing never hits the critical set {-r, r}
  const double span = 3.0 * geo.r;
  for (int j = 0; j < n_samples; ++j) {
    const double y = -span + (j + 0.5) * (2.0 * span / n_samples);
    const PushforwardValue v = pushforward_multibranch(density0, map, y);
    if (v.singular) continue;
    csv.row({y, static_cast<double>(v.branch_count), v.value});
  }
  std::vector<double> deltas;
  for (int k = 0; k <= 10; ++k) deltas.push_back(0.1 * std::pow(2.0, -k));
  const JumpProbe probe = example1_jump_probe(h, deltas);
  for (std::size_t i = 0; i < probe.deltas.size(); ++i) {
    csv.row({geo.r - probe.deltas[i], 3.0, probe.left[i]});
    csv.row({geo.r + probe.deltas[i], 1.0, probe.right[i]});
  }

  const double extent = std::max(12.0, 2.0 * geo.critical_x);
  const double y_max = std::abs(extent - h * extent * extent * extent);
  const double mass = pushforward_mass(density0, map, -y_max, y_max, {1e-10, 1e-10});
  csv.comment("mass=" + CsvWriter::format(mass));
  return std::abs(mass - 1.0) <= 1e-6 ? 0 : 1;
}

int run_example2(const ExperimentConfig& cfg) {
  const double h = cfg.get_double("h", 0.3);
  const int n_max = cfg.get_int("n", 50);
  const Example2Coefficients coeffs = example2_recursion(h, n_max);
  const TargetPotential target = TargetPotential::Quadratic(1);

  nlohmann::json meta = base_metadata(cfg);
  meta["h"] = h;
  meta["d0"] = Example2Coefficients::d0();
  CsvWriter csv(cfg.get("out", "example2.csv"), meta.dump(),
                {"n", "a_n", "b_n", "c_n", "kl_grid", "kl_floor"});

  bool floor_respected = true;
  for (int n = 0; n <= n_max; ++n) {
    const PiecewiseDensity1D dens = example2_density(coeffs, n);
    const double kl = kl_value(dens, target);
    const double floor = example2_kl_floor(dens);
    if (!(kl > 0.019)) floor_respected = false;
    csv.row({static_cast<double>(n), coeffs.a[n], coeffs.b[n], coeffs.c[n], kl, floor});
  }
  return floor_respected ? 0 : 1;
}

int run_pgd_cmd(const ExperimentConfig& cfg) {
  PgdSetup setup = make_pgd_setup(cfg);
  const PgdResult result = run_pgd(setup.reg, setup.solver, setup.init);
  const RateCertificate& cert = result.certificate;

  nlohmann::json meta = base_metadata(cfg);
  meta["h_used"] = cert.h;
  meta["f_lower_bound"] = cert.f_lower_bound;
  CsvWriter csv(cfg.get("out", "pgd.csv"), meta.dump(),
                {"n", "F_eps", "step_rms", "w2_to_final", "cert_decay_ok", "cert_rate_ok"});

  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < cert.f_values.size(); ++n) {
    const double step = n == 0 ? 0.0 : cert.step_rms[n - 1];
    const double w2 = cert.w2_to_final.empty() ? std::nan("") : cert.w2_to_final[n];
    bool decay_row = true, rate_row = true;
    if (n > 0) {
      decay_row = cert.f_values[n] <= cert.f_values[n - 1] + 1e-12;
      min_step = std::min(min_step, cert.step_rms[n - 1]);
      const double bound = std::sqrt(2.0 * (cert.f_values[0] - cert.f_lower_bound) /
                                     (cert.h * static_cast<double>(n)));
      rate_row = min_step <= bound * (1.0 + 1e-12);
    }
    csv.row({static_cast<double>(n), cert.f_values[n], step, w2, decay_row ? 1.0 : 0.0,
             rate_row ? 1.0 : 0.0});
  }
  return cert.decay_ok && cert.rate_ok ? 0 : 1;
}

int run_rates(const ExperimentConfig& cfg) {
  PgdSetup setup = make_pgd_setup(cfg);
  const PgdResult result = run_pgd(setup.reg, setup.solver, setup.init);
  const RateCertificate& cert = result.certificate;

  std::vector<std::string> columns = {"n",       "F_eps",      "step_rms", "min_step_rms",
                                      "rate_bound", "decay_ok", "rate_ok"};
  const bool with_sc = setup.solver.strong_convexity_m.has_value() && !cert.w2_to_final.empty();
  if (with_sc) {
    columns.push_back("sc_lhs");
    columns.push_back("sc_rhs");
    columns.push_back("sc_ok");
  }
  const bool with_cv = setup.solver.convex_rate_diagnostic && !cert.w2_to_final.empty();
  if (with_cv) {
    columns.push_back("cv_gap");
    columns.push_back("cv_bound");
    columns.push_back("cv_ok");
  }

  nlohmann::json meta = base_metadata(cfg);
  meta["h_used"] = cert.h;
  meta["f_lower_bound"] = cert.f_lower_bound;
  if (cert.strongly_convex_ok) meta["strongly_convex_ok"] = *cert.strongly_convex_ok;
  if (cert.convex_rate_ok) meta["convex_rate_ok"] = *cert.convex_rate_ok;
  CsvWriter csv(cfg.get("out", "rates.csv"), meta.dump(), columns);

  const double m = setup.solver.strong_convexity_m.value_or(0.0);
  const double w0_sq =
      cert.w2_to_final.empty() ? 0.0 : cert.w2_to_final.front() * cert.w2_to_final.front();
  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < cert.f_values.size(); ++n) {
    std::vector<double> row;
    const double step = n == 0 ? 0.0 : cert.step_rms[n - 1];
    if (n > 0) min_step = std::min(min_step, cert.step_rms[n - 1]);
    const double bound =
        n == 0 ? std::nan("")
               : std::sqrt(2.0 * (cert.f_values[0] - cert.f_lower_bound) /
                           (cert.h * static_cast<double>(n)));
    const bool decay_row = n == 0 || cert.f_values[n] <= cert.f_values[n - 1] + 1e-12;
    const bool rate_row = n == 0 || min_step <= bound * (1.0 + 1e-12);
    row = {static_cast<double>(n), cert.f_values[n], step,
           n == 0 ? 0.0 : min_step, bound, decay_row ? 1.0 : 0.0, rate_row ? 1.0 : 0.0};
    if (with_sc) {
      const double lhs = cert.w2_to_final[n] * cert.w2_to_final[n];
      const double rhs = std::pow(1.0 - m * cert.h, static_cast<double>(n)) * w0_sq;
      row.push_back(lhs);
      row.push_back(rhs);
      row.push_back(lhs <= 1.1 * rhs + 1e-15 ? 1.0 : 0.0);
    }
    if (with_cv) {
      const double gap = cert.f_values[n] - cert.f_values.back();
      const double cv_bound =
          n == 0 ? std::nan("") : w0_sq / (2.0 * static_cast<double>(n) * cert.h);
      row.push_back(gap);
      row.push_back(cv_bound);
      row.push_back(n == 0 || gap <= 1.1 * cv_bound + 1e-15 ? 1.0 : 0.0);
    }
    csv.row(row);
  }
  return cert.decay_ok && cert.rate_ok ? 0 : 1;
}

int run_fe_vs_fp(const ExperimentConfig& cfg) {
  const std::vector<double> h_list = parse_double_list(cfg.get("h_list", "0.2,0.1,0.05,0.025"));
  const double t_end = cfg.get_double("T_end", 2.0);
  const std::vector<FeVsFpRow> rows = fe_vs_fp_gap(h_list, t_end);

  nlohmann::json meta = base_metadata(cfg);
  CsvWriter csv(cfg.get("out", "fe_vs_fp.csv"), meta.dump(),
                {"h", "n_steps", "w2_gap", "kl_fe", "kl_fp"});
  for (const auto& r : rows)
    csv.row({r.h, static_cast<double>(r.n_steps), r.w2_gap, r.kl_fe, r.kl_fp});

  if (cfg.has("snapshots")) {
    const TargetPotential target = TargetPotential::Quadratic(1);
    const Example2Coefficients coeffs = example2_recursion(0.5, 1);
    const int nodes = 2001;
    const double radius = 12.0;
    FpConfig fp_cfg{-radius, radius, nodes, 1e-3, t_end, target, 400};
    const GridDensity1D rho0 = GridDensity1D::FromFunction(
        -radius, radius, nodes, [dens = example2_density(coeffs, 0)](double x) { return dens(x); });
    const FpTrajectory traj = fp_solve(fp_cfg, rho0);
    std::ofstream snap(cfg.get("snapshots", "fp_snapshots.csv"));
    write_snapshot_csv(snap, traj);
  }

  // the failure is O(1): quartering the step may not halve the gap
  bool ratio_ok = true;
  for (const auto& coarse : rows)
    for (const auto& fine : rows)
      if (std::abs(fine.h - 0.25 * coarse.h) < 1e-12 && fine.w2_gap < 0.5 * coarse.w2_gap)
        ratio_ok = false;
  return ratio_ok ? 0 : 1;
}

int dispatch(const ExperimentConfig& cfg) {
  validate_keys(cfg);
  if (cfg.subcommand == "example1") return run_example1(cfg);
  if (cfg.subcommand == "example2") return run_example2(cfg);
  if (cfg.subcommand == "pgd") return run_pgd_cmd(cfg);
  if (cfg.subcommand == "rates") return run_rates(cfg);
  if (cfg.subcommand == "fe-vs-fp") return run_fe_vs_fp(cfg);
  throw std::invalid_argument("unknown subcommand '" + cfg.subcommand + "'");
}

}  // namespace wgf::cli
