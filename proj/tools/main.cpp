// choquard: command-line driver for the equivariant Choquard toolkit.
//
// Subcommands: validate, ground, solve, bumps, decay, report.
// Exit codes: 0 success, 1 validation/config failure, 2 numerical
// non-convergence, 3 I/O error.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "choquard/analysis.hpp"
#include "choquard/energy.hpp"
#include "choquard/field.hpp"
#include "choquard/io.hpp"
#include "choquard/multibump.hpp"
#include "choquard/nonlocal.hpp"
#include "choquard/params.hpp"
#include "choquard/radial.hpp"
#include "choquard/solver.hpp"
#include "choquard/symmetry.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace choquard;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- config schema ------------------------------------------------------

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "problem.dim",          "problem.alpha",
      "problem.p",            "problem.v_inf",
      "problem.kappa",        "problem.c0",
      "problem.rho",          "problem.eps_cutoff",
      "problem.claim_h1",     "problem.claim_h2",
      "problem.nonrigorous",  "grid.n",
      "grid.length",          "symmetry.k",
      "symmetry.m",           "symmetry.plane",
      "potential.a_preset",   "potential.b",
      "potential.v_preset",   "solver.max_iter",
      "solver.tol_grad",      "solver.tol_nehari",
      "solver.symmetrize_every",
      "solver.guess",         "solver.guess_radius",
      "solver.guess_width",   "solver.guess_amplitude",
      "solver.seed",          "radial.r_max",
      "radial.m_nodes",       "radial.lambdas",
      "radial.max_iter",      "radial.tol_grad",
      "radial.fit_lo",        "radial.fit_hi",
      "bumps.y_norms",        "decay.radii",
      "decay.mu",             "decay.eps",
      "output.dir",
  };
  return keys;
}

ConfigFile load_config(const std::string& path) {
  ConfigFile cfg;
  try {
    cfg = ConfigFile::parse_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  for (const auto& key : cfg.keys())
    if (!known_keys().count(key))
      throw ConfigError("config: unknown key " + key);
  return cfg;
}

ProblemParams load_params(const ConfigFile& cfg, bool nonrigorous_flag) {
  ProblemParams p;
  p.dim = cfg.get_int("problem.dim", 3);
  p.alpha = cfg.get_double("problem.alpha", 1.0);
  p.p = cfg.get_double("problem.p", 2.0);
  p.v_inf = cfg.get_double("problem.v_inf", 1.0);
  p.kappa = cfg.get_double("problem.kappa", 0.0);
  p.c0 = cfg.get_double("problem.c0", 0.0);
  p.rho = cfg.get_double("problem.rho", 0.0);
  p.eps_cutoff = cfg.get_double("problem.eps_cutoff", 0.25);
  p.claim_h1 = cfg.get_bool("problem.claim_h1", false);
  p.claim_h2 = cfg.get_bool("problem.claim_h2", false);
  p.nonrigorous = cfg.get_bool("problem.nonrigorous", false) || nonrigorous_flag;
  return p;
}

Grid load_grid(const ConfigFile& cfg, const ProblemParams& p) {
  Grid g;
  g.dim = p.dim;
  g.n = cfg.get_int("grid.n", 48);
  g.length = cfg.get_double("grid.length", 16.0);
  if (g.n < 8) throw ConfigError("config: grid.n must be at least 8");
  return g;
}

SymmetrySpec load_spec(const ConfigFile& cfg) {
  SymmetrySpec s;
  s.k = cfg.get_int("symmetry.k", 1);
  s.m = cfg.get_int("symmetry.m", 0);
  if (cfg.has("symmetry.plane")) {
    const auto plane = cfg.get_double_list("symmetry.plane");
    if (plane.size() != 2) throw ConfigError("config: symmetry.plane needs 2 axes");
    s.plane = {static_cast<int>(plane[0]), static_cast<int>(plane[1])};
  }
  if (s.k < 1 || s.m < 0 || s.m >= std::max(s.k, 1))
    throw ConfigError("config: symmetry requires k >= 1 and 0 <= m < k");
  return s;
}

PotentialPair load_potentials(const ConfigFile& cfg, const Grid& g,
                              const ProblemParams& p, const SymmetrySpec& s) {
  PotentialPair pot;
  const std::string a_preset = cfg.get_string("potential.a_preset", "zero");
  if (a_preset == "zero") {
    pot.a = potential_a_zero(g);
  } else if (a_preset == "constant_field") {
    pot.a = potential_a_constant_field(g, cfg.get_double("potential.b", 0.1),
                                       s.plane);
  } else {
    throw ConfigError("config: unknown potential.a_preset " + a_preset);
  }
  const std::string v_preset = cfg.get_string("potential.v_preset", "constant");
  if (v_preset == "constant") {
    pot.v = potential_v_constant(g, p.v_inf);
  } else if (v_preset == "exp_well") {
    pot.v = potential_v_exp_well(g, p.v_inf, p.c0, p.kappa);
  } else {
    throw ConfigError("config: unknown potential.v_preset " + v_preset);
  }
  pot.v_inf = p.v_inf;
  return pot;
}

RadialMesh load_mesh(const ConfigFile& cfg) {
  RadialMesh mesh;
  mesh.r_max = cfg.get_double("radial.r_max", 30.0);
  mesh.m_nodes = cfg.get_int("radial.m_nodes", 1200);
  if (mesh.m_nodes < 16)
    throw ConfigError("config: radial.m_nodes must be at least 16");
  if (mesh.r_max <= 0.0)
    throw ConfigError("config: radial.r_max must be positive");
  return mesh;
}

RadialSolveConfig load_radial_cfg(const ConfigFile& cfg) {
  RadialSolveConfig rc;
  rc.max_iter = cfg.get_int("radial.max_iter", rc.max_iter);
  rc.tol_grad = cfg.get_double("radial.tol_grad", rc.tol_grad);
  return rc;
}

SolveConfig load_solve_cfg(const ConfigFile& cfg, std::uint64_t seed_flag) {
  SolveConfig sc;
  sc.max_iter = cfg.get_int("solver.max_iter", sc.max_iter);
  sc.tol_grad = cfg.get_double("solver.tol_grad", sc.tol_grad);
  sc.tol_nehari = cfg.get_double("solver.tol_nehari", sc.tol_nehari);
  sc.symmetrize_every = cfg.get_int("solver.symmetrize_every", 1);
  sc.seed = cfg.has("solver.seed")
                ? static_cast<std::uint64_t>(cfg.get_int("solver.seed"))
                : seed_flag;
  sc.guess.preset = cfg.get_string("solver.guess", "ring_bumps");
  sc.guess.radius = cfg.get_double("solver.guess_radius", sc.guess.radius);
  sc.guess.width = cfg.get_double("solver.guess_width", sc.guess.width);
  sc.guess.amplitude =
      cfg.get_double("solver.guess_amplitude", sc.guess.amplitude);
  return sc;
}

// ---- artifacts ----------------------------------------------------------

class Manifest {
 public:
  Manifest(fs::path dir, std::string command, std::string config_text)
      : dir_(std::move(dir)),
        command_(std::move(command)),
        config_text_(std::move(config_text)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string());
  }

  const fs::path& dir() const { return dir_; }

  void add_text(const std::string& name, const std::string& text) {
    write_text_file(dir_ / name, text);
    record(name);
  }

  void add_json(const std::string& name, const json& j) {
    add_text(name, j.dump(2) + "\n");
  }

  void record(const std::string& name) {
    entries_[name] = sha256_file(dir_ / name);
  }

  void finish() {
    json m;
    m["command"] = command_;
    m["config_echo"] = config_text_;
    m["config_sha256"] = sha256_hex(config_text_);
    json arts = json::object();
    for (const auto& [name, hash] : entries_) arts[name] = hash;
    m["artifacts"] = arts;
    write_text_file(dir_ / "manifest.json", m.dump(2) + "\n");
  }

 private:
  fs::path dir_;
  std::string command_;
  std::string config_text_;
  std::map<std::string, std::string> entries_;
};

json params_json(const ProblemParams& p) {
  return json{{"dim", p.dim},
              {"alpha", p.alpha},
              {"p", p.p},
              {"v_inf", p.v_inf},
              {"kappa", p.kappa},
              {"c0", p.c0},
              {"rho", p.rho},
              {"eps_cutoff", p.eps_cutoff},
              {"claim_h1", p.claim_h1},
              {"claim_h2", p.claim_h2},
              {"nonrigorous", p.nonrigorous}};
}

json interval_json(const Interval& iv) {
  return json{{"lo", iv.lo},
              {"hi", iv.hi},
              {"lo_closed", iv.lo_closed},
              {"hi_closed", iv.hi_closed},
              {"str", iv.str()},
              {"empty", iv.empty()}};
}

std::string checks_csv(const std::vector<CheckResult>& checks) {
  std::ostringstream os;
  os << "name,measured,lo,hi,pass\n";
  for (const auto& c : checks)
    os << c.name << "," << format_double(c.measured) << ","
       << format_double(c.lo) << "," << format_double(c.hi) << ","
       << (c.pass ? "1" : "0") << "\n";
  return os.str();
}

json checks_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back(json{{"name", c.name},
                       {"measured", c.measured},
                       {"lo", c.lo},
                       {"hi", c.hi},
                       {"pass", c.pass}});
  return arr;
}

// ---- subcommands --------------------------------------------------------

int cmd_validate(const std::string& config_path, const std::string& out_dir,
                 bool nonrigorous) {
  const ConfigFile cfg = load_config(config_path);
  const ProblemParams params = load_params(cfg, nonrigorous);
  const SymmetrySpec spec = load_spec(cfg);

  const ValidationReport vr = validate(params);
  const ExponentSet es = lambda_set(params);

  json report;
  report["admissible"] = vr.admissible;
  report["nonrigorous"] = vr.nonrigorous;
  report["violations"] = vr.violations;
  report["lambda_set"] = interval_json(es.lambda_set);
  report["lambda_set_empty"] = es.empty;
  if (es.empty) report["first_empty_pair"] = es.first_empty_pair;
  report["delta_tau"] = delta_tau(spec);
  report["params"] = params_json(params);

  bool compatible = true;
  if (cfg.has("grid.n")) {
    const Grid grid = load_grid(cfg, params);
    const PotentialPair pot = load_potentials(cfg, grid, params, spec);
    const CompatReport cr = compat_check(pot, spec);
    compatible = cr.compatible;
    report["compat"] = json{{"max_a_violation", cr.max_a_violation},
                            {"max_v_violation", cr.max_v_violation},
                            {"tolerance", cr.tolerance},
                            {"compatible", cr.compatible}};
  }

  Manifest man(out_dir, "validate", read_text_file(config_path));
  man.add_json("validation.json", report);
  man.finish();
  std::cout << report.dump(2) << "\n";
  return (vr.admissible && compatible) ? 0 : 1;
}

json profile_json(const RadialProfile& prof) {
  return json{{"lambda", prof.lambda},
              {"energy", prof.energy},
              {"norm_sq", prof.norm_sq},
              {"d_value", prof.d_value},
              {"nehari_residual", prof.nehari_residual},
              {"grad_residual", prof.grad_residual},
              {"iterations", prof.iterations},
              {"converged", prof.converged}};
}

int cmd_ground(const std::string& config_path, const std::string& out_dir,
               bool nonrigorous) {
  const ConfigFile cfg = load_config(config_path);
  const ProblemParams params = load_params(cfg, nonrigorous);
  const ValidationReport vr = validate(params);
  if (!vr.admissible) throw ConfigError("parameters inadmissible; run validate");
  const RadialMesh mesh = load_mesh(cfg);
  const RadialSolveConfig rc = load_radial_cfg(cfg);
  std::vector<double> lambdas{params.v_inf};
  if (cfg.has("radial.lambdas")) lambdas = cfg.get_double_list("radial.lambdas");

  Manifest man(out_dir, "ground", read_text_file(config_path));
  json report;
  report["params"] = params_json(params);
  json runs = json::array();
  std::vector<double> log_l, log_e;
  bool all_converged = true;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double lambda = lambdas[i];
    const RadialProfile prof = solve_ground_state(lambda, params, mesh, rc);
    all_converged = all_converged && prof.converged;
    const std::string csv_name = "profile_" + std::to_string(i) + ".csv";
    write_profile_csv(man.dir() / csv_name, prof);
    man.record(csv_name);
    const double lo = cfg.get_double("radial.fit_lo", 0.45 * mesh.r_max);
    const double hi = cfg.get_double("radial.fit_hi", 0.85 * mesh.r_max);
    const DecayFit fit = decay_fit(prof, lo, hi);
    json run = profile_json(prof);
    run["profile_csv"] = csv_name;
    run["decay_fit"] = json{{"rate", fit.rate},
                            {"power", fit.power},
                            {"offset", fit.offset},
                            {"residual", fit.residual},
                            {"window", json::array({lo, hi})}};
    runs.push_back(run);
    log_l.push_back(std::log(lambda));
    log_e.push_back(std::log(prof.energy));
  }
  report["runs"] = runs;
  if (lambdas.size() >= 2) {
    // least-squares slope of log E vs log lambda
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(log_l.size());
    for (std::size_t i = 0; i < log_l.size(); ++i) {
      sx += log_l[i];
      sy += log_e[i];
      sxx += log_l[i] * log_l[i];
      sxy += log_l[i] * log_e[i];
    }
    report["scaling_exponent"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  man.add_json("ground.json", report);
  man.finish();
  std::cout << report.dump(2) << "\n";
  if (!all_converged) throw ConvergenceError("radial solve did not converge");
  return 0;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir,
              bool nonrigorous, std::uint64_t seed) {
  const ConfigFile cfg = load_config(config_path);
  const ProblemParams params = load_params(cfg, nonrigorous);
  const ValidationReport vr = validate(params);
  if (!vr.admissible) throw ConfigError("parameters inadmissible; run validate");
  const Grid grid = load_grid(cfg, params);
  const SymmetrySpec spec = load_spec(cfg);
  const PotentialPair pot = load_potentials(cfg, grid, params, spec);
  const SolveConfig sc = load_solve_cfg(cfg, seed);
  const EnergyContext ctx = make_context(params, pot, grid);

  const SolveReport rep = solve(ctx, spec, sc);

  Manifest man(out_dir, "solve", read_text_file(config_path));
  write_field_snapshot(man.dir() / "field.fld", rep.field, "solution");
  man.record("field.fld");
  man.record("field.fld.json");
  std::ostringstream trace;
  trace << "iter,j,grad_res,nehari_res,equiv_defect\n";
  for (const auto& row : rep.trace)
    trace << row.iter << "," << format_double(row.j) << ","
          << format_double(row.grad_res) << "," << format_double(row.nehari_res)
          << "," << format_double(row.equiv_defect) << "\n";
  man.add_text("trace.csv", trace.str());

  const PsSummary ps = ps_monitor(rep);
  json report;
  report["j"] = rep.j;
  report["norm_av_sq"] = rep.norm_av_sq;
  report["d_value"] = rep.d_value;
  report["t_u_drift"] = rep.t_u_drift;
  report["grad_residual"] = rep.grad_residual;
  report["nehari_residual"] = rep.nehari_residual;
  report["equivariance_defect"] = rep.equivariance_defect;
  report["winding"] = rep.winding;
  report["winding_valid"] = rep.winding_valid;
  report["converged"] = rep.converged;
  report["iterations"] = rep.iterations;
  report["boundary_mass_fraction"] = rep.boundary_mass_fraction;
  report["symmetry"] = json{{"k", spec.k}, {"m", spec.m}};
  report["nonrigorous"] = params.nonrigorous;
  report["ps_monitor"] = json{{"is_ps_like", ps.is_ps_like},
                              {"c_estimate", ps.c_estimate},
                              {"residual_slope", ps.residual_slope},
                              {"stagnation", ps.stagnation}};
  man.add_json("solve_report.json", report);
  man.finish();
  std::cout << report.dump(2) << "\n";
  if (!rep.converged) throw ConvergenceError("solver did not converge");
  return 0;
}

int cmd_bumps(const std::string& config_path, const std::string& out_dir,
              bool nonrigorous) {
  const ConfigFile cfg = load_config(config_path);
  const ProblemParams params = load_params(cfg, nonrigorous);
  const ValidationReport vr = validate(params);
  if (!vr.admissible) throw ConfigError("parameters inadmissible; run validate");
  const Grid grid = load_grid(cfg, params);
  const SymmetrySpec spec = load_spec(cfg);
  const PotentialPair pot = load_potentials(cfg, grid, params, spec);
  const EnergyContext ctx = make_context(params, pot, grid);
  const RadialMesh mesh = load_mesh(cfg);
  const RadialSolveConfig rc = load_radial_cfg(cfg);

  const RadialProfile base = solve_ground_state(params.v_inf, params, mesh, rc);
  if (!base.converged)
    throw ConvergenceError("limit-problem ground state did not converge");
  const double e_vinf = base.energy;

  std::vector<double> y_norms{0.25 * grid.length};
  if (cfg.has("bumps.y_norms")) y_norms = cfg.get_double_list("bumps.y_norms");

  const ThresholdSweep sweep =
      threshold_sweep(base, y_norms, ctx, spec, e_vinf);

  json report;
  json certs = json::array();
  for (const auto& r : sweep.reports)
    certs.push_back(json{{"k", r.k},
                         {"m", r.m},
                         {"rho0", r.rho0},
                         {"R_y", r.r_y},
                         {"mu", r.mu},
                         {"eps", r.eps},
                         {"max_t_J_theta", r.max_t_j_theta},
                         {"k_E_Vinf", r.k_e_vinf},
                         {"gap", r.gap},
                         {"cross_term", r.cross_term},
                         {"single_gap", r.single_gap},
                         {"h2_ok", r.h2_ok},
                         {"certified", r.certified}});
  report["certificates"] = certs;
  report["d0_fit"] = sweep.d0_fit;
  report["kappa_fit"] = sweep.kappa_fit;
  report["kappa"] = params.kappa;
  report["all_positive"] = sweep.all_positive;

  Manifest man(out_dir, "bumps", read_text_file(config_path));
  man.add_json("certificate.json", report);
  man.finish();
  std::cout << report.dump(2) << "\n";
  return sweep.all_positive ? 0 : 1;
}

int cmd_decay(const std::string& config_path, const std::string& out_dir,
              bool nonrigorous) {
  const ConfigFile cfg = load_config(config_path);
  const ProblemParams params = load_params(cfg, nonrigorous);
  const ValidationReport vr = validate(params);
  if (!vr.admissible) throw ConfigError("parameters inadmissible; run validate");
  const RadialMesh mesh = load_mesh(cfg);
  const RadialSolveConfig rc = load_radial_cfg(cfg);

  const RadialProfile prof =
      solve_ground_state(params.v_inf, params, mesh, rc);
  if (!prof.converged) throw ConvergenceError("radial solve did not converge");

  std::vector<CheckResult> checks = appendix_decay_suite(params, prof);
  const auto kk = kkstar_decay_of_convolution(prof, params);
  checks.insert(checks.end(), kk.begin(), kk.end());

  json report;
  report["checks"] = checks_json(checks);
  if (cfg.has("decay.radii")) {
    const std::vector<double> radii = cfg.get_double_list("decay.radii");
    const double delta = delta_tau(load_spec(cfg));
    const double mu = cfg.get_double(
        "decay.mu", choose_mu(params.v_inf, params.kappa, delta));
    const double eps = cfg.get_double("decay.eps", params.eps_cutoff);
    const CutoffScan scan =
        cutoff_decay_scan(prof, params.p, mu, eps, radii, params.dim,
                          params.alpha);
    json rows = json::array();
    for (const auto& row : scan.rows)
      rows.push_back(json{{"r_cut", row.r_cut},
                          {"delta_d", row.delta_d},
                          {"delta_grad", row.delta_grad}});
    report["cutoff_scan"] = json{{"rows", rows},
                                 {"slope_d", scan.slope_d},
                                 {"slope_grad", scan.slope_grad},
                                 {"target_d", scan.target_d},
                                 {"target_grad", scan.target_grad}};
  }

  Manifest man(out_dir, "decay", read_text_file(config_path));
  man.add_json("decay.json", report);
  man.add_text("checks.csv", checks_csv(checks));
  man.finish();
  std::cout << report.dump(2) << "\n";
  const bool all_pass =
      std::all_of(checks.begin(), checks.end(),
                  [](const CheckResult& c) { return c.pass; });
  return all_pass ? 0 : 1;
}

int cmd_report(const std::string& run_dir) {
  std::vector<fs::path> manifests;
  if (!fs::exists(run_dir)) throw IoError("no such directory: " + run_dir);
  for (const auto& entry : fs::recursive_directory_iterator(run_dir))
    if (entry.is_regular_file() && entry.path().filename() == "manifest.json")
      manifests.push_back(entry.path());
  std::sort(manifests.begin(), manifests.end());
  if (manifests.empty()) {
    std::cerr << "no artifacts found in " << run_dir << "\n";
    return 1;
  }

  std::ostringstream md;
  md << "# Run report\n";
  for (const auto& mpath : manifests) {
    const json man = json::parse(read_text_file(mpath));
    const fs::path dir = mpath.parent_path();
    md << "\n## " << man["command"].get<std::string>() << " — "
       << fs::relative(dir, run_dir).string() << "\n\n";
    md << "| artifact | sha256 |\n|---|---|\n";
    for (const auto& [name, hash] : man["artifacts"].items()) {
      const std::string actual = sha256_file(dir / name);
      if (actual != hash.get<std::string>())
        throw IoError("hash mismatch for " + (dir / name).string());
      md << "| " << name << " | " << hash.get<std::string>() << " |\n";
    }
    for (const auto& [name, hash] : man["artifacts"].items()) {
      const fs::path p = dir / name;
      if (p.extension() == ".json" && name != "manifest.json") {
        const json body = json::parse(read_text_file(p));
        md << "\n```json\n" << body.dump(2) << "\n```\n";
      }
    }
  }
  write_text_file(fs::path(run_dir) / "report.md", md.str());
  std::cout << "report written: " << (fs::path(run_dir) / "report.md").string()
            << " (" << manifests.size() << " artifact sets)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant magnetic Choquard toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "run", run_dir;
  std::uint64_t seed = 0;
  bool nonrigorous = false;

  auto add_common = [&](CLI::App* sub, bool needs_config = true) {
    if (needs_config)
      sub->add_option("--config", config_path, "run-config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "RNG seed override");
    sub->add_flag("--nonrigorous", nonrigorous,
                  "permit dimensions outside the supported theory");
  };

  CLI::App* validate = app.add_subcommand("validate", "check admissibility");
  add_common(validate);
  CLI::App* ground = app.add_subcommand("ground", "radial ground state");
  add_common(ground);
  CLI::App* solve = app.add_subcommand("solve", "equivariant grid solve");
  add_common(solve);
  CLI::App* bumps = app.add_subcommand("bumps", "multibump threshold certificate");
  add_common(bumps);
  CLI::App* decay = app.add_subcommand("decay", "decay-window and cutoff checks");
  add_common(decay);
  CLI::App* report = app.add_subcommand("report", "consolidate a run directory");
  report->add_option("dir", run_dir, "run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate))
      return cmd_validate(config_path, out_dir, nonrigorous);
    if (app.got_subcommand(ground))
      return cmd_ground(config_path, out_dir, nonrigorous);
    if (app.got_subcommand(solve))
      return cmd_solve(config_path, out_dir, nonrigorous, seed);
    if (app.got_subcommand(bumps))
      return cmd_bumps(config_path, out_dir, nonrigorous);
    if (app.got_subcommand(decay))
      return cmd_decay(config_path, out_dir, nonrigorous);
    if (app.got_subcommand(report)) return cmd_report(run_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
