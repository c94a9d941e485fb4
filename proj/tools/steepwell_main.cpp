#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "steepwell/bubble.hpp"
#include "steepwell/kernels.hpp"
#include "steepwell/model.hpp"
#include "steepwell/solver.hpp"
#include "steepwell/spectral.hpp"
#include "steepwell/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitIo = 4;

struct CommonOpts {
  int dim = 5;
  double p = 3.0;
  double delta = 50.0;
  double vinf = 1.0;
  double ramp = 0.5;
  double rmax = 4.0;
  int mesh = 2048;
  int ball_mesh = 1024;
  double tol = 1e-8;
  int max_iter = 3000;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1234;
  bool parallel = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--dim", o.dim, "ambient dimension N (>= 5)");
  cmd->add_option("--p", o.p, "nonlinearity exponent, 2 < p <= 2N/(N-4)");
  cmd->add_option("--delta", o.delta, "linear shift delta (0 < delta < mu0)");
  cmd->add_option("--vinf", o.vinf, "potential plateau value");
  cmd->add_option("--ramp", o.ramp, "potential ramp width");
  cmd->add_option("--rmax", o.rmax, "truncation radius of the whole-space grid");
  cmd->add_option("--mesh", o.mesh, "interior nodes of the whole-space grid");
  cmd->add_option("--ball-mesh", o.ball_mesh, "interior nodes of the well grid");
  cmd->add_option("--tol", o.tol, "solver tolerance");
  cmd->add_option("--max-iter", o.max_iter, "solver iteration cap");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", o.seed, "seed for randomized components");
  cmd->add_flag("--parallel", o.parallel, "run sweep rows concurrently");
}

steepwell::ProblemSpec make_spec(const CommonOpts& o, double lambda) {
  steepwell::ProblemSpec s;
  s.dim_N = o.dim;
  s.p = o.p;
  s.delta = o.delta;
  s.potential.v_inf = o.vinf;
  s.potential.ramp_width = o.ramp;
  s.lambda = lambda;
  return s;
}

int run_eig(const CommonOpts& o, double lambda) {
  auto ball = steepwell::build_grid(o.dim, 1.0, o.ball_mesh);
  auto spec = make_spec(o, lambda);
  auto e0 = steepwell::mu_L0(ball, o.delta);
  std::cout << "mu0 = " << steepwell::format_double(e0.value + o.delta) << "\n";
  std::cout << "mu_L0 = " << steepwell::format_double(e0.value) << "\n";
  auto grid = steepwell::build_grid(o.dim, o.rmax, o.mesh);
  auto el = steepwell::mu_L_lambda(grid, spec);
  std::cout << "mu_L_lambda(" << steepwell::format_double(lambda)
            << ") = " << steepwell::format_double(el.value) << "\n";
  std::cout << "ess_spectrum_lower_bound = "
            << steepwell::format_double(steepwell::ess_spectrum_lower_bound(spec))
            << "\n";
  if (!e0.converged || !el.converged) {
    std::cerr << "eigensolver did not reach tolerance\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

int run_limit(const CommonOpts& o) {
  auto ball = steepwell::build_grid(o.dim, 1.0, o.ball_mesh);
  steepwell::SolverOpts so{o.tol, o.max_iter};
  auto res = steepwell::solve_limit_problem(ball, o.delta, o.p, so);
  std::cout << "c_omega = " << steepwell::format_double(res.energy) << "\n";
  std::cout << "residual = " << steepwell::format_double(res.residual)
            << " iterations = " << res.iterations
            << " nehari_defect = " << steepwell::format_double(res.nehari_defect)
            << "\n";
  return res.converged ? kExitOk : kExitNoConvergence;
}

int run_ground(const CommonOpts& o, double lambda) {
  auto grid = steepwell::build_grid(o.dim, o.rmax, o.mesh);
  auto spec = make_spec(o, lambda);
  steepwell::SolverOpts so{o.tol, o.max_iter};
  auto res = steepwell::solve_ground_state(grid, spec, nullptr, so);
  std::cout << "c_lambda = " << steepwell::format_double(res.energy) << "\n";
  std::cout << "residual = " << steepwell::format_double(res.residual)
            << " iterations = " << res.iterations
            << " nehari_defect = " << steepwell::format_double(res.nehari_defect)
            << "\n";
  return res.converged ? kExitOk : kExitNoConvergence;
}

int run_sweep_cmd(const std::string& config_path) {
  auto cfg = steepwell::parse_config(config_path);
  auto out = steepwell::run_sweep(cfg);
  if (cfg.output_path.empty())
    steepwell::emit(out.records, cfg.format, std::cout);
  else
    steepwell::emit_to_file(out.records, cfg.format, cfg.output_path);
  return out.all_converged ? kExitOk : kExitNoConvergence;
}

int run_bubble(const CommonOpts& o) {
  const double s = steepwell::sobolev_constant(o.dim);
  auto res = steepwell::bubble_energy_bound(o.dim, o.delta,
                                            steepwell::default_epsilon_grid());
  std::cout << "sobolev_constant = " << steepwell::format_double(s) << "\n";
  std::cout << "threshold = " << steepwell::format_double(res.threshold) << "\n";
  std::cout << "min_energy = " << steepwell::format_double(res.min_energy)
            << " at eps = " << steepwell::format_double(res.argmin_eps) << "\n";
  std::cout << "margin = " << steepwell::format_double(res.margin) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial ground states of the biharmonic steep-well equation"};
  app.require_subcommand(1);

  CommonOpts common;
  double lambda = 1e3;
  std::string config_path;

  auto* eig = app.add_subcommand("eig", "principal eigenvalues mu0, mu(L0), mu(L_lambda)");
  add_common(eig, common);
  eig->add_option("--lambda", lambda, "potential strength lambda");

  auto* limit = app.add_subcommand("limit", "least-energy solution of the well problem");
  add_common(limit, common);

  auto* ground = app.add_subcommand("ground", "least-energy solution at a given lambda");
  add_common(ground, common);
  ground->add_option("--lambda", lambda, "potential strength lambda")->required();

  auto* sweep = app.add_subcommand("sweep", "lambda sweep from a config file");
  sweep->add_option("--config", config_path, "flat key = value config file")->required();

  auto* bubble = app.add_subcommand("bubble", "critical-case energy bound report");
  add_common(bubble, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (eig->parsed()) return run_eig(common, lambda);
    if (limit->parsed()) return run_limit(common);
    if (ground->parsed()) return run_ground(common, lambda);
    if (sweep->parsed()) return run_sweep_cmd(config_path);
    if (bubble->parsed()) return run_bubble(common);
  } catch (const steepwell::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const steepwell::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}
