#include "steepwell/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "steepwell/kernels.hpp"
#include "steepwell/spectral.hpp"

#include "json.hpp"

namespace steepwell {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for '" + key + "': " + v);
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number(key, item));
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("invalid boolean value for '" + key + "': " + v);
}

void validate(SweepConfig& cfg) {
  const auto& pr = cfg.problem;
  if (pr.dim_N < 5) throw ConfigError("dim must be >= 5");
  const double pcrit = pr.critical_exponent();
  if (!(pr.p > 2.0) || pr.p > pcrit + 1e-12) {
    std::ostringstream os;
    os << "p " << pr.p << " outside (2, " << pcrit << "] for dim " << pr.dim_N;
    throw ConfigError(os.str());
  }
  if (std::abs(pr.p - pcrit) <= 1e-12 && pr.dim_N < 8)
    throw ConfigError("critical exponent requires dim >= 8");
  if (!(pr.delta > 0.0)) throw ConfigError("delta must be positive");
  if (!(pr.potential.v_inf > 0.0)) throw ConfigError("vinf must be positive");
  if (!(pr.potential.ramp_width > 0.0)) throw ConfigError("ramp must be positive");
  if (!(cfg.r_max > pr.potential.well_radius + pr.potential.ramp_width))
    throw ConfigError("rmax must exceed the outer edge of the potential ramp");
  if (cfg.mesh < 8 || cfg.ball_mesh < 8) throw ConfigError("mesh sizes must be >= 8");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (cfg.max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (cfg.lambda_values.empty()) throw ConfigError("lambda list must be nonempty");
  for (std::size_t i = 0; i < cfg.lambda_values.size(); ++i) {
    if (!(cfg.lambda_values[i] > 0.0)) throw ConfigError("lambda values must be positive");
    if (i > 0 && !(cfg.lambda_values[i] > cfg.lambda_values[i - 1]))
      throw ConfigError("lambda values must be strictly increasing");
  }

  // delta < mu0 on the configured ball grid (the well form must be definite)
  auto ball = build_grid(pr.dim_N, pr.potential.well_radius, cfg.ball_mesh);
  auto bform = assemble_bilaplacian_form(ball, 0.0, "0");
  const double mu0 = principal_eigen(bform, ball).value;
  if (pr.delta >= mu0) {
    std::ostringstream os;
    os << "delta " << pr.delta << " >= mu0 " << mu0 << " violates (V3)";
    throw ConfigError(os.str());
  }

  const double l0 = lambda_threshold(pr);
  for (double l : cfg.lambda_values)
    if (l <= l0)
      std::cerr << "warning: lambda " << format_double(l)
                << " is at or below the threshold " << format_double(l0) << "\n";
}

}  // namespace

SweepConfig parse_config_text(const std::string& text) {
  SweepConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "dim") cfg.problem.dim_N = static_cast<int>(parse_number(key, val));
    else if (key == "p") cfg.problem.p = parse_number(key, val);
    else if (key == "delta") cfg.problem.delta = parse_number(key, val);
    else if (key == "vinf") cfg.problem.potential.v_inf = parse_number(key, val);
    else if (key == "ramp") cfg.problem.potential.ramp_width = parse_number(key, val);
    else if (key == "rmax") cfg.r_max = parse_number(key, val);
    else if (key == "mesh") cfg.mesh = static_cast<int>(parse_number(key, val));
    else if (key == "ball_mesh") cfg.ball_mesh = static_cast<int>(parse_number(key, val));
    else if (key == "tol") cfg.tol = parse_number(key, val);
    else if (key == "max_iter") cfg.max_iter = static_cast<int>(parse_number(key, val));
    else if (key == "lambda") cfg.lambda_values = parse_list(key, val);
    else if (key == "out") cfg.output_path = val;
    else if (key == "format") {
      if (val == "csv") cfg.format = OutputFormat::csv;
      else if (val == "json") cfg.format = OutputFormat::json;
      else throw ConfigError("format must be csv or json");
    } else if (key == "parallel") cfg.parallel = parse_bool(key, val);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_number(key, val));
    else throw ConfigError("unknown key '" + key + "'");
  }
  validate(cfg);
  return cfg;
}

SweepConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

// Zero-extended linear interpolation of the well-grid solution onto the
// whole-space grid; the origin value comes from the even quadratic fit.
std::vector<double> extend_to_grid(const RadialGrid& ball, const std::vector<double>& u,
                                   const RadialGrid& grid) {
  std::vector<double> out(grid.m, 0.0);
  const double u0 = (4.0 * u[0] - u[1]) / 3.0;
  for (int i = 0; i < grid.m; ++i) {
    const double r = grid.nodes[i];
    if (r >= ball.r_max) continue;
    const double x = r / ball.h;  // position in ball-grid index space
    const int k = static_cast<int>(std::floor(x));  // node k is r = k*h
    const double fr = x - k;
    auto val = [&](int j) {
      if (j == 0) return u0;
      if (j >= 1 && j <= ball.m) return u[j - 1];
      return 0.0;
    };
    out[i] = (1.0 - fr) * val(k) + fr * val(k + 1);
  }
  return out;
}

SweepRecord make_record(const SweepConfig& cfg, const RadialGrid& grid,
                        double lambda, double c_omega,
                        const std::vector<double>& limit_on_grid) {
  ProblemSpec spec = cfg.problem;
  spec.lambda = lambda;

  SweepRecord rec;
  rec.lambda = lambda;

  EigenPair eig = mu_L_lambda(grid, spec);
  rec.mu_L_lambda = eig.value;

  SolverOpts opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  GroundStateResult gs = solve_ground_state(grid, spec, &eig.field, opts);
  rec.c_lambda = gs.energy;
  rec.iterations = gs.iterations;
  rec.residual = gs.residual;
  rec.converged = gs.converged;
  rec.energy_gap = c_omega - gs.energy;

  const auto& u = gs.field.values;
  const auto& w = grid.weights;
  const int m = grid.m;
  const double big_r = spec.potential.well_radius + 0.5 * spec.potential.ramp_width;
  double l2_all = 0.0, l2_out = 0.0, p_all = 0.0, p_out = 0.0;
  for (int i = 0; i < m; ++i) {
    const double l2 = w[i] * u[i] * u[i];
    const double pm = w[i] * std::pow(std::abs(u[i]), spec.p);
    l2_all += l2;
    p_all += pm;
    if (grid.nodes[i] > spec.potential.well_radius) l2_out += l2;
    if (grid.nodes[i] > big_r) p_out += pm;
  }
  rec.tail_mass = l2_out / l2_all;
  rec.p_tail_mass = p_out / p_all;

  // sign chosen to minimize the distance to the limit solution
  const double dot = kernels::sum_prod3(w.data(), u.data(), limit_on_grid.data(), m);
  const double sign = dot >= 0.0 ? 1.0 : -1.0;
  double dist2 = 0.0;
  for (int i = 0; i < m; ++i) {
    const double d = sign * u[i] - limit_on_grid[i];
    dist2 += w[i] * d * d;
  }
  rec.l2_dist_to_limit = std::sqrt(dist2);

  // re-check the ground-state identities before emission
  if (rec.converged) {
    auto form = assemble_problem_form(grid, spec);
    const double q = form.quad(gs.field);
    const double s = lp_mass(grid, gs.field, spec.p);
    const double p = spec.p;
    const bool ok = std::abs(q - s) <= 1e-10 * q &&
                    std::abs(q - 2.0 * p * gs.energy / (p - 2.0)) <= 1e-10 * q;
    if (!ok) rec.converged = false;
  }
  return rec;
}

}  // namespace

SweepOutput run_sweep(const SweepConfig& cfg) {
  const auto& pr = cfg.problem;
  auto ball = build_grid(pr.dim_N, pr.potential.well_radius, cfg.ball_mesh);
  SolverOpts opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  GroundStateResult limit = solve_limit_problem(ball, pr.delta, pr.p, opts);

  auto grid = build_grid(pr.dim_N, cfg.r_max, cfg.mesh);
  const auto limit_on_grid = extend_to_grid(ball, limit.field.values, grid);

  SweepOutput out;
  out.c_omega = limit.energy;
  out.records.resize(cfg.lambda_values.size());

  auto row = [&](std::size_t i) {
    out.records[i] =
        make_record(cfg, grid, cfg.lambda_values[i], limit.energy, limit_on_grid);
  };
  if (cfg.parallel) {
    std::vector<std::future<void>> jobs;
    for (std::size_t i = 0; i < cfg.lambda_values.size(); ++i)
      jobs.push_back(std::async(std::launch::async, row, i));
    for (auto& j : jobs) j.get();
  } else {
    for (std::size_t i = 0; i < cfg.lambda_values.size(); ++i) row(i);
  }

  for (const auto& r : out.records)
    if (!r.converged) out.all_converged = false;
  return out;
}

NehariComparison nehari_comparison_check(const RadialGrid& grid,
                                         const GroundStateResult& u_lambda,
                                         const ProblemSpec& spec_mu) {
  auto form = assemble_problem_form(grid, spec_mu);
  NehariComparison out;
  out.t = nehari_scale(form, spec_mu.p, u_lambda.field);
  RadialField tu = u_lambda.field;
  kernels::scale(tu.data(), out.t, tu.size());
  out.energy = energy(form, spec_mu.p, tu);
  return out;
}

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void emit(const std::vector<SweepRecord>& records, OutputFormat format,
          std::ostream& out) {
  if (records.empty()) throw IoError("refusing to emit an empty record list");
  if (format == OutputFormat::csv) {
    out << "lambda,c_lambda,mu_L_lambda,tail_mass,p_tail_mass,l2_dist_to_limit,"
           "energy_gap,iterations,residual,converged\n";
    for (const auto& r : records) {
      out << format_double(r.lambda) << ',' << format_double(r.c_lambda) << ','
          << format_double(r.mu_L_lambda) << ',' << format_double(r.tail_mass) << ','
          << format_double(r.p_tail_mass) << ',' << format_double(r.l2_dist_to_limit)
          << ',' << format_double(r.energy_gap) << ',' << r.iterations << ','
          << format_double(r.residual) << ',' << (r.converged ? "true" : "false")
          << '\n';
    }
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
      nlohmann::ordered_json o;
      o["lambda"] = r.lambda;
      o["c_lambda"] = r.c_lambda;
      o["mu_L_lambda"] = r.mu_L_lambda;
      o["tail_mass"] = r.tail_mass;
      o["p_tail_mass"] = r.p_tail_mass;
      o["l2_dist_to_limit"] = r.l2_dist_to_limit;
      o["energy_gap"] = r.energy_gap;
      o["iterations"] = r.iterations;
      o["residual"] = r.residual;
      o["converged"] = r.converged;
      arr.push_back(std::move(o));
    }
    out << arr.dump(2) << '\n';
  }
  if (!out) throw IoError("write failure while emitting records");
}

void emit_to_file(const std::vector<SweepRecord>& records, OutputFormat format,
                  const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + path);
  emit(records, format, f);
  f.flush();
  if (!f) throw IoError("write failure: " + path);
}

}  // namespace steepwell
