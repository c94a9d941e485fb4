#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "steepwell/model.hpp"
#include "steepwell/solver.hpp"

// Lambda sweeps: solve the limit problem once, then the ground state and
// principal eigenvalue for each lambda, and emit per-row diagnostics.

namespace steepwell {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct SweepConfig {
  ProblemSpec problem;  // lambda field unused; lambda_values drives the sweep
  std::vector<double> lambda_values{1e2, 3e2, 1e3, 3e3, 1e4, 3e4, 1e5};
  double r_max = 4.0;
  int mesh = 2048;       // whole-space interior nodes
  int ball_mesh = 1024;  // well (unit ball) interior nodes
  double tol = 1e-8;
  int max_iter = 3000;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
  bool parallel = false;
  std::uint64_t seed = 1234;
};

struct SweepRecord {
  double lambda = 0.0;
  double c_lambda = 0.0;
  double mu_L_lambda = 0.0;
  double tail_mass = 0.0;        // L2-mass fraction outside the well (r > 1)
  double p_tail_mass = 0.0;      // p-mass fraction outside B_R
  double l2_dist_to_limit = 0.0;
  double energy_gap = 0.0;       // c(Omega) - c_lambda
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Flat key = value text, '#' comments. Unknown keys rejected. Validates
// the exponent range, the critical-case dimension rule, delta < mu0
// (computed on the configured ball grid), and ascending lambda values.
// Throws ConfigError with a one-line reason.
SweepConfig parse_config(const std::string& path);
SweepConfig parse_config_text(const std::string& text);

struct SweepOutput {
  std::vector<SweepRecord> records;
  double c_omega = 0.0;
  bool all_converged = true;
};

SweepOutput run_sweep(const SweepConfig& config);

struct NehariComparison {
  double t = 0.0;       // scale projecting u onto the mu-Nehari manifold
  double energy = 0.0;  // J_mu(t u)
};

// For mu < lambda and u the converged lambda ground state: t < 1 and
// J_mu(t u) < c_lambda is the strict-monotonicity mechanism of the sweep.
NehariComparison nehari_comparison_check(const RadialGrid& grid,
                                         const GroundStateResult& u_lambda,
                                         const ProblemSpec& spec_mu);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

// Writes the records (ascending lambda) to the stream. CSV column order is
// fixed; JSON is an array of objects with the same keys. Deterministic
// bytes for identical inputs. Throws IoError on stream failure or when the
// record list is empty.
void emit(const std::vector<SweepRecord>& records, OutputFormat format,
          std::ostream& out);
void emit_to_file(const std::vector<SweepRecord>& records, OutputFormat format,
                  const std::string& path);

}  // namespace steepwell
