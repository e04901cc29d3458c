#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "irlab/estimators.hpp"
#include "irlab/io.hpp"

namespace irlab {

enum class EstimatorKind { Sgd, Ridge };

struct TuneResult {
  double best_param = 0.0;
  RiskEstimate risk;
  std::vector<double> grid;
  std::vector<RiskEstimate> per_point;
  bool used_exact_oracle = false;
};

// Scan the hyperparameter grid at sample size n and pick the risk
// minimizer. One-hot instances are evaluated through the exact oracles
// (reps ignored, stderr 0); Gaussian instances are evaluated by Monte
// Carlo with rep streams shared across the grid, so each grid point equals
// the corresponding mc_risk call. Ties within one stderr of the minimum
// resolve to the smallest hyperparameter.
TuneResult tune(const ProblemInstance& p, EstimatorKind kind, long n,
                std::span<const double> grid, long reps, std::uint64_t seed);

// For each ridge sample size: tune ridge, then scan the SGD sample-size
// grid upward (tuning the stepsize at each point) for the first size whose
// tuned risk is within (1 + slack) of the tuned ridge risk. Rows without a
// match carry an empty n_sgd.
ComparisonCurve sample_inflation_curve(const ProblemInstance& p,
                                       std::span<const long> n_ridge_grid,
                                       std::span<const long> n_sgd_grid,
                                       std::span<const double> lambda_grid,
                                       std::span<const double> gamma_grid, long reps,
                                       double slack, std::uint64_t seed);

std::vector<double> logspace(double lo, double hi, int k);
// {0} followed by logspace(1e-4 tr, 1e4 tr, 25).
std::vector<double> default_lambda_grid(double trace);
// logspace(1e-3 / tr, 1 / tr, 15).
std::vector<double> default_gamma_grid(double trace);

struct ScenarioParams {
  long scale = 0;  // main size knob; 0 picks the scenario's default
  long d = 0;      // dimension knob where applicable
  long reps = 0;
  std::uint64_t seed = 42;
  double slack = 0.05;
  bool cor2 = false;       // cor1 only: add the rotation-invariant comparison
  long wstar_draws = 50;   // outer Monte Carlo size for the cor2 flag
};

struct ScenarioResult {
  bool pass = false;
  nlohmann::json summary;
  std::vector<std::filesystem::path> files;
};

// Packaged experiments: fig1, thm1, thm2, thm4, cor1. Writes instance
// files, curve/result CSVs, bound-report JSONs, plots where applicable,
// and <name>_summary.json with a pass/fail verdict.
ScenarioResult run_scenario(const std::string& name, const ScenarioParams& params,
                            const std::filesystem::path& out_dir);

}  // namespace irlab
