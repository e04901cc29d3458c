#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "irlab/instance.hpp"
#include "irlab/rng.hpp"

namespace irlab {

// Constant-stepsize SGD over n fresh samples (single pass), returning the
// average of iterates w_{n/2} .. w_{n-1}. n must be even.
struct SgdConfig {
  long n = 0;
  double gamma = 0.0;
};

// Ridge regression on n samples; lambda may be negative (see ridge_fit).
struct RidgeConfig {
  long n = 0;
  double lambda = 0.0;
};

using EstimatorConfig = std::variant<SgdConfig, RidgeConfig>;

struct RiskEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(reps)
  long reps = 0;
  std::uint64_t seed = 0;
};

// Definition-1 check: expected excess risk at most sigma^2.
inline bool is_generalizable(const RiskEstimate& risk, double sigma2) {
  return risk.mean <= sigma2;
}

struct Sample {
  std::vector<double> x;
  double y = 0.0;
};

// Draw one (x, y). Gaussian kind synthesizes x in the eigenbasis,
// x[i] = sqrt(lambda_i) * g_i; one-hot kind draws a basis vector from the
// categorical law. The noise normal is always consumed, even when
// sigma = 0, so the stream layout does not depend on the noise level.
void draw_sample_into(const ProblemInstance& p, Rng& rng, std::span<double> x, double& y);
Sample draw_sample(const ProblemInstance& p, Rng& rng);

std::vector<double> sgd_fit(const ProblemInstance& p, const SgdConfig& cfg, Rng& rng);

// Run several stepsizes over one shared sample stream. Because the stream
// consumption does not depend on gamma, entry k is bit-identical to
// sgd_fit with gammas[k] and the same rng seed.
std::vector<std::vector<double>> sgd_fit_multi(const ProblemInstance& p, long n,
                                               std::span<const double> gammas, Rng& rng);

enum class RidgeMode { Primal, Dual, Auto };

class singular_matrix_error : public std::runtime_error {
 public:
  singular_matrix_error(double eigenvalue, const std::string& msg)
      : std::runtime_error(msg), eigenvalue_(eigenvalue) {}
  double offending_eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

// Ridge estimator (X'X + lambda I)^{-1} X'y, or equivalently
// X'(XX' + lambda I)^{-1} y. Auto picks Primal when d <= N, Dual
// otherwise. lambda = 0 returns the minimum-norm least-squares solution
// (SVD pseudo-inverse, singular values below d * eps * sigma_max dropped).
// lambda < 0 requires the regularized Gram matrix to be positive definite
// and throws singular_matrix_error naming the offending eigenvalue when
// it is not.
Eigen::VectorXd ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                          RidgeMode mode = RidgeMode::Auto);

// ||w - w*||_H^2 = sum_i lambda_i (w_i - w*_i)^2.
double excess_risk(std::span<const double> w, const ProblemInstance& p);
double excess_risk(const Eigen::VectorXd& w, const ProblemInstance& p);

// Risk of one freshly sampled fit; rep streams are derived as
// mix_seed(seed, rep).
double single_rep_risk(const ProblemInstance& p, const EstimatorConfig& cfg, Rng& rng);

// Monte-Carlo mean excess risk over reps independent data draws. Reps run
// in parallel (OpenMP); the reduction is by rep index, so the result is
// independent of thread count and scheduling. mc_risk_serial is the plain
// loop reference and returns bit-identical results.
RiskEstimate mc_risk(const ProblemInstance& p, const EstimatorConfig& cfg, long reps,
                     std::uint64_t seed);
RiskEstimate mc_risk_serial(const ProblemInstance& p, const EstimatorConfig& cfg, long reps,
                            std::uint64_t seed);

}  // namespace irlab
