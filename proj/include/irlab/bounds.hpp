#pragma once

#include <limits>

#include "irlab/instance.hpp"

namespace irlab {

// Bias/variance bound values plus the internal quantities that produced
// them. k1/k2 are the argmin head sizes of the SGD bounds; k_star is the
// fixed spectral cut of the ridge lower bounds. Fields that do not apply
// to a particular bound stay at their defaults (-1 / NaN).
struct BoundReport {
  double bias_bound = 0.0;
  double variance_bound = 0.0;
  double total = 0.0;
  int k1 = -1;
  int k2 = -1;
  int k_star = -1;
  double lambda_tilde = std::numeric_limits<double>::quiet_NaN();
  double kappa = std::numeric_limits<double>::quiet_NaN();
  // Signal-to-noise ratio of the instance; +inf in the noiseless case.
  double r_squared = std::numeric_limits<double>::quiet_NaN();
  double const_b = std::numeric_limits<double>::quiet_NaN();
  double const_c = 1.0;
  bool gamma_valid = true;  // SGD bounds: stepsize within the bound's regime
};

// Gaussian-data SGD risk upper bound (tail-averaged):
//   bias(k1) = 1/(gamma N)^2 ||E w*||^2_{H^-1_{0:k1}} + ||E w*||^2_{H_{k1:inf}}
//   with the contraction E = exp(-N gamma H), minimized over k1 = 0..d;
//   var(k2)  = (sigma^2 + ||w*||_H^2)/N * (k2 + (N gamma)^2 sum_{i>k2} lambda_i^2),
//   minimized over k2. The exp form makes the (N -> aN, gamma -> gamma/a)
//   scaling identity exact: bias invariant, variance scaled by 1/a.
// Stepsizes above 1/tr(H) are outside the bound's regime and flagged via
// gamma_valid, not rejected.
BoundReport sgd_risk_bound_gaussian(const ProblemInstance& p, long n, double gamma,
                                    double c = 1.0);

// One-hot SGD risk upper bound; the contraction is (I - gamma H)^{n/2} and
// the variance is sigma^2 (k2/n + n gamma^2 sum_{i>k2} lambda_i^2).
// Requires a one-hot instance and 0 < gamma <= 1.
BoundReport sgd_risk_bound_onehot(const ProblemInstance& p, long n, double gamma,
                                  double c = 1.0);

// Gaussian-data ridge risk lower bound at the spectral cut
// k* = k_star_ridge(s, lambda, n, b), with lambda_tilde = lambda + tail:
//   bias >= (lambda_tilde/n)^2 ||w*||^2_{H^-1_{0:k*}} + ||w*||^2_{H_{k*:inf}}
//   var  >= sigma^2 (k*/n + n sum_{i>k*} lambda_i^2 / lambda_tilde^2).
BoundReport ridge_risk_lower_gaussian(const ProblemInstance& p, long n, double lambda,
                                      double b = 1.0, double c = 1.0);

// One-hot ridge risk lower bound at k* = k_star_onehot(s, n).
BoundReport ridge_risk_lower_onehot(const ProblemInstance& p, long n, double lambda,
                                    double c = 1.0);

// Sample-size and stepsize rule matching SGD against a ridge run:
//   n_sgd = ceil((1+R^2) kappa(n_ridge) max(1, log a) n_ridge),
//   a = kappa(n_ridge) R sqrt(n_ridge);
//   gamma* = 1/((1+R^2) lambda_tilde cf) when lambda_tilde*cf >= tr(H)
//   (cf = max(1, kappa log a)), else 1/((1+R^2) tr(H)).
// gamma* <= 1/tr(H) always holds. Requires sigma^2 > 0 (finite R).
struct Thm3Rule {
  double gamma_star = 0.0;
  long n_sgd = 0;
  bool flat_regime = false;  // true when the tr(H)-limited stepsize branch fired
  double kappa = 0.0;
  double log_a = 0.0;  // clamped to >= 1
  double lambda_tilde = 0.0;
  double r_squared = 0.0;
};
Thm3Rule thm3_rule(const ProblemInstance& p, double lambda, long n_ridge, double b = 1.0);

// Head-concentration condition under which SGD matches ridge at equal
// sample sizes: sum_{i=k*+1}^{min(n_ridge,d)} lambda_i w*[i]^2
// <= c k* ||w*||_H^2 / n_ridge with k* = k_star_thm5. Also reports whether
// R^2 lies in [1/10, 10] (the Theta(1) proxy).
struct Thm5Check {
  bool holds = false;
  bool k_star_defined = false;  // false when k* is the sentinel d+1
  int k_star = -1;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  bool snr_theta1 = false;
};
Thm5Check thm5_condition(const ProblemInstance& p, long n_ridge, double c = 1.0);

}  // namespace irlab
