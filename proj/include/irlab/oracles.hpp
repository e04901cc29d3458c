#pragma once

#include <vector>

#include "irlab/instance.hpp"

namespace irlab {

// Exact expected excess risk of tail-averaged constant-stepsize SGD on a
// one-hot instance. The one-hot second-moment recursion is closed
// coordinate-wise: with rho_i = 1 - 2*gamma*lambda_i + gamma^2*lambda_i
// and r_i = 1 - gamma*lambda_i,
//   m_t[i] = rho_i^t w*[i]^2 + gamma^2 sigma^2 lambda_i (1-rho_i^t)/(1-rho_i)
// and E[beta_t beta_s] = r_i^{t-s} m_s[i] for t >= s (the bias/variance
// cross terms vanish because the noise is mean-zero; verified against
// Monte Carlo in the test suite). Requires 0 < gamma <= 1 and even n.
double onehot_sgd_risk_exact(const ProblemInstance& p, long n, double gamma);

struct RidgeRiskParts {
  double bias = 0.0;
  double variance = 0.0;
  double total() const { return bias + variance; }
};

// Exact expected excess risk of ridge regression on a one-hot instance.
// The per-coordinate sample count mu_i is Binom(n, lambda_i), so
//   bias     = lambda^2 sum_i lambda_i w*[i]^2 E[1/(mu_i+lambda)^2]
//   variance = sigma^2  sum_i lambda_i        E[mu_i/(mu_i+lambda)^2]
// with the expectations summed exactly over mu = 0..n. At lambda = 0 the
// minimum-norm solution leaves unseen coordinates at zero:
//   bias     = sum_i lambda_i w*[i]^2 P(mu_i = 0)
//   variance = sigma^2 sum_i lambda_i E[1/mu_i ; mu_i >= 1].
RidgeRiskParts onehot_ridge_risk_exact(const ProblemInstance& p, long n, double lambda);

// Classical Gaussian-design OLS identity sigma^2 d / (n - d - 1),
// used as an acceptance yardstick. Requires n > d + 1.
double ols_reference_risk(int d, long n, double sigma2);

// Binomial pmf over m = 0..n, evaluated through the multiplicative
// ratio recurrence in log space (stable for n up to 1e5 and beyond).
std::vector<double> binomial_pmf(long n, double q);

}  // namespace irlab
