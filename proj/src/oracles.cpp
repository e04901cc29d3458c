#include "irlab/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace irlab {

double onehot_sgd_risk_exact(const ProblemInstance& p, long n, double gamma) {
  if (p.kind() != DataKind::OneHot) {
    throw std::invalid_argument("onehot_sgd_risk_exact: instance is not one-hot");
  }
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("onehot_sgd_risk_exact: n must be even and >= 2");
  }
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw std::invalid_argument("onehot_sgd_risk_exact: requires 0 < gamma <= 1");
  }
  const long half = n / 2;
  const double g2s2 = gamma * gamma * p.sigma2();
  const auto lam = p.spectrum().values();
  const auto& w = p.w_star().w;

  // Prefix geometric sums gp[j] = sum_{t=1..j} r^t, j = 0..n/2-1, built by
  // accumulation of positive terms (no cancellation even for r near 1).
  std::vector<double> gp(static_cast<std::size_t>(half), 0.0);

  double risk = 0.0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const double li = lam[i];
    const double delta = gamma * li * (2.0 - gamma);  // 1 - rho
    const double rho = 1.0 - delta;
    const double r = 1.0 - gamma * li;
    const double w2 = w[i] * w[i];

    double rp = 1.0;
    for (long j = 1; j < half; ++j) {
      rp *= r;
      gp[j] = gp[j - 1] + rp;
    }

    // m at s = n/2, then advanced by m <- rho*m + gamma^2 sigma^2 lambda.
    const double rho_h = std::exp(static_cast<double>(half) * std::log1p(-delta));
    double m = rho_h * w2 + g2s2 * li * (-std::expm1(static_cast<double>(half) * std::log1p(-delta)) / delta);

    double acc = 0.0;
    for (long s = half; s < n; ++s) {
      acc += m * (1.0 + 2.0 * gp[static_cast<std::size_t>(n - 1 - s)]);
      m = rho * m + g2s2 * li;
    }
    risk += li * acc;
  }
  const double scale = 2.0 / static_cast<double>(n);
  return risk * scale * scale;
}

namespace {

// Accumulates sum p(m) * f(m) terms for the binomial expectations; terms
// with log-pmf below the cutoff are dropped (total skipped mass under
// (n+1) * e^{-80}).
constexpr double kLogPmfCutoff = -80.0;

struct BinomialExpectations {
  double p_zero = 0.0;            // P(mu = 0)
  double inv_sq = 0.0;            // E[1/(mu+lambda)^2]          (lambda > 0)
  double mu_over_sq = 0.0;        // E[mu/(mu+lambda)^2]
  double inv_positive = 0.0;      // E[1/mu ; mu >= 1]
};

BinomialExpectations binomial_expectations(long n, double q, double lambda) {
  BinomialExpectations out;
  if (q >= 1.0) {
    const double m = static_cast<double>(n);
    out.inv_sq = 1.0 / ((m + lambda) * (m + lambda));
    out.mu_over_sq = m / ((m + lambda) * (m + lambda));
    out.inv_positive = 1.0 / m;
    return out;
  }
  const double logit = std::log(q) - std::log1p(-q);
  double lp = static_cast<double>(n) * std::log1p(-q);  // log P(mu = 0)
  for (long m = 0; m <= n; ++m) {
    if (lp > kLogPmfCutoff) {
      const double pm = std::exp(lp);
      const double md = static_cast<double>(m);
      if (m == 0) {
        out.p_zero = pm;
      } else {
        out.inv_positive += pm / md;
      }
      const double denom = (md + lambda) * (md + lambda);
      if (denom > 0.0) {
        out.inv_sq += pm / denom;
        out.mu_over_sq += pm * md / denom;
      }
    }
    if (m < n) {
      lp += std::log(static_cast<double>(n - m) / static_cast<double>(m + 1)) + logit;
    }
  }
  return out;
}

}  // namespace

RidgeRiskParts onehot_ridge_risk_exact(const ProblemInstance& p, long n, double lambda) {
  if (p.kind() != DataKind::OneHot) {
    throw std::invalid_argument("onehot_ridge_risk_exact: instance is not one-hot");
  }
  if (n < 1) {
    throw std::invalid_argument("onehot_ridge_risk_exact: n must be >= 1");
  }
  if (lambda < 0.0) {
    throw std::invalid_argument(
        "onehot_ridge_risk_exact: lambda must be >= 0 (the binomial expectation needs mu+lambda > 0)");
  }
  const auto lam = p.spectrum().values();
  const auto& w = p.w_star().w;
  const int d = p.dim();
  std::vector<double> bias_terms(d), var_terms(d);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < d; ++i) {
    const auto e = binomial_expectations(n, lam[i], lambda);
    const double w2 = w[i] * w[i];
    if (lambda == 0.0) {
      bias_terms[i] = lam[i] * w2 * e.p_zero;
      var_terms[i] = p.sigma2() * lam[i] * e.inv_positive;
    } else {
      bias_terms[i] = lambda * lambda * lam[i] * w2 * e.inv_sq;
      var_terms[i] = p.sigma2() * lam[i] * e.mu_over_sq;
    }
  }
  RidgeRiskParts parts;
  for (int i = 0; i < d; ++i) {
    parts.bias += bias_terms[i];
    parts.variance += var_terms[i];
  }
  return parts;
}

double ols_reference_risk(int d, long n, double sigma2) {
  if (n <= static_cast<long>(d) + 1) {
    throw std::invalid_argument("ols_reference_risk: requires n > d + 1");
  }
  if (sigma2 < 0.0) {
    throw std::invalid_argument("ols_reference_risk: sigma2 must be >= 0");
  }
  return sigma2 * static_cast<double>(d) / static_cast<double>(n - d - 1);
}

std::vector<double> binomial_pmf(long n, double q) {
  if (n < 0 || q < 0.0 || q > 1.0) {
    throw std::invalid_argument("binomial_pmf: need n >= 0 and q in [0, 1]");
  }
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  if (q == 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (q == 1.0) {
    pmf[static_cast<std::size_t>(n)] = 1.0;
    return pmf;
  }
  const double logit = std::log(q) - std::log1p(-q);
  double lp = static_cast<double>(n) * std::log1p(-q);
  for (long m = 0; m <= n; ++m) {
    pmf[static_cast<std::size_t>(m)] = std::exp(lp);
    if (m < n) {
      lp += std::log(static_cast<double>(n - m) / static_cast<double>(m + 1)) + logit;
    }
  }
  return pmf;
}

}  // namespace irlab
