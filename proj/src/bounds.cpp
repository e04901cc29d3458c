#include "irlab/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace irlab {

namespace {

double report_r_squared(const ProblemInstance& p) {
  const auto r2 = r_squared(p);
  return r2 ? *r2 : std::numeric_limits<double>::infinity();
}

// Minimize prefactor * prefix(k) + suffix(k) over k = 0..d, where
// prefix(k) = sum_{i<=k} head[i] and suffix(k) = sum_{i>k} tail[i].
// Suffix sums are accumulated backwards so no subtraction is involved.
struct ScanResult {
  int k = 0;
  double value = 0.0;
};

ScanResult scan_min(const std::vector<double>& head, const std::vector<double>& tail,
                    double prefactor) {
  const int d = static_cast<int>(head.size());
  std::vector<double> suffix(static_cast<std::size_t>(d) + 1, 0.0);
  for (int i = d; i-- > 0;) {
    suffix[i] = suffix[i + 1] + tail[i];
  }
  ScanResult best{0, suffix[0]};
  double prefix = 0.0;
  for (int k = 1; k <= d; ++k) {
    prefix += head[k - 1];
    const double v = prefactor * prefix + suffix[k];
    if (v < best.value) {
      best = {k, v};
    }
  }
  return best;
}

}  // namespace

BoundReport sgd_risk_bound_gaussian(const ProblemInstance& p, long n, double gamma, double c) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("sgd_risk_bound_gaussian: n must be even and >= 2");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("sgd_risk_bound_gaussian: gamma must be positive and finite");
  }
  const auto& s = p.spectrum();
  const auto lam = s.values();
  const auto& w = p.w_star().w;
  const int d = s.dim();
  const double u = gamma * static_cast<double>(n);  // every term depends on gamma*n only

  std::vector<double> head(d), tail(d);
  for (int i = 0; i < d; ++i) {
    const double e2 = std::exp(-2.0 * u * lam[i]);
    const double w2 = w[i] * w[i];
    head[i] = e2 * w2 / lam[i];
    tail[i] = e2 * lam[i] * w2;
  }
  const auto bias = scan_min(head, tail, 1.0 / (u * u));

  const double w2h = p.w_star().h_norm_sq(s);
  const double pre = (p.sigma2() + w2h) / static_cast<double>(n);
  int k2 = 0;
  double inner_best = u * u * s.tail_sum_sq(0);
  for (int k = 1; k <= d; ++k) {
    const double inner = static_cast<double>(k) + u * u * s.tail_sum_sq(k);
    if (inner < inner_best) {
      inner_best = inner;
      k2 = k;
    }
  }

  BoundReport rep;
  rep.bias_bound = c * bias.value;
  rep.variance_bound = c * (pre * inner_best);
  rep.total = rep.bias_bound + rep.variance_bound;
  rep.k1 = bias.k;
  rep.k2 = k2;
  rep.kappa = kappa(s, n);
  rep.r_squared = report_r_squared(p);
  rep.const_c = c;
  rep.gamma_valid = gamma <= 1.0 / s.trace();
  return rep;
}

BoundReport sgd_risk_bound_onehot(const ProblemInstance& p, long n, double gamma, double c) {
  if (p.kind() != DataKind::OneHot) {
    throw std::invalid_argument("sgd_risk_bound_onehot: instance is not one-hot");
  }
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("sgd_risk_bound_onehot: n must be even and >= 2");
  }
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw std::invalid_argument("sgd_risk_bound_onehot: requires 0 < gamma <= 1");
  }
  const auto& s = p.spectrum();
  const auto lam = s.values();
  const auto& w = p.w_star().w;
  const int d = s.dim();
  const double nd = static_cast<double>(n);

  std::vector<double> head(d), tail(d);
  for (int i = 0; i < d; ++i) {
    // (1 - gamma lambda)^{n/2}, exact zero when gamma*lambda = 1.
    const double e = std::exp(0.5 * nd * std::log1p(-gamma * lam[i]));
    const double w2 = w[i] * w[i];
    head[i] = e * e * w2 / lam[i];
    tail[i] = e * e * lam[i] * w2;
  }
  const auto bias = scan_min(head, tail, 1.0 / (nd * nd * gamma * gamma));

  int k2 = 0;
  double var_best = p.sigma2() * nd * gamma * gamma * s.tail_sum_sq(0);
  for (int k = 1; k <= d; ++k) {
    const double v =
        p.sigma2() * (static_cast<double>(k) / nd + nd * gamma * gamma * s.tail_sum_sq(k));
    if (v < var_best) {
      var_best = v;
      k2 = k;
    }
  }

  BoundReport rep;
  rep.bias_bound = c * bias.value;
  rep.variance_bound = c * var_best;
  rep.total = rep.bias_bound + rep.variance_bound;
  rep.k1 = bias.k;
  rep.k2 = k2;
  rep.kappa = kappa(s, n);
  rep.r_squared = report_r_squared(p);
  rep.const_c = c;
  rep.gamma_valid = gamma <= 1.0;
  return rep;
}

BoundReport ridge_risk_lower_gaussian(const ProblemInstance& p, long n, double lambda, double b,
                                      double c) {
  if (n < 1) {
    throw std::invalid_argument("ridge_risk_lower_gaussian: n must be >= 1");
  }
  const auto& s = p.spectrum();
  const auto lam = s.values();
  const auto& w = p.w_star().w;
  const int d = s.dim();
  const int ks = k_star_ridge(s, lambda, n, b);
  const double lt = lambda + s.tail_sum(ks);
  const double nd = static_cast<double>(n);

  double head = 0.0, tail = 0.0;
  for (int i = 0; i < d; ++i) {
    const double w2 = w[i] * w[i];
    if (i < ks) {
      head += w2 / lam[i];
    } else {
      tail += lam[i] * w2;
    }
  }
  const double bias = (lt / nd) * (lt / nd) * head + tail;

  const double tail_sq = s.tail_sum_sq(ks);
  const double var_tail = tail_sq > 0.0 ? nd * tail_sq / (lt * lt) : 0.0;
  const double variance = p.sigma2() * (static_cast<double>(ks) / nd + var_tail);

  BoundReport rep;
  rep.bias_bound = c * bias;
  rep.variance_bound = c * variance;
  rep.total = rep.bias_bound + rep.variance_bound;
  rep.k_star = ks;
  rep.lambda_tilde = lt;
  rep.kappa = kappa(s, n);
  rep.r_squared = report_r_squared(p);
  rep.const_b = b;
  rep.const_c = c;
  return rep;
}

BoundReport ridge_risk_lower_onehot(const ProblemInstance& p, long n, double lambda, double c) {
  if (p.kind() != DataKind::OneHot) {
    throw std::invalid_argument("ridge_risk_lower_onehot: instance is not one-hot");
  }
  if (n < 1) {
    throw std::invalid_argument("ridge_risk_lower_onehot: n must be >= 1");
  }
  if (lambda < 0.0) {
    throw std::invalid_argument("ridge_risk_lower_onehot: lambda must be >= 0");
  }
  const auto& s = p.spectrum();
  const auto lam = s.values();
  const auto& w = p.w_star().w;
  const int d = s.dim();
  const int ks = k_star_onehot(s, n);  // may be the sentinel d+1
  const double nd = static_cast<double>(n);

  double bias_never_seen = 0.0;  // sum_i (1-lambda_i)^n lambda_i w_i^2
  double bias_head = 0.0, bias_tail = 0.0;
  double var_head = 0.0, var_tail = 0.0;
  for (int i = 0; i < d; ++i) {
    const double li = lam[i];
    const double w2 = w[i] * w[i];
    bias_never_seen += std::exp(nd * std::log1p(-li)) * li * w2;
    if (i + 1 <= ks) {
      const double denom = nd * li + lambda;
      bias_head += lambda * lambda * li * w2 / (denom * denom);
      var_head += nd * li * li / (denom * denom);
    } else {
      bias_tail += li * w2;
      var_tail += nd * li * li / ((1.0 + lambda) * (1.0 + lambda));
    }
  }

  BoundReport rep;
  rep.bias_bound = c * std::max(bias_never_seen, bias_head + bias_tail);
  rep.variance_bound = c * p.sigma2() * (var_head + var_tail);
  rep.total = rep.bias_bound + rep.variance_bound;
  rep.k_star = ks;
  rep.kappa = kappa(s, n);
  rep.r_squared = report_r_squared(p);
  rep.const_c = c;
  return rep;
}

Thm3Rule thm3_rule(const ProblemInstance& p, double lambda, long n_ridge, double b) {
  if (n_ridge < 1) {
    throw std::invalid_argument("thm3_rule: n_ridge must be >= 1");
  }
  const auto r2 = r_squared(p);
  if (!r2) {
    throw std::invalid_argument(
        "thm3_rule: infinite signal-to-noise ratio (sigma = 0); the rule needs finite R "
        "-- in the noiseless regime ridge with lambda = 0 is unbeatable");
  }
  const auto& s = p.spectrum();
  Thm3Rule rule;
  rule.r_squared = *r2;
  rule.kappa = kappa(s, n_ridge);
  const double a = rule.kappa * std::sqrt(*r2) * std::sqrt(static_cast<double>(n_ridge));
  rule.log_a = std::max(1.0, std::log(a));
  rule.n_sgd = static_cast<long>(
      std::ceil((1.0 + *r2) * rule.kappa * rule.log_a * static_cast<double>(n_ridge)));

  const int ks = k_star_ridge(s, lambda, n_ridge, b);
  rule.lambda_tilde = lambda + s.tail_sum(ks);
  const double cf = std::max(1.0, rule.kappa * std::log(a));
  if (rule.lambda_tilde * cf >= s.trace()) {
    rule.gamma_star = 1.0 / ((1.0 + *r2) * rule.lambda_tilde * cf);
    rule.flat_regime = false;
  } else {
    rule.gamma_star = 1.0 / ((1.0 + *r2) * s.trace());
    rule.flat_regime = true;
  }
  return rule;
}

Thm5Check thm5_condition(const ProblemInstance& p, long n_ridge, double c) {
  const auto& s = p.spectrum();
  const int d = s.dim();
  Thm5Check check;
  const auto r2 = r_squared(p);
  check.snr_theta1 = r2 && *r2 >= 0.1 && *r2 <= 10.0;
  const int ks = k_star_thm5(s, n_ridge);
  check.k_star = ks;
  if (ks > d) {
    return check;  // sentinel: no qualifying cut, condition reported false
  }
  check.k_star_defined = true;
  const long upper = std::min<long>(n_ridge, d);
  const auto lam = s.values();
  const auto& w = p.w_star().w;
  double lhs = 0.0;
  for (long i = ks + 1; i <= upper; ++i) {
    lhs += lam[i - 1] * w[i - 1] * w[i - 1];
  }
  check.lhs = lhs;
  check.rhs = c * static_cast<double>(ks) * p.w_star().h_norm_sq(s) / static_cast<double>(n_ridge);
  check.holds = check.lhs <= check.rhs;
  return check;
}

}  // namespace irlab
