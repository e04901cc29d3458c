#include "irlab/estimators.hpp"

#include <omp.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace irlab {

void draw_sample_into(const ProblemInstance& p, Rng& rng, std::span<double> x, double& y) {
  const int d = p.dim();
  if (static_cast<int>(x.size()) != d) {
    throw std::invalid_argument("draw_sample_into: x buffer has wrong dimension");
  }
  const auto& w = p.w_star().w;
  if (p.kind() == DataKind::Gaussian) {
    rng.fill_normals(x);
    const auto scale = p.sqrt_lambda();
    double dot = 0.0;
    for (int i = 0; i < d; ++i) {
      x[i] *= scale[i];
      dot += w[i] * x[i];
    }
    y = dot + p.sigma() * rng.normal();
  } else {
    const std::size_t idx = rng.categorical(p.cdf());
    std::fill(x.begin(), x.end(), 0.0);
    x[idx] = 1.0;
    y = w[idx] + p.sigma() * rng.normal();
  }
}

Sample draw_sample(const ProblemInstance& p, Rng& rng) {
  Sample s;
  s.x.resize(p.dim());
  draw_sample_into(p, rng, s.x, s.y);
  return s;
}

std::vector<std::vector<double>> sgd_fit_multi(const ProblemInstance& p, long n,
                                               std::span<const double> gammas, Rng& rng) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("sgd_fit: sample count must be even and >= 2");
  }
  for (double g : gammas) {
    if (g < 0.0 || !std::isfinite(g)) {
      throw std::invalid_argument("sgd_fit: stepsize must be finite and >= 0");
    }
  }
  const int d = p.dim();
  const std::size_t nk = gammas.size();
  std::vector<std::vector<double>> iterates(nk, std::vector<double>(d, 0.0));
  std::vector<std::vector<double>> sums(nk, std::vector<double>(d, 0.0));
  std::vector<double> x(d);
  double y = 0.0;
  const long half = n / 2;
  for (long t = 1; t <= n; ++t) {
    draw_sample_into(p, rng, x, y);
    for (std::size_t k = 0; k < nk; ++k) {
      double* w = iterates[k].data();
      double dot = 0.0;
      for (int i = 0; i < d; ++i) dot += w[i] * x[i];
      const double step = gammas[k] * (y - dot);
      for (int i = 0; i < d; ++i) w[i] += step * x[i];
    }
    if (t >= half && t < n) {
      for (std::size_t k = 0; k < nk; ++k) {
        const double* w = iterates[k].data();
        double* a = sums[k].data();
        for (int i = 0; i < d; ++i) a[i] += w[i];
      }
    }
  }
  const double scale = 2.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < nk; ++k) {
    for (auto& v : sums[k]) v *= scale;
  }
  return sums;
}

std::vector<double> sgd_fit(const ProblemInstance& p, const SgdConfig& cfg, Rng& rng) {
  const double g = cfg.gamma;
  return std::move(sgd_fit_multi(p, cfg.n, std::span<const double>(&g, 1), rng)[0]);
}

namespace {

Eigen::VectorXd min_norm_least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  // Numerical-rank cutoff: singular values <= d * eps * sigma_max are zero.
  svd.setThreshold(static_cast<double>(X.cols()) * std::numeric_limits<double>::epsilon());
  return svd.solve(y);
}

Eigen::VectorXd solve_negative_lambda(const Eigen::MatrixXd& A, const Eigen::VectorXd& rhs,
                                      double lambda) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
  const auto& vals = eig.eigenvalues();
  const double min_eig = vals(0) + lambda;
  if (!(min_eig > 0.0)) {
    throw singular_matrix_error(
        min_eig, "ridge_fit: regularized Gram matrix is not positive definite (eigenvalue " +
                     std::to_string(min_eig) + ")");
  }
  Eigen::VectorXd z = eig.eigenvectors().transpose() * rhs;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    z(i) /= vals(i) + lambda;
  }
  return eig.eigenvectors() * z;
}

}  // namespace

Eigen::VectorXd ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                          RidgeMode mode) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (n < 1 || d < 1 || y.size() != n) {
    throw std::invalid_argument("ridge_fit: inconsistent shapes");
  }
  if (!std::isfinite(lambda)) {
    throw std::invalid_argument("ridge_fit: lambda must be finite");
  }
  if (lambda == 0.0) {
    return min_norm_least_squares(X, y);
  }
  if (mode == RidgeMode::Auto) {
    mode = (d <= n) ? RidgeMode::Primal : RidgeMode::Dual;
  }
  if (mode == RidgeMode::Primal) {
    const Eigen::MatrixXd gram = X.transpose() * X;
    const Eigen::VectorXd rhs = X.transpose() * y;
    if (lambda < 0.0) {
      return solve_negative_lambda(gram, rhs, lambda);
    }
    Eigen::MatrixXd A = gram;
    A.diagonal().array() += lambda;
    return A.ldlt().solve(rhs);
  }
  const Eigen::MatrixXd gram = X * X.transpose();
  if (lambda < 0.0) {
    return X.transpose() * solve_negative_lambda(gram, y, lambda);
  }
  Eigen::MatrixXd A = gram;
  A.diagonal().array() += lambda;
  return X.transpose() * A.ldlt().solve(y).eval();
}

double excess_risk(std::span<const double> w, const ProblemInstance& p) {
  if (static_cast<int>(w.size()) != p.dim()) {
    throw std::invalid_argument("excess_risk: dimension mismatch");
  }
  const auto lam = p.spectrum().values();
  const auto& ws = p.w_star().w;
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double e = w[i] - ws[i];
    total += lam[i] * e * e;
  }
  return total;
}

double excess_risk(const Eigen::VectorXd& w, const ProblemInstance& p) {
  return excess_risk(std::span<const double>(w.data(), static_cast<std::size_t>(w.size())), p);
}

double single_rep_risk(const ProblemInstance& p, const EstimatorConfig& cfg, Rng& rng) {
  if (const auto* sgd = std::get_if<SgdConfig>(&cfg)) {
    return excess_risk(sgd_fit(p, *sgd, rng), p);
  }
  const auto& ridge = std::get<RidgeConfig>(cfg);
  if (ridge.n < 1) {
    throw std::invalid_argument("ridge: sample count must be >= 1");
  }
  const int d = p.dim();
  Eigen::MatrixXd X(ridge.n, d);
  Eigen::VectorXd y(ridge.n);
  std::vector<double> x(d);
  for (long i = 0; i < ridge.n; ++i) {
    double yi = 0.0;
    draw_sample_into(p, rng, x, yi);
    for (int j = 0; j < d; ++j) X(i, j) = x[j];
    y(i) = yi;
  }
  return excess_risk(ridge_fit(X, y, ridge.lambda), p);
}

namespace {

RiskEstimate summarize(const std::vector<double>& risks, std::uint64_t seed) {
  const long reps = static_cast<long>(risks.size());
  double mean = 0.0;
  for (double r : risks) mean += r;
  mean /= static_cast<double>(reps);
  double var = 0.0;
  for (double r : risks) var += (r - mean) * (r - mean);
  var /= static_cast<double>(reps - 1);
  return RiskEstimate{mean, std::sqrt(var / static_cast<double>(reps)), reps, seed};
}

}  // namespace

RiskEstimate mc_risk(const ProblemInstance& p, const EstimatorConfig& cfg, long reps,
                     std::uint64_t seed) {
  if (reps < 2) {
    throw std::invalid_argument("mc_risk: reps must be >= 2");
  }
  std::vector<double> risks(static_cast<std::size_t>(reps), 0.0);
  std::string error;
  bool failed = false;
#pragma omp parallel for schedule(dynamic)
  for (long r = 0; r < reps; ++r) {
    try {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
      risks[r] = single_rep_risk(p, cfg, rng);
    } catch (const std::exception& e) {
#pragma omp critical
      {
        if (!failed) {
          failed = true;
          error = "mc_risk: rep " + std::to_string(r) + " failed: " + e.what();
        }
      }
    }
  }
  if (failed) {
    throw std::runtime_error(error);
  }
  return summarize(risks, seed);
}

RiskEstimate mc_risk_serial(const ProblemInstance& p, const EstimatorConfig& cfg, long reps,
                            std::uint64_t seed) {
  if (reps < 2) {
    throw std::invalid_argument("mc_risk: reps must be >= 2");
  }
  std::vector<double> risks(static_cast<std::size_t>(reps), 0.0);
  for (long r = 0; r < reps; ++r) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    risks[r] = single_rep_risk(p, cfg, rng);
  }
  return summarize(risks, seed);
}

}  // namespace irlab
