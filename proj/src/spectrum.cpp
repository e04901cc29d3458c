#include "irlab/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace irlab {

Spectrum::Spectrum(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
  if (values_.empty()) {
    throw std::invalid_argument("Spectrum: dimension must be at least 1");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw std::invalid_argument("Spectrum: eigenvalues must be positive and finite");
    }
    if (i > 0 && values_[i] > values_[i - 1]) {
      throw std::invalid_argument("Spectrum: eigenvalues must be sorted non-increasing");
    }
  }
  const std::size_t d = values_.size();
  tail_.assign(d + 1, 0.0);
  tail_sq_.assign(d + 1, 0.0);
  for (std::size_t k = d; k-- > 0;) {
    tail_[k] = tail_[k + 1] + values_[k];
    tail_sq_[k] = tail_sq_[k + 1] + values_[k] * values_[k];
  }
}

double Spectrum::lambda(int i) const {
  if (i < 1 || i > dim() + 1) {
    throw std::invalid_argument("Spectrum::lambda: index out of range");
  }
  return i <= dim() ? values_[i - 1] : 0.0;
}

double Spectrum::tail_sum(int k) const {
  if (k < 0 || k > dim()) {
    throw std::invalid_argument("Spectrum::tail_sum: k out of range");
  }
  return tail_[k];
}

double Spectrum::tail_sum_sq(int k) const {
  if (k < 0 || k > dim()) {
    throw std::invalid_argument("Spectrum::tail_sum_sq: k out of range");
  }
  return tail_sq_[k];
}

Spectrum power_law_spectrum(int d, double alpha, bool normalize) {
  if (d < 1) {
    throw std::invalid_argument("power_law_spectrum: d must be >= 1");
  }
  if (alpha < 0.0) {
    throw std::invalid_argument("power_law_spectrum: alpha must be >= 0");
  }
  std::vector<double> v(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    v[i] = std::pow(static_cast<double>(i + 1), -alpha);
  }
  if (normalize) {
    double total = 0.0;
    for (int i = d; i-- > 0;) total += v[i];
    for (auto& x : v) x /= total;
  }
  return Spectrum(std::move(v));
}

Spectrum theorem2_spectrum(int n) {
  if (n < 1) {
    throw std::invalid_argument("theorem2_spectrum: N must be >= 1");
  }
  const double head = std::log(static_cast<double>(n)) / std::sqrt(static_cast<double>(n));
  if (!(head < 1.0) || !(head > 0.0)) {
    throw std::invalid_argument("theorem2_spectrum: requires 0 < log(N)/sqrt(N) < 1 (N >= 2)");
  }
  // The remaining mass 1 - head is split evenly over the n-1 tail
  // coordinates so the trace is exactly 1 (one-hot instances require it).
  std::vector<double> v(static_cast<std::size_t>(n));
  v[0] = head;
  const double tail = (1.0 - head) / static_cast<double>(n - 1);
  for (int i = 1; i < n; ++i) v[i] = tail;
  return Spectrum(std::move(v));
}

Spectrum theorem4_spectrum(int n, long d) {
  if (n < 3) {
    throw std::invalid_argument("theorem4_spectrum: N must be >= 3 so that log N > 1");
  }
  const long support = static_cast<long>(n) * static_cast<long>(n);
  if (d < support) {
    throw std::invalid_argument("theorem4_spectrum: requires d >= N^2 (got d=" + std::to_string(d) +
                                ", N^2=" + std::to_string(support) + ")");
  }
  std::vector<double> v(static_cast<std::size_t>(support));
  v[0] = 1.0;
  const double tail = 1.0 / (static_cast<double>(n) * std::log(static_cast<double>(n)));
  for (long i = 1; i < support; ++i) v[i] = tail;
  return Spectrum(std::move(v));
}

double kappa(const Spectrum& s, long n) {
  if (n < 1) {
    throw std::invalid_argument("kappa: n must be >= 1");
  }
  const int idx = static_cast<int>(std::min<long>(n, s.dim()));
  return s.trace() / (static_cast<double>(n) * s.lambda(idx));
}

int k_star_ridge(const Spectrum& s, double lambda, long n, double b) {
  if (lambda < 0.0) {
    throw std::invalid_argument("k_star_ridge: lambda must be >= 0");
  }
  if (n < 1) {
    throw std::invalid_argument("k_star_ridge: n must be >= 1");
  }
  if (b < 1.0) {
    throw std::invalid_argument("k_star_ridge: b must be >= 1");
  }
  const int d = s.dim();
  for (int k = 0; k <= d; ++k) {
    if (b * s.lambda(k + 1) <= (lambda + s.tail_sum(k)) / static_cast<double>(n)) {
      return k;
    }
  }
  return d;  // unreachable: k = d always satisfies b*0 <= lambda/n
}

int k_star_onehot(const Spectrum& s, long n) {
  if (n < 1) {
    throw std::invalid_argument("k_star_onehot: n must be >= 1");
  }
  const int d = s.dim();
  for (int k = 1; k <= d; ++k) {
    if (static_cast<double>(n) * s.lambda(k) <= 1.0) {
      return k;
    }
  }
  return d + 1;
}

int k_star_thm5(const Spectrum& s, long n_ridge) {
  if (n_ridge < 3) {
    throw std::invalid_argument("k_star_thm5: n_ridge must be >= 3");
  }
  const double threshold = s.trace() / (static_cast<double>(n_ridge) * std::log(static_cast<double>(n_ridge)));
  const int d = s.dim();
  for (int k = 1; k <= d; ++k) {
    if (s.lambda(k) <= threshold) {
      return k;
    }
  }
  return d + 1;
}

}  // namespace irlab
