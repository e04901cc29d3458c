#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace irlab {

// Eigenvalue spectrum of the population covariance H, sorted non-increasing
// and strictly positive. Immutable after construction; suffix sums of the
// eigenvalues and their squares are precomputed so tail queries are O(1).
//
// Indexing convention: lambda(i) is 1-based (lambda(1) = largest), matching
// the formulas this library implements. Head counts k run from 0 to d.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> eigenvalues);

  int dim() const { return static_cast<int>(values_.size()); }

  // 1-based accessor; lambda(d + 1) is defined as 0.
  double lambda(int i) const;

  std::span<const double> values() const { return values_; }

  double trace() const { return tail_[0]; }

  // Sum of lambda_i over i > k. tail_sum(0) = trace, tail_sum(d) = 0.
  double tail_sum(int k) const;

  // Sum of lambda_i^2 over i > k.
  double tail_sum_sq(int k) const;

 private:
  std::vector<double> values_;
  std::vector<double> tail_;     // tail_[k] = sum_{i>k} lambda_i, size d+1
  std::vector<double> tail_sq_;  // tail_sq_[k] = sum_{i>k} lambda_i^2
};

// lambda_i = i^{-alpha}; with normalize, divided by the total so the
// spectrum sums to 1 (one-hot use).
Spectrum power_law_spectrum(int d, double alpha, bool normalize = false);

// Rank-one head lambda_1 = log(N)/sqrt(N) plus a flat tail splitting the
// remaining mass evenly over coordinates 2..N; trace is exactly 1 and the
// output dimension is N. Requires log(N)/sqrt(N) < 1.
Spectrum theorem2_spectrum(int n);

// lambda_1 = 1, lambda_i = 1/(N log N) for 1 < i <= N^2, truncated at the
// support (output dimension N^2). Requires N >= 3 and d >= N^2.
Spectrum theorem4_spectrum(int n, long d);

// Spectral flatness tr(H) / (n * lambda_{min(n,d)}).
double kappa(const Spectrum& s, long n);

// min{k : b * lambda_{k+1} <= (lambda + tail_sum(k)) / n}, scanning
// k = 0..d with lambda_{d+1} = 0, so k = d always qualifies.
int k_star_ridge(const Spectrum& s, double lambda, long n, double b = 1.0);

// min{k : n * lambda_k <= 1} on a trace-1 spectrum, 1-based; returns the
// sentinel d+1 when no coordinate qualifies.
int k_star_onehot(const Spectrum& s, long n);

// min{k : lambda_k <= tr(H) / (n_ridge * log n_ridge)}, 1-based; sentinel
// d+1 when no coordinate qualifies. Requires n_ridge >= 3.
int k_star_thm5(const Spectrum& s, long n_ridge);

}  // namespace irlab
