#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "irlab/rng.hpp"
#include "irlab/spectrum.hpp"

namespace irlab {

// True model parameter, stored in the eigenbasis of H so that w[i] pairs
// with lambda_i and every risk formula is a coordinate-wise sum.
struct GroundTruth {
  std::vector<double> w;

  double h_norm_sq(const Spectrum& s) const;  // sum_i lambda_i w_i^2
  double norm_sq() const;                     // Euclidean
};

struct ConstantW {
  double c = 1.0;
};
struct PowerLawW {
  double beta = 1.0;
  double c = 1.0;
};
struct DeltaW {
  int index = 1;  // 1-based coordinate
  double c = 1.0;
};
struct RotationInvariantW {
  double norm = 1.0;  // Euclidean norm of the draw (uniform on the sphere)
};
struct Theorem2W {
  int n = 16;
  double sigma = 1.0;
};

using GroundTruthSpec =
    std::variant<ConstantW, PowerLawW, DeltaW, RotationInvariantW, Theorem2W>;

// Materialize a ground-truth vector of length d. RotationInvariantW needs
// the rng; everything else is deterministic.
GroundTruth make_ground_truth(const GroundTruthSpec& spec, int d, Rng* rng = nullptr);

enum class DataKind { OneHot, Gaussian };

// A least-squares problem instance: data model, covariance spectrum,
// ground truth and noise level. Immutable; safe to share across threads.
class ProblemInstance {
 public:
  ProblemInstance(DataKind kind, Spectrum spectrum, GroundTruth w_star, double sigma2,
                  std::string label = {});

  DataKind kind() const { return kind_; }
  const Spectrum& spectrum() const { return spectrum_; }
  const GroundTruth& w_star() const { return w_star_; }
  double sigma2() const { return sigma2_; }
  double sigma() const { return sigma_; }
  const std::string& label() const { return label_; }
  int dim() const { return spectrum_.dim(); }

  // Inclusive prefix sums of the spectrum (one-hot sampling CDF).
  std::span<const double> cdf() const { return cdf_; }
  // sqrt(lambda_i), the per-coordinate scale of Gaussian features.
  std::span<const double> sqrt_lambda() const { return sqrt_lambda_; }

 private:
  DataKind kind_;
  Spectrum spectrum_;
  GroundTruth w_star_;
  double sigma2_;
  double sigma_;
  std::string label_;
  std::vector<double> cdf_;
  std::vector<double> sqrt_lambda_;
};

// Signal-to-noise ratio ||w*||_H^2 / sigma^2. Empty when sigma^2 = 0
// (infinite SNR, the noiseless regime).
std::optional<double> r_squared(const ProblemInstance& p);

}  // namespace irlab
