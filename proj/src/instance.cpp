#include "irlab/instance.hpp"

#include <cmath>
#include <stdexcept>

namespace irlab {

double GroundTruth::h_norm_sq(const Spectrum& s) const {
  if (static_cast<int>(w.size()) != s.dim()) {
    throw std::invalid_argument("GroundTruth::h_norm_sq: dimension mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    total += s.values()[i] * w[i] * w[i];
  }
  return total;
}

double GroundTruth::norm_sq() const {
  double total = 0.0;
  for (double x : w) total += x * x;
  return total;
}

GroundTruth make_ground_truth(const GroundTruthSpec& spec, int d, Rng* rng) {
  if (d < 1) {
    throw std::invalid_argument("make_ground_truth: d must be >= 1");
  }
  std::vector<double> w(static_cast<std::size_t>(d), 0.0);
  if (const auto* c = std::get_if<ConstantW>(&spec)) {
    for (auto& x : w) x = c->c;
  } else if (const auto* pl = std::get_if<PowerLawW>(&spec)) {
    for (int i = 0; i < d; ++i) {
      w[i] = pl->c * std::pow(static_cast<double>(i + 1), -pl->beta);
    }
  } else if (const auto* dl = std::get_if<DeltaW>(&spec)) {
    if (dl->index < 1 || dl->index > d) {
      throw std::invalid_argument("make_ground_truth: delta index out of range");
    }
    w[dl->index - 1] = dl->c;
  } else if (const auto* ri = std::get_if<RotationInvariantW>(&spec)) {
    if (rng == nullptr) {
      throw std::invalid_argument("make_ground_truth: rotation-invariant draw requires an rng");
    }
    rng->fill_normals(w);
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    const double scale = ri->norm / norm;
    for (auto& x : w) x *= scale;
  } else if (const auto* t2 = std::get_if<Theorem2W>(&spec)) {
    const double n = static_cast<double>(t2->n);
    w[0] = t2->sigma * std::sqrt(std::sqrt(n) / std::log(n));
  }
  return GroundTruth{std::move(w)};
}

ProblemInstance::ProblemInstance(DataKind kind, Spectrum spectrum, GroundTruth w_star,
                                 double sigma2, std::string label)
    : kind_(kind),
      spectrum_(std::move(spectrum)),
      w_star_(std::move(w_star)),
      sigma2_(sigma2),
      sigma_(std::sqrt(sigma2)),
      label_(std::move(label)) {
  if (sigma2_ < 0.0 || !std::isfinite(sigma2_)) {
    throw std::invalid_argument("ProblemInstance: sigma2 must be finite and >= 0");
  }
  if (static_cast<int>(w_star_.w.size()) != spectrum_.dim()) {
    throw std::invalid_argument("ProblemInstance: w_star dimension does not match spectrum");
  }
  if (kind_ == DataKind::OneHot && std::abs(spectrum_.trace() - 1.0) > 1e-10) {
    throw std::invalid_argument("ProblemInstance: one-hot spectra must have unit trace");
  }
  const auto vals = spectrum_.values();
  cdf_.resize(vals.size());
  sqrt_lambda_.resize(vals.size());
  double run = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    run += vals[i];
    cdf_[i] = run;
    sqrt_lambda_[i] = std::sqrt(vals[i]);
  }
}

std::optional<double> r_squared(const ProblemInstance& p) {
  if (p.sigma2() == 0.0) {
    return std::nullopt;
  }
  return p.w_star().h_norm_sq(p.spectrum()) / p.sigma2();
}

}  // namespace irlab
