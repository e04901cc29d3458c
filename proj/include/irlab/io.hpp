#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "irlab/bounds.hpp"
#include "irlab/instance.hpp"

namespace irlab {

struct CurveRow {
  long n_ridge = 0;
  double lambda_best = 0.0;
  double ridge_risk = 0.0;
  double ridge_stderr = 0.0;
  std::optional<long> n_sgd;  // empty: no grid point matched the target
  double gamma_best = 0.0;
  double sgd_risk = 0.0;
  double sgd_stderr = 0.0;
};

struct ComparisonCurve {
  std::vector<CurveRow> rows;
  std::string label;
  long reps = 0;
  std::uint64_t seed = 0;
};

// Instance file schema: {kind, label?, sigma2, spectrum, w_star} where
// spectrum is {eigenvalues: [...]} or {family: "powerlaw", d, alpha,
// normalize?} and w_star is {values: [...]} or a descriptor
// {spec: constant|powerlaw|delta|theorem2|rotation_invariant, ...}.
// Explicit arrays take precedence over descriptors. Numbers round-trip
// (shortest-representation doubles).
nlohmann::json instance_to_json(const ProblemInstance& p);
ProblemInstance instance_from_json(const nlohmann::json& j);

void save_instance(const std::filesystem::path& path, const nlohmann::json& j);
ProblemInstance load_instance(const std::filesystem::path& path);

// CSV with the exact header
// n_ridge,lambda_best,ridge_risk,ridge_stderr,n_sgd,gamma_best,sgd_risk,sgd_stderr
// and empty SGD fields on sentinel rows. Ends with a trailing newline.
std::string curve_to_csv(const ComparisonCurve& curve);

nlohmann::json bound_report_to_json(const BoundReport& rep);

// Deterministic shortest-ish decimal for doubles ("%.12g").
std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace irlab
