#include "irlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace irlab {

using nlohmann::json;

json instance_to_json(const ProblemInstance& p) {
  json j;
  j["kind"] = p.kind() == DataKind::OneHot ? "onehot" : "gaussian";
  if (!p.label().empty()) {
    j["label"] = p.label();
  }
  j["sigma2"] = p.sigma2();
  j["spectrum"] = {{"eigenvalues", std::vector<double>(p.spectrum().values().begin(),
                                                       p.spectrum().values().end())}};
  j["w_star"] = {{"values", p.w_star().w}};
  return j;
}

namespace {

Spectrum spectrum_from_json(const json& j) {
  if (j.contains("eigenvalues")) {
    return Spectrum(j.at("eigenvalues").get<std::vector<double>>());
  }
  const std::string family = j.at("family").get<std::string>();
  if (family == "powerlaw") {
    return power_law_spectrum(j.at("d").get<int>(), j.at("alpha").get<double>(),
                              j.value("normalize", false));
  }
  throw std::invalid_argument("instance_from_json: unknown spectrum family '" + family + "'");
}

GroundTruth wstar_from_json(const json& j, int d) {
  if (j.contains("values")) {
    GroundTruth g{j.at("values").get<std::vector<double>>()};
    if (static_cast<int>(g.w.size()) != d) {
      throw std::invalid_argument("instance_from_json: w_star length does not match spectrum");
    }
    return g;
  }
  const std::string spec = j.at("spec").get<std::string>();
  if (spec == "constant") {
    return make_ground_truth(ConstantW{j.value("c", 1.0)}, d);
  }
  if (spec == "powerlaw") {
    return make_ground_truth(PowerLawW{j.at("beta").get<double>(), j.value("c", 1.0)}, d);
  }
  if (spec == "delta") {
    return make_ground_truth(DeltaW{j.at("index").get<int>(), j.value("c", 1.0)}, d);
  }
  if (spec == "theorem2") {
    return make_ground_truth(Theorem2W{j.at("n").get<int>(), j.value("sigma", 1.0)}, d);
  }
  if (spec == "rotation_invariant") {
    throw std::invalid_argument(
        "instance_from_json: rotation-invariant w_star must be materialized to explicit "
        "values before saving (it needs a seeded draw)");
  }
  throw std::invalid_argument("instance_from_json: unknown w_star spec '" + spec + "'");
}

}  // namespace

ProblemInstance instance_from_json(const json& j) {
  const std::string kind_str = j.at("kind").get<std::string>();
  DataKind kind;
  if (kind_str == "onehot") {
    kind = DataKind::OneHot;
  } else if (kind_str == "gaussian") {
    kind = DataKind::Gaussian;
  } else {
    throw std::invalid_argument("instance_from_json: kind must be 'onehot' or 'gaussian'");
  }
  Spectrum s = spectrum_from_json(j.at("spectrum"));
  GroundTruth w = wstar_from_json(j.at("w_star"), s.dim());
  return ProblemInstance(kind, std::move(s), std::move(w), j.at("sigma2").get<double>(),
                         j.value("label", std::string{}));
}

void save_instance(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_instance: cannot open " + path.string());
  }
  json j;
  in >> j;
  return instance_from_json(j);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string curve_to_csv(const ComparisonCurve& curve) {
  std::string out = "n_ridge,lambda_best,ridge_risk,ridge_stderr,n_sgd,gamma_best,sgd_risk,sgd_stderr\n";
  for (const auto& r : curve.rows) {
    out += std::to_string(r.n_ridge);
    out += ',';
    out += format_double(r.lambda_best);
    out += ',';
    out += format_double(r.ridge_risk);
    out += ',';
    out += format_double(r.ridge_stderr);
    out += ',';
    if (r.n_sgd) {
      out += std::to_string(*r.n_sgd);
      out += ',';
      out += format_double(r.gamma_best);
      out += ',';
      out += format_double(r.sgd_risk);
      out += ',';
      out += format_double(r.sgd_stderr);
    } else {
      out += ",,,";
    }
    out += '\n';
  }
  return out;
}

json bound_report_to_json(const BoundReport& rep) {
  json j;
  j["bias_bound"] = rep.bias_bound;
  j["variance_bound"] = rep.variance_bound;
  j["total"] = rep.total;
  if (rep.k1 >= 0) j["k1"] = rep.k1;
  if (rep.k2 >= 0) j["k2"] = rep.k2;
  if (rep.k_star >= 0) j["k_star"] = rep.k_star;
  if (std::isfinite(rep.lambda_tilde)) j["lambda_tilde"] = rep.lambda_tilde;
  if (std::isfinite(rep.kappa)) j["kappa"] = rep.kappa;
  if (std::isinf(rep.r_squared)) {
    j["r_squared"] = "infinite";
  } else if (std::isfinite(rep.r_squared)) {
    j["r_squared"] = rep.r_squared;
  }
  json constants;
  if (std::isfinite(rep.const_b)) constants["b"] = rep.const_b;
  constants["c"] = rep.const_c;
  j["constants_used"] = constants;
  j["gamma_valid"] = rep.gamma_valid;
  return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_text_file: cannot open " + path.string());
  }
  out << content;
}

}  // namespace irlab
