#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "irlab/bounds.hpp"
#include "irlab/harness.hpp"
#include "irlab/io.hpp"
#include "irlab/oracles.hpp"
#include "irlab/svg.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stod(item));
  }
  return out;
}

// Grid syntax: "start:stop:steps" (log-spaced) or "v1,v2,...".
std::vector<double> parse_real_grid(const std::string& spec) {
  if (spec.find(':') != std::string::npos) {
    double a = 0, b = 0;
    int k = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &a, &b, &k) != 3) {
      throw CLI::ValidationError("grid", "expected start:stop:steps, got '" + spec + "'");
    }
    return irlab::logspace(a, b, k);
  }
  return split_doubles(spec);
}

std::vector<long> parse_count_grid(const std::string& spec, bool force_even) {
  std::vector<long> out;
  if (spec.find(':') != std::string::npos) {
    for (double v : parse_real_grid(spec)) {
      long e = std::llround(force_even ? v / 2.0 : v);
      if (force_even) e *= 2;
      if (e < (force_even ? 2 : 1)) e = force_even ? 2 : 1;
      if (out.empty() || e > out.back()) out.push_back(e);
    }
    return out;
  }
  for (double v : split_doubles(spec)) {
    out.push_back(std::llround(v));
  }
  return out;  // explicit lists are validated downstream, never rounded
}

void write_or_print(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    irlab::write_text_file(out_path, content);
  }
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;  // NaN for empty cells

  std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error("plot: no column named '" + name + "'");
  }
};

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("plot: cannot open " + path.string());
  }
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("plot: empty csv");
  }
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  t.columns.resize(t.header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::size_t c = 0;
    std::string v;
    while (c < t.header.size() && std::getline(ls, v, ',')) {
      t.columns[c].push_back(v.empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(v));
      ++c;
    }
    while (c < t.header.size()) t.columns[c++].push_back(std::numeric_limits<double>::quiet_NaN());
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"least-squares lab: tail-averaged SGD vs ridge regression"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 42;
  if (const char* env = std::getenv("IRLAB_SEED")) {
    seed = std::strtoull(env, nullptr, 10);
  }
  long reps = 100;
  int threads = 0;
  std::string out_path;
  std::string format = "json";
  app.add_option("--seed", seed, "base seed (env IRLAB_SEED overrides the default)");
  app.add_option("--reps", reps, "Monte Carlo repetitions");
  app.add_option("--threads", threads, "worker thread cap (default: machine parallelism)");
  app.add_option("--out", out_path, "output file or directory ('-' = stdout)");
  app.add_option("--format", format, "risk record format")
      ->check(CLI::IsMember({"csv", "json"}));

  // instance ------------------------------------------------------------
  auto* cmd_instance = app.add_subcommand("instance", "build and write an instance file");
  std::string kind = "gaussian", wstar = "const", wstar_param, label;
  long inst_d = 0;
  double alpha = 1.0, sigma2 = 1.0;
  bool normalize = false;
  cmd_instance->add_option("--kind", kind)->check(CLI::IsMember({"onehot", "gaussian"}));
  cmd_instance->add_option("--d", inst_d, "dimension")->required();
  cmd_instance->add_option("--alpha", alpha, "power-law exponent of the spectrum");
  cmd_instance->add_flag("--normalize", normalize, "normalize the spectrum to unit trace");
  cmd_instance->add_option("--wstar", wstar)
      ->check(CLI::IsMember({"const", "powerlaw", "delta", "rotinv", "theorem2"}));
  cmd_instance->add_option("--wstar-param", wstar_param, "comma-separated parameters");
  cmd_instance->add_option("--sigma2", sigma2);
  cmd_instance->add_option("--label", label);

  // risk ----------------------------------------------------------------
  auto* cmd_risk = app.add_subcommand("risk", "estimate excess risk on an instance");
  std::string instance_path, estimator;
  long nn = 0;
  std::optional<double> gamma_opt, lambda_opt;
  bool exact = false;
  cmd_risk->add_option("--instance", instance_path)->required();
  cmd_risk->add_option("--estimator", estimator)->required()->check(
      CLI::IsMember({"sgd", "ridge"}));
  cmd_risk->add_option("--n", nn)->required();
  cmd_risk->add_option("--gamma", gamma_opt, "SGD stepsize");
  cmd_risk->add_option("--lambda", lambda_opt, "ridge regularization");
  cmd_risk->add_flag("--exact", exact, "exact one-hot oracle instead of Monte Carlo");

  // bounds ----------------------------------------------------------------
  auto* cmd_bounds = app.add_subcommand("bounds", "theoretical bound report");
  std::string b_instance, b_estimator;
  long b_n = 0;
  std::optional<double> b_gamma, b_lambda;
  double const_b = 1.0, const_c = 1.0;
  cmd_bounds->add_option("--instance", b_instance)->required();
  cmd_bounds->add_option("--estimator", b_estimator)->required()->check(
      CLI::IsMember({"sgd", "ridge"}));
  cmd_bounds->add_option("--n", b_n)->required();
  cmd_bounds->add_option("--gamma", b_gamma);
  cmd_bounds->add_option("--lambda", b_lambda);
  cmd_bounds->add_option("--b", const_b, "absolute constant in k*_ridge");
  cmd_bounds->add_option("--c", const_c, "absolute constant multiplying the bounds");

  // compare ---------------------------------------------------------------
  auto* cmd_compare = app.add_subcommand("compare", "sample-inflation curve");
  std::string c_instance, nridge_spec, nsgd_spec, lgrid_spec, ggrid_spec;
  double slack = 0.05;
  cmd_compare->add_option("--instance", c_instance)->required();
  cmd_compare->add_option("--nridge-grid", nridge_spec, "a:b:steps (log) or comma list")
      ->required();
  cmd_compare->add_option("--nsgd-grid", nsgd_spec, "a:b:steps (log) or comma list")->required();
  cmd_compare->add_option("--lambda-grid", lgrid_spec, "default: {0} + logspace around tr(H)");
  cmd_compare->add_option("--gamma-grid", ggrid_spec, "default: logspace up to 1/tr(H)");
  cmd_compare->add_option("--slack", slack, "relative risk slack for the match");

  // scenario ----------------------------------------------------------------
  auto* cmd_scenario = app.add_subcommand("scenario", "packaged experiment");
  std::string sc_name;
  irlab::ScenarioParams sp;
  cmd_scenario->add_option("--name", sc_name)->required()->check(
      CLI::IsMember({"fig1", "thm1", "thm2", "thm4", "cor1"}));
  cmd_scenario->add_option("--scale", sp.scale, "main size knob (0 = scenario default)");
  cmd_scenario->add_option("--d", sp.d, "dimension knob where applicable");
  cmd_scenario->add_option("--slack", sp.slack);
  cmd_scenario->add_flag("--cor2", sp.cor2, "cor1: add the rotation-invariant w* comparison");
  cmd_scenario->add_option("--wstar-draws", sp.wstar_draws, "cor2 outer Monte Carlo size");

  // plot ----------------------------------------------------------------
  auto* cmd_plot = app.add_subcommand("plot", "render a CSV as an SVG line chart");
  std::string p_csv, p_x, p_y, p_title;
  bool linear_x = false, linear_y = false;
  cmd_plot->add_option("--csv", p_csv)->required();
  cmd_plot->add_option("--x", p_x, "x column name")->required();
  cmd_plot->add_option("--y", p_y, "comma-separated y column names")->required();
  cmd_plot->add_option("--title", p_title);
  cmd_plot->add_flag("--linear-x", linear_x, "linear x axis (default log)");
  cmd_plot->add_flag("--linear-y", linear_y, "linear y axis (default log)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (threads > 0) {
    omp_set_num_threads(threads);
  }

  try {
    if (*cmd_instance) {
      const auto params = wstar_param.empty() ? std::vector<double>{} : split_doubles(wstar_param);
      auto param_at = [&](std::size_t i, double dflt) {
        return i < params.size() ? params[i] : dflt;
      };
      if (kind == "onehot" && !normalize) {
        std::cerr << "instance: one-hot instances need a unit-trace spectrum; pass --normalize\n";
        return 2;
      }
      json j;
      j["kind"] = kind;
      if (!label.empty()) j["label"] = label;
      j["sigma2"] = sigma2;
      j["spectrum"] = {
          {"family", "powerlaw"}, {"d", inst_d}, {"alpha", alpha}, {"normalize", normalize}};
      if (wstar == "const") {
        j["w_star"] = {{"spec", "constant"}, {"c", param_at(0, 1.0)}};
      } else if (wstar == "powerlaw") {
        j["w_star"] = {{"spec", "powerlaw"}, {"beta", param_at(0, 1.0)}, {"c", param_at(1, 1.0)}};
      } else if (wstar == "delta") {
        j["w_star"] = {{"spec", "delta"},
                       {"index", static_cast<int>(param_at(0, 1.0))},
                       {"c", param_at(1, 1.0)}};
      } else if (wstar == "theorem2") {
        j["w_star"] = {{"spec", "theorem2"},
                       {"n", static_cast<int>(param_at(0, static_cast<double>(inst_d)))},
                       {"sigma", param_at(1, 1.0)}};
      } else {  // rotinv: materialized now so the file is self-contained
        irlab::Rng rng(irlab::mix_seed(seed, 7));
        const auto g = irlab::make_ground_truth(irlab::RotationInvariantW{param_at(0, 1.0)},
                                                static_cast<int>(inst_d), &rng);
        j["w_star"] = {{"values", g.w}};
      }
      irlab::instance_from_json(j);  // validate before writing
      const std::string path = out_path.empty() ? "instance.json" : out_path;
      irlab::save_instance(path, j);
      std::cout << path << "\n";
      return 0;
    }

    if (*cmd_risk) {
      const auto p = irlab::load_instance(instance_path);
      json rec;
      rec["estimator"] = estimator;
      rec["n"] = nn;
      rec["exact"] = exact;
      if (!p.label().empty()) rec["instance"] = p.label();
      double mean = 0, se = 0;
      long used_reps = 0;
      if (estimator == "sgd") {
        if (!gamma_opt) throw std::invalid_argument("risk: sgd needs --gamma");
        rec["gamma"] = *gamma_opt;
        if (exact) {
          mean = irlab::onehot_sgd_risk_exact(p, nn, *gamma_opt);
        } else {
          const auto r = irlab::mc_risk(p, irlab::SgdConfig{nn, *gamma_opt}, reps, seed);
          mean = r.mean;
          se = r.stderr_;
          used_reps = r.reps;
        }
      } else {
        if (!lambda_opt) throw std::invalid_argument("risk: ridge needs --lambda");
        rec["lambda"] = *lambda_opt;
        if (exact) {
          const auto parts = irlab::onehot_ridge_risk_exact(p, nn, *lambda_opt);
          mean = parts.total();
          rec["bias"] = parts.bias;
          rec["variance"] = parts.variance;
        } else {
          const auto r = irlab::mc_risk(p, irlab::RidgeConfig{nn, *lambda_opt}, reps, seed);
          mean = r.mean;
          se = r.stderr_;
          used_reps = r.reps;
        }
      }
      rec["mean"] = mean;
      rec["stderr"] = se;
      rec["reps"] = used_reps;
      rec["seed"] = seed;
      if (format == "csv") {
        std::string csv = "estimator,n,param,exact,mean,stderr,reps,seed\n";
        csv += estimator + "," + std::to_string(nn) + "," +
               irlab::format_double(estimator == "sgd" ? *gamma_opt : *lambda_opt) + "," +
               (exact ? "1" : "0") + "," + irlab::format_double(mean) + "," +
               irlab::format_double(se) + "," + std::to_string(used_reps) + "," +
               std::to_string(seed) + "\n";
        write_or_print(out_path, csv);
      } else {
        write_or_print(out_path, rec.dump(2) + "\n");
      }
      return 0;
    }

    if (*cmd_bounds) {
      const auto p = irlab::load_instance(b_instance);
      irlab::BoundReport rep;
      if (b_estimator == "sgd") {
        if (!b_gamma) throw std::invalid_argument("bounds: sgd needs --gamma");
        rep = p.kind() == irlab::DataKind::OneHot
                  ? irlab::sgd_risk_bound_onehot(p, b_n, *b_gamma, const_c)
                  : irlab::sgd_risk_bound_gaussian(p, b_n, *b_gamma, const_c);
      } else {
        if (!b_lambda) throw std::invalid_argument("bounds: ridge needs --lambda");
        rep = p.kind() == irlab::DataKind::OneHot
                  ? irlab::ridge_risk_lower_onehot(p, b_n, *b_lambda, const_c)
                  : irlab::ridge_risk_lower_gaussian(p, b_n, *b_lambda, const_b, const_c);
      }
      write_or_print(out_path, irlab::bound_report_to_json(rep).dump(2) + "\n");
      return 0;
    }

    if (*cmd_compare) {
      const auto p = irlab::load_instance(c_instance);
      const double tr = p.spectrum().trace();
      const auto nridge = parse_count_grid(nridge_spec, false);
      const auto nsgd = parse_count_grid(nsgd_spec, true);
      const auto lgrid =
          lgrid_spec.empty() ? irlab::default_lambda_grid(tr) : parse_real_grid(lgrid_spec);
      const auto ggrid =
          ggrid_spec.empty() ? irlab::default_gamma_grid(tr) : parse_real_grid(ggrid_spec);
      const auto curve =
          irlab::sample_inflation_curve(p, nridge, nsgd, lgrid, ggrid, reps, slack, seed);
      write_or_print(out_path, irlab::curve_to_csv(curve));
      return 0;
    }

    if (*cmd_scenario) {
      sp.seed = seed;
      if (reps != 100) sp.reps = reps;  // scenario defaults apply unless overridden
      const fs::path dir = out_path.empty() ? fs::path("out") / sc_name : fs::path(out_path);
      const auto result = irlab::run_scenario(sc_name, sp, dir);
      std::cout << sc_name << ": " << (result.pass ? "pass" : "fail") << " ("
                << result.files.size() << " files in " << dir.string() << ")\n";
      return 0;
    }

    if (*cmd_plot) {
      const auto table = read_csv(p_csv);
      const auto& xcol = table.columns[table.column_index(p_x)];
      std::vector<irlab::PlotSeries> series;
      int skipped = 0;
      std::stringstream ys(p_y);
      std::string yname;
      while (std::getline(ys, yname, ',')) {
        const auto& ycol = table.columns[table.column_index(yname)];
        irlab::PlotSeries s;
        s.name = yname;
        for (std::size_t i = 0; i < xcol.size() && i < ycol.size(); ++i) {
          if (std::isnan(xcol[i]) || std::isnan(ycol[i])) {
            ++skipped;
            continue;
          }
          s.x.push_back(xcol[i]);
          s.y.push_back(ycol[i]);
        }
        series.push_back(std::move(s));
      }
      irlab::PlotStyle style;
      style.log_x = !linear_x;
      style.log_y = !linear_y;
      style.title = p_title;
      style.x_label = p_x;
      style.skipped_rows = skipped;
      if (out_path.empty()) throw std::invalid_argument("plot: --out FILE.svg is required");
      irlab::write_text_file(out_path, irlab::emit_svg_plot(series, style));
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
