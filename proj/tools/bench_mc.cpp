// Timing comparison of the serial Monte-Carlo reference against the
// OpenMP kernels, plus a bit-equality check of their results.
#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstring>

#include "irlab/estimators.hpp"
#include "irlab/harness.hpp"

using namespace irlab;

namespace {

struct Workload {
  const char* name;
  ProblemInstance instance;
  EstimatorConfig cfg;
  long reps;
};

void run(const Workload& w) {
  double t0 = omp_get_wtime();
  const auto serial = mc_risk_serial(w.instance, w.cfg, w.reps, 42);
  const double t_serial = omp_get_wtime() - t0;

  t0 = omp_get_wtime();
  const auto parallel = mc_risk(w.instance, w.cfg, w.reps, 42);
  const double t_parallel = omp_get_wtime() - t0;

  const bool identical =
      std::memcmp(&serial.mean, &parallel.mean, sizeof(double)) == 0 &&
      std::memcmp(&serial.stderr_, &parallel.stderr_, sizeof(double)) == 0;
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  bitwise %s\n", w.name,
              t_serial, t_parallel, t_serial / t_parallel, identical ? "equal" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  long reps = 40;
  if (argc > 1) reps = std::atol(argv[1]);
  std::printf("threads: %d, reps: %ld\n", omp_get_max_threads(), reps);

  ProblemInstance gauss(DataKind::Gaussian, power_law_spectrum(200, 1.0),
                        make_ground_truth(ConstantW{1.0}, 200), 1.0, "bench_gauss");
  ProblemInstance onehot(DataKind::OneHot, power_law_spectrum(64, 1.0, true),
                         make_ground_truth(PowerLawW{1.0, 1.0}, 64), 1.0, "bench_onehot");

  const Workload workloads[] = {
      {"sgd gaussian d=200 n=2000", gauss, SgdConfig{2000, 0.1}, reps},
      {"ridge gaussian d=200 n=300", gauss, RidgeConfig{300, 0.5}, reps},
      {"sgd one-hot d=64 n=4096", onehot, SgdConfig{4096, 0.2}, reps},
      {"ridge one-hot d=64 n=256", onehot, RidgeConfig{256, 0.1}, reps},
  };
  for (const auto& w : workloads) run(w);

  // grid tuning kernel: shared-stream SGD stepsize scan
  const auto grid = default_gamma_grid(gauss.spectrum().trace());
  double t0 = omp_get_wtime();
  omp_set_num_threads(1);
  const auto t_serial_res = tune(gauss, EstimatorKind::Sgd, 2000, grid, reps, 42);
  const double t_serial = omp_get_wtime() - t0;
  omp_set_num_threads(omp_get_num_procs());
  t0 = omp_get_wtime();
  const auto t_parallel_res = tune(gauss, EstimatorKind::Sgd, 2000, grid, reps, 42);
  const double t_parallel = omp_get_wtime() - t0;
  const bool same = t_serial_res.best_param == t_parallel_res.best_param &&
                    t_serial_res.risk.mean == t_parallel_res.risk.mean;
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  bitwise %s\n",
              "tune sgd 15-point grid", t_serial, t_parallel, t_serial / t_parallel,
              same ? "equal" : "DIFFER");
  return 0;
}
