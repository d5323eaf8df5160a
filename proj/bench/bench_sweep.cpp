// Times the sweep kernel serial vs parallel (the grid points are the
// data-parallel axis) and one direction scan. Row equality is asserted so
// the parallel path cannot drift from the reference.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qet/analysis.hpp"

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int steps = argc > 1 ? std::atoi(argv[1]) : 200;
  qet::SweepConfig cfg;
  cfg.steps = steps;
  cfg.theta_grid_resolution = 64;

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("sweep of %d rows, %d thread(s) available\n", steps, threads);

  std::vector<qet::SweepRow> serial_rows, parallel_rows;
  const double t_serial = seconds([&] { serial_rows = qet::sweep_serial(cfg); });
  const double t_parallel =
      seconds([&] { parallel_rows = qet::sweep_parallel(cfg); });

  for (size_t i = 0; i < serial_rows.size(); ++i) {
    const auto a = serial_rows[i].values();
    const auto b = parallel_rows[i].values();
    for (int k = 0; k < qet::SweepRow::kColumns; ++k) {
      if (a[k] != b[k]) {
        std::fprintf(stderr, "row %zu column %d differs\n", i, k);
        return 1;
      }
    }
  }

  std::printf("serial:   %.3f s (%.1f rows/s)\n", t_serial,
              steps / t_serial);
  std::printf("parallel: %.3f s (%.1f rows/s), speedup %.2fx\n", t_parallel,
              steps / t_parallel, t_serial / t_parallel);

  const auto gs = qet::solve_ground_state({0.5});
  qet::ScanReport rep;
  const double t_scan =
      seconds([&] { rep = qet::optimality_scan(gs, 24); });
  std::printf("direction scan at resolution 24: %.3f s, grid max %.6g vs "
              "baseline %.6g\n",
              t_scan, rep.grid_max, rep.baseline_max);
  return 0;
}
