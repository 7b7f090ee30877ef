// bench-kernels — compares the OpenMP parallel kernels against the serial
// reference path and checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <vector>

#include "qms/lindblad.hpp"
#include "qms/parallel.hpp"
#include "qms/sampling.hpp"

using namespace qms;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

LindbladSpec random_spec(Rng& rng, Eigen::Index dim, int jumps) {
  LindbladSpec spec;
  spec.dim = dim;
  spec.hamiltonian = random_hermitian(rng, dim);
  for (int j = 0; j < jumps; ++j) spec.jumps.push_back(random_operator(rng, dim));
  return spec;
}

struct BenchResult {
  double serial_s = 0.0;
  double parallel_s = 0.0;
  double max_diff = 0.0;
};

BenchResult bench_build(const LindbladSpec& spec, int reps) {
  BenchResult r;
  Eigen::MatrixXcd serial_out, parallel_out;
  parallel::set_mode(parallel::Mode::Serial);
  auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < reps; ++k) serial_out = build_generator(spec).matrix;
  r.serial_s = seconds_since(t0) / reps;
  parallel::set_mode(parallel::Mode::OpenMP);
  t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < reps; ++k) parallel_out = build_generator(spec).matrix;
  r.parallel_s = seconds_since(t0) / reps;
  r.max_diff = (serial_out - parallel_out).cwiseAbs().maxCoeff();
  return r;
}

BenchResult bench_apply(const LindbladSpec& spec, int sweeps) {
  Rng rng(7);
  std::vector<Operator> inputs;
  for (int k = 0; k < sweeps; ++k) inputs.push_back(random_operator(rng, spec.dim));
  BenchResult r;
  std::vector<Operator> serial_out(sweeps), parallel_out(sweeps);
  parallel::set_mode(parallel::Mode::Serial);
  auto t0 = std::chrono::steady_clock::now();
  parallel::parallel_for(sweeps, [&](std::int64_t k) {
    serial_out[k] = apply_generator(spec, inputs[k]);
  });
  r.serial_s = seconds_since(t0);
  parallel::set_mode(parallel::Mode::OpenMP);
  t0 = std::chrono::steady_clock::now();
  parallel::parallel_for(sweeps, [&](std::int64_t k) {
    parallel_out[k] = apply_generator(spec, inputs[k]);
  });
  r.parallel_s = seconds_since(t0);
  for (int k = 0; k < sweeps; ++k)
    r.max_diff = std::max(
        r.max_diff, (serial_out[k] - parallel_out[k]).cwiseAbs().maxCoeff());
  return r;
}

void report(const char* name, const BenchResult& r) {
  std::printf("%-28s serial %8.4f s   parallel %8.4f s   speedup %5.2fx   max|diff| %.3g\n",
              name, r.serial_s, r.parallel_s,
              r.parallel_s > 0 ? r.serial_s / r.parallel_s : 0.0, r.max_diff);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", parallel::max_threads());
  Rng rng(1);
  for (Eigen::Index dim : {16, 32, 48}) {
    LindbladSpec spec = random_spec(rng, dim, 6);
    char name[64];
    std::snprintf(name, sizeof(name), "assemble generator d=%d",
                  int(dim));
    report(name, bench_build(spec, dim <= 32 ? 3 : 1));
    std::snprintf(name, sizeof(name), "apply sweeps d=%d", int(dim));
    report(name, bench_apply(spec, 64));
  }
  parallel::set_mode(parallel::Mode::OpenMP);
  return 0;
}
