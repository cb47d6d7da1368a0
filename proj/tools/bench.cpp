// Wall-clock comparison of the serial reference paths and the OpenMP kernels.

#include <chrono>
#include <cstdio>

#include <CLI11.hpp>

#include "exitroad/experiment.hpp"
#include "exitroad/verify.hpp"

using namespace exitroad;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exitroad benchmark"};
  int jobs = 0;
  int n = 3;
  int m = 4;
  int runs = 100;
  app.add_option("--jobs", jobs, "OpenMP threads, 0 = runtime default");
  app.add_option("--n", n, "rows for the exhaustive check");
  app.add_option("--m", m, "columns for the exhaustive check");
  app.add_option("--runs", runs, "runs per sweep point");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads %d\n", resolve_jobs(jobs));

  VerifyOptions serial;
  serial.serial = true;
  VerifyOptions parallel;
  parallel.jobs = jobs;
  std::int64_t checked = 0;
  const double vs = seconds([&] { checked = verify_all(n, m, Algorithm::MultiLane, serial).grids_checked; });
  const double vp = seconds([&] { verify_all(n, m, Algorithm::MultiLane, parallel); });
  std::printf("verify %dx%d (%lld configs): serial %.3fs parallel %.3fs speedup %.2f\n", n, m,
              static_cast<long long>(checked), vs, vp, vs / vp);

  SweepSpec spec;
  spec.swept = SweepParam::M;
  spec.values = {Rational(3), Rational(4), Rational(5), Rational(6)};
  spec.n = 12;
  spec.N0 = 3;
  spec.runs = runs;
  SweepOptions sserial;
  sserial.serial = true;
  SweepOptions sparallel;
  sparallel.jobs = jobs;
  const double ss = seconds([&] { run_sweep(spec, sserial); });
  const double sp = seconds([&] { run_sweep(spec, sparallel); });
  std::printf("sweep n=12 m=3..6 N0=3 x%d runs: serial %.3fs parallel %.3fs speedup %.2f\n", runs, ss, sp,
              ss / sp);
  return 0;
}
