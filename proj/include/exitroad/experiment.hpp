#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "exitroad/agent_fsm.hpp"
#include "exitroad/bounds.hpp"
#include "exitroad/grid.hpp"

namespace exitroad {

class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t splitmix64(std::uint64_t x);

// Seed of run `run` at sweep point `point`:
//   splitmix64(splitmix64(splitmix64(master) ^ point) ^ run)
std::uint64_t run_seed(std::uint64_t master, std::uint64_t point, std::uint64_t run);

// Uniform placement of N0 empties and N1 exiting agents, the rest continue.
// mt19937_64 seeded with `seed`, Fisher-Yates shuffle with rejection-sampled
// bounded draws.
Grid random_config(int n, int m, int N0, int N1, std::uint64_t seed);

enum class SweepParam : std::uint8_t { M, N, N0, N1, Rho };

const char* sweep_param_name(SweepParam p);

struct SweepSpec {
  Algorithm variant = Algorithm::MultiLane;
  SweepParam swept = SweepParam::M;
  std::vector<Rational> values;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> N0;
  std::optional<int> N1;         // default n - 1
  std::optional<Rational> rho;   // when set, N0 = max(1, floor(rho * n * m))
  int runs = 200;
  std::uint64_t seed = 1;
  Rational cap_factor{2};
};

// Flat key=value text, '#' starts a comment. Keys: variant, sweep, values,
// n, m, N0, N1, rho, runs, seed.
SweepSpec parse_sweep_spec(std::string_view text);

struct PointParams {
  int n = 0;
  int m = 0;
  int N0 = 0;
  int N1 = 0;
  std::optional<Rational> rho;
};

// Concrete parameters of every point, in value order. Throws SweepError
// when a point is illegal for the variant.
std::vector<PointParams> sweep_points(const SweepSpec& spec);

struct DataPoint {
  PointParams params;
  int runs = 0;
  double mean = 0;
  double min = 0;
  double max = 0;
  double stddev = 0;    // sample standard deviation, 0 for a single run
  int over_bound = 0;   // runs slower than upper_bound_ticks
};

struct SweepOptions {
  int jobs = 0;
  bool serial = false;
};

// Runs every point; a run that does not reach the target aborts the sweep
// with SweepError naming the seed.
std::vector<DataPoint> run_sweep(const SweepSpec& spec, const SweepOptions& opt = {});

enum class FitKind : std::uint8_t { Poly2, LogLog };

struct FitResult {
  FitKind kind = FitKind::Poly2;
  double c2 = 0;
  double c1 = 0;
  double c0 = 0;
  double beta = 0;
  double intercept = 0;
  double residual = 0;  // Euclidean norm of the residual vector
};

// y ~ c2 x^2 + c1 x + c0
FitResult fit_poly2(const std::vector<double>& xs, const std::vector<double>& ys);
// log y ~ beta log x + intercept
FitResult fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// Fits for a finished sweep: log-log over N0 <= n/2 for N0 sweeps,
// quadratic in the swept value otherwise.
std::vector<FitResult> sweep_fits(const SweepSpec& spec, const std::vector<DataPoint>& points);

// 6 significant digits, locale independent.
std::string format_number(double v);

void export_csv(std::ostream& os, Algorithm variant, const std::vector<DataPoint>& points);
void export_csv(std::ostream& os, const std::vector<FitResult>& fits);
void export_csv(const std::string& path, Algorithm variant, const std::vector<DataPoint>& points);
void export_csv(const std::string& path, const std::vector<FitResult>& fits);

}  // namespace exitroad
