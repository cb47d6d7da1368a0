#include "exitroad/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <random>

#include <Eigen/Dense>

#include "exitroad/sim.hpp"
#include "exitroad/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exitroad {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t run_seed(std::uint64_t master, std::uint64_t point, std::uint64_t run) {
  return splitmix64(splitmix64(splitmix64(master) ^ point) ^ run);
}

namespace {

// Uniform integer in [0, bound) by rejection.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

Grid random_config(int n, int m, int N0, int N1, std::uint64_t seed) {
  if (n < 1 || m < 1) throw SweepError("grid dimensions must be positive");
  if (N0 < 1 || N1 < 0 || N0 + N1 > n * m) throw SweepError("illegal agent counts");
  std::vector<Cell> cells(static_cast<std::size_t>(n * m), Cell::Continue);
  std::fill_n(cells.begin(), N0, Cell::Empty);
  std::fill_n(cells.begin() + N0, N1, Cell::Exiting);
  std::mt19937_64 rng(seed);
  for (std::size_t i = cells.size(); i > 1; --i) std::swap(cells[i - 1], cells[bounded(rng, i)]);
  return Grid(n, m, std::move(cells));
}

const char* sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::M: return "m";
    case SweepParam::N: return "n";
    case SweepParam::N0: return "N0";
    case SweepParam::N1: return "N1";
    case SweepParam::Rho: return "rho";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

int parse_int(std::string_view key, std::string_view v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw SweepError("bad integer for " + std::string(key) + ": '" + std::string(v) + "'");
  return out;
}

Rational parse_value(std::string_view key, std::string_view v) {
  try {
    return parse_rational(std::string(v));
  } catch (const BoundsError& e) {
    throw SweepError("bad value for " + std::string(key) + ": " + e.what());
  }
}

int as_int(const Rational& r, const char* what) {
  if (r.denominator() != 1) throw SweepError(std::string(what) + " values must be integers");
  return static_cast<int>(r.numerator());
}

}  // namespace

SweepSpec parse_sweep_spec(std::string_view text) {
  SweepSpec spec;
  bool have_sweep = false;
  std::map<std::string, int> seen;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw SweepError("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (seen[key]++) throw SweepError("duplicate key " + key);

    if (key == "variant") {
      if (value == "A") spec.variant = Algorithm::MultiLane;
      else if (value == "A2") spec.variant = Algorithm::TwoLane;
      else throw SweepError("variant must be A or A2");
    } else if (key == "sweep") {
      have_sweep = true;
      if (value == "m") spec.swept = SweepParam::M;
      else if (value == "n") spec.swept = SweepParam::N;
      else if (value == "N0") spec.swept = SweepParam::N0;
      else if (value == "N1") spec.swept = SweepParam::N1;
      else if (value == "rho") spec.swept = SweepParam::Rho;
      else throw SweepError("unknown sweep parameter '" + std::string(value) + "'");
    } else if (key == "values") {
      std::size_t i = 0;
      while (i <= value.size()) {
        auto j = value.find(',', i);
        if (j == std::string_view::npos) j = value.size();
        const std::string_view item = trim(value.substr(i, j - i));
        if (item.empty()) throw SweepError("empty entry in values");
        spec.values.push_back(parse_value(key, item));
        i = j + 1;
      }
    } else if (key == "n") {
      spec.n = parse_int(key, value);
    } else if (key == "m") {
      spec.m = parse_int(key, value);
    } else if (key == "N0") {
      spec.N0 = parse_int(key, value);
    } else if (key == "N1") {
      spec.N1 = parse_int(key, value);
    } else if (key == "rho") {
      spec.rho = parse_value(key, value);
    } else if (key == "runs") {
      spec.runs = parse_int(key, value);
    } else if (key == "seed") {
      std::uint64_t s = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
      if (ec != std::errc() || p != value.data() + value.size()) throw SweepError("bad seed");
      spec.seed = s;
    } else {
      throw SweepError("unknown key '" + key + "'");
    }
  }
  if (!have_sweep) throw SweepError("missing key 'sweep'");
  if (spec.values.empty()) throw SweepError("missing key 'values'");
  if (spec.runs < 1) throw SweepError("runs must be positive");
  sweep_points(spec);  // validates
  return spec;
}

std::vector<PointParams> sweep_points(const SweepSpec& spec) {
  const auto fixed = [&](SweepParam p, const auto& field) {
    if (spec.swept == p && field) {
      throw SweepError(std::string("parameter ") + sweep_param_name(p) + " is both swept and fixed");
    }
  };
  fixed(SweepParam::M, spec.m);
  fixed(SweepParam::N, spec.n);
  fixed(SweepParam::N0, spec.N0);
  fixed(SweepParam::N1, spec.N1);
  fixed(SweepParam::Rho, spec.rho);

  std::vector<PointParams> out;
  for (const Rational& v : spec.values) {
    PointParams p;
    std::optional<int> n = spec.n, m = spec.m, N0 = spec.N0, N1 = spec.N1;
    std::optional<Rational> rho = spec.rho;
    switch (spec.swept) {
      case SweepParam::M: m = as_int(v, "m"); break;
      case SweepParam::N: n = as_int(v, "n"); break;
      case SweepParam::N0: N0 = as_int(v, "N0"); break;
      case SweepParam::N1: N1 = as_int(v, "N1"); break;
      case SweepParam::Rho: rho = v; break;
    }
    if (!n || !m) throw SweepError("n and m must be given or swept");
    if (*n < 1 || *m < 1) throw SweepError("grid dimensions must be positive");
    p.n = *n;
    p.m = *m;
    p.N1 = N1.value_or(p.n - 1);
    if (rho) {
      if (N0) throw SweepError("give either N0 or rho, not both");
      if (*rho <= 0 || *rho >= 1) throw SweepError("rho must lie in (0, 1)");
      const Rational cells = *rho * Rational(p.n * p.m);
      p.N0 = std::max<int>(1, static_cast<int>(cells.numerator() / cells.denominator()));
      p.rho = rho;
    } else {
      if (!N0) throw SweepError("N0 must be given, swept, or derived from rho");
      p.N0 = *N0;
    }
    if (p.N0 < 1 || p.N1 < 0 || p.N0 + p.N1 > p.n * p.m)
      throw SweepError("illegal counts at " + std::string(sweep_param_name(spec.swept)) + " point");
    Grid probe(p.n, p.m, Cell::Continue);
    for (int i = 0; i < p.N0; ++i) probe[i] = Cell::Empty;
    for (int i = 0; i < p.N1; ++i) probe[p.N0 + i] = Cell::Exiting;
    const auto problems = validate(probe, constraint_for(spec.variant));
    if (!problems.empty()) throw SweepError("illegal point: " + problems.front());
    if (spec.variant == Algorithm::MultiLane && p.m < 3) throw SweepError("algorithm A needs m >= 3");
    out.push_back(p);
  }
  return out;
}

namespace {

struct RunOutcome {
  int ticks = 0;
  bool target = false;
  bool over_bound = false;
  StopReason stop = StopReason::TargetReached;
};

RunOutcome sweep_run(const SweepSpec& spec, const PointParams& p, std::uint64_t seed) {
  const Grid g = random_config(p.n, p.m, p.N0, p.N1, seed);
  const RunResult r = run(g, shared_table(spec.variant), tick_cap(g, spec.variant, spec.cap_factor), false);
  return {r.ticks, r.stop == StopReason::TargetReached, r.ticks > tick_cap(g, spec.variant, Rational(1)), r.stop};
}

struct Welford {
  long count = 0;
  double mean = 0;
  double m2 = 0;
  double lo = 0;
  double hi = 0;

  void add(double x) {
    if (count == 0) lo = hi = x;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  double stddev() const { return count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1)) : 0.0; }
};

}  // namespace

std::vector<DataPoint> run_sweep(const SweepSpec& spec, const SweepOptions& opt) {
  const std::vector<PointParams> points = sweep_points(spec);
  const std::size_t runs = static_cast<std::size_t>(spec.runs);
  const std::int64_t total = static_cast<std::int64_t>(points.size() * runs);
  std::vector<RunOutcome> outcomes(static_cast<std::size_t>(total));

  const auto one = [&](std::int64_t i) {
    const std::size_t pi = static_cast<std::size_t>(i) / runs;
    const std::size_t ri = static_cast<std::size_t>(i) % runs;
    outcomes[static_cast<std::size_t>(i)] = sweep_run(spec, points[pi], run_seed(spec.seed, pi, ri));
  };
  if (opt.serial) {
    for (std::int64_t i = 0; i < total; ++i) one(i);
  } else {
    [[maybe_unused]] const int jobs = resolve_jobs(opt.jobs);
#pragma omp parallel for schedule(dynamic, 4) num_threads(jobs)
    for (std::int64_t i = 0; i < total; ++i) one(i);
  }

  // Aggregation runs in fixed run order so the output does not depend on
  // the thread count.
  std::vector<DataPoint> out;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    Welford w;
    DataPoint dp;
    dp.params = points[pi];
    for (std::size_t ri = 0; ri < runs; ++ri) {
      const RunOutcome& o = outcomes[pi * runs + ri];
      if (!o.target) {
        const PointParams& p = points[pi];
        throw SweepError(std::string(stop_reason_name(o.stop)) + " at n=" + std::to_string(p.n) +
                         " m=" + std::to_string(p.m) + " N0=" + std::to_string(p.N0) +
                         " N1=" + std::to_string(p.N1) +
                         " seed=" + std::to_string(run_seed(spec.seed, pi, ri)));
      }
      w.add(o.ticks);
      dp.over_bound += o.over_bound ? 1 : 0;
    }
    dp.runs = static_cast<int>(w.count);
    dp.mean = w.mean;
    dp.min = w.lo;
    dp.max = w.hi;
    dp.stddev = w.stddev();
    out.push_back(dp);
  }
  return out;
}

namespace {

FitResult least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, FitKind kind) {
  const auto qr = A.colPivHouseholderQr();
  if (qr.rank() < A.cols()) throw SweepError("degenerate x values for fit");
  const Eigen::VectorXd c = qr.solve(y);
  FitResult f;
  f.kind = kind;
  f.residual = (A * c - y).norm();
  if (kind == FitKind::Poly2) {
    f.c2 = c(0);
    f.c1 = c(1);
    f.c0 = c(2);
  } else {
    f.beta = c(0);
    f.intercept = c(1);
  }
  return f;
}

}  // namespace

FitResult fit_poly2(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw SweepError("fit inputs differ in length");
  if (xs.size() < 3) throw SweepError("quadratic fit needs at least 3 points");
  const Eigen::Index k = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd A(k, 3);
  Eigen::VectorXd y(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    A(i, 0) = x * x;
    A(i, 1) = x;
    A(i, 2) = 1;
    y(i) = ys[static_cast<std::size_t>(i)];
  }
  return least_squares(A, y, FitKind::Poly2);
}

FitResult fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw SweepError("fit inputs differ in length");
  if (xs.size() < 2) throw SweepError("log-log fit needs at least 2 points");
  const Eigen::Index k = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd A(k, 2);
  Eigen::VectorXd y(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    const double v = ys[static_cast<std::size_t>(i)];
    if (!(x > 0) || !(v > 0)) throw SweepError("log-log fit needs positive values");
    A(i, 0) = std::log(x);
    A(i, 1) = 1;
    y(i) = std::log(v);
  }
  return least_squares(A, y, FitKind::LogLog);
}

namespace {

double swept_value(const SweepSpec& spec, const DataPoint& d) {
  switch (spec.swept) {
    case SweepParam::M: return d.params.m;
    case SweepParam::N: return d.params.n;
    case SweepParam::N0: return d.params.N0;
    case SweepParam::N1: return d.params.N1;
    case SweepParam::Rho: return boost::rational_cast<double>(*d.params.rho);
  }
  return 0;
}

}  // namespace

std::vector<FitResult> sweep_fits(const SweepSpec& spec, const std::vector<DataPoint>& points) {
  std::vector<double> xs, ys;
  if (spec.swept == SweepParam::N0) {
    for (const DataPoint& d : points) {
      if (2 * d.params.N0 > d.params.n) continue;  // beyond the fit window
      xs.push_back(d.params.N0);
      ys.push_back(d.mean);
    }
    if (xs.size() < 2) return {};
    return {fit_loglog_slope(xs, ys)};
  }
  for (const DataPoint& d : points) {
    xs.push_back(swept_value(spec, d));
    ys.push_back(d.mean);
  }
  if (xs.size() < 3) return {};
  return {fit_poly2(xs, ys)};
}

std::string format_number(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  (void)ec;
  return std::string(buf, p);
}

void export_csv(std::ostream& os, Algorithm variant, const std::vector<DataPoint>& points) {
  os << "variant,n,m,N0,N1,rho,runs,mean,min,max,stddev\n";
  for (const DataPoint& d : points) {
    const PointParams& p = d.params;
    os << algorithm_name(variant) << ',' << p.n << ',' << p.m << ',' << p.N0 << ',' << p.N1 << ','
       << (p.rho ? format_number(boost::rational_cast<double>(*p.rho)) : "") << ',' << d.runs << ','
       << format_number(d.mean) << ',' << format_number(d.min) << ',' << format_number(d.max) << ','
       << format_number(d.stddev) << '\n';
  }
}

void export_csv(std::ostream& os, const std::vector<FitResult>& fits) {
  os << "kind,c2,c1,c0,beta,intercept,residual\n";
  for (const FitResult& f : fits) {
    if (f.kind == FitKind::Poly2) {
      os << "poly2," << format_number(f.c2) << ',' << format_number(f.c1) << ',' << format_number(f.c0)
         << ",,," << format_number(f.residual) << '\n';
    } else {
      os << "loglog,,,," << format_number(f.beta) << ',' << format_number(f.intercept) << ','
         << format_number(f.residual) << '\n';
    }
  }
}

namespace {

template <class... Args>
void write_file(const std::string& path, const Args&... args) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  export_csv(os, args...);
  if (!os.flush()) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace

void export_csv(const std::string& path, Algorithm variant, const std::vector<DataPoint>& points) {
  write_file(path, variant, points);
}

void export_csv(const std::string& path, const std::vector<FitResult>& fits) { write_file(path, fits); }

}  // namespace exitroad
