#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "exitroad/experiment.hpp"

using namespace exitroad;

TEST_CASE("random configurations have the requested counts") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Grid g = random_config(4, 5, 3, 2, seed);
    const Counts c = counts(g);
    CHECK(c.empty == 3);
    CHECK(c.exiting == 2);
    CHECK(c.cont == 15);
  }
  CHECK(random_config(4, 5, 3, 2, 42) == random_config(4, 5, 3, 2, 42));
  CHECK_THROWS(random_config(2, 3, 6, 1, 1));
}

TEST_CASE("random placement is uniform") {
  // Chi-square over the 30 ordered (empty cell, exiting cell) pairs.
  constexpr int kDraws = 100000;
  std::vector<int> hist(30, 0);
  for (int i = 0; i < kDraws; ++i) {
    const Grid g = random_config(2, 3, 1, 1, run_seed(9, 0, static_cast<std::uint64_t>(i)));
    int e = -1;
    int x = -1;
    for (int k = 0; k < 6; ++k) {
      if (g[k] == Cell::Empty) e = k;
      if (g[k] == Cell::Exiting) x = k;
    }
    REQUIRE(e >= 0);
    REQUIRE(x >= 0);
    ++hist[static_cast<std::size_t>(e * 5 + (x > e ? x - 1 : x))];
  }
  const double expected = kDraws / 30.0;
  double chi2 = 0;
  for (int h : hist) chi2 += (h - expected) * (h - expected) / expected;
  CHECK(chi2 < 58.3);  // 29 degrees of freedom, p = 0.001
}

TEST_CASE("run seeds") {
  CHECK(run_seed(1, 2, 3) == splitmix64(splitmix64(splitmix64(1) ^ 2) ^ 3));
  CHECK(run_seed(1, 2, 3) != run_seed(1, 3, 2));
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("sweep spec parsing") {
  const SweepSpec s = parse_sweep_spec(
      "# m sweep\nvariant = A\nsweep = m\nvalues = 3,4,5\nn = 6\nN0 = 2\nruns = 10\nseed = 7\n");
  CHECK(s.variant == Algorithm::MultiLane);
  CHECK(s.swept == SweepParam::M);
  REQUIRE(s.values.size() == 3);
  CHECK(s.values[2] == Rational(5));
  CHECK(s.n == 6);
  CHECK(s.N0 == 2);
  CHECK(s.runs == 10);
  CHECK(s.seed == 7);
  const auto pts = sweep_points(s);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].m == 3);
  CHECK(pts[0].N1 == 5);

  CHECK_THROWS_AS(parse_sweep_spec("sweep = m\n"), SweepError);
  CHECK_THROWS_AS(parse_sweep_spec("sweep = m\nvalues = 3\nbogus = 1\n"), SweepError);
  CHECK_THROWS_AS(parse_sweep_spec("sweep = m\nvalues = 3\nn = 2\nn = 3\n"), SweepError);
  CHECK_THROWS_AS(parse_sweep_spec("sweep = q\nvalues = 3\n"), SweepError);
  CHECK_THROWS_AS(sweep_points(parse_sweep_spec("sweep = m\nvalues = 3\nn = 4\nm = 3\nN0 = 1\n")),
                  SweepError);
  CHECK_THROWS_AS(sweep_points(parse_sweep_spec("sweep = m\nvalues = 2\nn = 4\nN0 = 1\n")), SweepError);
}

TEST_CASE("rho sweeps derive the empty count") {
  const SweepSpec s = parse_sweep_spec("sweep = rho\nvalues = 0.1, 0.25\nn = 4\nm = 5\nN1 = 1\n");
  const auto pts = sweep_points(s);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].N0 == 2);
  CHECK(pts[1].N0 == 5);
  CHECK(pts[1].rho == Rational(1, 4));
}

TEST_CASE("sweeps are reproducible and independent of the schedule") {
  const SweepSpec s = parse_sweep_spec("sweep = N0\nvalues = 1,2,3\nn = 4\nm = 4\nN1 = 2\nruns = 25\nseed = 5\n");
  SweepOptions serial;
  serial.serial = true;
  SweepOptions parallel;
  parallel.jobs = 4;
  const auto a = run_sweep(s, serial);
  const auto b = run_sweep(s, parallel);
  REQUIRE(a.size() == 3);
  REQUIRE(b.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].runs == 25);
    CHECK(a[i].mean == b[i].mean);
    CHECK(a[i].stddev == b[i].stddev);
    CHECK(a[i].min <= a[i].mean);
    CHECK(a[i].mean <= a[i].max);
    CHECK(a[i].over_bound == 0);
  }
}

TEST_CASE("a single run has no spread") {
  const SweepSpec s = parse_sweep_spec("sweep = m\nvalues = 4\nn = 3\nN0 = 1\nruns = 1\n");
  const auto pts = run_sweep(s);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].mean == pts[0].min);
  CHECK(pts[0].mean == pts[0].max);
  CHECK(pts[0].stddev == 0);
}

TEST_CASE("quadratic fit") {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(2 * x * x + 3);
  const FitResult f = fit_poly2(xs, ys);
  CHECK(f.c2 == doctest::Approx(2).epsilon(1e-9));
  CHECK(std::abs(f.c1) < 1e-8);
  CHECK(f.c0 == doctest::Approx(3).epsilon(1e-9));
  CHECK(f.residual < 1e-8);

  // Synthetic 24 n / N0 scaling seen through a quadratic in n.
  const int N0 = 3;
  std::vector<double> ns;
  std::vector<double> ts;
  for (int n = 4; n <= 16; ++n) {
    ns.push_back(n);
    ts.push_back(24.0 * n * n / N0);
  }
  CHECK(fit_poly2(ns, ts).c2 == doctest::Approx(8).epsilon(1e-9));

  CHECK_THROWS_AS(fit_poly2({1, 1, 1}, {1, 2, 3}), SweepError);
  CHECK_THROWS_AS(fit_poly2({1, 2}, {1, 2}), SweepError);
}

TEST_CASE("log-log slope") {
  const std::vector<double> xs{1, 2, 4, 8, 16};
  for (double beta : {-1.0, 0.0, -2.0}) {
    std::vector<double> ys;
    for (double x : xs) ys.push_back(5 * std::pow(x, beta));
    const FitResult f = fit_loglog_slope(xs, ys);
    CHECK(f.beta == doctest::Approx(beta).epsilon(1e-9));
    CHECK(std::exp(f.intercept) == doctest::Approx(5).epsilon(1e-9));
  }
  CHECK_THROWS_AS(fit_loglog_slope({1, 2}, {0, 1}), SweepError);
}

TEST_CASE("CSV export") {
  std::ostringstream empty;
  export_csv(empty, Algorithm::MultiLane, {});
  CHECK(empty.str() == "variant,n,m,N0,N1,rho,runs,mean,min,max,stddev\n");

  DataPoint p;
  p.params = {3, 4, 1, 2, Rational(1, 12)};
  p.runs = 2;
  p.mean = 10.5;
  p.min = 10;
  p.max = 11;
  p.stddev = 0.707107;
  std::ostringstream os;
  export_csv(os, Algorithm::MultiLane, {p});
  std::istringstream is(os.str());
  std::string header;
  std::string row;
  std::getline(is, header);
  std::getline(is, row);
  std::vector<std::string> fields;
  std::stringstream rs(row);
  for (std::string f; std::getline(rs, f, ',');) fields.push_back(f);
  REQUIRE(fields.size() == 11);
  CHECK(fields[1] == "3");
  CHECK(fields[2] == "4");
  CHECK(std::stod(fields[5]) == doctest::Approx(1.0 / 12).epsilon(1e-5));
  CHECK(std::stod(fields[7]) == 10.5);
  CHECK(std::stod(fields[10]) == doctest::Approx(0.707107));

  std::ostringstream fits;
  export_csv(fits, std::vector<FitResult>{});
  CHECK(fits.str() == "kind,c2,c1,c0,beta,intercept,residual\n");

  const auto path = std::filesystem::temp_directory_path() / "exitroad_points.csv";
  export_csv(path.string(), Algorithm::MultiLane, {p});
  std::ifstream in(path);
  std::stringstream back;
  back << in.rdbuf();
  CHECK(back.str() == os.str());
  std::filesystem::remove(path);
}

TEST_CASE("number formatting") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1234567.0) == "1.23457e+06");
}
