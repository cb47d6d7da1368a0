#include "exitroad/bounds.hpp"

#include <cctype>
#include <string>

namespace exitroad {

namespace {

using i64 = std::int64_t;

void require(bool ok, const char* msg) {
  if (!ok) throw BoundsError(msg);
}

void check_params(const ProblemParams& p) {
  require(p.n >= 1 && p.m >= 1, "grid dimensions must be positive");
  require(p.N0 >= 1, "N0 must be at least 1");
  require(p.N1 >= 0, "N1 must be nonnegative");
  require(static_cast<i64>(p.N0) + p.N1 <= static_cast<i64>(p.n) * p.m, "N0 + N1 exceeds n*m");
}

}  // namespace

i64 worst_case_single(int n, int m) {
  require(n >= 2 && m >= 3, "worst_case_single needs n >= 2, m >= 3");
  const i64 N = n, M = m;
  return 16 * M * M * N + 8 * M * N * N;
}

Rational upper_bound_ticks(const ProblemParams& p) {
  check_params(p);
  const i64 n = p.n, m = p.m;
  return Rational(3 * m + n + 2 * static_cast<i64>(p.N1), p.N0) * (8 * m * n);
}

Rational upper_bound_ticks_expanded(const ProblemParams& p) {
  check_params(p);
  const i64 n = p.n, m = p.m, N1 = p.N1;
  return Rational(24 * n * m * m + 8 * m * n * n + 16 * m * n * N1, p.N0);
}

int cycle_upper_bound(int n, int m, int N1) { return n + 3 * m + 2 * N1; }

int te_cycle_bound(int m, int N1) { return 2 * m + 3 * N1; }

AvgCaseSums avg_case_cycle_sums(int n, int m) {
  require(n >= 3 && m >= 3, "avg_case_cycle_sums needs n >= 3, m >= 3");
  const i64 N = n, M = m;
  AvgCaseSums s;
  s.group2 = M * (M - 1) / 2;
  s.group3_optimistic = (M - 1) * (M + 2) / 2;
  s.group3_pessimistic = (M - 1) * (M + 4) / 2 + (M - 3);
  s.group4 = (M - 1) * (N - 2) + N * (N - 1) / 2 - 1;
  s.group5_west = (N - 2) * ((M - 1) * (M - 2) / 2);
  s.group5 = s.group5_west + (M - 2) * s.group4;
  s.average_bound = 4 * (3 * M + N) * M * N;
  return s;
}

Rational bottom_half_probability(int m) {
  require(m >= 2, "bottom_half_probability needs m >= 2");
  return Rational(m - 1, 2 * static_cast<i64>(m));
}

Rational rho_bound(int n, int m, int N1, Rational rho) {
  require(rho > 0 && rho < 1, "rho must lie in (0, 1)");
  return Rational(8) / rho * (3 * static_cast<i64>(m) + n + 2 * static_cast<i64>(N1));
}

TwoLaneBounds twolane_bounds(int n, int N0, int N1) {
  require(N0 >= 1, "N0 must be at least 1");
  const i64 N = n;
  return {16 * N * N, Rational(4 * N * N1, N0)};
}

Rational parse_rational(const std::string& text) {
  std::size_t i = 0;
  i64 num = 0;
  i64 den = 1;
  bool digits = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    num = num * 10 + (text[i++] - '0');
    digits = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      require(den <= 100000000000LL, "too many decimal places");
      num = num * 10 + (text[i++] - '0');
      den *= 10;
      digits = true;
    }
  } else if (i < text.size() && text[i] == '/') {
    ++i;
    i64 d = 0;
    bool any = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      d = d * 10 + (text[i++] - '0');
      any = true;
    }
    require(any && d > 0, "bad denominator");
    den = d;
  }
  require(digits && i == text.size(), "not a nonnegative decimal number");
  return Rational(num, den);
}

}  // namespace exitroad
