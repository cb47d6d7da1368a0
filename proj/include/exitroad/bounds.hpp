#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace exitroad {

using Rational = boost::rational<std::int64_t>;

class BoundsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProblemParams {
  int n = 0;
  int m = 0;
  int N0 = 1;
  int N1 = 0;
  std::optional<Rational> rho;
};

// Ticks for the (n, m, 1, 1) problem: 16m^2n + 8mn^2.
std::int64_t worst_case_single(int n, int m);

// (3m + n + 2N1) / N0 * 8mn.
Rational upper_bound_ticks(const ProblemParams& p);
// Same bound written out: (24nm^2 + 8mn^2 + 16mnN1) / N0.
Rational upper_bound_ticks_expanded(const ProblemParams& p);

// Empty-space cycles for N0 = 1.
int cycle_upper_bound(int n, int m, int N1);
int te_cycle_bound(int m, int N1);

// Total cycles per starting group, summed over all placements of a single
// exiting agent. Group 1 (already in the exit lane) costs nothing.
struct AvgCaseSums {
  std::int64_t group2 = 0;              // first row
  std::int64_t group3_optimistic = 0;   // second row, immediate shortcut
  std::int64_t group3_pessimistic = 0;  // second row, first sighting goes West
  std::int64_t group4 = 0;              // first column, rows 3..n
  std::int64_t group5_west = 0;         // interior columns, West leg only
  std::int64_t group5 = 0;              // interior columns, West leg plus the rest
  std::int64_t average_bound = 0;       // 4(3m + n)mn ticks
};

AvgCaseSums avg_case_cycle_sums(int n, int m);

Rational bottom_half_probability(int m);

Rational rho_bound(int n, int m, int N1, Rational rho);

struct TwoLaneBounds {
  std::int64_t worst = 0;  // 16n^2
  Rational avg;            // 4nN1 / N0
};

TwoLaneBounds twolane_bounds(int n, int N0, int N1);

inline double to_double(Rational r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Exact rational from a decimal such as "0.6"; throws BoundsError.
Rational parse_rational(const std::string& text);

}  // namespace exitroad
