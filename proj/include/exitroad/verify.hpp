#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exitroad/agent_fsm.hpp"
#include "exitroad/bounds.hpp"
#include "exitroad/grid.hpp"
#include "exitroad/sim.hpp"

namespace exitroad {

inline constexpr int kExhaustiveCellLimit = 12;

class VerifyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Configurations are numbered in base 3 over the row-major cells
// (digit 0 = empty, 1 = exiting, 2 = continue; cell 1 is least significant).
std::int64_t config_space_size(int n, int m);
Grid config_at(int n, int m, std::int64_t index);

// Every legal configuration for the constraint, in index order.
std::vector<Grid> enumerate_configs(int n, int m, Constraint v);

// All placements of one exiting agent and one empty cell on an n x m board.
std::vector<Grid> single_agent_configs(int n, int m);

struct Failure {
  std::int64_t index = 0;  // position in the checked sequence
  std::string config;      // grid text
  std::string reason;
  std::string replay;  // first 8 ticks of the trace
};

struct VerifyReport {
  std::int64_t grids_checked = 0;
  std::vector<Failure> failures;
  int max_ticks_seen = 0;
  std::optional<int> max_cycles_seen;
  int max_ew_moves = 0;
  std::int64_t over_upper_bound = 0;  // runs slower than the instance bound
  std::int64_t over_cycle_bound = 0;  // (n, m, 1, 1) runs above n + 3m + 2 cycles

  bool ok() const { return failures.empty(); }
  void merge(const VerifyReport& other);
};

struct VerifyOptions {
  Rational cap_factor{2};
  const RuleTable* table = nullptr;  // defaults to the shared table
  int jobs = 0;                      // 0 = runtime default
  bool serial = false;               // use the single-threaded reference path
  bool check_invariants = true;
};

// Fault injection: exiting agents in the exit lane step West whenever
// that cell is empty.
void inject_exit_lane_fault(RuleTable& table);

// Tick cap for one configuration: cap_factor times the applicable bound.
int tick_cap(const Grid& g, Algorithm v, Rational cap_factor);

// Runs one configuration and records any failure into `report`.
void verify_config(const Grid& g, std::int64_t index, Algorithm v, const VerifyOptions& opt,
                   VerifyReport& report, const std::vector<AgentState>* memory = nullptr);

VerifyReport verify_configs(const std::vector<Grid>& configs, Algorithm v, const VerifyOptions& opt);

VerifyReport verify_all(int n, int m, Algorithm v, const VerifyOptions& opt = {});

// Every legal configuration under every assignment of initial direction
// bits, timers all zero. Limited to n*m <= 9.
VerifyReport verify_memory_robustness(int n, int m, Algorithm v, const VerifyOptions& opt = {});

std::string format_report(const VerifyReport& r);
// Offending configurations as grid texts separated by blank lines.
std::string format_failures(const VerifyReport& r);
// Reason and replay for each failure.
std::string format_failure_details(const VerifyReport& r);

int resolve_jobs(int requested);

}  // namespace exitroad
