#include "exitroad/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exitroad {

namespace {

void guard(int n, int m, int limit) {
  if (n < 2 || m < 2) throw VerifyError("grid must be at least 2x2");
  if (n * m > limit) {
    throw VerifyError("exhaustive mode is limited to n*m <= " + std::to_string(limit));
  }
}

std::string replay_text(const Trace& t) {
  Trace head;
  head.stop = t.stop;
  head.ticks = t.ticks;
  head.phase = t.phase;
  for (const TraceFrame& f : t.frames) {
    if (f.tick > 8) break;
    head.frames.push_back(f);
  }
  std::ostringstream os;
  write_trace(os, head);
  return os.str();
}

}  // namespace

void VerifyReport::merge(const VerifyReport& o) {
  grids_checked += o.grids_checked;
  failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  max_ticks_seen = std::max(max_ticks_seen, o.max_ticks_seen);
  if (o.max_cycles_seen) max_cycles_seen = std::max(max_cycles_seen.value_or(0), *o.max_cycles_seen);
  max_ew_moves = std::max(max_ew_moves, o.max_ew_moves);
  over_upper_bound += o.over_upper_bound;
  over_cycle_bound += o.over_cycle_bound;
}

std::int64_t config_space_size(int n, int m) {
  std::int64_t s = 1;
  for (int i = 0; i < n * m; ++i) s *= 3;
  return s;
}

Grid config_at(int n, int m, std::int64_t index) {
  std::vector<Cell> cells(static_cast<std::size_t>(n * m));
  for (Cell& c : cells) {
    c = static_cast<Cell>(index % 3);
    index /= 3;
  }
  return Grid(n, m, std::move(cells));
}

std::vector<Grid> enumerate_configs(int n, int m, Constraint v) {
  guard(n, m, kExhaustiveCellLimit);
  std::vector<Grid> out;
  const std::int64_t total = config_space_size(n, m);
  for (std::int64_t i = 0; i < total; ++i) {
    Grid g = config_at(n, m, i);
    if (validate(g, v).empty()) out.push_back(std::move(g));
  }
  return out;
}

std::vector<Grid> single_agent_configs(int n, int m) {
  std::vector<Grid> out;
  const int size = n * m;
  for (int e = 0; e < size; ++e) {
    for (int empty = 0; empty < size; ++empty) {
      if (empty == e) continue;
      Grid g(n, m, Cell::Continue);
      g[e] = Cell::Exiting;
      g[empty] = Cell::Empty;
      out.push_back(std::move(g));
    }
  }
  return out;
}

void inject_exit_lane_fault(RuleTable& table) {
  for (std::size_t i = 0; i < RuleTable::kSize; ++i) {
    const RuleKey key = RuleTable::key_at(i);
    if (key.kind != AgentKind::Exiting || !has_border(key.position, Direction::East)) continue;
    if (!well_formed(key) || key.neighborhood.west != Reading::Empty) continue;
    table.override_entry(key, {Action::move(Direction::West), timer_tick(key.state)});
  }
}

int tick_cap(const Grid& g, Algorithm v, Rational cap_factor) {
  const Counts c = counts(g);
  Rational bound;
  if (v == Algorithm::TwoLane) {
    bound = Rational(twolane_bounds(g.rows(), std::max(c.empty, 1), c.exiting).worst);
  } else {
    bound = upper_bound_ticks({g.rows(), g.cols(), std::max(c.empty, 1), c.exiting, std::nullopt});
  }
  const Rational cap = bound * cap_factor;
  // ceiling of a nonnegative rational
  return static_cast<int>((cap.numerator() + cap.denominator() - 1) / cap.denominator());
}

void verify_config(const Grid& g, std::int64_t index, Algorithm v, const VerifyOptions& opt,
                   VerifyReport& report, const std::vector<AgentState>* memory) {
  const RuleTable& table = opt.table ? *opt.table : shared_table(v);
  const int cap = tick_cap(g, v, opt.cap_factor);
  const RunResult r = run(g, table, cap, opt.check_invariants, memory);
  ++report.grids_checked;
  report.max_ticks_seen = std::max(report.max_ticks_seen, r.ticks);
  report.max_ew_moves = std::max(report.max_ew_moves, r.max_ew_moves);
  if (r.ticks > tick_cap(g, v, Rational(1))) ++report.over_upper_bound;

  const Counts c = counts(g);
  if (r.cycles) {
    report.max_cycles_seen = std::max(report.max_cycles_seen.value_or(0), *r.cycles);
    if (c.exiting == 1 && *r.cycles > cycle_upper_bound(g.rows(), g.cols(), 1)) {
      ++report.over_cycle_bound;
    }
  }

  std::string reason;
  if (r.stop != StopReason::TargetReached) {
    reason = stop_reason_name(r.stop);
  } else if (v == Algorithm::MultiLane && r.max_ew_moves > 2 * g.cols()) {
    reason = "exiting agent made " + std::to_string(r.max_ew_moves) + " East/West moves";
  } else if (r.trace) {
    const std::vector<std::string> bad = check_trace_invariants(*r.trace, v);
    if (!bad.empty()) reason = bad.front();
  }
  if (reason.empty()) return;
  Failure f;
  f.index = index;
  f.config = to_text(g);
  f.reason = std::move(reason);
  if (r.trace) {
    f.replay = replay_text(*r.trace);
  } else {
    const RunResult again = run(g, table, cap, true, memory);
    f.replay = replay_text(*again.trace);
  }
  report.failures.push_back(std::move(f));
}

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("EXITROAD_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

VerifyReport verify_configs(const std::vector<Grid>& configs, Algorithm v, const VerifyOptions& opt) {
  const auto count = static_cast<std::int64_t>(configs.size());
  if (opt.serial) {
    VerifyReport report;
    for (std::int64_t i = 0; i < count; ++i) {
      verify_config(configs[static_cast<std::size_t>(i)], i, v, opt, report);
    }
    return report;
  }

  const RuleTable& table = opt.table ? *opt.table : shared_table(v);
  VerifyOptions local = opt;
  local.table = &table;  // resolve the static before entering the parallel region
  VerifyReport total;
#pragma omp parallel num_threads(resolve_jobs(opt.jobs))
  {
    VerifyReport mine;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      verify_config(configs[static_cast<std::size_t>(i)], i, v, local, mine);
    }
#pragma omp critical
    total.merge(mine);
  }
  std::sort(total.failures.begin(), total.failures.end(),
            [](const Failure& a, const Failure& b) { return a.index < b.index; });
  return total;
}

VerifyReport verify_all(int n, int m, Algorithm v, const VerifyOptions& opt) {
  guard(n, m, kExhaustiveCellLimit);
  if (v == Algorithm::TwoLane && m != 2) throw VerifyError("A2 runs on n x 2 grids only");
  if (v == Algorithm::MultiLane && m < 3) throw VerifyError("A needs m >= 3");
  return verify_configs(enumerate_configs(n, m, constraint_for(v)), v, opt);
}

VerifyReport verify_memory_robustness(int n, int m, Algorithm v, const VerifyOptions& opt) {
  guard(n, m, 9);
  const std::vector<Grid> configs = enumerate_configs(n, m, constraint_for(v));
  const RuleTable& table = opt.table ? *opt.table : shared_table(v);
  VerifyOptions local = opt;
  local.table = &table;
  local.check_invariants = false;
  const auto count = static_cast<std::int64_t>(configs.size());

  auto check = [&](std::int64_t i, VerifyReport& report) {
    const Grid& g = configs[static_cast<std::size_t>(i)];
    std::vector<int> agents;
    for (int c = 0; c < g.size(); ++c) {
      if (g[c] != Cell::Empty) agents.push_back(c);
    }
    std::vector<AgentState> memory(static_cast<std::size_t>(g.size()));
    for (std::uint32_t bits = 0; bits < (1u << agents.size()); ++bits) {
      for (std::size_t k = 0; k < agents.size(); ++k) {
        memory[static_cast<std::size_t>(agents[k])].dir = ((bits >> k) & 1u) != 0;
      }
      verify_config(g, i, v, local, report, &memory);
    }
  };

  VerifyReport total;
  if (opt.serial) {
    for (std::int64_t i = 0; i < count; ++i) check(i, total);
    return total;
  }
#pragma omp parallel num_threads(resolve_jobs(opt.jobs))
  {
    VerifyReport mine;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0; i < count; ++i) check(i, mine);
#pragma omp critical
    total.merge(mine);
  }
  std::stable_sort(total.failures.begin(), total.failures.end(),
                   [](const Failure& a, const Failure& b) { return a.index < b.index; });
  return total;
}

std::string format_report(const VerifyReport& r) {
  std::ostringstream os;
  os << "grids_checked " << r.grids_checked << '\n'
     << "failures " << r.failures.size() << '\n'
     << "max_ticks " << r.max_ticks_seen << '\n'
     << "max_ew_moves " << r.max_ew_moves << '\n'
     << "over_upper_bound " << r.over_upper_bound << '\n';
  if (r.max_cycles_seen) {
    os << "max_cycles " << *r.max_cycles_seen << '\n'
       << "over_cycle_bound " << r.over_cycle_bound << '\n';
  }
  return os.str();
}

std::string format_failures(const VerifyReport& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.failures.size(); ++i) {
    if (i) os << '\n';
    os << r.failures[i].config;
  }
  return os.str();
}

std::string format_failure_details(const VerifyReport& r) {
  std::ostringstream os;
  for (const Failure& f : r.failures) {
    os << "failure #" << f.index << ": " << f.reason << '\n' << f.config << f.replay;
  }
  return os.str();
}

}  // namespace exitroad
