#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "exitroad/ballbox.hpp"
#include "exitroad/bounds.hpp"
#include "exitroad/experiment.hpp"
#include "exitroad/sim.hpp"
#include "exitroad/verify.hpp"

using namespace exitroad;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCap = 1;
constexpr int kExitInput = 2;
constexpr int kExitFault = 3;

// Thrown for anything the user got wrong; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os || !(os << text) || !os.flush()) throw std::runtime_error("cannot write " + path);
}

Algorithm parse_variant(const std::string& s) {
  if (s == "A") return Algorithm::MultiLane;
  if (s == "A2") return Algorithm::TwoLane;
  throw InputError("variant must be A or A2");
}

Rational parse_factor(const std::string& s) {
  try {
    const Rational r = parse_rational(s);
    if (r <= 0) throw InputError("cap factor must be positive");
    return r;
  } catch (const BoundsError& e) {
    throw InputError(e.what());
  }
}

struct RunArgs {
  std::string grid_file;
  std::string variant = "A";
  std::string cap_factor = "2";
  std::string trace_out;
};

int cmd_run(const RunArgs& a) {
  const Algorithm v = parse_variant(a.variant);
  Grid g(2, 2);
  try {
    g = parse_grid(read_file(a.grid_file));
  } catch (const GridError& e) {
    throw InputError(e.what());
  }
  const auto problems = validate(g, constraint_for(v));
  if (!problems.empty()) throw InputError("illegal configuration: " + problems.front());
  if (v == Algorithm::MultiLane && g.cols() < 3) throw InputError("algorithm A needs m >= 3");
  if (v == Algorithm::TwoLane && g.cols() != 2) throw InputError("algorithm A2 needs m = 2");

  const int cap = tick_cap(g, v, parse_factor(a.cap_factor));
  const RunResult r = run(g, shared_table(v), cap, !a.trace_out.empty());
  std::cout << stop_reason_name(r.stop) << ' ' << r.ticks << '\n';
  if (r.trace) {
    std::ostringstream os;
    write_trace(os, *r.trace);
    write_file(a.trace_out, os.str());
  }
  switch (r.stop) {
    case StopReason::TargetReached: return kExitOk;
    case StopReason::TickCapExceeded: return kExitCap;
    default: return kExitFault;
  }
}

struct VerifyArgs {
  int n = 0;
  int m = 0;
  std::string variant = "A";
  std::string cap_factor = "2";
  std::string failures_out;
  int jobs = 0;
  bool serial = false;
  bool memory = false;
  bool corrupt = false;
};

int cmd_verify(const VerifyArgs& a) {
  const Algorithm v = parse_variant(a.variant);
  VerifyOptions opt;
  opt.cap_factor = parse_factor(a.cap_factor);
  opt.jobs = a.jobs;
  opt.serial = a.serial;
  RuleTable table = build_rule_table(v);
  if (a.corrupt) {
    inject_exit_lane_fault(table);
    opt.table = &table;
  }
  VerifyReport r;
  try {
    r = a.memory ? verify_memory_robustness(a.n, a.m, v, opt) : verify_all(a.n, a.m, v, opt);
  } catch (const VerifyError& e) {
    throw InputError(e.what());
  }
  std::cout << format_report(r);
  if (!r.ok()) {
    if (!a.failures_out.empty()) write_file(a.failures_out, format_failures(r));
    std::cout << format_failure_details(r);
  }
  return r.ok() ? kExitOk : kExitFault;
}

struct SweepArgs {
  std::string spec_file;
  std::string out;
  std::string fits_out;
  std::optional<std::uint64_t> seed;
  int jobs = 0;
  bool serial = false;
};

int cmd_sweep(const SweepArgs& a) {
  if (a.out.empty()) throw InputError("--out is required");
  SweepSpec spec;
  try {
    spec = parse_sweep_spec(read_file(a.spec_file));
  } catch (const SweepError& e) {
    throw InputError(e.what());
  }
  if (a.seed) spec.seed = *a.seed;
  const std::vector<DataPoint> points = run_sweep(spec, {a.jobs, a.serial});
  export_csv(a.out, spec.variant, points);
  const std::vector<FitResult> fits = sweep_fits(spec, points);
  if (!a.fits_out.empty()) export_csv(a.fits_out, fits);
  for (const DataPoint& d : points) {
    std::cout << sweep_param_name(spec.swept) << " point n=" << d.params.n << " m=" << d.params.m
              << " N0=" << d.params.N0 << " N1=" << d.params.N1 << " mean " << format_number(d.mean)
              << '\n';
  }
  if (spec.swept == SweepParam::N0) std::cout << "fit window: N0 <= n/2\n";
  for (const FitResult& f : fits) {
    if (f.kind == FitKind::LogLog) std::cout << "beta " << format_number(f.beta) << '\n';
    else std::cout << "poly2 c2 " << format_number(f.c2) << " c1 " << format_number(f.c1) << '\n';
  }
  return kExitOk;
}

int cmd_ballbox(const std::vector<std::string>& pairs, int M) {
  std::string joined;
  for (const std::string& p : pairs) joined += p + ' ';
  BallBoxState s;
  try {
    s = parse_occupancy(joined, M);
  } catch (const BallBoxError& e) {
    throw InputError(e.what());
  }
  std::cout << "M " << s.M << " N " << s.balls() << '\n'
            << "bmp1 " << bmp1_completion(s) << '\n'
            << "bmp2 " << bmp2_completion(s) << '\n'
            << "bound " << s.M + s.balls() << '\n';
  return kExitOk;
}

struct BoundsArgs {
  int n = 0;
  int m = 0;
  int N0 = 1;
  int N1 = 0;
  std::string rho;
};

std::string show(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  os << " (" << format_number(to_double(r)) << ')';
  return os.str();
}

int cmd_bounds(const BoundsArgs& a) {
  try {
    const ProblemParams p{a.n, a.m, a.N0, a.N1, std::nullopt};
    if (a.m == 2) {
      const TwoLaneBounds b = twolane_bounds(a.n, a.N0, a.N1);
      std::cout << "twolane_worst " << b.worst << '\n' << "twolane_avg " << show(b.avg) << '\n';
      return kExitOk;
    }
    std::cout << "upper_bound_ticks " << show(upper_bound_ticks(p)) << '\n'
              << "cycle_upper_bound " << cycle_upper_bound(a.n, a.m, a.N1) << '\n'
              << "te_cycle_bound " << te_cycle_bound(a.m, a.N1) << '\n'
              << "bottom_half_probability " << show(bottom_half_probability(a.m)) << '\n';
    if (a.n >= 2 && a.m >= 3) std::cout << "worst_case_single " << worst_case_single(a.n, a.m) << '\n';
    if (a.n >= 3 && a.m >= 3) {
      const AvgCaseSums s = avg_case_cycle_sums(a.n, a.m);
      std::cout << "group2 " << s.group2 << '\n'
                << "group3_optimistic " << s.group3_optimistic << '\n'
                << "group3_pessimistic " << s.group3_pessimistic << '\n'
                << "group4 " << s.group4 << '\n'
                << "group5_west " << s.group5_west << '\n'
                << "group5 " << s.group5 << '\n'
                << "average_bound " << s.average_bound << '\n';
    }
    if (!a.rho.empty()) std::cout << "rho_bound " << show(rho_bound(a.n, a.m, a.N1, parse_rational(a.rho))) << '\n';
  } catch (const BoundsError& e) {
    throw InputError(e.what());
  }
  return kExitOk;
}

int cmd_render(const std::string& path) {
  ParsedTrace t;
  try {
    t = parse_trace(read_file(path));
  } catch (const GridError& e) {
    throw InputError(e.what());
  }
  std::cout << "stop " << stop_reason_name(t.stop) << " ticks " << t.ticks << " frames " << t.frames.size()
            << '\n';
  for (const auto& [tick, grid] : t.frames) {
    std::cout << "-- tick " << tick << '\n' << body_text(grid);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exit-the-road grid sorting: simulator, verifier and experiment harness"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run one configuration to completion");
  run_cmd->add_option("grid", run_args.grid_file, "Grid file")->required();
  run_cmd->add_option("--variant", run_args.variant, "A or A2");
  run_cmd->add_option("--cap-factor", run_args.cap_factor, "Tick cap as a multiple of the bound");
  run_cmd->add_option("--trace", run_args.trace_out, "Write the trace to this file");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check every legal configuration of a size");
  verify_cmd->add_option("--n", verify_args.n, "Rows")->required();
  verify_cmd->add_option("--m", verify_args.m, "Columns")->required();
  verify_cmd->add_option("--variant", verify_args.variant, "A or A2");
  verify_cmd->add_option("--cap-factor", verify_args.cap_factor, "Tick cap as a multiple of the bound");
  verify_cmd->add_option("--failures", verify_args.failures_out, "Write offending grids here");
  verify_cmd->add_option("--jobs", verify_args.jobs, "Worker threads (default EXITROAD_JOBS or all cores)");
  verify_cmd->add_flag("--serial", verify_args.serial, "Use the single-threaded reference path");
  verify_cmd->add_flag("--memory", verify_args.memory, "Also enumerate initial direction bits");
  verify_cmd->add_flag("--debug-corrupt-table", verify_args.corrupt,
                       "Let exiting agents leave the exit lane (fault injection)");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep_cmd->add_option("spec", sweep_args.spec_file, "Sweep spec file")->required();
  sweep_cmd->add_option("--out", sweep_args.out, "Data points CSV");
  sweep_cmd->add_option("--fits", sweep_args.fits_out, "Fits CSV");
  sweep_cmd->add_option("--seed", sweep_args.seed, "Override the master seed");
  sweep_cmd->add_option("--jobs", sweep_args.jobs, "Worker threads (default EXITROAD_JOBS or all cores)");
  sweep_cmd->add_flag("--serial", sweep_args.serial, "Use the single-threaded reference path");

  std::vector<std::string> occupancy;
  int boxes = -1;
  auto* ballbox_cmd = app.add_subcommand("ballbox", "Completion times of both ball protocols");
  ballbox_cmd->add_option("occupancy", occupancy, "k:count pairs")->required();
  ballbox_cmd->add_option("--M", boxes, "Box count (default: largest box given)");

  BoundsArgs bounds_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the closed-form bounds");
  bounds_cmd->add_option("--n", bounds_args.n, "Rows")->required();
  bounds_cmd->add_option("--m", bounds_args.m, "Columns")->required();
  bounds_cmd->add_option("--N0", bounds_args.N0, "Empty cells");
  bounds_cmd->add_option("--N1", bounds_args.N1, "Exiting agents");
  bounds_cmd->add_option("--rho", bounds_args.rho, "Empty fraction, e.g. 0.6");

  std::string trace_file;
  auto* render_cmd = app.add_subcommand("render", "Pretty-print a trace file");
  render_cmd->add_option("trace", trace_file, "Trace file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*run_cmd) return cmd_run(run_args);
    if (*verify_cmd) return cmd_verify(verify_args);
    if (*sweep_cmd) return cmd_sweep(sweep_args);
    if (*ballbox_cmd) return cmd_ballbox(occupancy, boxes);
    if (*bounds_cmd) return cmd_bounds(bounds_args);
    if (*render_cmd) return cmd_render(trace_file);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const SweepError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFault;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
