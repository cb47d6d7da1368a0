#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exitroad/agent_fsm.hpp"
#include "exitroad/grid.hpp"

namespace exitroad {

enum class StopReason : std::uint8_t {
  TargetReached,
  TickCapExceeded,
  CollisionDetected,
  UndefinedRuleHit,
};

const char* stop_reason_name(StopReason r);
std::optional<StopReason> parse_stop_reason(std::string_view token);

struct MoveRecord {
  int tick = 0;  // tick at which the move was decided
  int agent = 0;
  AgentKind kind = AgentKind::Continue;
  Coord from;
  Direction dir = Direction::North;

  Coord to() const { return step(from, dir); }
};

struct TraceFrame {
  int tick = 0;
  Grid grid;
  std::vector<MoveRecord> moves;  // moves that produced this frame
};

struct Trace {
  std::vector<TraceFrame> frames;
  StopReason stop = StopReason::TickCapExceeded;
  int ticks = 0;
  int phase = 0;  // agent timer value at tick 0
};

// Board plus per-agent memory. Agent data is kept per cell; entries for
// empty cells are unused.
class SimState {
 public:
  explicit SimState(Grid grid);
  // Initial memory per cell (row-major); entries for empty cells are
  // ignored. Agent timers must all agree, otherwise GridError.
  SimState(Grid grid, const std::vector<AgentState>& memory);

  const Grid& grid() const { return grid_; }
  int tick() const { return tick_; }
  int phase() const { return phase_; }  // common timer value at tick 0

  std::optional<AgentState> agent_state(Coord c) const;
  int agent_id(Coord c) const;
  int ew_moves(Coord c) const;
  int max_exiting_ew_moves() const;
  int max_exiting_ew_moves_ever() const { return max_exiting_ew_; }

  friend std::optional<StopReason> advance(SimState& s, const RuleTable& table,
                                           std::vector<MoveRecord>* moves);

 private:
  Grid grid_;
  int tick_ = 0;
  int phase_ = 0;
  std::vector<AgentState> state_;
  std::vector<int> ew_;
  std::vector<int> id_;
  int max_exiting_ew_ = 0;
  // scratch buffers reused between ticks
  std::vector<int> target_;
  std::vector<std::uint8_t> claims_;
};

// One synchronous LOOK-COMPUTE-MOVE step, in place. On a fault the state is
// left unchanged and the fault is returned.
std::optional<StopReason> advance(SimState& s, const RuleTable& table,
                                  std::vector<MoveRecord>* moves = nullptr);

struct TickResult {
  std::optional<SimState> state;
  std::optional<StopReason> fault;
  std::vector<MoveRecord> moves;
};

TickResult tick(const SimState& s, const RuleTable& table);

struct RunResult {
  StopReason stop = StopReason::TickCapExceeded;
  int ticks = 0;
  std::optional<int> cycles;  // empty-space cycles, single-empty runs only
  int max_ew_moves = 0;       // largest East+West count of any exiting agent
  std::optional<Trace> trace;
};

const RuleTable& shared_table(Algorithm v);

RunResult run(const Grid& g, const RuleTable& table, int cap, bool record_trace,
              const std::vector<AgentState>* initial_memory = nullptr);
RunResult run(const Grid& g, Algorithm v, int cap, bool record_trace);

// Number of times a_{1,1} turns empty after the first frame.
int empty_space_cycles(const Trace& trace);

std::vector<std::string> check_trace_invariants(const Trace& trace, Algorithm v);

void write_trace(std::ostream& os, const Trace& trace);

struct ParsedTrace {
  std::vector<std::pair<int, Grid>> frames;
  StopReason stop = StopReason::TickCapExceeded;
  int ticks = 0;
};

ParsedTrace parse_trace(std::string_view text);

}  // namespace exitroad
