#include "exitroad/sim.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>

namespace exitroad {

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::TargetReached:
      return "TargetReached";
    case StopReason::TickCapExceeded:
      return "TickCapExceeded";
    case StopReason::CollisionDetected:
      return "CollisionDetected";
    case StopReason::UndefinedRuleHit:
      return "UndefinedRuleHit";
  }
  return "?";
}

std::optional<StopReason> parse_stop_reason(std::string_view token) {
  for (StopReason r : {StopReason::TargetReached, StopReason::TickCapExceeded,
                       StopReason::CollisionDetected, StopReason::UndefinedRuleHit}) {
    if (token == stop_reason_name(r)) return r;
  }
  return std::nullopt;
}

SimState::SimState(Grid grid) : SimState(std::move(grid), std::vector<AgentState>{}) {}

SimState::SimState(Grid grid, const std::vector<AgentState>& memory) : grid_(std::move(grid)) {
  const auto size = static_cast<std::size_t>(grid_.size());
  if (!memory.empty() && memory.size() != size) {
    throw GridError("initial memory must cover every cell");
  }
  state_.assign(size, AgentState{});
  ew_.assign(size, 0);
  id_.assign(size, -1);
  int next_id = 0;
  std::optional<int> timer;
  for (std::size_t i = 0; i < size; ++i) {
    if (grid_[static_cast<int>(i)] == Cell::Empty) continue;
    id_[i] = next_id++;
    if (memory.empty()) continue;
    state_[i] = memory[i];
    if (timer && *timer != memory[i].timer) throw GridError("agent timers are not synchronized");
    timer = memory[i].timer;
  }
  phase_ = timer.value_or(0) & 3;
}

std::optional<AgentState> SimState::agent_state(Coord c) const {
  if (grid_.at(c) == Cell::Empty) return std::nullopt;
  return state_[static_cast<std::size_t>(grid_.index(c))];
}

int SimState::agent_id(Coord c) const {
  if (grid_.at(c) == Cell::Empty) return -1;
  return id_[static_cast<std::size_t>(grid_.index(c))];
}

int SimState::ew_moves(Coord c) const {
  if (grid_.at(c) == Cell::Empty) return 0;
  return ew_[static_cast<std::size_t>(grid_.index(c))];
}

int SimState::max_exiting_ew_moves() const {
  int best = 0;
  for (int i = 0; i < grid_.size(); ++i) {
    if (grid_[i] == Cell::Exiting) best = std::max(best, ew_[static_cast<std::size_t>(i)]);
  }
  return best;
}

std::optional<StopReason> advance(SimState& s, const RuleTable& table,
                                  std::vector<MoveRecord>* moves) {
  Grid& g = s.grid_;
  const int n = g.rows();
  const int m = g.cols();
  const int size = g.size();
  s.target_.assign(static_cast<std::size_t>(size), -1);
  s.claims_.assign(static_cast<std::size_t>(size), 0);
  std::vector<AgentState> next = s.state_;

  // LOOK + COMPUTE against the frozen board.
  for (int i = 0; i < size; ++i) {
    if (g[i] == Cell::Empty) continue;
    const Coord c = g.coord(i);
    const RuleKey key{kind_of(g[i]), s.state_[static_cast<std::size_t>(i)],
                      position_class(n, m, c), sense(g, c)};
    const std::optional<RuleOutput> out = table.lookup(key);
    if (!out) return StopReason::UndefinedRuleHit;
    next[static_cast<std::size_t>(i)] = out->next;
    if (!out->action.moves) continue;
    const Coord dest = step(c, out->action.dir);
    if (!g.contains(dest) || g.at(dest) != Cell::Empty) return StopReason::CollisionDetected;
    const int d = g.index(dest);
    if (s.claims_[static_cast<std::size_t>(d)]++ != 0) return StopReason::CollisionDetected;
    s.target_[static_cast<std::size_t>(i)] = d;
  }

  // MOVE: every destination was empty before the tick, so order is irrelevant.
  if (moves) moves->clear();
  s.state_ = std::move(next);
  for (int i = 0; i < size; ++i) {
    const int d = s.target_[static_cast<std::size_t>(i)];
    if (d < 0) continue;
    const auto si = static_cast<std::size_t>(i);
    const auto di = static_cast<std::size_t>(d);
    const Coord from = g.coord(i);
    const Direction dir = from.row == g.coord(d).row ? (d > i ? Direction::East : Direction::West)
                                                     : (d > i ? Direction::South : Direction::North);
    const bool lateral = dir == Direction::East || dir == Direction::West;
    if (moves) moves->push_back({s.tick_, s.id_[si], kind_of(g[i]), from, dir});
    g[d] = g[i];
    g[i] = Cell::Empty;
    s.state_[di] = s.state_[si];
    s.ew_[di] = s.ew_[si] + (lateral ? 1 : 0);
    s.id_[di] = s.id_[si];
    s.ew_[si] = 0;
    s.id_[si] = -1;
    if (g[d] == Cell::Exiting) s.max_exiting_ew_ = std::max(s.max_exiting_ew_, s.ew_[di]);
  }
  ++s.tick_;
  return std::nullopt;
}

TickResult tick(const SimState& s, const RuleTable& table) {
  TickResult r;
  SimState copy = s;
  r.fault = advance(copy, table, &r.moves);
  if (!r.fault) r.state = std::move(copy);
  return r;
}

const RuleTable& shared_table(Algorithm v) {
  static const RuleTable multi = build_rule_table(Algorithm::MultiLane);
  static const RuleTable two = build_rule_table(Algorithm::TwoLane);
  return v == Algorithm::MultiLane ? multi : two;
}

RunResult run(const Grid& g, const RuleTable& table, int cap, bool record_trace,
              const std::vector<AgentState>* initial_memory) {
  SimState s = initial_memory ? SimState(g, *initial_memory) : SimState(g);
  const Constraint target = constraint_for(table.algorithm());
  const bool single_empty = counts(g).empty == 1;

  RunResult r;
  Trace trace;
  if (record_trace) trace.frames.push_back({0, g, {}});
  int cycles = 0;
  bool corner_empty = g[0] == Cell::Empty;
  std::vector<MoveRecord> moves;

  for (;;) {
    if (is_target(s.grid(), target)) {
      r.stop = StopReason::TargetReached;
      break;
    }
    if (s.tick() >= cap) {
      r.stop = StopReason::TickCapExceeded;
      break;
    }
    if (auto fault = advance(s, table, record_trace ? &moves : nullptr)) {
      r.stop = *fault;
      break;
    }
    const bool now_empty = s.grid()[0] == Cell::Empty;
    if (now_empty && !corner_empty) ++cycles;
    corner_empty = now_empty;
    if (record_trace) trace.frames.push_back({s.tick(), s.grid(), moves});
  }

  r.ticks = s.tick();
  if (single_empty) r.cycles = cycles;
  r.max_ew_moves = s.max_exiting_ew_moves_ever();
  if (record_trace) {
    trace.stop = r.stop;
    trace.ticks = r.ticks;
    trace.phase = s.phase();
    r.trace = std::move(trace);
  }
  return r;
}

RunResult run(const Grid& g, Algorithm v, int cap, bool record_trace) {
  return run(g, shared_table(v), cap, record_trace);
}

int empty_space_cycles(const Trace& trace) {
  if (trace.frames.empty()) return 0;
  if (counts(trace.frames.front().grid).empty != 1) {
    throw GridError("empty-space cycles are defined for single-empty runs only");
  }
  int cycles = 0;
  bool was_empty = trace.frames.front().grid[0] == Cell::Empty;
  for (std::size_t i = 1; i < trace.frames.size(); ++i) {
    const bool now = trace.frames[i].grid[0] == Cell::Empty;
    if (now && !was_empty) ++cycles;
    was_empty = now;
  }
  return cycles;
}

std::vector<std::string> check_trace_invariants(const Trace& trace, Algorithm v) {
  std::vector<std::string> out;
  if (trace.frames.empty()) return out;
  const int n = trace.frames.front().grid.rows();
  const int m = trace.frames.front().grid.cols();
  const bool multi = v == Algorithm::MultiLane;

  auto where = [](const MoveRecord& mv) {
    return "tick " + std::to_string(mv.tick) + " agent " + std::to_string(mv.agent) + " at (" +
           std::to_string(mv.from.row) + "," + std::to_string(mv.from.col) + ") moving " +
           direction_name(mv.dir);
  };

  std::map<int, int> ew;
  std::map<int, bool> ew_reported;
  std::map<int, int> vacated_ns;  // cell index -> tick of last North/South departure

  for (std::size_t f = 1; f < trace.frames.size(); ++f) {
    const Grid& before = trace.frames[f - 1].grid;
    for (const MoveRecord& mv : trace.frames[f].moves) {
      const PositionClass pos = position_class(n, m, mv.from);
      const Coord to = mv.to();
      const bool lateral = mv.dir == Direction::East || mv.dir == Direction::West;
      const bool exiting = mv.kind == AgentKind::Exiting;

      if (!allowed_directions(v, mv.kind, pos, (mv.tick + trace.phase) % 4).contains(mv.dir)) {
        out.push_back("direction not permitted on this tick: " + where(mv));
      }
      if (!before.contains(to) || before.at(to) != Cell::Empty) {
        out.push_back("destination not empty before the tick: " + where(mv));
      }

      if (multi) {
        if (exiting && lateral && ++ew[mv.agent] > 2 * m && !ew_reported[mv.agent]) {
          ew_reported[mv.agent] = true;
          out.push_back("exiting agent exceeded 2m East/West moves: " + where(mv));
        }
        if (exiting && mv.from.col == m && to.col != m) {
          out.push_back("exiting agent left the exit lane: " + where(mv));
        }
        if (mv.dir == Direction::East && mv.from.row != 1) {
          out.push_back("East move outside the first row: " + where(mv));
        }
        if (mv.from.col == 1 && mv.from.row > 1 && mv.dir != Direction::North) {
          out.push_back("non-North move in the first column: " + where(mv));
        }
        if (!exiting && mv.dir == Direction::North && mv.from.row == 2 && mv.from.col > 1 &&
            mv.from.col < m && f + 1 < trace.frames.size()) {
          const auto& next = trace.frames[f + 1].moves;
          const bool back = std::any_of(next.begin(), next.end(), [&](const MoveRecord& o) {
            return o.agent == mv.agent && o.dir == Direction::South;
          });
          if (!back) out.push_back("continue agent did not return from the first row: " + where(mv));
        }
      } else {
        if ((exiting && mv.dir == Direction::West) || (!exiting && mv.dir == Direction::East)) {
          out.push_back("lane change against the agent type: " + where(mv));
        }
        if (!lateral) {
          const int dest = before.index(to);
          auto it = vacated_ns.find(dest);
          if (it != vacated_ns.end() && mv.tick < it->second + 4) {
            out.push_back("cell re-entered vertically within 4 ticks: " + where(mv));
          }
        }
      }
    }
    if (!multi) {
      for (const MoveRecord& mv : trace.frames[f].moves) {
        if (mv.dir == Direction::North || mv.dir == Direction::South) {
          vacated_ns[before.index(mv.from)] = mv.tick;
        }
      }
    }
  }
  return out;
}

void write_trace(std::ostream& os, const Trace& trace) {
  for (const TraceFrame& f : trace.frames) os << "tick " << f.tick << '\n' << to_text(f.grid);
  os << "stop " << stop_reason_name(trace.stop) << " ticks " << trace.ticks << '\n';
}

namespace {

int parse_int(std::string_view tok, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || v < 0) {
    throw GridError(std::string("trace: bad ") + what + " '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

ParsedTrace parse_trace(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }

  ParsedTrace out;
  std::size_t i = 0;
  bool stopped = false;
  while (i < lines.size()) {
    std::string_view line = lines[i];
    if (line.empty()) {
      ++i;
      continue;
    }
    if (stopped) throw GridError("trace: content after stop line");
    if (line.starts_with("tick ")) {
      const int k = parse_int(line.substr(5), "tick number");
      if (i + 1 >= lines.size()) throw GridError("trace: missing grid after tick line");
      std::string_view header = lines[i + 1];
      const std::size_t sp = header.find(' ');
      const int rows = sp == std::string_view::npos ? -1 : parse_int(header.substr(0, sp), "row count");
      if (rows < 0 || i + 2 + static_cast<std::size_t>(rows) > lines.size()) {
        throw GridError("trace: truncated grid block");
      }
      std::string block;
      for (std::size_t j = i + 1; j < i + 2 + static_cast<std::size_t>(rows); ++j) {
        block.append(lines[j]);
        block.push_back('\n');
      }
      out.frames.emplace_back(k, parse_grid(block));
      i += 2 + static_cast<std::size_t>(rows);
      continue;
    }
    if (line.starts_with("stop ")) {
      std::string_view rest = line.substr(5);
      const std::size_t sp = rest.find(' ');
      if (sp == std::string_view::npos) throw GridError("trace: malformed stop line");
      auto reason = parse_stop_reason(rest.substr(0, sp));
      if (!reason) throw GridError("trace: unknown stop reason '" + std::string(rest.substr(0, sp)) + "'");
      std::string_view tail = rest.substr(sp + 1);
      if (!tail.starts_with("ticks ")) throw GridError("trace: malformed stop line");
      out.stop = *reason;
      out.ticks = parse_int(tail.substr(6), "tick count");
      stopped = true;
      ++i;
      continue;
    }
    throw GridError("trace: unexpected line '" + std::string(line) + "'");
  }
  if (!stopped) throw GridError("trace: missing stop line");
  return out;
}

}  // namespace exitroad
