#include "exitroad/agent_fsm.hpp"

#include <stdexcept>

namespace exitroad {

AgentState timer_tick(AgentState s) {
  return {s.dir, static_cast<std::uint8_t>((s.timer + 1) & 3)};
}

const char* algorithm_name(Algorithm a) {
  return a == Algorithm::MultiLane ? "A" : "A2";
}

Constraint constraint_for(Algorithm a) {
  return a == Algorithm::MultiLane ? Constraint::C1 : Constraint::TwoLane;
}

namespace {

bool first_column(PositionClass p) { return has_border(p, Direction::West); }
bool first_row(PositionClass p) { return has_border(p, Direction::North); }
bool last_row(PositionClass p) { return has_border(p, Direction::South); }
bool last_column(PositionClass p) { return has_border(p, Direction::East); }

DirectionSet multilane_allowed(AgentKind k, PositionClass p, int t) {
  DirectionSet s;
  const bool exiting = k == AgentKind::Exiting;

  // South: cycles 0 and 2, around the clock in the exit lane. The first
  // column carries northbound traffic only.
  if (last_column(p)) {
    if (!last_row(p)) s.insert(Direction::South);
  } else if (!first_column(p) && !last_row(p) && (t == 0 || t == 2)) {
    if (!(first_row(p) && exiting)) s.insert(Direction::South);
  }

  // North: cycle 1; exiting agents in the first column get 3 of 4 ticks.
  if (!first_row(p) && !last_column(p)) {
    if (t == 1 || (exiting && first_column(p) && t != 3)) s.insert(Direction::North);
  }

  // East: first row only, every cycle except 1.
  if (first_row(p) && !last_column(p) && t != 1) s.insert(Direction::East);

  // West: cycle 3, plus cycle 1 in the last row. Exiting agents never leave
  // the exit lane; continue agents never leave an interior column sideways.
  if (!first_row(p) && !first_column(p)) {
    const bool tick_ok = t == 3 || (t == 1 && last_row(p));
    const bool kind_ok = exiting ? !last_column(p) : (last_column(p) || last_row(p));
    if (tick_ok && kind_ok) s.insert(Direction::West);
  }
  return s;
}

DirectionSet twolane_allowed(AgentKind k, PositionClass p, int t) {
  DirectionSet s;
  if (first_column(p)) {
    if (t == 0 && !first_row(p)) s.insert(Direction::North);
    if (t == 1 && !last_row(p)) s.insert(Direction::South);
    if (k == AgentKind::Exiting && (t == 0 || t == 1)) s.insert(Direction::East);
  } else {
    if (t == 2 && !last_row(p)) s.insert(Direction::South);
    if (t == 3 && !first_row(p)) s.insert(Direction::North);
    if (k == AgentKind::Continue && (t == 2 || t == 3)) s.insert(Direction::West);
  }
  return s;
}

}  // namespace

DirectionSet allowed_directions(Algorithm v, AgentKind k, PositionClass p, int tick) {
  if (tick < 0 || tick > 3) throw std::out_of_range("tick must be in 0..3");
  return v == Algorithm::MultiLane ? multilane_allowed(k, p, tick) : twolane_allowed(k, p, tick);
}

bool well_formed(const RuleKey& key) {
  for (Direction d : kAllDirections) {
    const bool wall = key.neighborhood.at(d) == Reading::Border;
    if (wall != has_border(key.position, d)) return false;
  }
  return true;
}

RuleTable::RuleTable(Algorithm v) : algorithm_(v), entries_(kSize) {}

std::size_t RuleTable::slot(const RuleKey& key) {
  std::size_t s = key.kind == AgentKind::Exiting ? 0 : 1;
  s = s * 8 + key.state.encode();
  s = s * 9 + static_cast<std::size_t>(class_index(key.position) - 1);
  for (Direction d : kAllDirections) s = s * 3 + static_cast<std::size_t>(key.neighborhood.at(d));
  return s;
}

RuleKey RuleTable::key_at(std::size_t slot) {
  RuleKey key;
  for (int i = 3; i >= 0; --i) {
    key.neighborhood.at(kAllDirections[i]) = static_cast<Reading>(slot % 3);
    slot /= 3;
  }
  key.position = static_cast<PositionClass>(slot % 9 + 1);
  slot /= 9;
  key.state = AgentState::decode(static_cast<std::uint8_t>(slot % 8));
  slot /= 8;
  key.kind = slot == 0 ? AgentKind::Exiting : AgentKind::Continue;
  return key;
}

std::optional<RuleOutput> RuleTable::lookup(const RuleKey& key) const {
  return entries_[slot(key)];
}

void RuleTable::override_entry(const RuleKey& key, RuleOutput out) { entries_[slot(key)] = out; }

void RuleTable::write_csv(std::ostream& os) const {
  os << "variant,kind,state,position,N,E,S,W,action,next_state\n";
  for (std::size_t i = 0; i < kSize; ++i) {
    if (!entries_[i]) continue;
    const RuleKey k = key_at(i);
    const RuleOutput& o = *entries_[i];
    os << algorithm_name(algorithm_) << ',' << (k.kind == AgentKind::Exiting ? "exiting" : "continue")
       << ',' << static_cast<int>(k.state.encode()) << ',' << class_index(k.position);
    for (Direction d : kAllDirections) os << ',' << reading_char(k.neighborhood.at(d));
    os << ',' << (o.action.moves ? direction_name(o.action.dir) : "stay") << ','
       << static_cast<int>(o.next.encode()) << '\n';
  }
}

RuleTable build_rule_table(Algorithm v) {
  RuleTable table(v);
  for (std::size_t i = 0; i < RuleTable::kSize; ++i) {
    const RuleKey key = RuleTable::key_at(i);
    if (!well_formed(key)) continue;
    table.override_entry(key, v == Algorithm::MultiLane
                                  ? multilane_rule(key.kind, key.state, key.position, key.neighborhood)
                                  : twolane_rule(key.kind, key.state, key.position, key.neighborhood));
  }
  return table;
}

std::optional<RuleOutput> step_rule(const RuleTable& table, const RuleKey& key) {
  return table.lookup(key);
}

}  // namespace exitroad
