// Multi-lane rule table.
//
// The four-tick timer separates the traffic: interior columns step South at
// tick 0 (exiting agents also at tick 2), climbing happens at tick 1 and the
// Rush West at tick 3. The dir bit is set while an agent is climbing back
// North through its column. An exiting agent stuck in the last row climbs
// only after the cell above has been empty since the previous tick 2.
#include "exitroad/agent_fsm.hpp"

namespace exitroad {
namespace {

class Decision {
 public:
  Decision(AgentKind kind, AgentState s, PositionClass pos, const Neighborhood& nb)
      : kind_(kind), s_(s), pos_(pos), nb_(nb) {}
  int tick() const { return s_.timer; }
  bool heading_north() const { return s_.dir; }
  bool empty(Direction d) const { return nb_.at(d) == Reading::Empty; }
  bool can(Direction d) const {
    return empty(d) && allowed_directions(Algorithm::MultiLane, kind_, pos_, tick()).contains(d);
  }
  RuleOutput go(Direction d, bool dir) const { return {Action::move(d), next(dir)}; }
  RuleOutput stay(bool dir) const { return {Action::stay(), next(dir)}; }
  RuleOutput stay() const { return stay(s_.dir); }
 private:
  AgentState next(bool dir) const { return {dir, static_cast<std::uint8_t>((s_.timer + 1) & 3)}; }
  AgentKind kind_;
  AgentState s_;
  PositionClass pos_;
  const Neighborhood& nb_;
};

RuleOutput traverse_column(const Decision& d, AgentKind kind) {
  const bool south_tick = d.tick() == 0 || (kind == AgentKind::Exiting && d.tick() == 2);
  if (d.heading_north()) {
    if (d.tick() != 1) return d.stay();
    if (d.can(Direction::North)) return d.go(Direction::North, true);
    return d.stay(false);
  }
  if (!south_tick) return d.stay();
  if (d.can(Direction::South)) return d.go(Direction::South, false);
  return d.stay(true);
}

RuleOutput exiting_rule(const Decision& d, PositionClass pos) {
  using P = PositionClass;
  switch (pos) {
    case P::SECorner:
      return d.stay();
    case P::NECorner:
    case P::EastEdge:
      if (d.can(Direction::South)) return d.go(Direction::South, false);
      return d.stay();
    case P::NWCorner:
    case P::NorthEdge:
      if (d.can(Direction::East)) return d.go(Direction::East, false);
      return d.stay();
    case P::WestEdge:
    case P::SWCorner:
      if (d.can(Direction::North)) return d.go(Direction::North, false);
      return d.stay();
    case P::SouthEdge:
      if (d.empty(Direction::West)) {
        if (d.can(Direction::West)) return d.go(Direction::West, d.heading_north());
        return d.stay();
      }
      if (d.tick() == 2) return d.stay(d.empty(Direction::North));
      if (d.tick() == 1 && d.heading_north() && d.can(Direction::North)) return d.go(Direction::North, true);
      return d.stay();
    case P::Interior:
      if (d.empty(Direction::West)) {
        if (d.can(Direction::West)) return d.go(Direction::West, d.heading_north());
        return d.stay();
      }
      return traverse_column(d, AgentKind::Exiting);
  }
  return d.stay();
}

RuleOutput continue_rule(const Decision& d, PositionClass pos) {
  using P = PositionClass;
  switch (pos) {
    case P::SECorner:
      if (d.can(Direction::West)) return d.go(Direction::West, true);
      return d.stay();
    case P::NECorner:
      if (d.can(Direction::South)) return d.go(Direction::South, false);
      return d.stay();
    case P::EastEdge:
      if (d.can(Direction::West)) return d.go(Direction::West, false);
      if (d.can(Direction::South)) return d.go(Direction::South, false);
      return d.stay();
    case P::NWCorner:
      if (d.can(Direction::East)) return d.go(Direction::East, false);
      return d.stay();
    case P::NorthEdge:
      if (d.heading_north()) {
        if (d.can(Direction::South)) return d.go(Direction::South, false);
        if (d.tick() == 2) return d.stay(false);
        return d.stay();
      }
      if (d.can(Direction::East)) return d.go(Direction::East, false);
      return d.stay();
    case P::WestEdge:
    case P::SWCorner:
      if (d.can(Direction::North)) return d.go(Direction::North, false);
      return d.stay();
    case P::SouthEdge:
      if (!d.heading_north()) {
        if (d.can(Direction::West)) return d.go(Direction::West, false);
        if (d.tick() == 0 && !d.empty(Direction::West) && d.empty(Direction::North)) return d.stay(true);
        return d.stay();
      }
      if (d.can(Direction::North)) return d.go(Direction::North, true);
      if (d.tick() == 0 && d.empty(Direction::West) && !d.empty(Direction::North)) return d.stay(false);
      return d.stay();
    case P::Interior:
      return traverse_column(d, AgentKind::Continue);
  }
  return d.stay();
}
}  // namespace

RuleOutput multilane_rule(AgentKind kind, AgentState s, PositionClass pos, const Neighborhood& nb) {
  const Decision d(kind, s, pos, nb);
  return kind == AgentKind::Exiting ? exiting_rule(d, pos) : continue_rule(d, pos);
}
}  // namespace exitroad
