// Two-column controller (m = 2).
//
// Column 1 is active on ticks 0 (North, East) and 1 (South, East); column 2
// on ticks 2 (South, West) and 3 (North, West). Lane changes are one-way:
// exiting agents East, continue agents West. The direction bit keeps the
// last vertical heading (1 = North) and flips only on the tick of the
// blocked direction.

#include "exitroad/agent_fsm.hpp"

namespace exitroad {

RuleOutput twolane_rule(AgentKind kind, AgentState s, PositionClass pos, const Neighborhood& nb) {
  const int t = s.timer;
  const auto next = [&](bool dir) {
    return AgentState{dir, static_cast<std::uint8_t>((t + 1) & 3)};
  };
  const DirectionSet allowed = allowed_directions(Algorithm::TwoLane, kind, pos, t);
  const auto can = [&](Direction d) { return allowed.contains(d) && nb.at(d) == Reading::Empty; };

  const bool in_first_column = has_border(pos, Direction::West);
  const Direction lateral = in_first_column ? Direction::East : Direction::West;
  if (can(lateral)) return {Action::move(lateral), next(s.dir)};

  const int north_tick = in_first_column ? 0 : 3;
  const int south_tick = in_first_column ? 1 : 2;
  if (s.dir && t == north_tick) {
    if (can(Direction::North)) return {Action::move(Direction::North), next(true)};
    return {Action::stay(), next(false)};
  }
  if (!s.dir && t == south_tick) {
    if (can(Direction::South)) return {Action::move(Direction::South), next(false)};
    return {Action::stay(), next(true)};
  }
  return {Action::stay(), next(s.dir)};
}

}  // namespace exitroad
