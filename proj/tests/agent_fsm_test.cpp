#include <doctest.h>

#include <sstream>

#include "exitroad/agent_fsm.hpp"

using namespace exitroad;

namespace {

Neighborhood open_neighborhood(PositionClass p, Reading fill) {
  Neighborhood nb;
  for (Direction d : kAllDirections) nb.at(d) = has_border(p, d) ? Reading::Border : fill;
  return nb;
}

// Calls f(key, output) for every defined entry.
template <class F>
void for_each_entry(const RuleTable& t, F f) {
  for (std::size_t i = 0; i < RuleTable::kSize; ++i) {
    const RuleKey k = RuleTable::key_at(i);
    if (auto out = t.lookup(k)) f(k, *out);
  }
}

bool in_first_row(PositionClass p) { return has_border(p, Direction::North); }

}  // namespace

TEST_CASE("timer_tick wraps modulo 4") {
  CHECK(timer_tick({false, 3}) == AgentState{false, 0});
  CHECK(timer_tick({true, 1}) == AgentState{true, 2});
  AgentState s{true, 2};
  for (int i = 0; i < 4; ++i) s = timer_tick(s);
  CHECK(s == AgentState{true, 2});
}

TEST_CASE("state encoding") {
  for (std::uint8_t b = 0; b < 8; ++b) CHECK(AgentState::decode(b).encode() == b);
  CHECK(AgentState{true, 2}.encode() == 6);
}

TEST_CASE("allowed directions, multi-lane") {
  const auto A = Algorithm::MultiLane;
  CHECK(allowed_directions(A, AgentKind::Continue, PositionClass::Interior, 1) ==
        DirectionSet{Direction::North});
  for (int t = 0; t < 4; ++t) {
    CHECK(allowed_directions(A, AgentKind::Exiting, PositionClass::EastEdge, t).contains(Direction::South));
    CHECK(allowed_directions(A, AgentKind::Continue, PositionClass::NECorner, t).contains(Direction::South));
  }
  CHECK(allowed_directions(A, AgentKind::Continue, PositionClass::Interior, 0) ==
        DirectionSet{Direction::South});
  CHECK(allowed_directions(A, AgentKind::Continue, PositionClass::Interior, 3).empty());
  CHECK(allowed_directions(A, AgentKind::Exiting, PositionClass::Interior, 3) ==
        DirectionSet{Direction::West});
  // East in the first row on every tick but 1.
  CHECK(allowed_directions(A, AgentKind::Continue, PositionClass::NorthEdge, 0).contains(Direction::East));
  CHECK_FALSE(allowed_directions(A, AgentKind::Continue, PositionClass::NorthEdge, 1).contains(Direction::East));
  // Exiting agents climb the first column on three ticks out of four.
  int north_ticks = 0;
  for (int t = 0; t < 4; ++t)
    north_ticks += allowed_directions(A, AgentKind::Exiting, PositionClass::WestEdge, t).contains(Direction::North);
  CHECK(north_ticks == 3);
  CHECK_THROWS(allowed_directions(A, AgentKind::Exiting, PositionClass::WestEdge, 4));
}

TEST_CASE("allowed directions, two-lane") {
  const auto A2 = Algorithm::TwoLane;
  for (PositionClass p : kAllPositions) {
    CHECK_FALSE(allowed_directions(A2, AgentKind::Exiting, p, 2).contains(Direction::East));
    CHECK_FALSE(allowed_directions(A2, AgentKind::Exiting, p, 3).contains(Direction::East));
    CHECK_FALSE(allowed_directions(A2, AgentKind::Continue, p, 0).contains(Direction::West));
  }
  CHECK(allowed_directions(A2, AgentKind::Exiting, PositionClass::WestEdge, 0).contains(Direction::East));
  CHECK(allowed_directions(A2, AgentKind::Continue, PositionClass::EastEdge, 2).contains(Direction::West));
}

TEST_CASE("step_rule examples") {
  const RuleTable t = build_rule_table(Algorithm::MultiLane);

  // Northbound continue agent below an empty cell leaves at tick 1.
  Neighborhood nb = open_neighborhood(PositionClass::Interior, Reading::Agent);
  nb.north = Reading::Empty;
  auto out = step_rule(t, {AgentKind::Continue, {true, 1}, PositionClass::Interior, nb});
  REQUIRE(out);
  CHECK(out->action == Action::move(Direction::North));
  CHECK(out->next == AgentState{true, 2});

  // After entering the first row from below it drops straight back.
  Neighborhood top = open_neighborhood(PositionClass::NorthEdge, Reading::Agent);
  top.south = Reading::Empty;
  out = step_rule(t, {AgentKind::Continue, {true, 2}, PositionClass::NorthEdge, top});
  REQUIRE(out);
  CHECK(out->action == Action::move(Direction::South));

  // Exiting agents never leave the exit lane.
  for (std::uint8_t b = 0; b < 8; ++b) {
    Neighborhood lane = open_neighborhood(PositionClass::EastEdge, Reading::Agent);
    lane.west = Reading::Empty;
    out = step_rule(t, {AgentKind::Exiting, AgentState::decode(b), PositionClass::EastEdge, lane});
    REQUIRE(out);
    CHECK(out->action != Action::move(Direction::West));
  }

  // Keys whose walls contradict the position have no entry.
  CHECK_FALSE(step_rule(t, {AgentKind::Exiting, {}, PositionClass::Interior,
                            open_neighborhood(PositionClass::NWCorner, Reading::Agent)}));
}

TEST_CASE("rule tables: structural scan") {
  for (Algorithm v : {Algorithm::MultiLane, Algorithm::TwoLane}) {
    const RuleTable t = build_rule_table(v);
    int defined = 0;
    for_each_entry(t, [&](const RuleKey& k, const RuleOutput& o) {
      ++defined;
      CHECK(well_formed(k));
      CHECK(o.next.timer == (k.state.timer + 1) % 4);
      if (!o.action.moves) return;
      const Direction d = o.action.dir;
      CHECK(k.neighborhood.at(d) == Reading::Empty);
      CHECK(allowed_directions(v, k.kind, k.position, k.state.timer).contains(d));
      if (d == Direction::East && v == Algorithm::MultiLane) CHECK(in_first_row(k.position));
      if (has_border(k.position, Direction::West) && !in_first_row(k.position) && v == Algorithm::MultiLane) {
        CHECK(d == Direction::North);
      }
      if (k.kind == AgentKind::Exiting && has_border(k.position, Direction::East)) {
        CHECK(d != Direction::West);
      }
      if (v == Algorithm::TwoLane) {
        if (d == Direction::East) CHECK(k.kind == AgentKind::Exiting);
        if (d == Direction::West) CHECK(k.kind == AgentKind::Continue);
      }
    });
    // Every well-formed key is defined.
    int well = 0;
    for (std::size_t i = 0; i < RuleTable::kSize; ++i) well += well_formed(RuleTable::key_at(i));
    CHECK(defined == well);
  }
}

TEST_CASE("rule tables are deterministic") {
  const RuleTable a = build_rule_table(Algorithm::MultiLane);
  const RuleTable b = build_rule_table(Algorithm::MultiLane);
  std::ostringstream x, y;
  a.write_csv(x);
  b.write_csv(y);
  CHECK(x.str() == y.str());
  CHECK(x.str().rfind("variant,kind,state,position,N,E,S,W,action,next_state\n", 0) == 0);
}

TEST_CASE("Rush West: exiting agents in inner columns take an empty West cell by tick 3") {
  const RuleTable t = build_rule_table(Algorithm::MultiLane);
  for (PositionClass p : {PositionClass::Interior, PositionClass::SouthEdge}) {
    for (int fill = 0; fill < 27; ++fill) {
      Neighborhood nb = open_neighborhood(p, Reading::Agent);
      nb.west = Reading::Empty;
      int f = fill;
      for (Direction d : {Direction::North, Direction::East, Direction::South}) {
        if (nb.at(d) != Reading::Border) nb.at(d) = f % 2 ? Reading::Empty : Reading::Agent;
        f /= 3;
      }
      for (std::uint8_t b = 0; b < 8; ++b) {
        // Hold the neighbourhood fixed and step the agent through the rest of the cycle.
        AgentState s = AgentState::decode(b);
        bool moved_west = false;
        while (true) {
          const auto out = step_rule(t, {AgentKind::Exiting, s, p, nb});
          REQUIRE(out);
          if (out->action.moves) {
            CHECK(out->action.dir == Direction::West);
            moved_west = out->action.dir == Direction::West;
            break;
          }
          if (s.timer == 3) break;
          s = out->next;
        }
        CHECK(moved_west);
      }
    }
  }
}

TEST_CASE("Leave the Exit Lane: continue agents in column m step West") {
  const RuleTable t = build_rule_table(Algorithm::MultiLane);
  for (PositionClass p : {PositionClass::EastEdge, PositionClass::SECorner}) {
    Neighborhood nb = open_neighborhood(p, Reading::Agent);
    nb.west = Reading::Empty;
    for (std::uint8_t b = 0; b < 8; ++b) {
      AgentState s = AgentState::decode(b);
      bool left = false;
      for (int i = 0; i < 8 && !left; ++i) {
        const auto out = step_rule(t, {AgentKind::Continue, s, p, nb});
        REQUIRE(out);
        left = out->action == Action::move(Direction::West);
        s = out->next;
      }
      CHECK(left);
    }
  }
}

TEST_CASE("exiting agents stay in the first row once there") {
  const RuleTable t = build_rule_table(Algorithm::MultiLane);
  Neighborhood nb = open_neighborhood(PositionClass::NorthEdge, Reading::Agent);
  nb.south = Reading::Empty;
  for (std::uint8_t b = 0; b < 8; ++b) {
    const auto out = step_rule(t, {AgentKind::Exiting, AgentState::decode(b), PositionClass::NorthEdge, nb});
    REQUIRE(out);
    CHECK(out->action != Action::move(Direction::South));
  }
}
