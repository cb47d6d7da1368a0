#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "exitroad/grid.hpp"

namespace exitroad {

// 3-bit agent memory: direction bit (MSB) and a modulo-4 timer.
struct AgentState {
  bool dir = false;
  std::uint8_t timer = 0;

  std::uint8_t encode() const { return static_cast<std::uint8_t>((dir ? 4 : 0) | (timer & 3)); }
  static AgentState decode(std::uint8_t bits) {
    return {(bits & 4) != 0, static_cast<std::uint8_t>(bits & 3)};
  }
  friend bool operator==(const AgentState&, const AgentState&) = default;
};

AgentState timer_tick(AgentState s);

enum class AgentKind : std::uint8_t { Exiting, Continue };

inline AgentKind kind_of(Cell c) {
  return c == Cell::Exiting ? AgentKind::Exiting : AgentKind::Continue;
}

enum class Algorithm : std::uint8_t { MultiLane, TwoLane };

const char* algorithm_name(Algorithm a);
Constraint constraint_for(Algorithm a);

struct Action {
  bool moves = false;
  Direction dir = Direction::North;

  static Action stay() { return {}; }
  static Action move(Direction d) { return {true, d}; }
  friend bool operator==(const Action&, const Action&) = default;
};

// Bitmask over Direction.
class DirectionSet {
 public:
  DirectionSet() = default;
  DirectionSet(std::initializer_list<Direction> ds) {
    for (Direction d : ds) insert(d);
  }
  void insert(Direction d) { bits_ |= bit(d); }
  bool contains(Direction d) const { return (bits_ & bit(d)) != 0; }
  bool empty() const { return bits_ == 0; }
  friend bool operator==(const DirectionSet&, const DirectionSet&) = default;

 private:
  static std::uint8_t bit(Direction d) { return static_cast<std::uint8_t>(1u << static_cast<int>(d)); }
  std::uint8_t bits_ = 0;
};

// Clock-split movement permissions at a given tick (timer value 0..3).
DirectionSet allowed_directions(Algorithm v, AgentKind k, PositionClass p, int tick);

struct RuleKey {
  AgentKind kind = AgentKind::Continue;
  AgentState state;
  PositionClass position = PositionClass::Interior;
  Neighborhood neighborhood;
};

struct RuleOutput {
  Action action;
  AgentState next;
  friend bool operator==(const RuleOutput&, const RuleOutput&) = default;
};

// Whether the neighborhood's border readings agree with the position class.
bool well_formed(const RuleKey& key);

// Immutable lookup table (kind, state, position, neighborhood) -> output.
// Keys whose border pattern contradicts the position class have no entry.
class RuleTable {
 public:
  static constexpr std::size_t kSize = 2 * 8 * 9 * 81;

  explicit RuleTable(Algorithm v);

  Algorithm algorithm() const { return algorithm_; }
  std::optional<RuleOutput> lookup(const RuleKey& key) const;

  // Overwrites one entry. Used to inject faults when testing the verifier.
  void override_entry(const RuleKey& key, RuleOutput out);

  static std::size_t slot(const RuleKey& key);
  static RuleKey key_at(std::size_t slot);

  // CSV dump: variant,kind,state,position,N,E,S,W,action,next_state
  void write_csv(std::ostream& os) const;

 private:
  Algorithm algorithm_;
  std::vector<std::optional<RuleOutput>> entries_;
};

RuleTable build_rule_table(Algorithm v);

// nullopt signals an input outside the table (UndefinedInput).
std::optional<RuleOutput> step_rule(const RuleTable& table, const RuleKey& key);

// The controllers the tables are built from.
RuleOutput multilane_rule(AgentKind kind, AgentState s, PositionClass pos, const Neighborhood& nb);
RuleOutput twolane_rule(AgentKind kind, AgentState s, PositionClass pos, const Neighborhood& nb);

}  // namespace exitroad
