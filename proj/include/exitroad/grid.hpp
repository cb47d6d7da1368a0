#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exitroad {

// Cell contents. Numeric values follow the usual {0, +1, -1} encoding.
enum class Cell : std::uint8_t { Empty, Exiting, Continue };

int signed_value(Cell c);
char cell_char(Cell c);

// Row 1 is the front (North) row, column m is the exit lane (East).
struct Coord {
  int row = 1;
  int col = 1;
  friend bool operator==(const Coord&, const Coord&) = default;
};

enum class Direction : std::uint8_t { North, East, South, West };

inline constexpr Direction kAllDirections[] = {Direction::North, Direction::East,
                                               Direction::South, Direction::West};

Coord step(Coord c, Direction d);
Direction opposite(Direction d);
const char* direction_name(Direction d);

// Nine sensor-border patterns. Enumerator values are the position indices
// used throughout the rule tables.
enum class PositionClass : std::uint8_t {
  NWCorner = 1,
  SWCorner = 2,
  SECorner = 3,
  NECorner = 4,
  SouthEdge = 5,
  WestEdge = 6,
  NorthEdge = 7,
  EastEdge = 8,
  Interior = 9,
};

inline constexpr PositionClass kAllPositions[] = {
    PositionClass::NWCorner,  PositionClass::SWCorner,  PositionClass::SECorner,
    PositionClass::NECorner,  PositionClass::SouthEdge, PositionClass::WestEdge,
    PositionClass::NorthEdge, PositionClass::EastEdge,  PositionClass::Interior};

inline int class_index(PositionClass p) { return static_cast<int>(p); }
const char* position_name(PositionClass p);

// Whether the sensor facing `d` reads a wall for this class.
bool has_border(PositionClass p, Direction d);

enum class Reading : std::uint8_t { Empty, Agent, Border };

char reading_char(Reading r);

struct Neighborhood {
  Reading north = Reading::Border;
  Reading east = Reading::Border;
  Reading south = Reading::Border;
  Reading west = Reading::Border;

  Reading at(Direction d) const;
  Reading& at(Direction d);
  friend bool operator==(const Neighborhood&, const Neighborhood&) = default;
};

enum class Constraint : std::uint8_t { C0, C1, TwoLane };

struct Counts {
  int empty = 0;
  int exiting = 0;
  int cont = 0;
};

class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Row-major n x m board.
class Grid {
 public:
  Grid(int rows, int cols, Cell fill = Cell::Empty);
  Grid(int rows, int cols, std::vector<Cell> cells);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_ * cols_; }

  bool contains(Coord c) const {
    return c.row >= 1 && c.row <= rows_ && c.col >= 1 && c.col <= cols_;
  }
  int index(Coord c) const { return (c.row - 1) * cols_ + (c.col - 1); }
  Coord coord(int index) const { return {index / cols_ + 1, index % cols_ + 1}; }

  Cell at(Coord c) const;
  void set(Coord c, Cell v);
  Cell operator[](int index) const { return cells_[static_cast<std::size_t>(index)]; }
  Cell& operator[](int index) { return cells_[static_cast<std::size_t>(index)]; }

  const std::vector<Cell>& cells() const { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<Cell> cells_;
};

// Grid text: "n m" header then n rows of m chars from {E, C, .}.
Grid parse_grid(std::string_view text);
std::string to_text(const Grid& g);
// Rows only, without the "n m" header.
std::string body_text(const Grid& g);

PositionClass position_class(int n, int m, Coord c);
Neighborhood sense(const Grid& g, Coord c);
Counts counts(const Grid& g);

// Empty result means the configuration is legal for the constraint.
std::vector<std::string> validate(const Grid& g, Constraint v);

bool is_target(const Grid& g, Constraint v);

}  // namespace exitroad
