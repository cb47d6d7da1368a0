#include "exitroad/grid.hpp"

#include <charconv>
#include <sstream>

namespace exitroad {

int signed_value(Cell c) {
  switch (c) {
    case Cell::Empty:
      return 0;
    case Cell::Exiting:
      return 1;
    case Cell::Continue:
      return -1;
  }
  return 0;
}

char cell_char(Cell c) {
  switch (c) {
    case Cell::Empty:
      return '.';
    case Cell::Exiting:
      return 'E';
    case Cell::Continue:
      return 'C';
  }
  return '?';
}

Coord step(Coord c, Direction d) {
  switch (d) {
    case Direction::North:
      return {c.row - 1, c.col};
    case Direction::East:
      return {c.row, c.col + 1};
    case Direction::South:
      return {c.row + 1, c.col};
    case Direction::West:
      return {c.row, c.col - 1};
  }
  return c;
}

Direction opposite(Direction d) {
  switch (d) {
    case Direction::North:
      return Direction::South;
    case Direction::East:
      return Direction::West;
    case Direction::South:
      return Direction::North;
    case Direction::West:
      return Direction::East;
  }
  return d;
}

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::North:
      return "N";
    case Direction::East:
      return "E";
    case Direction::South:
      return "S";
    case Direction::West:
      return "W";
  }
  return "?";
}

const char* position_name(PositionClass p) {
  switch (p) {
    case PositionClass::NWCorner:
      return "NWCorner";
    case PositionClass::SWCorner:
      return "SWCorner";
    case PositionClass::SECorner:
      return "SECorner";
    case PositionClass::NECorner:
      return "NECorner";
    case PositionClass::SouthEdge:
      return "SouthEdge";
    case PositionClass::WestEdge:
      return "WestEdge";
    case PositionClass::NorthEdge:
      return "NorthEdge";
    case PositionClass::EastEdge:
      return "EastEdge";
    case PositionClass::Interior:
      return "Interior";
  }
  return "?";
}

bool has_border(PositionClass p, Direction d) {
  using P = PositionClass;
  switch (d) {
    case Direction::North:
      return p == P::NWCorner || p == P::NECorner || p == P::NorthEdge;
    case Direction::South:
      return p == P::SWCorner || p == P::SECorner || p == P::SouthEdge;
    case Direction::West:
      return p == P::NWCorner || p == P::SWCorner || p == P::WestEdge;
    case Direction::East:
      return p == P::NECorner || p == P::SECorner || p == P::EastEdge;
  }
  return false;
}

char reading_char(Reading r) {
  switch (r) {
    case Reading::Empty:
      return '0';
    case Reading::Agent:
      return 'A';
    case Reading::Border:
      return '#';
  }
  return '?';
}

Reading Neighborhood::at(Direction d) const {
  switch (d) {
    case Direction::North:
      return north;
    case Direction::East:
      return east;
    case Direction::South:
      return south;
    case Direction::West:
      return west;
  }
  return Reading::Border;
}

Reading& Neighborhood::at(Direction d) {
  switch (d) {
    case Direction::North:
      return north;
    case Direction::East:
      return east;
    case Direction::South:
      return south;
    case Direction::West:
      break;
  }
  return west;
}

Grid::Grid(int rows, int cols, Cell fill) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw GridError("grid dimensions must be positive");
  cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
}

Grid::Grid(int rows, int cols, std::vector<Cell> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (rows < 1 || cols < 1) throw GridError("grid dimensions must be positive");
  if (cells_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw GridError("cell count does not match dimensions");
  }
}

Cell Grid::at(Coord c) const {
  if (!contains(c)) throw std::out_of_range("coordinate outside grid");
  return cells_[static_cast<std::size_t>(index(c))];
}

void Grid::set(Coord c, Cell v) {
  if (!contains(c)) throw std::out_of_range("coordinate outside grid");
  cells_[static_cast<std::size_t>(index(c))] = v;
}

namespace {

int parse_dimension(std::string_view tok, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    throw GridError(std::string("malformed header: bad ") + what);
  }
  if (v < 1) throw GridError(std::string("malformed header: ") + what + " must be positive");
  return v;
}

}  // namespace

Grid parse_grid(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty()) throw GridError("malformed header: empty input");

  std::string_view header = lines[0];
  std::size_t sp = header.find(' ');
  if (sp == std::string_view::npos) throw GridError("malformed header: expected \"n m\"");
  int n = parse_dimension(header.substr(0, sp), "row count");
  int m = parse_dimension(header.substr(sp + 1), "column count");

  if (lines.size() < static_cast<std::size_t>(n) + 1) {
    throw GridError("expected " + std::to_string(n) + " rows, got " +
                    std::to_string(lines.size() - 1));
  }
  for (std::size_t i = static_cast<std::size_t>(n) + 1; i < lines.size(); ++i) {
    if (!lines[i].empty()) throw GridError("trailing content after grid rows");
  }

  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  for (int r = 1; r <= n; ++r) {
    std::string_view row = lines[static_cast<std::size_t>(r)];
    if (row.size() != static_cast<std::size_t>(m)) {
      throw GridError("ragged row " + std::to_string(r) + ": expected " + std::to_string(m) +
                      " cells, got " + std::to_string(row.size()));
    }
    for (char ch : row) {
      switch (ch) {
        case 'E':
          cells.push_back(Cell::Exiting);
          break;
        case 'C':
          cells.push_back(Cell::Continue);
          break;
        case '.':
          cells.push_back(Cell::Empty);
          break;
        default:
          throw GridError(std::string("unknown cell character '") + ch + "' in row " +
                          std::to_string(r));
      }
    }
  }
  return Grid(n, m, std::move(cells));
}

std::string body_text(const Grid& g) {
  std::string out;
  out.reserve(static_cast<std::size_t>(g.size() + g.rows()));
  for (int r = 1; r <= g.rows(); ++r) {
    for (int c = 1; c <= g.cols(); ++c) out.push_back(cell_char(g.at({r, c})));
    out.push_back('\n');
  }
  return out;
}

std::string to_text(const Grid& g) {
  return std::to_string(g.rows()) + " " + std::to_string(g.cols()) + "\n" + body_text(g);
}

PositionClass position_class(int n, int m, Coord c) {
  if (n < 2 || m < 2) throw std::out_of_range("grid must be at least 2x2");
  if (c.row < 1 || c.row > n || c.col < 1 || c.col > m) {
    throw std::out_of_range("coordinate outside grid");
  }
  const bool north = c.row == 1;
  const bool south = c.row == n;
  const bool west = c.col == 1;
  const bool east = c.col == m;
  using P = PositionClass;
  if (north && west) return P::NWCorner;
  if (north && east) return P::NECorner;
  if (south && west) return P::SWCorner;
  if (south && east) return P::SECorner;
  if (north) return P::NorthEdge;
  if (south) return P::SouthEdge;
  if (west) return P::WestEdge;
  if (east) return P::EastEdge;
  return P::Interior;
}

Neighborhood sense(const Grid& g, Coord c) {
  if (!g.contains(c)) throw std::out_of_range("coordinate outside grid");
  Neighborhood nb;
  for (Direction d : kAllDirections) {
    Coord o = step(c, d);
    Reading r = Reading::Border;
    if (g.contains(o)) r = g.at(o) == Cell::Empty ? Reading::Empty : Reading::Agent;
    nb.at(d) = r;
  }
  return nb;
}

Counts counts(const Grid& g) {
  Counts k;
  for (Cell c : g.cells()) {
    switch (c) {
      case Cell::Empty:
        ++k.empty;
        break;
      case Cell::Exiting:
        ++k.exiting;
        break;
      case Cell::Continue:
        ++k.cont;
        break;
    }
  }
  return k;
}

std::vector<std::string> validate(const Grid& g, Constraint v) {
  std::vector<std::string> out;
  const Counts k = counts(g);
  const int n = g.rows();
  if (k.empty == 0) out.emplace_back("no empty cell");
  switch (v) {
    case Constraint::C0:
      if (k.exiting > n) {
        out.push_back("C0: " + std::to_string(k.exiting) + " exiting agents exceed " +
                      std::to_string(n) + " rows");
      }
      break;
    case Constraint::C1:
      if (k.exiting >= n) {
        out.push_back("C1: " + std::to_string(k.exiting) + " exiting agents not below " +
                      std::to_string(n) + " rows");
      }
      break;
    case Constraint::TwoLane:
      if (g.cols() != 2) out.emplace_back("two-lane grids need exactly 2 columns");
      break;
  }
  return out;
}

bool is_target(const Grid& g, Constraint v) {
  const int n = g.rows();
  const int m = g.cols();
  if (v == Constraint::TwoLane) {
    if (m != 2) throw GridError("two-lane target requires m = 2");
    const bool saturated = counts(g).exiting > n;
    for (int r = 1; r <= n; ++r) {
      if (!saturated && g.at({r, 1}) == Cell::Exiting) return false;
      if (saturated && g.at({r, 2}) == Cell::Continue) return false;
    }
    return true;
  }
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c < m; ++c) {
      if (g.at({r, c}) == Cell::Exiting) return false;
    }
  }
  return true;
}

}  // namespace exitroad
