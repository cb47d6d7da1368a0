#include <doctest.h>

#include <random>

#include "exitroad/grid.hpp"

using namespace exitroad;

TEST_CASE("parse_grid reads cells row by row") {
  const Grid g = parse_grid("2 3\nE.C\nCCC\n");
  CHECK(g.rows() == 2);
  CHECK(g.cols() == 3);
  CHECK(g.at({1, 1}) == Cell::Exiting);
  CHECK(g.at({1, 2}) == Cell::Empty);
  CHECK(g.at({1, 3}) == Cell::Continue);
  CHECK(g.at({2, 2}) == Cell::Continue);
}

TEST_CASE("parse_grid rejects malformed text") {
  CHECK_THROWS_AS(parse_grid("2 3\nE.C\nCC\n"), GridError);
  CHECK_THROWS_AS(parse_grid("2 3\nE.C\nCCX\n"), GridError);
  CHECK_THROWS_AS(parse_grid("2\nE.C\nCCC\n"), GridError);
  CHECK_THROWS_AS(parse_grid("2 3\nE.C\n"), GridError);
  CHECK_THROWS_AS(parse_grid(""), GridError);
}

TEST_CASE("grid text round-trips") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const int m = 2 + static_cast<int>(rng() % 6);
    std::string text = std::to_string(n) + " " + std::to_string(m) + "\n";
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < m; ++c) text += ".EC"[rng() % 3];
      text += '\n';
    }
    CHECK(to_text(parse_grid(text)) == text);
  }
}

TEST_CASE("position classes") {
  CHECK(position_class(5, 4, {3, 2}) == PositionClass::Interior);
  CHECK(class_index(position_class(5, 4, {3, 2})) == 9);
  CHECK(class_index(position_class(5, 4, {1, 4})) == 4);
  CHECK(class_index(position_class(5, 4, {3, 1})) == 6);
  CHECK(position_class(5, 4, {1, 1}) == PositionClass::NWCorner);
  CHECK(position_class(5, 4, {5, 1}) == PositionClass::SWCorner);
  CHECK(position_class(5, 4, {5, 4}) == PositionClass::SECorner);
  CHECK(position_class(5, 4, {5, 2}) == PositionClass::SouthEdge);
  CHECK(position_class(5, 4, {1, 2}) == PositionClass::NorthEdge);
  CHECK(position_class(5, 4, {2, 4}) == PositionClass::EastEdge);
  CHECK_THROWS(position_class(5, 4, {6, 1}));
  CHECK_THROWS(position_class(5, 4, {0, 1}));
}

TEST_CASE("position classes partition every grid") {
  for (int n = 2; n <= 10; ++n) {
    for (int m = 2; m <= 10; ++m) {
      int interior = 0;
      int corners = 0;
      for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= m; ++c) {
          const PositionClass p = position_class(n, m, {r, c});
          // Border pattern straight from the geometry.
          CHECK(has_border(p, Direction::North) == (r == 1));
          CHECK(has_border(p, Direction::South) == (r == n));
          CHECK(has_border(p, Direction::West) == (c == 1));
          CHECK(has_border(p, Direction::East) == (c == m));
          if (p == PositionClass::Interior) ++interior;
          if (class_index(p) <= 4) ++corners;
        }
      }
      CHECK(interior == (n - 2) * (m - 2));
      CHECK(corners == 4);
    }
  }
}

TEST_CASE("sense reads neighbours and walls") {
  const Grid g = parse_grid("2 3\nE.C\nCCC\n");
  const Neighborhood corner = sense(g, {1, 1});
  CHECK(corner.north == Reading::Border);
  CHECK(corner.west == Reading::Border);
  const Neighborhood nb = sense(g, {1, 2});
  CHECK(nb.north == Reading::Border);
  CHECK(nb.east == Reading::Agent);
  CHECK(nb.south == Reading::Agent);
  CHECK(nb.west == Reading::Agent);
  CHECK(sense(g, {2, 2}).north == Reading::Empty);

  const Grid full(3, 3, Cell::Continue);
  const Neighborhood inner = sense(full, {2, 2});
  for (Direction d : kAllDirections) CHECK(inner.at(d) == Reading::Agent);
}

TEST_CASE("sense agrees with position_class everywhere") {
  const Grid g(4, 5, Cell::Continue);
  for (int r = 1; r <= 4; ++r) {
    for (int c = 1; c <= 5; ++c) {
      const Neighborhood nb = sense(g, {r, c});
      const PositionClass p = position_class(4, 5, {r, c});
      for (Direction d : kAllDirections) CHECK((nb.at(d) == Reading::Border) == has_border(p, d));
    }
  }
}

TEST_CASE("counts") {
  const Counts empty = counts(Grid(2, 3));
  CHECK(empty.empty == 6);
  CHECK(empty.exiting == 0);
  CHECK(empty.cont == 0);
  const Counts k = counts(parse_grid("2 3\nE.C\nCCC\n"));
  CHECK(k.empty == 1);
  CHECK(k.exiting == 1);
  CHECK(k.cont == 4);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const int m = 2 + static_cast<int>(rng() % 8);
    std::vector<Cell> cells(static_cast<std::size_t>(n * m));
    for (Cell& c : cells) c = static_cast<Cell>(rng() % 3);
    const Counts s = counts(Grid(n, m, cells));
    CHECK(s.empty + s.exiting + s.cont == n * m);
  }
}

TEST_CASE("validate") {
  CHECK(validate(parse_grid("3 4\nE.CC\nCECC\nCCCC\n"), Constraint::C1).empty());
  const auto none_empty = validate(Grid(3, 4, Cell::Continue), Constraint::C1);
  REQUIRE(none_empty.size() == 1);
  CHECK(none_empty[0] == "no empty cell");
  const Grid three = parse_grid("3 4\nE.CC\nCECC\nCECC\n");
  CHECK_FALSE(validate(three, Constraint::C1).empty());
  CHECK(validate(three, Constraint::C0).empty());
  CHECK_FALSE(validate(three, Constraint::TwoLane).empty());
  CHECK(validate(parse_grid("2 2\nEE\nE.\n"), Constraint::TwoLane).empty());
}

TEST_CASE("is_target") {
  CHECK(is_target(parse_grid("3 3\nC.E\nCCE\nCCC\n"), Constraint::C1));
  CHECK_FALSE(is_target(parse_grid("3 3\nE.C\nCCC\nCCC\n"), Constraint::C1));
  // More exiting agents than rows: the second column must hold no continue agent.
  CHECK(is_target(parse_grid("2 2\nEE\n.E\n"), Constraint::TwoLane));
  CHECK_FALSE(is_target(parse_grid("2 2\nEE\nEC\n"), Constraint::TwoLane));
  CHECK(is_target(parse_grid("2 2\n.E\nCC\n"), Constraint::TwoLane));
  CHECK_FALSE(is_target(parse_grid("2 2\nE.\nCC\n"), Constraint::TwoLane));
}
