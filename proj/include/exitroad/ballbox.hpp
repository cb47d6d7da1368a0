#pragma once

#include <map>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace exitroad {

class BallBoxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Boxes 1..M plus the sink 0. occupancy[k] is the ball count of box k.
struct BallBoxState {
  int M = 0;
  std::vector<int> occupancy;  // size M + 1

  explicit BallBoxState(int boxes = 0);
  BallBoxState(int boxes, const std::map<int, int>& counts);

  int balls() const;
  bool done() const;  // everything in the sink

  // Labels 1..N, lowest in the sink, ascending with box index.
  // labels()[k] lists the labels held by box k.
  std::vector<std::vector<int>> labels() const;

  bool operator==(const BallBoxState&) const = default;
};

// Each non-empty box 1..M passes one ball down, simultaneously.
BallBoxState bmp1_step(const BallBoxState& s);
int bmp1_completion(BallBoxState s);

// Coupled slow protocol: ball L leaves box k at the tick it would leave box k
// if every ball had started in box M and box M released the lowest label
// first. Labels must be consistent with box order.
int bmp2_completion(const BallBoxState& s);
int bmp2_completion(const BallBoxState& s, const std::vector<std::vector<int>>& labels);

// "k:count" pairs separated by commas or spaces, e.g. "1:2,3:4,7:3".
// M defaults to the largest box mentioned.
BallBoxState parse_occupancy(std::string_view text, int M = -1);

}  // namespace exitroad
