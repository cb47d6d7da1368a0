#include "exitroad/ballbox.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace exitroad {

BallBoxState::BallBoxState(int boxes) : M(boxes) {
  if (boxes < 0) throw BallBoxError("box count must be non-negative");
  occupancy.assign(static_cast<std::size_t>(boxes) + 1, 0);
}

BallBoxState::BallBoxState(int boxes, const std::map<int, int>& counts) : BallBoxState(boxes) {
  for (auto [k, c] : counts) {
    if (k < 0 || k > boxes) throw BallBoxError("box " + std::to_string(k) + " out of range");
    if (c < 0) throw BallBoxError("negative ball count");
    occupancy[static_cast<std::size_t>(k)] += c;
  }
}

int BallBoxState::balls() const {
  int total = 0;
  for (int c : occupancy) total += c;
  return total;
}

bool BallBoxState::done() const {
  return std::all_of(occupancy.begin() + 1, occupancy.end(), [](int c) { return c == 0; });
}

std::vector<std::vector<int>> BallBoxState::labels() const {
  std::vector<std::vector<int>> out(occupancy.size());
  int next = 1;
  for (std::size_t k = 0; k < occupancy.size(); ++k)
    for (int i = 0; i < occupancy[k]; ++i) out[k].push_back(next++);
  return out;
}

BallBoxState bmp1_step(const BallBoxState& s) {
  BallBoxState out = s;
  for (std::size_t k = 1; k < s.occupancy.size(); ++k) {
    if (s.occupancy[k] == 0) continue;
    --out.occupancy[k];
    ++out.occupancy[k - 1];
  }
  return out;
}

int bmp1_completion(BallBoxState s) {
  int t = 0;
  while (!s.done()) {
    s = bmp1_step(s);
    ++t;
  }
  return t;
}

int bmp2_completion(const BallBoxState& s) { return bmp2_completion(s, s.labels()); }

int bmp2_completion(const BallBoxState& s, const std::vector<std::vector<int>>& labels) {
  if (labels.size() != s.occupancy.size()) throw BallBoxError("labels do not match box count");
  const int N = s.balls();
  std::vector<int> box(static_cast<std::size_t>(N) + 1, -1);
  int below_max = 0;  // largest label seen in lower boxes
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (static_cast<int>(labels[k].size()) != s.occupancy[k])
      throw BallBoxError("label count differs from occupancy in box " + std::to_string(k));
    int box_min = N + 1;
    int box_max = 0;
    for (int L : labels[k]) {
      if (L < 1 || L > N || box[static_cast<std::size_t>(L)] != -1)
        throw BallBoxError("labels must be a permutation of 1..N");
      box[static_cast<std::size_t>(L)] = static_cast<int>(k);
      box_min = std::min(box_min, L);
      box_max = std::max(box_max, L);
    }
    if (!labels[k].empty()) {
      if (box_min < below_max) throw BallBoxError("labels inconsistent with box ordering");
      below_max = box_max;
    }
  }

  // In the all-in-M run, ball L leaves box M at tick L and then travels
  // alone, so it leaves box k at tick L + M - k.
  int t = 0;
  int remaining = N - s.occupancy[0];
  while (remaining > 0) {
    ++t;
    for (int L = 1; L <= N; ++L) {
      int& k = box[static_cast<std::size_t>(L)];
      if (k > 0 && t == L + s.M - k) {
        --k;
        if (k == 0) --remaining;
      }
    }
  }
  return t;
}

BallBoxState parse_occupancy(std::string_view text, int M) {
  std::map<int, int> counts;
  int top = 0;
  std::size_t i = 0;
  const auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\n'; };
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    const std::string_view tok = text.substr(i, j - i);
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos) throw BallBoxError("expected k:count, got '" + std::string(tok) + "'");
    int k = 0;
    int c = 0;
    const auto parse = [&](std::string_view part, int& v) {
      auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
      if (ec != std::errc() || p != part.data() + part.size())
        throw BallBoxError("bad number in '" + std::string(tok) + "'");
    };
    parse(tok.substr(0, colon), k);
    parse(tok.substr(colon + 1), c);
    if (k < 0 || c < 0) throw BallBoxError("negative value in '" + std::string(tok) + "'");
    counts[k] += c;
    top = std::max(top, k);
    i = j;
  }
  if (M < 0) M = top;
  return BallBoxState(M, counts);
}

}  // namespace exitroad
