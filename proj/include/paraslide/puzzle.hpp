#ifndef PARASLIDE_PUZZLE_HPP
#define PARASLIDE_PUZZLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "paraslide/clause.hpp"

namespace paraslide {

// width x width tile permutation; cell value 0 is the hole.
struct Board {
  int width = 0;
  std::vector<std::uint8_t> cells;

  friend bool operator==(const Board&, const Board&) = default;
};

enum class Direction { Left, Right, Up, Down };

// A hole move: the hole at from_index swaps with the tile at to_index.
struct Move {
  Direction dir;
  int from_index = 0;
  int to_index = 0;

  friend bool operator==(const Move&, const Move&) = default;
};

class BoardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DecodeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Board goal_board(int width);
// Throws BoardError unless cells is a permutation of {0..width^2-1}.
void validate_board(const Board& b);

// STATE literal over the end-separated flat list encoding.
Literal encode_board(const Board& b);
Clause encode_state_clause(const Board& b, Sign sign = Sign::Positive);
// Inverse of encode_board; throws DecodeError on malformed terms.
Board decode_board(const Literal& lit);

// EQUAL(l(hole,l(n(x),y)), l(n(x),l(hole,y))) — width-independent.
Clause horizontal_move_eq(int width);
// Hole swaps with the tile `width + 1` list slots ahead (the row stride
// of the end-separated flat list).
Clause vertical_move_eq(int width);

int inversions(const Board& b);
bool is_solvable(const Board& b);

// SplitMix64; the suite generator's only randomness source.
struct SplitMix64 {
  std::uint64_t state = 0;
  std::uint64_t next();
};

// Fisher-Yates over the first width^2-1 cells, hole fixed last,
// reshuffled until solvable. Deterministic per seed.
Board random_board(std::uint64_t seed, int width);

std::vector<Move> legal_moves(const Board& b);
// Throws BoardError when m is not legal for b.
Board apply_move(const Board& b, const Move& m);

// Packed cell key, 4 bits per cell; width <= 3 only.
std::uint64_t board_key(const Board& b);
// All states reachable from b by legal moves (width <= 3).
std::unordered_set<std::uint64_t> bfs_reachable_keys(const Board& b);
// Minimal move count to the goal, absent when unreachable (width <= 3).
std::optional<int> bfs_distance(const Board& b);

// Flat text form "3:1,3,5,4,6,8,7,2,0"; 0 is the hole.
std::string to_flat_text(const Board& b);
Board parse_flat_board(std::string_view text);

} // namespace paraslide

#endif
