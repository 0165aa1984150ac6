#include "paraslide/puzzle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace paraslide {

namespace {

SymbolId tile_const(int k) {
  return symbols::intern(std::to_string(k), SymbolKind::Fixed, 0);
}

Term tile_term(int k) {
  return Term::make_app(symbols::tile_fn(), {Term::make_const(tile_const(k))});
}

SymbolId var_sym(std::string_view name) {
  return symbols::intern(name, SymbolKind::Variable, 0);
}

} // namespace

Board goal_board(int width) {
  Board b;
  b.width = width;
  int n = width * width;
  b.cells.resize(n);
  for (int i = 0; i < n - 1; ++i) b.cells[i] = static_cast<std::uint8_t>(i + 1);
  b.cells[n - 1] = 0;
  return b;
}

void validate_board(const Board& b) {
  if (b.width < 2) throw BoardError("board width must be at least 2");
  int n = b.width * b.width;
  if (static_cast<int>(b.cells.size()) != n)
    throw BoardError("board has " + std::to_string(b.cells.size()) +
                     " cells, expected " + std::to_string(n));
  std::vector<bool> seen(n, false);
  for (std::uint8_t c : b.cells) {
    if (c >= n) throw BoardError("cell value " + std::to_string(c) + " out of range");
    if (seen[c]) throw BoardError("duplicate cell value " + std::to_string(c));
    seen[c] = true;
  }
}

Literal encode_board(const Board& b) {
  validate_board(b);
  int w = b.width;
  // Flat element list: each row's cells followed by an end separator;
  // the final end is the list terminator itself.
  std::vector<Term> elems;
  elems.reserve(b.cells.size() + w - 1);
  for (int r = 0; r < w; ++r) {
    for (int c = 0; c < w; ++c) {
      std::uint8_t v = b.cells[r * w + c];
      elems.push_back(v == 0 ? Term::make_const(symbols::hole_const()) : tile_term(v));
    }
    if (r < w - 1) elems.push_back(Term::make_const(symbols::end_const()));
  }
  Term t = Term::make_const(symbols::end_const());
  for (auto it = elems.rbegin(); it != elems.rend(); ++it)
    t = Term::make_app(symbols::list_fn(), {*it, t});
  return make_literal(Sign::Positive, symbols::state_pred(), {t});
}

Clause encode_state_clause(const Board& b, Sign sign) {
  Literal lit = encode_board(b);
  lit.sign = sign;
  return Clause{-1, {std::move(lit)}, InputOrigin{"sos"}};
}

namespace {

// -1 for an end separator, 0 for the hole, k for tile k.
int decode_element(const Term& t, int pos) {
  if (t.is_var())
    throw DecodeError("list element " + std::to_string(pos) + " is a variable");
  if (t.head() == symbols::hole_const()) return 0;
  if (t.head() == symbols::end_const()) return -1;
  if (t.head() == symbols::tile_fn()) {
    const Term& payload = t.args()[0];
    if (payload.is_var() || !payload.args().empty())
      throw DecodeError("tile payload at element " + std::to_string(pos) +
                        " is not a constant");
    const std::string& name = symbols::name(payload.head());
    int value = 0;
    auto [p, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
    if (ec != std::errc{} || p != name.data() + name.size() || value < 1)
      throw DecodeError("tile payload '" + name + "' at element " +
                        std::to_string(pos) + " is not a positive number");
    return value;
  }
  throw DecodeError("unexpected symbol '" + symbols::name(t.head()) +
                    "' at element " + std::to_string(pos));
}

} // namespace

Board decode_board(const Literal& lit) {
  if (lit.pred != symbols::state_pred() || lit.args.size() != 1)
    throw DecodeError("literal is not STATE/1");
  Term t = lit.args[0];
  std::vector<int> elems;
  int pos = 0;
  while (true) {
    if (t.is_var()) throw DecodeError("list tail at element " + std::to_string(pos) +
                                      " is a variable");
    if (t.head() == symbols::end_const()) break;
    if (t.head() != symbols::list_fn())
      throw DecodeError("expected l/2 list node at element " + std::to_string(pos) +
                        ", found '" + symbols::name(t.head()) + "'");
    elems.push_back(decode_element(t.args()[0], pos));
    t = t.args()[1];
    ++pos;
  }
  // Separate cells from row separators and check the row structure.
  std::vector<std::uint8_t> cells;
  std::vector<int> row_lengths;
  int run = 0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i] == -1) {
      row_lengths.push_back(run);
      run = 0;
    } else {
      if (elems[i] > 255)
        throw DecodeError("tile value " + std::to_string(elems[i]) + " too large");
      cells.push_back(static_cast<std::uint8_t>(elems[i]));
      ++run;
    }
  }
  row_lengths.push_back(run); // last row, terminated by the final end
  int w = static_cast<int>(row_lengths.size());
  for (std::size_t r = 0; r < row_lengths.size(); ++r)
    if (row_lengths[r] != w)
      throw DecodeError("row " + std::to_string(r) + " has " +
                        std::to_string(row_lengths[r]) + " cells, expected " +
                        std::to_string(w));
  Board b{w, std::move(cells)};
  try {
    validate_board(b);
  } catch (const BoardError& e) {
    throw DecodeError(e.what());
  }
  return b;
}

Clause horizontal_move_eq(int width) {
  if (width < 2) throw BoardError("board width must be at least 2");
  Term x = Term::make_var(var_sym("x"));
  Term y = Term::make_var(var_sym("y"));
  Term hole = Term::make_const(symbols::hole_const());
  Term nx = Term::make_app(symbols::tile_fn(), {x});
  SymbolId l = symbols::list_fn();
  Term lhs = Term::make_app(l, {hole, Term::make_app(l, {nx, y})});
  Term rhs = Term::make_app(l, {nx, Term::make_app(l, {hole, y})});
  return Clause{-1,
                {make_literal(Sign::Positive, symbols::equal_pred(), {lhs, rhs})},
                InputOrigin{"usable"}};
}

Clause vertical_move_eq(int width) {
  if (width < 2) throw BoardError("board width must be at least 2");
  static const char* short_names[] = {"x", "y", "z", "u"};
  std::vector<Term> mids;
  for (int i = 0; i < width; ++i) {
    std::string name = i < 4 ? short_names[i] : "x" + std::to_string(i + 1);
    mids.push_back(Term::make_var(var_sym(name)));
  }
  Term tile = Term::make_app(symbols::tile_fn(), {Term::make_var(var_sym("w"))});
  Term tail = Term::make_var(var_sym("v"));
  Term hole = Term::make_const(symbols::hole_const());
  SymbolId l = symbols::list_fn();
  auto build = [&](const Term& first, const Term& last) {
    Term t = Term::make_app(l, {last, tail});
    for (auto it = mids.rbegin(); it != mids.rend(); ++it)
      t = Term::make_app(l, {*it, t});
    return Term::make_app(l, {first, t});
  };
  Term lhs = build(hole, tile);
  Term rhs = build(tile, hole);
  return Clause{-1,
                {make_literal(Sign::Positive, symbols::equal_pred(), {lhs, rhs})},
                InputOrigin{"usable"}};
}

int inversions(const Board& b) {
  validate_board(b);
  std::vector<std::uint8_t> tiles;
  for (std::uint8_t c : b.cells)
    if (c != 0) tiles.push_back(c);
  int count = 0;
  for (std::size_t i = 0; i < tiles.size(); ++i)
    for (std::size_t j = i + 1; j < tiles.size(); ++j)
      if (tiles[i] > tiles[j]) ++count;
  return count;
}

bool is_solvable(const Board& b) {
  int inv = inversions(b);
  if (b.width % 2 == 1) return inv % 2 == 0;
  int hole_index = static_cast<int>(
      std::find(b.cells.begin(), b.cells.end(), 0) - b.cells.begin());
  int row_from_bottom = b.width - 1 - hole_index / b.width;
  return (inv + row_from_bottom) % 2 == 0;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Board random_board(std::uint64_t seed, int width) {
  if (width < 2) throw BoardError("board width must be at least 2");
  SplitMix64 rng{seed};
  int n = width * width;
  Board b;
  b.width = width;
  while (true) {
    b.cells.clear();
    for (int i = 1; i < n; ++i) b.cells.push_back(static_cast<std::uint8_t>(i));
    for (int i = n - 2; i >= 1; --i) {
      std::uint64_t j = rng.next() % static_cast<std::uint64_t>(i + 1);
      std::swap(b.cells[i], b.cells[j]);
    }
    b.cells.push_back(0); // hole fixed in the last slot
    if (is_solvable(b)) return b;
  }
}

std::vector<Move> legal_moves(const Board& b) {
  validate_board(b);
  int w = b.width;
  int h = static_cast<int>(std::find(b.cells.begin(), b.cells.end(), 0) -
                           b.cells.begin());
  int row = h / w, col = h % w;
  std::vector<Move> moves;
  if (col > 0) moves.push_back(Move{Direction::Left, h, h - 1});
  if (col < w - 1) moves.push_back(Move{Direction::Right, h, h + 1});
  if (row > 0) moves.push_back(Move{Direction::Up, h, h - w});
  if (row < w - 1) moves.push_back(Move{Direction::Down, h, h + w});
  return moves;
}

Board apply_move(const Board& b, const Move& m) {
  auto legal = legal_moves(b);
  if (std::find(legal.begin(), legal.end(), m) == legal.end())
    throw BoardError("illegal move");
  Board r = b;
  std::swap(r.cells[m.from_index], r.cells[m.to_index]);
  return r;
}

std::uint64_t board_key(const Board& b) {
  if (b.width > 3) throw BoardError("board_key supports width <= 3 only");
  std::uint64_t k = 0;
  for (std::uint8_t c : b.cells) k = (k << 4) | c;
  return k;
}

std::unordered_set<std::uint64_t> bfs_reachable_keys(const Board& b) {
  validate_board(b);
  std::unordered_set<std::uint64_t> seen;
  std::deque<Board> queue;
  seen.insert(board_key(b));
  queue.push_back(b);
  while (!queue.empty()) {
    Board cur = std::move(queue.front());
    queue.pop_front();
    for (const Move& m : legal_moves(cur)) {
      Board next = cur;
      std::swap(next.cells[m.from_index], next.cells[m.to_index]);
      if (seen.insert(board_key(next)).second) queue.push_back(next);
    }
  }
  return seen;
}

std::optional<int> bfs_distance(const Board& b) {
  validate_board(b);
  std::uint64_t goal = board_key(goal_board(b.width));
  std::uint64_t start = board_key(b);
  if (start == goal) return 0;
  std::unordered_map<std::uint64_t, int> dist;
  std::deque<Board> queue;
  dist[start] = 0;
  queue.push_back(b);
  while (!queue.empty()) {
    Board cur = std::move(queue.front());
    queue.pop_front();
    int d = dist[board_key(cur)];
    for (const Move& m : legal_moves(cur)) {
      Board next = cur;
      std::swap(next.cells[m.from_index], next.cells[m.to_index]);
      std::uint64_t k = board_key(next);
      if (dist.emplace(k, d + 1).second) {
        if (k == goal) return d + 1;
        queue.push_back(next);
      }
    }
  }
  return std::nullopt;
}

std::string to_flat_text(const Board& b) {
  std::string s = std::to_string(b.width) + ":";
  for (std::size_t i = 0; i < b.cells.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(b.cells[i]);
  }
  return s;
}

Board parse_flat_board(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw BoardError("flat board text needs a 'width:' prefix");
  int width = 0;
  {
    auto [p, ec] = std::from_chars(text.data(), text.data() + colon, width);
    if (ec != std::errc{} || p != text.data() + colon)
      throw BoardError("bad width in flat board text");
  }
  Board b;
  b.width = width;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view tok = rest.substr(0, comma);
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size() || v < 0 || v > 255)
      throw BoardError("bad cell value '" + std::string(tok) + "' in flat board text");
    b.cells.push_back(static_cast<std::uint8_t>(v));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  validate_board(b);
  return b;
}

} // namespace paraslide
