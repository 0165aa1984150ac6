#include <doctest.h>

#include <set>
#include <string>

#include "paraslide/experiment.hpp"
#include "paraslide/parser.hpp"
#include "paraslide/prover.hpp"
#include "paraslide/puzzle.hpp"

using namespace paraslide;

namespace {

Term var(const char* name) {
  return Term::make_var(symbols::intern(name, SymbolKind::Variable, 0));
}
Term cst(const char* name) {
  return Term::make_const(symbols::intern(name, SymbolKind::Fixed, 0));
}
Term app(const char* name, std::vector<Term> args) {
  SymbolId id =
      symbols::intern(name, SymbolKind::Fixed, static_cast<int>(args.size()));
  return Term::make_app(id, std::move(args));
}
Literal lit(const char* pred, std::vector<Term> args, Sign sign = Sign::Positive) {
  SymbolId id =
      symbols::intern(pred, SymbolKind::Fixed, static_cast<int>(args.size()));
  return make_literal(sign, id, std::move(args));
}
Literal eq(Term a, Term b) {
  return make_literal(Sign::Positive, symbols::equal_pred(), {a, b});
}

bool replay_is_valid(const std::vector<std::pair<Board, Board>>& steps,
                     const Board& start, int width) {
  Board cur = start;
  for (const auto& [before, after] : steps) {
    if (before != cur) return false;
    bool legal = false;
    for (const Move& m : legal_moves(before))
      if (apply_move(before, m) == after) legal = true;
    if (!legal) return false;
    cur = after;
  }
  return cur == goal_board(width);
}

} // namespace

TEST_CASE("paramodulation carries extra literals under the unifier") {
  // given {P(c, h(f(a,y), b))}, from {f(x,c) = g(x), Q(x)}
  // must produce {P(c, h(g(a), b)), Q(a)}.
  Clause given{0, {lit("P", {cst("c"), app("h", {app("f", {cst("a"), var("y")}),
                                                 cst("b")})})}};
  Clause from{1, {eq(app("f", {var("x"), cst("c")}), app("g", {var("x")})),
                  lit("Q", {var("x")})}};
  auto products = para_into(given, from, Orientation::LeftToRight);
  REQUIRE(products.size() == 1);
  Clause expected{-1, {lit("P", {cst("c"), app("h", {app("g", {cst("a")}),
                                                     cst("b")})}),
                       lit("Q", {cst("a")})}};
  CHECK(is_variant(products[0], expected));
  const auto& origin = std::get<ParaOrigin>(products[0].origin);
  CHECK(origin.into_id == 0);
  CHECK(origin.from_id == 1);
}

TEST_CASE("paramodulating one equality into another") {
  // from {plus(x,0) = x} into {plus(minus(y),y) = 0} gives {minus(0) = 0}.
  Clause given{0, {eq(app("plus", {app("minus", {var("y")}), var("y")}),
                      cst("0"))}};
  Clause from{1, {eq(app("plus", {var("x"), cst("0")}), var("x"))}};
  auto products = para_into(given, from, Orientation::LeftToRight);
  REQUIRE(products.size() == 1);
  Clause expected{-1, {eq(app("minus", {cst("0")}), cst("0"))}};
  CHECK(is_variant(products[0], expected));
}

TEST_CASE("a left-to-right step slides the hole right") {
  Board b = parse_flat_board("3:0,1,2,3,4,5,6,7,8");
  Clause given = encode_state_clause(b);
  given.id = 0;
  Clause from = horizontal_move_eq(3);
  from.id = 1;
  auto products = para_into(given, from, Orientation::LeftToRight);
  REQUIRE(products.size() == 1);
  Board after = decode_board(products[0].literals.front());
  CHECK(after == parse_flat_board("3:1,0,2,3,4,5,6,7,8"));
  // and it matches the move semantics directly
  bool found = false;
  for (const Move& m : legal_moves(b))
    if (apply_move(b, m) == after) found = true;
  CHECK(found);
}

TEST_CASE("the tile pattern refuses to cross a row separator") {
  // Hole in the last column: its list successor is the row separator.
  Board b = parse_flat_board("3:1,2,0,4,5,6,7,8,3");
  Clause given = encode_state_clause(b);
  given.id = 0;
  Clause from = horizontal_move_eq(3);
  from.id = 1;
  // Left-to-right wants hole directly before a tile; here it is before
  // the separator, so the only product comes from the other orientation.
  CHECK(para_into(given, from, Orientation::LeftToRight).empty());
  CHECK(para_into(given, from, Orientation::RightToLeft).size() == 1);
}

TEST_CASE("hot pass with an empty hot list yields nothing") {
  Clause target = encode_state_clause(random_board(3, 3));
  target.id = 0;
  CHECK(hot_products(target, {}, 1).empty());
}

TEST_CASE("hot pass produces exactly the vertical successors") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Board b = random_board(seed, 3);
    Clause target = encode_state_clause(b);
    target.id = 0;
    Clause hot = vertical_move_eq(3);
    hot.id = 1;
    std::set<std::string> got;
    for (const Clause& p : hot_products(target, {hot}, 1)) {
      CHECK(std::holds_alternative<HotOrigin>(p.origin));
      got.insert(to_flat_text(decode_board(p.literals.front())));
    }
    std::set<std::string> want;
    for (const Move& m : legal_moves(b))
      if (m.dir == Direction::Up || m.dir == Direction::Down)
        want.insert(to_flat_text(apply_move(b, m)));
    CHECK(got == want);
  }
}

TEST_CASE("hot pass on an equality target is deterministic") {
  Clause target = horizontal_move_eq(3);
  target.id = 0;
  Clause hot = vertical_move_eq(3);
  hot.id = 1;
  auto a = hot_products(target, {hot}, 1);
  auto b = hot_products(target, {hot}, 1);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(is_variant(a[i], b[i]));
}

TEST_CASE("a board already at the goal is an immediate proof") {
  ProblemSpec problem = make_puzzle_problem(goal_board(3), FlowConfig::None);
  Prover prover;
  ProverResult r = prover.run(problem);
  CHECK(r.outcome == Outcome::Proof);
  CHECK(r.stats.generated == 0);
  CHECK(r.stats.proof_moves == 0);
  CHECK(prover.extract_moves(r).empty());
}

TEST_CASE("a one-move board solves with a single horizontal step") {
  Board b = parse_flat_board("3:1,2,3,4,5,6,7,0,8");
  ProblemSpec problem = make_puzzle_problem(b, FlowConfig::None);
  Prover prover;
  ProverResult r = prover.run(problem);
  REQUIRE(r.outcome == Outcome::Proof);
  CHECK(r.stats.proof_moves == 1);
  auto steps = prover.extract_moves(r);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].first == b);
  CHECK(steps[0].second == goal_board(3));
}

TEST_CASE("a known solvable board proves deterministically") {
  Board b = parse_flat_board("3:1,3,5,4,6,8,7,2,0");
  ProverStats first;
  for (int round = 0; round < 2; ++round) {
    ProblemSpec problem = make_puzzle_problem(b, FlowConfig::None);
    Prover prover;
    ProverResult r = prover.run(problem);
    REQUIRE(r.outcome == Outcome::Proof);
    auto steps = prover.extract_moves(r);
    CHECK(replay_is_valid(steps, b, 3));
    CHECK(steps.size() == r.stats.proof_moves);
    // FIFO selection is breadth-first, so the replayed path is minimal.
    CHECK(static_cast<int>(steps.size()) == bfs_distance(b).value());
    if (round == 0) {
      first = r.stats;
    } else {
      CHECK(first.generated == r.stats.generated);
      CHECK(first.retained == r.stats.retained);
      CHECK(first.given == r.stats.given);
      CHECK(first.proof_moves == r.stats.proof_moves);
    }
  }
}

TEST_CASE("origin chains stay monotone and end at inputs") {
  Board b = parse_flat_board("3:1,3,5,4,6,8,7,2,0");
  ProblemSpec problem = make_puzzle_problem(b, FlowConfig::Both);
  Prover prover;
  ProverResult r = prover.run(problem);
  REQUIRE(r.outcome == Outcome::Proof);
  for (const Clause& c : prover.clause_store()) {
    if (std::holds_alternative<InputOrigin>(c.origin)) continue;
    ClauseId into = std::holds_alternative<ParaOrigin>(c.origin)
                        ? std::get<ParaOrigin>(c.origin).into_id
                        : std::get<HotOrigin>(c.origin).into_id;
    CHECK(into >= 0);
    CHECK(into < c.id);
  }
  auto chain = prover.proof_chain(*r.proof_clause);
  REQUIRE(!chain.empty());
  CHECK(std::holds_alternative<InputOrigin>(
      prover.clause(chain.front()).origin));
}

TEST_CASE("budget one is exceeded on any non-goal board") {
  ProverConfig cfg;
  cfg.max_generated = 1;
  Prover prover(cfg);
  ProblemSpec problem =
      make_puzzle_problem(parse_flat_board("3:1,3,5,4,6,8,7,2,0"),
                          FlowConfig::None);
  CHECK(prover.run(problem).outcome == Outcome::BudgetExceeded);
}

TEST_CASE("a problem without sos clauses is malformed") {
  ProblemSpec empty;
  empty.usable.push_back(horizontal_move_eq(3));
  Prover prover;
  CHECK_THROWS_AS(prover.run(empty), std::invalid_argument);
}

TEST_CASE("saturation on an unsolvable board exhausts its class") {
  Board b = parse_flat_board("3:1,2,3,4,5,6,8,7,0");
  ProblemSpec problem = make_puzzle_problem(b, FlowConfig::None);
  Prover prover;
  ProverResult r = prover.run(problem);
  CHECK(r.outcome == Outcome::Saturated);
  CHECK_FALSE(r.proof_clause.has_value());
  CHECK_FALSE(r.stats.proof_moves.has_value());
  CHECK(prover.retained_state_count() == 181440);

  // The retained states are exactly the BFS-reachable set.
  auto reachable = bfs_reachable_keys(b);
  std::size_t states = 0;
  bool all_reachable = true;
  for (const Clause& c : prover.clause_store()) {
    if (!c.is_unit()) continue;
    const Literal& l = c.literals.front();
    if (l.sign != Sign::Positive || l.pred != symbols::state_pred()) continue;
    if (std::holds_alternative<InputOrigin>(c.origin) &&
        std::get<InputOrigin>(c.origin).list_name == "passive")
      continue;
    ++states;
    if (!reachable.count(board_key(decode_board(l)))) all_reachable = false;
  }
  CHECK(states == reachable.size());
  CHECK(all_reachable);
}

TEST_CASE("heat flow never changes the verdict") {
  for (std::uint64_t seed : {11ULL, 12ULL}) {
    Board b = random_board(seed, 3);
    Outcome baseline = Outcome::Saturated;
    bool have_baseline = false;
    for (FlowConfig flow : {FlowConfig::None, FlowConfig::Vertical,
                            FlowConfig::Horizontal, FlowConfig::Both}) {
      Prover prover;
      ProverResult r = prover.run(make_puzzle_problem(b, flow));
      if (!have_baseline) {
        baseline = r.outcome;
        have_baseline = true;
      }
      CHECK(r.outcome == baseline);
      CHECK(r.outcome == Outcome::Proof);
      CHECK(replay_is_valid(prover.extract_moves(r), b, 3));
    }
  }
}

TEST_CASE("stats stay internally consistent") {
  Board b = random_board(21, 3);
  Prover prover;
  ProverResult r = prover.run(make_puzzle_problem(b, FlowConfig::Vertical));
  CHECK(r.stats.retained <= r.stats.generated);
  CHECK(r.outcome == Outcome::Proof);
  CHECK(r.stats.proof_moves.has_value());
  CHECK(prover.retained_state_count() <= 181440 + 1);
}
