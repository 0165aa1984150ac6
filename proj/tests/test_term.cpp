#include <doctest.h>

#include <random>

#include "paraslide/term.hpp"

using namespace paraslide;

namespace {

Term var(const char* name, std::int32_t index = 0) {
  return Term::make_var(symbols::intern(name, SymbolKind::Variable, 0), index);
}

Term cst(const char* name) {
  return Term::make_const(symbols::intern(name, SymbolKind::Fixed, 0));
}

Term app(const char* name, std::vector<Term> args) {
  SymbolId id =
      symbols::intern(name, SymbolKind::Fixed, static_cast<int>(args.size()));
  return Term::make_app(id, std::move(args));
}

Term hole() { return Term::make_const(symbols::hole_const()); }
Term end() { return Term::make_const(symbols::end_const()); }
Term l(Term h, Term t) { return Term::make_app(symbols::list_fn(), {h, t}); }
Term n(Term k) { return Term::make_app(symbols::tile_fn(), {k}); }

// Random terms over a tiny vocabulary, depth-bounded.
Term random_term(std::mt19937_64& rng, int depth) {
  int pick = static_cast<int>(rng() % 6);
  if (depth <= 0 || pick < 2) {
    switch (pick % 3) {
      case 0: return var("x");
      case 1: return var("y");
      default: return cst("a");
    }
  }
  switch (pick) {
    case 2: return cst("b");
    case 3: return app("f", {random_term(rng, depth - 1), random_term(rng, depth - 1)});
    case 4: return app("g", {random_term(rng, depth - 1)});
    default: return l(random_term(rng, depth - 1), random_term(rng, depth - 1));
  }
}

Term random_ground_term(std::mt19937_64& rng, int depth) {
  int pick = static_cast<int>(rng() % 5);
  if (depth <= 0 || pick < 2) return pick % 2 ? cst("a") : cst("b");
  switch (pick) {
    case 2: return app("g", {random_ground_term(rng, depth - 1)});
    default: return app("f", {random_ground_term(rng, depth - 1),
                              random_ground_term(rng, depth - 1)});
  }
}

// One-way simultaneous matching: extends delta so that apply(delta, from)
// equals to, or fails. Used for the generality check below.
bool match_onto(const Term& from, const Term& to, Substitution& delta) {
  if (from.is_var()) {
    if (const Term* b = delta.lookup(from.var())) return *b == to;
    delta.bind(from.var(), to);
    return true;
  }
  if (to.is_var() || from.head() != to.head()) return false;
  auto fa = from.args();
  auto ta = to.args();
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (!match_onto(fa[i], ta[i], delta)) return false;
  return true;
}

} // namespace

TEST_CASE("unify on identical variables is the empty substitution") {
  auto sigma = unify(var("x"), var("x"));
  REQUIRE(sigma.has_value());
  CHECK(sigma->empty());
}

TEST_CASE("unify binds across both argument slots") {
  // f(x,c) against f(a,y) must give x->a, y->c.
  Term s = app("f", {var("x"), cst("c")});
  Term t = app("f", {cst("a"), var("y")});
  auto sigma = unify(s, t);
  REQUIRE(sigma.has_value());
  CHECK(apply(*sigma, s) == apply(*sigma, t));
  CHECK(apply(*sigma, var("x")) == cst("a"));
  CHECK(apply(*sigma, var("y")) == cst("c"));
  CHECK(sigma->size() == 2);
}

TEST_CASE("distinct constants do not unify") {
  CHECK_FALSE(unify(hole(), end()).has_value());
}

TEST_CASE("occurs check blocks cyclic bindings") {
  CHECK_FALSE(unify(var("x"), l(n(var("x")), var("y"))).has_value());
}

TEST_CASE("apply with the empty substitution is the identity") {
  Term t = l(hole(), end());
  Substitution empty;
  CHECK(apply(empty, t) == t);
}

TEST_CASE("apply replaces every bound variable simultaneously") {
  Substitution sigma;
  sigma.bind(var("x").var(), cst("a"));
  sigma.bind(var("y").var(), cst("c"));
  CHECK(apply(sigma, app("f", {var("x"), var("y")})) ==
        app("f", {cst("a"), cst("c")}));
}

TEST_CASE("apply substitutes inside nested lists") {
  Substitution sigma;
  sigma.bind(var("x").var(), n(cst("1")));
  CHECK(apply(sigma, l(hole(), l(var("x"), end()))) ==
        l(hole(), l(n(cst("1")), end())));
}

TEST_CASE("subterms of a leaf is the leaf at the empty position") {
  auto subs = subterms(hole());
  REQUIRE(subs.size() == 1);
  CHECK(subs[0].first.empty());
  CHECK(subs[0].second == hole());
}

TEST_CASE("subterms of n(3) lists root then the payload") {
  Term t = n(cst("3"));
  auto subs = subterms(t);
  REQUIRE(subs.size() == 2);
  CHECK(subs[0].first == Position{});
  CHECK(subs[0].second == t);
  CHECK(subs[1].first == Position{1});
  CHECK(subs[1].second == cst("3"));
}

TEST_CASE("subterms enumerates outermost first, left to right") {
  Term t = l(hole(), end());
  auto subs = subterms(t);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0].second == t);
  CHECK(subs[1].first == Position{1});
  CHECK(subs[1].second == hole());
  CHECK(subs[2].first == Position{2});
  CHECK(subs[2].second == end());
}

TEST_CASE("subterms order is deterministic across calls") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Term t = random_term(rng, 4);
    auto a = subterms(t);
    auto b = subterms(t);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(a[j].first == b[j].first);
      CHECK(a[j].second == b[j].second);
    }
  }
}

TEST_CASE("replace_at at the root returns the replacement") {
  CHECK(replace_at(l(hole(), end()), {}, n(cst("1"))) == n(cst("1")));
}

TEST_CASE("replace_at swaps one argument") {
  CHECK(replace_at(l(hole(), end()), {1}, n(cst("5"))) ==
        l(n(cst("5")), end()));
}

TEST_CASE("replace_at rejects invalid positions") {
  CHECK_THROWS_AS(replace_at(hole(), {1}, end()), std::out_of_range);
  CHECK_THROWS_AS(replace_at(l(hole(), end()), {3}, end()), std::out_of_range);
}

TEST_CASE("replace_at with the original subterm is the identity") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Term t = random_term(rng, 4);
    for (const auto& [pos, sub] : subterms(t))
      CHECK(replace_at(t, pos, sub) == t);
  }
}

TEST_CASE("rename_apart shifts variables but keeps structure") {
  Term t = l(hole(), l(n(var("x")), var("y")));
  Term r = rename_apart(t, 100);
  CHECK(r.max_var_index() == 100);
  CHECK(r != t);
  auto sigma = unify(r, t); // linear term: variants unify
  REQUIRE(sigma.has_value());
  CHECK(apply(*sigma, r) == apply(*sigma, t));
}

TEST_CASE("rename_apart leaves ground terms untouched") {
  Term g = l(n(cst("1")), l(hole(), end()));
  CHECK(rename_apart(g, 42) == g);
}

TEST_CASE("unifier property: both sides agree under the result") {
  std::mt19937_64 rng(23);
  int successes = 0;
  for (int i = 0; i < 2000; ++i) {
    Term s = random_term(rng, 3);
    Term t = random_term(rng, 3);
    auto sigma = unify(s, t);
    if (!sigma) continue;
    ++successes;
    CHECK(apply(*sigma, s) == apply(*sigma, t));
  }
  CHECK(successes > 100); // the vocabulary is small enough to collide often
}

TEST_CASE("unify returns a most general unifier on a hand catalog") {
  struct Case {
    Term s, t;
    std::vector<std::pair<Term, Term>> other; // another unifier
  };
  std::vector<Case> cases;
  cases.push_back({var("x"), var("y"), {{var("x"), cst("a")}, {var("y"), cst("a")}}});
  cases.push_back({app("f", {var("x"), var("y")}),
                   app("f", {var("y"), var("x")}),
                   {{var("x"), cst("b")}, {var("y"), cst("b")}}});
  cases.push_back({app("f", {var("x"), cst("c")}),
                   app("f", {cst("a"), var("y")}),
                   {{var("x"), cst("a")}, {var("y"), cst("c")}}});
  for (const Case& c : cases) {
    auto sigma = unify(c.s, c.t);
    REQUIRE(sigma.has_value());
    Substitution tau;
    for (const auto& [v, t] : c.other) tau.bind(v.var(), t);
    REQUIRE(apply(tau, c.s) == apply(tau, c.t));
    // tau must factor through sigma: one delta maps both instances.
    Substitution delta;
    CHECK(match_onto(apply(*sigma, c.s), apply(tau, c.s), delta));
    CHECK(match_onto(apply(*sigma, c.t), apply(tau, c.t), delta));
  }
}

TEST_CASE("normalized substitutions are idempotent") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    Term s = random_term(rng, 3);
    Term t = random_term(rng, 3);
    auto sigma = unify(s, t);
    if (!sigma) continue;
    Term u = random_term(rng, 3);
    CHECK(apply(*sigma, apply(*sigma, u)) == apply(*sigma, u));
  }
}

TEST_CASE("match_ground agrees with unify_step on ground targets") {
  std::mt19937_64 rng(37);
  int successes = 0;
  for (int i = 0; i < 2000; ++i) {
    Term pat = random_term(rng, 3);
    Term tgt = random_ground_term(rng, 3);
    Substitution a, b;
    bool via_match = match_ground(pat, tgt, a);
    bool via_unify = unify_step(pat, tgt, b);
    CHECK(via_match == via_unify);
    if (!via_match) continue;
    ++successes;
    b.normalize();
    CHECK(apply(a, pat) == tgt);
    CHECK(apply(b, pat) == tgt);
  }
  CHECK(successes > 50);
}

TEST_CASE("replaced_hash equals the hash of the built replacement") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    Term t = random_ground_term(rng, 4);
    auto subs = subterms(t);
    const auto& [pos, old_sub] = subs[rng() % subs.size()];
    Term repl = random_ground_term(rng, 3);
    Term built = replace_at(t, pos, repl);
    CHECK(replaced_hash(t, pos, repl.hash()) == built.hash());
    CHECK(equals_with_replacement(built, t, pos, repl));
    if (built != t) CHECK_FALSE(equals_with_replacement(t, t, pos, repl));
    (void)old_sub;
  }
}

TEST_CASE("substituted instance helpers agree with apply") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 500; ++i) {
    Term s = random_term(rng, 3);
    Term t = random_term(rng, 3);
    auto sigma = unify(s, t);
    if (!sigma) continue;
    Term u = random_term(rng, 3);
    Term inst = apply(*sigma, u);
    auto [h, ground] = substituted_hash(u, *sigma);
    CHECK(h == inst.hash());
    CHECK(ground == inst.is_ground());
    CHECK(equals_substituted(inst, u, *sigma));
  }
}

TEST_CASE("equality is structural, not identity-based") {
  Term a = l(hole(), l(n(cst("2")), end()));
  Term b = l(hole(), l(n(cst("2")), end()));
  Term c = l(hole(), l(n(cst("3")), end()));
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.hash() == b.hash());
}

TEST_CASE("arity mismatches are construction errors") {
  SymbolId f = symbols::intern("f", SymbolKind::Fixed, 2);
  CHECK_THROWS_AS(Term::make_app(f, {hole()}), ArityError);
  CHECK_THROWS_AS(symbols::intern("f", SymbolKind::Fixed, 3), ArityError);
}
