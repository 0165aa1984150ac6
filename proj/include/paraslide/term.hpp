#ifndef PARASLIDE_TERM_HPP
#define PARASLIDE_TERM_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "paraslide/symbol.hpp"

namespace paraslide {

// A variable occurrence. The name symbol carries the printable base name;
// the index makes renamed copies distinct (rename_apart shifts it).
struct Var {
  SymbolId name;
  std::int32_t index = 0;
  friend bool operator==(const Var&, const Var&) = default;
};

// Immutable first-order term: a variable or a fixed symbol applied to
// arity-many arguments. Structure is shared; copies are cheap.
class Term {
public:
  Term() = default;

  static Term make_var(SymbolId name, std::int32_t index = 0);
  static Term make_var(const Var& v) { return make_var(v.name, v.index); }
  // Throws ArityError when args.size() != arity(head).
  static Term make_app(SymbolId head, std::vector<Term> args);
  static Term make_const(SymbolId head) { return make_app(head, {}); }

  bool valid() const { return node_ != nullptr; }
  bool is_var() const;
  const Var& var() const;
  SymbolId head() const;
  std::span<const Term> args() const;

  bool is_ground() const { return max_var_index() < 0; }
  // Largest variable index occurring in the term, -1 when ground.
  std::int32_t max_var_index() const;
  std::size_t hash() const;
  std::size_t node_count() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Finite variable-to-term mapping. After normalize() (which unify()
// performs before returning) the substitution is idempotent.
class Substitution {
public:
  const Term* lookup(const Var& v) const;
  void bind(const Var& v, Term t);
  bool empty() const { return bindings_.size() == 0; }
  std::size_t size() const { return bindings_.size(); }
  const std::vector<std::pair<Var, Term>>& bindings() const { return bindings_; }
  void normalize();
  void clear() { bindings_.clear(); }

private:
  std::vector<std::pair<Var, Term>> bindings_;
};

Term apply(const Substitution& subst, const Term& t);

// Most general unifier with occurs check; absent when none exists.
std::optional<Substitution> unify(const Term& s, const Term& t);
// Extends subst in place (triangular form, not yet normalized).
bool unify_step(const Term& s, const Term& t, Substitution& subst);
// unify_step specialized for ground t: one-way matching, every binding
// ground, the result already idempotent. Agrees with unify_step.
bool match_ground(const Term& pat, const Term& t, Substitution& subst);

// Argument path from the root, 1-based; empty path is the term itself.
using Position = std::vector<std::int32_t>;

// Every subterm with its position: root first, then left-to-right DFS.
std::vector<std::pair<Position, Term>> subterms(const Term& t);
// nullptr when p is not valid in t.
const Term* subterm_at(const Term& t, const Position& p);
// Throws std::out_of_range when p is not valid in t.
Term replace_at(const Term& t, const Position& p, const Term& s);
// Shifts every variable index by offset; structure unchanged.
Term rename_apart(const Term& t, std::int32_t offset);

// Hash of replace_at(t, p, s) for a replacement with hash repl_hash,
// computed without building the replaced term.
std::size_t replaced_hash(const Term& t, std::span<const std::int32_t> p,
                          std::size_t repl_hash);
// candidate == replace_at(base, p, repl), again without building it.
bool equals_with_replacement(const Term& candidate, const Term& base,
                             std::span<const std::int32_t> p, const Term& repl);

// Hash and groundness of apply(subst, t) without building the instance;
// subst must be idempotent.
std::pair<std::size_t, bool> substituted_hash(const Term& t,
                                              const Substitution& subst);
// candidate == apply(subst, pat), without building the instance.
bool equals_substituted(const Term& candidate, const Term& pat,
                        const Substitution& subst);
// As equals_with_replacement with repl = apply(subst, pat), unbuilt.
bool equals_with_replacement(const Term& candidate, const Term& base,
                             std::span<const std::int32_t> p, const Term& pat,
                             const Substitution& subst);

} // namespace paraslide

#endif
