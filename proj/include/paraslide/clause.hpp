#ifndef PARASLIDE_CLAUSE_HPP
#define PARASLIDE_CLAUSE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "paraslide/term.hpp"

namespace paraslide {

enum class Sign { Positive, Negative };

// Which side of EQUAL(l, r) is treated as the rewritten-from side.
enum class Orientation { LeftToRight, RightToLeft };

struct Literal {
  Sign sign = Sign::Positive;
  SymbolId pred = 0;
  std::vector<Term> args;

  friend bool operator==(const Literal&, const Literal&);
};

Literal make_literal(Sign sign, SymbolId pred, std::vector<Term> args);

using ClauseId = std::int64_t;

struct InputOrigin {
  std::string list_name;
};
struct ParaOrigin {
  ClauseId into_id = -1;
  ClauseId from_id = -1;
  std::size_t lit_index = 0;
  Position pos;
  Orientation orient = Orientation::LeftToRight;
};
struct HotOrigin {
  ClauseId into_id = -1;
  ClauseId hot_id = -1;
  std::size_t lit_index = 0;
  Position pos;
  Orientation orient = Orientation::LeftToRight;
};
using Origin = std::variant<InputOrigin, ParaOrigin, HotOrigin>;

struct Clause {
  ClauseId id = -1;
  std::vector<Literal> literals;
  Origin origin = InputOrigin{};

  bool is_unit() const { return literals.size() == 1; }
  bool is_ground() const;
  // Unit-or-leading positive EQUAL literal, usable as a "from" parent.
  bool has_positive_equality() const;
};

Literal apply(const Substitution& subst, const Literal& lit);
Literal rename_apart(const Literal& lit, std::int32_t offset);
std::int32_t max_var_index(const Literal& lit);
std::int32_t max_var_index(const Clause& c);

// Identical up to a bijective variable renaming; structural equality on
// ground clauses.
bool is_variant(const Clause& a, const Clause& b);

// Hash invariant under variable renaming; variants collide by design.
std::uint64_t variant_hash(const Clause& c);

// variant_hash of a ground unit clause, given only its argument term
// hashes; agrees with variant_hash on the built clause.
std::uint64_t ground_unit_variant_hash(Sign sign, SymbolId pred,
                                       std::span<const std::size_t> arg_hashes);

// Opposite-sign unit literals with a common predicate and unifiable
// arguments; the returned unifier witnesses the refutation.
std::optional<Substitution> unit_conflict(const Clause& a, const Clause& b);

// Total symbol occurrences (predicates plus term nodes).
std::size_t clause_weight(const Clause& c);

} // namespace paraslide

#endif
