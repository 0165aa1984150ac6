#ifndef PARASLIDE_PROVER_HPP
#define PARASLIDE_PROVER_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "paraslide/parser.hpp"
#include "paraslide/puzzle.hpp"

namespace paraslide {

struct ProverConfig {
  std::uint64_t max_generated = 5'000'000;
  std::optional<std::uint32_t> max_weight;
  int heat_level = 1;
};

struct ProverStats {
  std::uint64_t generated = 0;
  std::uint64_t retained = 0;
  std::uint64_t given = 0;
  std::optional<std::uint64_t> proof_moves;
  std::uint64_t wall_ms = 0;
};

enum class Outcome { Proof, Saturated, BudgetExceeded };

struct ProverResult {
  Outcome outcome;
  std::optional<ClauseId> proof_clause;
  ProverStats stats;
};

// One successful paramodulation site found inside the given clause;
// materialize_paramodulant turns it into the product clause.
struct ParaCandidate {
  ClauseId from_id;
  Orientation orient;
  std::size_t lit_index;
  const Position& path;   // full position, leading entry is the 1-based arg index
  const Substitution& subst; // normalized unifier
  const Term& rewrite_to;    // replacement side, not yet substituted
  const std::vector<Literal>& from_extra; // carried non-equality literals
};

// Return false to stop the enumeration.
using ParaVisitor = std::function<bool(const ParaCandidate&)>;

// Streaming form of para_into: candidates in deterministic order
// (literals, then arguments, then outermost-first DFS); no products
// built. Variable positions are never rewritten.
void para_into_visit(const Clause& given, const Clause& from_eq,
                     Orientation orient, const ParaVisitor& visit);

Clause materialize_paramodulant(const Clause& given, const ParaCandidate& c);

// Paramodulation into `given` from the (oriented) leading equality of
// `from_eq`, with from_eq's extra literals carried along. Emitted
// clauses have no id yet; origins reference given.id / from_eq.id.
std::vector<Clause> para_into(const Clause& given, const Clause& from_eq,
                              Orientation orient);

// One hot-list sweep over `target`: every hot equality, both
// orientations, paramodulated into the target (and, at heat levels
// above one, into the resulting products again).
std::vector<Clause> hot_products(const Clause& target,
                                 const std::vector<Clause>& hot,
                                 int heat_level = 1);

// Given-clause saturation with FIFO selection and an optional hot-list
// pass on every retained clause. Single-threaded; owns all its state.
class Prover {
public:
  explicit Prover(ProverConfig config = {}) : config_(config) {}

  // Throws std::invalid_argument when the problem has no SoS clause.
  ProverResult run(const ProblemSpec& problem);

  // Input plus retained clauses, indexed by id.
  const std::deque<Clause>& clause_store() const { return store_; }
  const Clause& clause(ClauseId id) const { return store_.at(id); }

  // Ids from the input ancestor down to `id` along into-parent links.
  std::vector<ClauseId> proof_chain(ClauseId id) const;

  // Decoded board states along the proof, as (before, after) pairs.
  std::vector<std::pair<Board, Board>> extract_moves(const ProverResult& result) const;

  // Unit positive STATE clauses currently retained (inputs included).
  std::size_t retained_state_count() const;

private:
  enum class Step { Continue, Stop };

  Step on_candidate(const Clause& given, const ParaCandidate& c, bool as_hot,
                    int heat_depth);
  Step process_product(Clause&& c, std::uint64_t hash, int heat_depth);
  Step hot_sweep(ClauseId id, int heat_depth);
  Step infer_pair(const Clause& into, const Clause& from_eq);
  ClauseId register_clause(Clause&& c);
  bool is_duplicate(std::uint64_t hash, const Clause& c) const;
  std::uint64_t chain_length(ClauseId id) const;

  ProverConfig config_;
  ProverStats stats_;
  std::deque<Clause> store_;
  std::deque<ClauseId> sos_;
  std::vector<ClauseId> usable_;
  std::vector<ClauseId> usable_eqs_; // usable clauses with a positive equality
  std::vector<ClauseId> hot_;
  std::vector<ClauseId> passive_;
  std::vector<std::uint64_t> passive_hashes_;
  std::unordered_map<std::uint64_t, std::vector<ClauseId>> retained_index_;
  bool passive_ground_units_ = true;
  Outcome outcome_ = Outcome::Saturated;
  std::optional<ClauseId> proof_clause_;
};

} // namespace paraslide

#endif
