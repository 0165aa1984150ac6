#include "paraslide/prover.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace paraslide {

namespace {

struct ParaFrame {
  const Clause& given;
  ClauseId from_id;
  Orientation orient;
  const std::vector<Literal>& from_extra;
  const Term& rewrite_from;
  const Term& rewrite_to;
  const ParaVisitor& visit;
  Substitution scratch; // reused across positions
};

bool para_walk(ParaFrame& f, std::size_t lit_index, const Term& sub,
               Position& path) {
  if (sub.is_var()) return true; // no paramodulation into variable positions
  // Head clash means no unifier; skip the attempt entirely.
  bool feasible =
      f.rewrite_from.is_var() || f.rewrite_from.head() == sub.head();
  if (feasible) {
    f.scratch.clear();
    bool unified;
    if (sub.is_ground()) {
      unified = match_ground(f.rewrite_from, sub, f.scratch);
    } else {
      unified = unify_step(f.rewrite_from, sub, f.scratch);
      if (unified) f.scratch.normalize();
    }
    if (unified) {
      ParaCandidate c{f.from_id, f.orient,      lit_index,   path,
                      f.scratch, f.rewrite_to,  f.from_extra};
      if (!f.visit(c)) return false;
    }
  }
  auto args = sub.args();
  for (std::size_t i = 0; i < args.size(); ++i) {
    path.push_back(static_cast<std::int32_t>(i + 1));
    bool keep = para_walk(f, lit_index, args[i], path);
    path.pop_back();
    if (!keep) return false;
  }
  return true;
}

} // namespace

void para_into_visit(const Clause& given, const Clause& from_eq,
                     Orientation orient, const ParaVisitor& visit) {
  if (!from_eq.has_positive_equality()) return;

  std::int32_t offset = max_var_index(given) + 1;
  bool renamed = offset > 0 && max_var_index(from_eq) >= 0;
  std::vector<Literal> from_lits;
  if (renamed) {
    from_lits.reserve(from_eq.literals.size());
    for (const Literal& lit : from_eq.literals)
      from_lits.push_back(rename_apart(lit, offset));
  }
  const std::vector<Literal>& lits = renamed ? from_lits : from_eq.literals;

  const Literal& eq = lits.front();
  const Term& from_side =
      orient == Orientation::LeftToRight ? eq.args[0] : eq.args[1];
  const Term& to_side =
      orient == Orientation::LeftToRight ? eq.args[1] : eq.args[0];
  static const std::vector<Literal> kNoExtra;
  std::vector<Literal> extra_store;
  if (lits.size() > 1) extra_store.assign(lits.begin() + 1, lits.end());
  const std::vector<Literal>& extra = lits.size() > 1 ? extra_store : kNoExtra;

  ParaFrame frame{given, from_eq.id, orient, extra, from_side, to_side, visit};
  Position path;
  for (std::size_t li = 0; li < given.literals.size(); ++li) {
    const Literal& lit = given.literals[li];
    for (std::size_t ai = 0; ai < lit.args.size(); ++ai) {
      path.push_back(static_cast<std::int32_t>(ai + 1));
      bool keep = para_walk(frame, li, lit.args[ai], path);
      path.pop_back();
      if (!keep) return;
    }
  }
}

Clause materialize_paramodulant(const Clause& given, const ParaCandidate& c) {
  std::size_t arg_index = static_cast<std::size_t>(c.path.front()) - 1;
  Position inner(c.path.begin() + 1, c.path.end());
  std::vector<Literal> lits;
  lits.reserve(given.literals.size() + c.from_extra.size());
  for (std::size_t j = 0; j < given.literals.size(); ++j) {
    const Literal& glit = given.literals[j];
    if (j == c.lit_index) {
      std::vector<Term> args(glit.args.begin(), glit.args.end());
      args[arg_index] = replace_at(args[arg_index], inner, c.rewrite_to);
      lits.push_back(apply(c.subst, Literal{glit.sign, glit.pred, std::move(args)}));
    } else {
      lits.push_back(apply(c.subst, glit));
    }
  }
  for (const Literal& extra : c.from_extra) lits.push_back(apply(c.subst, extra));
  return Clause{-1, std::move(lits),
                ParaOrigin{given.id, c.from_id, c.lit_index, c.path, c.orient}};
}

std::vector<Clause> para_into(const Clause& given, const Clause& from_eq,
                              Orientation orient) {
  std::vector<Clause> out;
  para_into_visit(given, from_eq, orient, [&](const ParaCandidate& c) {
    out.push_back(materialize_paramodulant(given, c));
    return true;
  });
  return out;
}

namespace {

void to_hot_origin(Clause& c) {
  const auto& po = std::get<ParaOrigin>(c.origin);
  c.origin = HotOrigin{po.into_id, po.from_id, po.lit_index, po.pos, po.orient};
}

} // namespace

std::vector<Clause> hot_products(const Clause& target,
                                 const std::vector<Clause>& hot, int heat_level) {
  std::vector<Clause> out;
  std::size_t frontier_begin = 0;
  // Level 0 pseudo-frontier is the target itself.
  for (int level = 0; level < heat_level; ++level) {
    std::size_t frontier_end = out.size();
    std::vector<Clause> next;
    auto expand = [&](const Clause& c) {
      for (const Clause& h : hot) {
        for (Orientation o : {Orientation::LeftToRight, Orientation::RightToLeft}) {
          for (Clause& p : para_into(c, h, o)) {
            to_hot_origin(p);
            next.push_back(std::move(p));
          }
        }
      }
    };
    if (level == 0) {
      expand(target);
    } else {
      for (std::size_t i = frontier_begin; i < frontier_end; ++i) expand(out[i]);
    }
    frontier_begin = out.size();
    for (Clause& c : next) out.push_back(std::move(c));
    if (frontier_begin == out.size()) break; // nothing new
  }
  return out;
}

ClauseId Prover::register_clause(Clause&& c) {
  ClauseId id = static_cast<ClauseId>(store_.size());
  c.id = id;
  store_.push_back(std::move(c));
  return id;
}

bool Prover::is_duplicate(std::uint64_t hash, const Clause& c) const {
  auto it = retained_index_.find(hash);
  if (it == retained_index_.end()) return false;
  for (ClauseId id : it->second)
    if (is_variant(store_[id], c)) return true;
  return false;
}

// Generation was already counted by the caller; runs goal check,
// retention test, and the hot sweep on the built product.
Prover::Step Prover::process_product(Clause&& c, std::uint64_t hash,
                                     int heat_depth) {
  for (ClauseId pid : passive_) {
    if (unit_conflict(c, store_[pid])) {
      ClauseId id = register_clause(std::move(c));
      proof_clause_ = id;
      stats_.proof_moves = chain_length(id);
      outcome_ = Outcome::Proof;
      return Step::Stop;
    }
  }
  if (config_.max_weight && clause_weight(c) > *config_.max_weight)
    return Step::Continue;
  if (is_duplicate(hash, c)) return Step::Continue;

  ClauseId id = register_clause(std::move(c));
  retained_index_[hash].push_back(id);
  sos_.push_back(id);
  ++stats_.retained;

  if (!hot_.empty() && heat_depth < config_.heat_level)
    return hot_sweep(id, heat_depth);
  return Step::Continue;
}

Prover::Step Prover::on_candidate(const Clause& given, const ParaCandidate& c,
                                  bool as_hot, int heat_depth) {
  ++stats_.generated;
  if (stats_.generated >= config_.max_generated) {
    outcome_ = Outcome::BudgetExceeded;
    return Step::Stop;
  }

  // Ground unit fast path: hash and compare the product against the
  // goal and the retained set without building it; most products are
  // duplicates and never get materialized.
  const Literal* glit =
      given.is_unit() && c.from_extra.empty() && !config_.max_weight &&
              passive_ground_units_
          ? &given.literals.front()
          : nullptr;
  bool ground_args = glit != nullptr;
  if (glit)
    for (const Term& a : glit->args)
      if (!a.is_ground()) { ground_args = false; break; }
  if (ground_args) {
    auto [repl_hash, repl_ground] = substituted_hash(c.rewrite_to, c.subst);
    if (repl_ground) {
      std::size_t arg_index = static_cast<std::size_t>(c.path.front()) - 1;
      std::span<const std::int32_t> inner(c.path.data() + 1, c.path.size() - 1);
      std::size_t arg_hash_buf[8];
      std::vector<std::size_t> arg_hash_overflow;
      std::size_t nargs = glit->args.size();
      std::size_t* hashes = arg_hash_buf;
      if (nargs > 8) {
        arg_hash_overflow.resize(nargs);
        hashes = arg_hash_overflow.data();
      }
      for (std::size_t i = 0; i < nargs; ++i)
        hashes[i] = i == arg_index
                        ? replaced_hash(glit->args[i], inner, repl_hash)
                        : glit->args[i].hash();
      std::span<const std::size_t> arg_hashes(hashes, nargs);
      std::uint64_t hash =
          ground_unit_variant_hash(glit->sign, glit->pred, arg_hashes);

      auto product_matches = [&](const Literal& other, Sign sign) {
        if (other.pred != glit->pred || other.sign != sign) return false;
        if (other.args.size() != glit->args.size()) return false;
        for (std::size_t i = 0; i < glit->args.size(); ++i) {
          if (i == arg_index) {
            if (!equals_with_replacement(other.args[i], glit->args[i], inner,
                                         c.rewrite_to, c.subst))
              return false;
          } else if (!(other.args[i] == glit->args[i])) {
            return false;
          }
        }
        return true;
      };

      Sign product_sign = glit->sign;
      Sign opposite =
          product_sign == Sign::Positive ? Sign::Negative : Sign::Positive;
      std::uint64_t negated_hash =
          ground_unit_variant_hash(opposite, glit->pred, arg_hashes);
      bool goal_hit = false;
      for (std::size_t pi = 0; pi < passive_.size(); ++pi) {
        if (passive_hashes_[pi] != negated_hash) continue;
        const Clause& pc = store_[passive_[pi]];
        if (product_matches(pc.literals.front(), opposite)) { goal_hit = true; break; }
      }
      if (!goal_hit) {
        auto it = retained_index_.find(hash);
        if (it != retained_index_.end()) {
          for (ClauseId id : it->second) {
            const Clause& sc = store_[id];
            if (sc.is_unit() && product_matches(sc.literals.front(), product_sign))
              return Step::Continue; // duplicate, never built
          }
        }
      }

      Clause product = materialize_paramodulant(given, c);
      if (as_hot) to_hot_origin(product);
      if (goal_hit) {
        ClauseId id = register_clause(std::move(product));
        proof_clause_ = id;
        stats_.proof_moves = chain_length(id);
        outcome_ = Outcome::Proof;
        return Step::Stop;
      }
      ClauseId id = register_clause(std::move(product));
      retained_index_[hash].push_back(id);
      sos_.push_back(id);
      ++stats_.retained;
      if (!hot_.empty() && heat_depth < config_.heat_level)
        return hot_sweep(id, heat_depth);
      return Step::Continue;
    }
  }

  Clause product = materialize_paramodulant(given, c);
  if (as_hot) to_hot_origin(product);
  std::uint64_t hash = variant_hash(product);
  return process_product(std::move(product), hash, heat_depth);
}

Prover::Step Prover::hot_sweep(ClauseId id, int heat_depth) {
  Step status = Step::Continue;
  for (ClauseId hid : hot_) {
    for (Orientation o : {Orientation::LeftToRight, Orientation::RightToLeft}) {
      para_into_visit(store_[id], store_[hid], o, [&](const ParaCandidate& c) {
        status = on_candidate(store_[id], c, true, heat_depth + 1);
        return status == Step::Continue;
      });
      if (status == Step::Stop) return Step::Stop;
    }
  }
  return status;
}

Prover::Step Prover::infer_pair(const Clause& into, const Clause& from_eq) {
  Step status = Step::Continue;
  for (Orientation o : {Orientation::LeftToRight, Orientation::RightToLeft}) {
    para_into_visit(into, from_eq, o, [&](const ParaCandidate& c) {
      status = on_candidate(into, c, false, 0);
      return status == Step::Continue;
    });
    if (status == Step::Stop) break;
  }
  return status;
}

ProverResult Prover::run(const ProblemSpec& problem) {
  auto start = std::chrono::steady_clock::now();
  if (problem.sos.empty())
    throw std::invalid_argument("malformed problem: list(sos) is empty");

  auto load = [&](const std::vector<Clause>& src, const char* list_name) {
    std::vector<ClauseId> ids;
    for (const Clause& c : src) {
      Clause copy = c;
      copy.origin = InputOrigin{list_name};
      ids.push_back(register_clause(std::move(copy)));
    }
    return ids;
  };
  usable_ = load(problem.usable, "usable");
  for (ClauseId id : usable_)
    if (store_[id].has_positive_equality()) usable_eqs_.push_back(id);
  for (ClauseId id : load(problem.sos, "sos")) sos_.push_back(id);
  hot_ = load(problem.hot, "hot");
  passive_ = load(problem.passive, "passive");
  for (ClauseId id : usable_) retained_index_[variant_hash(store_[id])].push_back(id);
  for (ClauseId id : sos_) retained_index_[variant_hash(store_[id])].push_back(id);
  for (ClauseId id : hot_) retained_index_[variant_hash(store_[id])].push_back(id);
  for (ClauseId id : passive_) {
    if (!store_[id].is_unit() || !store_[id].is_ground())
      passive_ground_units_ = false;
    passive_hashes_.push_back(variant_hash(store_[id]));
  }

  bool done = false;
  // The board may already be the goal.
  for (ClauseId sid : sos_) {
    for (ClauseId pid : passive_) {
      if (unit_conflict(store_[sid], store_[pid])) {
        proof_clause_ = sid;
        stats_.proof_moves = 0;
        outcome_ = Outcome::Proof;
        done = true;
        break;
      }
    }
    if (done) break;
  }

  while (!done && !sos_.empty()) {
    if (stats_.generated >= config_.max_generated) {
      outcome_ = Outcome::BudgetExceeded;
      break;
    }
    ClauseId gid = sos_.front();
    sos_.pop_front();
    ++stats_.given;
    usable_.push_back(gid);
    bool given_eq = store_[gid].has_positive_equality();
    if (given_eq) usable_eqs_.push_back(gid);

    // Into the given from every usable equality.
    for (std::size_t ui = 0; ui < usable_eqs_.size() && !done; ++ui)
      done = infer_pair(store_[gid], store_[usable_eqs_[ui]]) == Step::Stop;
    // From the given into every usable clause when the given is itself
    // an equality (the self pairing already ran above).
    if (given_eq) {
      for (std::size_t ui = 0; ui < usable_.size() && !done; ++ui) {
        ClauseId uid = usable_[ui];
        if (uid == gid) continue;
        done = infer_pair(store_[uid], store_[gid]) == Step::Stop;
      }
    }
  }
  if (!done && sos_.empty() && outcome_ != Outcome::BudgetExceeded &&
      outcome_ != Outcome::Proof)
    outcome_ = Outcome::Saturated;

  stats_.wall_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
  return ProverResult{outcome_, proof_clause_, stats_};
}

std::uint64_t Prover::chain_length(ClauseId id) const {
  std::uint64_t steps = 0;
  ClauseId cur = id;
  while (true) {
    const Origin& o = store_[cur].origin;
    if (std::holds_alternative<InputOrigin>(o)) return steps;
    ClauseId parent = std::holds_alternative<ParaOrigin>(o)
                          ? std::get<ParaOrigin>(o).into_id
                          : std::get<HotOrigin>(o).into_id;
    if (parent < 0 || parent >= cur)
      throw std::logic_error("broken provenance chain at clause " +
                             std::to_string(cur));
    cur = parent;
    ++steps;
  }
}

std::vector<ClauseId> Prover::proof_chain(ClauseId id) const {
  std::vector<ClauseId> chain;
  ClauseId cur = id;
  while (true) {
    chain.push_back(cur);
    const Origin& o = store_.at(cur).origin;
    if (std::holds_alternative<InputOrigin>(o)) break;
    ClauseId parent = std::holds_alternative<ParaOrigin>(o)
                          ? std::get<ParaOrigin>(o).into_id
                          : std::get<HotOrigin>(o).into_id;
    if (parent < 0 || parent >= cur)
      throw std::logic_error("broken provenance chain at clause " +
                             std::to_string(cur));
    cur = parent;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::vector<std::pair<Board, Board>> Prover::extract_moves(
    const ProverResult& result) const {
  if (result.outcome != Outcome::Proof || !result.proof_clause)
    throw std::logic_error("extract_moves requires a proof result");
  std::vector<ClauseId> chain = proof_chain(*result.proof_clause);
  std::vector<Board> boards;
  boards.reserve(chain.size());
  for (ClauseId id : chain) {
    const Clause& c = store_.at(id);
    if (!c.is_unit())
      throw std::logic_error("proof chain clause " + std::to_string(id) +
                             " is not a unit clause");
    boards.push_back(decode_board(c.literals.front()));
  }
  std::vector<std::pair<Board, Board>> moves;
  for (std::size_t i = 0; i + 1 < boards.size(); ++i)
    moves.emplace_back(boards[i], boards[i + 1]);
  return moves;
}

std::size_t Prover::retained_state_count() const {
  std::size_t count = 0;
  for (const Clause& c : store_) {
    if (!c.is_unit()) continue;
    const Literal& lit = c.literals.front();
    if (lit.sign == Sign::Positive && lit.pred == symbols::state_pred()) ++count;
  }
  return count;
}

} // namespace paraslide
