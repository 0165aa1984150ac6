#include "paraslide/clause.hpp"

#include <algorithm>

namespace paraslide {

bool operator==(const Literal& a, const Literal& b) {
  if (a.sign != b.sign || a.pred != b.pred) return false;
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!(a.args[i] == b.args[i])) return false;
  return true;
}

Literal make_literal(Sign sign, SymbolId pred, std::vector<Term> args) {
  int arity = symbols::arity(pred);
  if (static_cast<std::size_t>(arity) != args.size()) {
    throw ArityError("predicate '" + symbols::name(pred) + "' applied to " +
                     std::to_string(args.size()) + " arguments, arity is " +
                     std::to_string(arity));
  }
  return Literal{sign, pred, std::move(args)};
}

bool Clause::is_ground() const {
  for (const Literal& lit : literals)
    for (const Term& t : lit.args)
      if (!t.is_ground()) return false;
  return true;
}

bool Clause::has_positive_equality() const {
  return !literals.empty() && literals.front().sign == Sign::Positive &&
         literals.front().pred == symbols::equal_pred();
}

Literal apply(const Substitution& subst, const Literal& lit) {
  if (subst.empty()) return lit;
  std::vector<Term> args;
  args.reserve(lit.args.size());
  for (const Term& t : lit.args) args.push_back(apply(subst, t));
  return Literal{lit.sign, lit.pred, std::move(args)};
}

Literal rename_apart(const Literal& lit, std::int32_t offset) {
  std::vector<Term> args;
  args.reserve(lit.args.size());
  for (const Term& t : lit.args) args.push_back(rename_apart(t, offset));
  return Literal{lit.sign, lit.pred, std::move(args)};
}

std::int32_t max_var_index(const Literal& lit) {
  std::int32_t m = -1;
  for (const Term& t : lit.args) m = std::max(m, t.max_var_index());
  return m;
}

std::int32_t max_var_index(const Clause& c) {
  std::int32_t m = -1;
  for (const Literal& lit : c.literals) m = std::max(m, max_var_index(lit));
  return m;
}

namespace {

// Bijective variable correspondence built during a parallel walk.
struct VarBijection {
  std::vector<std::pair<Var, Var>> pairs;

  bool admit(const Var& a, const Var& b) {
    for (const auto& [pa, pb] : pairs) {
      if (pa == a) return pb == b;
      if (pb == b) return false;
    }
    pairs.emplace_back(a, b);
    return true;
  }
};

bool variant_terms(const Term& a, const Term& b, VarBijection& bij) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return bij.admit(a.var(), b.var());
  if (a.is_ground() && b.is_ground()) return a == b;
  if (a.head() != b.head()) return false;
  auto aa = a.args();
  auto ba = b.args();
  for (std::size_t i = 0; i < aa.size(); ++i)
    if (!variant_terms(aa[i], ba[i], bij)) return false;
  return true;
}

std::uint64_t vmix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0x100000001b3ULL;
  return h;
}

std::uint64_t variant_hash_term(const Term& t, std::vector<Var>& seen,
                                std::uint64_t h) {
  if (t.is_var()) {
    std::size_t ord = seen.size();
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i] == t.var()) { ord = i; break; }
    if (ord == seen.size()) seen.push_back(t.var());
    return vmix(h, 0x76a5ULL + ord);
  }
  if (t.is_ground()) return vmix(h, t.hash());
  h = vmix(h, t.head());
  for (const Term& a : t.args()) h = variant_hash_term(a, seen, h);
  return h;
}

} // namespace

bool is_variant(const Clause& a, const Clause& b) {
  if (a.literals.size() != b.literals.size()) return false;
  VarBijection bij;
  for (std::size_t i = 0; i < a.literals.size(); ++i) {
    const Literal& la = a.literals[i];
    const Literal& lb = b.literals[i];
    if (la.sign != lb.sign || la.pred != lb.pred) return false;
    if (la.args.size() != lb.args.size()) return false;
    for (std::size_t j = 0; j < la.args.size(); ++j)
      if (!variant_terms(la.args[j], lb.args[j], bij)) return false;
  }
  return true;
}

std::uint64_t variant_hash(const Clause& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::vector<Var> seen;
  for (const Literal& lit : c.literals) {
    h = vmix(h, lit.sign == Sign::Positive ? 1 : 2);
    h = vmix(h, lit.pred);
    for (const Term& t : lit.args) h = variant_hash_term(t, seen, h);
  }
  return h;
}

std::uint64_t ground_unit_variant_hash(Sign sign, SymbolId pred,
                                       std::span<const std::size_t> arg_hashes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = vmix(h, sign == Sign::Positive ? 1 : 2);
  h = vmix(h, pred);
  for (std::size_t ah : arg_hashes) h = vmix(h, ah);
  return h;
}

std::optional<Substitution> unit_conflict(const Clause& a, const Clause& b) {
  if (!a.is_unit() || !b.is_unit()) return std::nullopt;
  const Literal& la = a.literals.front();
  Literal lb = b.literals.front();
  if (la.pred != lb.pred || la.sign == lb.sign) return std::nullopt;
  std::int32_t offset = max_var_index(la) + 1;
  if (offset > 0 && max_var_index(lb) >= 0) lb = rename_apart(lb, offset);
  Substitution subst;
  for (std::size_t i = 0; i < la.args.size(); ++i)
    if (!unify_step(la.args[i], lb.args[i], subst)) return std::nullopt;
  subst.normalize();
  return subst;
}

std::size_t clause_weight(const Clause& c) {
  std::size_t w = 0;
  for (const Literal& lit : c.literals) {
    w += 1; // the predicate symbol
    for (const Term& t : lit.args) w += t.node_count();
  }
  return w;
}

} // namespace paraslide
