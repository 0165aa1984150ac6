#include "paraslide/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace paraslide {

struct Term::Node {
  bool var_node;
  Var var;                 // valid when var_node
  SymbolId head;           // valid when !var_node
  std::vector<Term> args;
  std::size_t hash;
  std::int32_t max_var;    // -1 when ground
  std::uint32_t nodes;     // total node count
};

namespace {

std::size_t mix(std::size_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (mix(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Term Term::make_var(SymbolId name, std::int32_t index) {
  auto n = std::make_shared<Node>();
  n->var_node = true;
  n->var = Var{name, index};
  n->head = 0;
  n->hash = hash_combine(hash_combine(0x5641ULL, name), static_cast<std::size_t>(index));
  n->max_var = index;
  n->nodes = 1;
  return Term(std::move(n));
}

Term Term::make_app(SymbolId head, std::vector<Term> args) {
  int arity = symbols::arity(head);
  if (static_cast<std::size_t>(arity) != args.size()) {
    throw ArityError("symbol '" + symbols::name(head) + "' applied to " +
                     std::to_string(args.size()) + " arguments, arity is " +
                     std::to_string(arity));
  }
  auto n = std::make_shared<Node>();
  n->var_node = false;
  n->head = head;
  n->hash = hash_combine(0x4150ULL, head);
  n->max_var = -1;
  n->nodes = 1;
  for (const Term& a : args) {
    n->hash = hash_combine(n->hash, a.hash());
    n->max_var = std::max(n->max_var, a.max_var_index());
    n->nodes += a.node_count();
  }
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_var() const { return node_->var_node; }
const Var& Term::var() const { return node_->var; }
SymbolId Term::head() const { return node_->head; }
std::span<const Term> Term::args() const { return node_->args; }
std::int32_t Term::max_var_index() const { return node_->max_var; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::node_count() const { return node_->nodes; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash) return false;
  if (a.node_->var_node != b.node_->var_node) return false;
  if (a.node_->var_node) return a.node_->var == b.node_->var;
  if (a.node_->head != b.node_->head) return false;
  const auto& xa = a.node_->args;
  const auto& xb = b.node_->args;
  for (std::size_t i = 0; i < xa.size(); ++i)
    if (!(xa[i] == xb[i])) return false;
  return true;
}

const Term* Substitution::lookup(const Var& v) const {
  for (const auto& [bv, t] : bindings_)
    if (bv == v) return &t;
  return nullptr;
}

void Substitution::bind(const Var& v, Term t) {
  bindings_.emplace_back(v, std::move(t));
}

Term apply(const Substitution& subst, const Term& t) {
  if (t.is_ground() || subst.empty()) return t;
  if (t.is_var()) {
    const Term* b = subst.lookup(t.var());
    return b ? *b : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& a : t.args()) {
    Term r = apply(subst, a);
    if (!(r == a)) changed = true;
    args.push_back(std::move(r));
  }
  if (!changed) return t;
  return Term::make_app(t.head(), std::move(args));
}

namespace {

// Full resolution through binding chains; bindings must be acyclic
// (guaranteed by the occurs check).
Term resolve(const Substitution& subst, const Term& t) {
  if (t.is_ground()) return t;
  if (t.is_var()) {
    const Term* b = subst.lookup(t.var());
    return b ? resolve(subst, *b) : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& a : t.args()) {
    Term r = resolve(subst, a);
    if (!(r == a)) changed = true;
    args.push_back(std::move(r));
  }
  if (!changed) return t;
  return Term::make_app(t.head(), std::move(args));
}

// Walks top-level variable chains.
Term walk(const Substitution& subst, Term t) {
  while (t.is_var()) {
    const Term* b = subst.lookup(t.var());
    if (!b) break;
    t = *b;
  }
  return t;
}

bool occurs(const Var& v, const Term& t, const Substitution& subst) {
  if (t.is_ground()) return false;
  if (t.is_var()) {
    if (t.var() == v) return true;
    const Term* b = subst.lookup(t.var());
    return b && occurs(v, *b, subst);
  }
  for (const Term& a : t.args())
    if (occurs(v, a, subst)) return true;
  return false;
}

} // namespace

void Substitution::normalize() {
  for (auto& [v, t] : bindings_) t = resolve(*this, t);
}

bool unify_step(const Term& s0, const Term& t0, Substitution& subst) {
  if (s0.is_ground() && t0.is_ground()) return s0 == t0;
  Term s = walk(subst, s0);
  Term t = walk(subst, t0);
  if (s.is_var() && t.is_var() && s.var() == t.var()) return true;
  if (s.is_var()) {
    if (occurs(s.var(), t, subst)) return false;
    subst.bind(s.var(), t);
    return true;
  }
  if (t.is_var()) {
    if (occurs(t.var(), s, subst)) return false;
    subst.bind(t.var(), s);
    return true;
  }
  if (s.head() != t.head()) return false;
  auto sa = s.args();
  auto ta = t.args();
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (!unify_step(sa[i], ta[i], subst)) return false;
  return true;
}

bool match_ground(const Term& pat, const Term& t, Substitution& subst) {
  if (pat.is_ground()) return pat == t;
  if (pat.is_var()) {
    const Term* b = subst.lookup(pat.var());
    if (b) return *b == t;
    subst.bind(pat.var(), t);
    return true;
  }
  if (pat.head() != t.head()) return false;
  auto pa = pat.args();
  auto ta = t.args();
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (!match_ground(pa[i], ta[i], subst)) return false;
  return true;
}

std::optional<Substitution> unify(const Term& s, const Term& t) {
  Substitution subst;
  if (!unify_step(s, t, subst)) return std::nullopt;
  subst.normalize();
  return subst;
}

namespace {

void collect_subterms(const Term& t, Position& path,
                      std::vector<std::pair<Position, Term>>& out) {
  out.emplace_back(path, t);
  auto args = t.is_var() ? std::span<const Term>{} : t.args();
  for (std::size_t i = 0; i < args.size(); ++i) {
    path.push_back(static_cast<std::int32_t>(i + 1));
    collect_subterms(args[i], path, out);
    path.pop_back();
  }
}

} // namespace

std::vector<std::pair<Position, Term>> subterms(const Term& t) {
  std::vector<std::pair<Position, Term>> out;
  Position path;
  collect_subterms(t, path, out);
  return out;
}

const Term* subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::int32_t idx : p) {
    if (cur->is_var()) return nullptr;
    auto args = cur->args();
    if (idx < 1 || static_cast<std::size_t>(idx) > args.size()) return nullptr;
    cur = &args[idx - 1];
  }
  return cur;
}

namespace {

Term replace_rec(const Term& t, const Position& p, std::size_t depth, const Term& s) {
  if (depth == p.size()) return s;
  if (t.is_var()) throw std::out_of_range("replace_at: position descends into a variable");
  auto args = t.args();
  std::int32_t idx = p[depth];
  if (idx < 1 || static_cast<std::size_t>(idx) > args.size())
    throw std::out_of_range("replace_at: argument index out of range");
  std::vector<Term> copy(args.begin(), args.end());
  copy[idx - 1] = replace_rec(args[idx - 1], p, depth + 1, s);
  return Term::make_app(t.head(), std::move(copy));
}

} // namespace

Term replace_at(const Term& t, const Position& p, const Term& s) {
  return replace_rec(t, p, 0, s);
}

std::size_t replaced_hash(const Term& t, std::span<const std::int32_t> p,
                          std::size_t repl_hash) {
  if (p.empty()) return repl_hash;
  if (t.is_var()) throw std::out_of_range("replaced_hash: position descends into a variable");
  auto args = t.args();
  std::int32_t idx = p.front();
  if (idx < 1 || static_cast<std::size_t>(idx) > args.size())
    throw std::out_of_range("replaced_hash: argument index out of range");
  std::size_t h = hash_combine(0x4150ULL, t.head());
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::size_t ah = static_cast<std::size_t>(idx - 1) == i
                         ? replaced_hash(args[i], p.subspan(1), repl_hash)
                         : args[i].hash();
    h = hash_combine(h, ah);
  }
  return h;
}

bool equals_with_replacement(const Term& candidate, const Term& base,
                             std::span<const std::int32_t> p, const Term& repl) {
  if (p.empty()) return candidate == repl;
  if (base.is_var()) throw std::out_of_range("equals_with_replacement: position descends into a variable");
  if (candidate.is_var() || candidate.head() != base.head()) return false;
  auto ca = candidate.args();
  auto ba = base.args();
  std::int32_t idx = p.front();
  if (idx < 1 || static_cast<std::size_t>(idx) > ba.size())
    throw std::out_of_range("equals_with_replacement: argument index out of range");
  for (std::size_t i = 0; i < ba.size(); ++i) {
    if (static_cast<std::size_t>(idx - 1) == i) {
      if (!equals_with_replacement(ca[i], ba[i], p.subspan(1), repl)) return false;
    } else {
      if (!(ca[i] == ba[i])) return false;
    }
  }
  return true;
}

std::pair<std::size_t, bool> substituted_hash(const Term& t,
                                              const Substitution& subst) {
  if (t.is_ground()) return {t.hash(), true};
  if (t.is_var()) {
    const Term* b = subst.lookup(t.var());
    if (b) return {b->hash(), b->is_ground()};
    return {t.hash(), false};
  }
  std::size_t h = hash_combine(0x4150ULL, t.head());
  bool ground = true;
  for (const Term& a : t.args()) {
    auto [ah, ag] = substituted_hash(a, subst);
    h = hash_combine(h, ah);
    ground = ground && ag;
  }
  return {h, ground};
}

bool equals_substituted(const Term& candidate, const Term& pat,
                        const Substitution& subst) {
  if (pat.is_ground()) return candidate == pat;
  if (pat.is_var()) {
    const Term* b = subst.lookup(pat.var());
    if (b) return candidate == *b;
    return candidate.is_var() && candidate.var() == pat.var();
  }
  if (candidate.is_var() || candidate.head() != pat.head()) return false;
  auto ca = candidate.args();
  auto pa = pat.args();
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (!equals_substituted(ca[i], pa[i], subst)) return false;
  return true;
}

bool equals_with_replacement(const Term& candidate, const Term& base,
                             std::span<const std::int32_t> p, const Term& pat,
                             const Substitution& subst) {
  if (p.empty()) return equals_substituted(candidate, pat, subst);
  if (base.is_var()) throw std::out_of_range("equals_with_replacement: position descends into a variable");
  if (candidate.is_var() || candidate.head() != base.head()) return false;
  auto ca = candidate.args();
  auto ba = base.args();
  std::int32_t idx = p.front();
  if (idx < 1 || static_cast<std::size_t>(idx) > ba.size())
    throw std::out_of_range("equals_with_replacement: argument index out of range");
  for (std::size_t i = 0; i < ba.size(); ++i) {
    if (static_cast<std::size_t>(idx - 1) == i) {
      if (!equals_with_replacement(ca[i], ba[i], p.subspan(1), pat, subst))
        return false;
    } else {
      if (!(ca[i] == ba[i])) return false;
    }
  }
  return true;
}

Term rename_apart(const Term& t, std::int32_t offset) {
  if (t.is_ground() || offset == 0) return t;
  if (t.is_var()) return Term::make_var(t.var().name, t.var().index + offset);
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(rename_apart(a, offset));
  return Term::make_app(t.head(), std::move(args));
}

} // namespace paraslide
