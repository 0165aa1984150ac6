#include "paraslide/symbol.hpp"

#include <atomic>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace paraslide::symbols {

namespace {

struct Table {
  std::shared_mutex mutex;
  std::deque<SymbolInfo> infos; // deque keeps references stable
  std::unordered_map<std::string, SymbolId> by_key;
  // Ids below this are fully constructed and readable without the lock.
  std::atomic<std::size_t> published{0};

  static std::string key(std::string_view name, SymbolKind kind) {
    std::string k(name);
    k.push_back(kind == SymbolKind::Variable ? '\x01' : '\x02');
    return k;
  }
};

Table& table() {
  static Table t;
  return t;
}

} // namespace

SymbolId intern(std::string_view name, SymbolKind kind, int arity) {
  Table& t = table();
  std::string k = Table::key(name, kind);
  {
    std::shared_lock lock(t.mutex);
    auto it = t.by_key.find(k);
    if (it != t.by_key.end()) {
      if (t.infos[it->second].arity != arity) {
        throw ArityError("symbol '" + std::string(name) + "' used with arity " +
                         std::to_string(arity) + " but declared with arity " +
                         std::to_string(t.infos[it->second].arity));
      }
      return it->second;
    }
  }
  std::unique_lock lock(t.mutex);
  auto it = t.by_key.find(k);
  if (it != t.by_key.end()) {
    if (t.infos[it->second].arity != arity) {
      throw ArityError("symbol '" + std::string(name) + "' used with arity " +
                       std::to_string(arity) + " but declared with arity " +
                       std::to_string(t.infos[it->second].arity));
    }
    return it->second;
  }
  SymbolId id = static_cast<SymbolId>(t.infos.size());
  t.infos.push_back(SymbolInfo{std::string(name), kind, arity});
  t.by_key.emplace(std::move(k), id);
  t.published.store(t.infos.size(), std::memory_order_release);
  return id;
}

const SymbolInfo& info(SymbolId id) {
  Table& t = table();
  if (id < t.published.load(std::memory_order_acquire)) return t.infos[id];
  std::shared_lock lock(t.mutex);
  return t.infos[id];
}

const std::string& name(SymbolId id) { return info(id).name; }
int arity(SymbolId id) { return info(id).arity; }

SymbolId equal_pred() {
  static SymbolId id = intern("EQUAL", SymbolKind::Fixed, 2);
  return id;
}
SymbolId state_pred() {
  static SymbolId id = intern("STATE", SymbolKind::Fixed, 1);
  return id;
}
SymbolId list_fn() {
  static SymbolId id = intern("l", SymbolKind::Fixed, 2);
  return id;
}
SymbolId tile_fn() {
  static SymbolId id = intern("n", SymbolKind::Fixed, 1);
  return id;
}
SymbolId hole_const() {
  static SymbolId id = intern("hole", SymbolKind::Fixed, 0);
  return id;
}
SymbolId end_const() {
  static SymbolId id = intern("end", SymbolKind::Fixed, 0);
  return id;
}

} // namespace paraslide::symbols
