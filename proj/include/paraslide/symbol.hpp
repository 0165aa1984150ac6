#ifndef PARASLIDE_SYMBOL_HPP
#define PARASLIDE_SYMBOL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace paraslide {

using SymbolId = std::uint32_t;

enum class SymbolKind { Variable, Fixed };

struct SymbolInfo {
  std::string name;
  SymbolKind kind;
  int arity; // 0 for variables and constants
};

// Raised when a symbol is used with two different arities in one run.
class ArityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Process-wide interner. (name, kind) is the identity; the arity is
// recorded on first intern and enforced afterwards. Reads are
// concurrent, inserts serialized.
namespace symbols {

SymbolId intern(std::string_view name, SymbolKind kind, int arity);
const SymbolInfo& info(SymbolId id);
const std::string& name(SymbolId id);
int arity(SymbolId id);

// Common vocabulary, interned on first use.
SymbolId equal_pred();  // EQUAL/2
SymbolId state_pred();  // STATE/1
SymbolId list_fn();     // l/2
SymbolId tile_fn();     // n/1
SymbolId hole_const();  // hole/0
SymbolId end_const();   // end/0

} // namespace symbols

} // namespace paraslide

#endif
