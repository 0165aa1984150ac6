#ifndef PARASLIDE_PARSER_HPP
#define PARASLIDE_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paraslide/clause.hpp"

namespace paraslide {

// Parsed clause lists; the prover's input.
struct ProblemSpec {
  std::vector<Clause> usable;
  std::vector<Clause> sos;
  std::vector<Clause> hot;
  std::vector<Clause> passive;
};

struct SourcePos {
  int line = 1;
  int column = 1;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, SourcePos pos)
      : std::runtime_error("line " + std::to_string(pos.line) + ", column " +
                           std::to_string(pos.column) + ": " + message),
        pos_(pos) {}
  SourcePos pos() const { return pos_; }

private:
  SourcePos pos_;
};

// Grammar: a sequence of "list(name). clause. ... end_of_list." blocks.
// Identifiers starting with u..z are variables; "%" starts a line
// comment. The demodulators list is accepted but must be empty.
ProblemSpec parse_problem(std::string_view text);

std::string format(const Term& t);
std::string format(const Literal& lit);
std::string format(const Clause& c);
// The list-block concrete syntax; parse_problem(format_problem(s))
// round-trips list by list.
std::string format_problem(const ProblemSpec& spec);

} // namespace paraslide

#endif
