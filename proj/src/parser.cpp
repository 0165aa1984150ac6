#include "paraslide/parser.hpp"

#include <cctype>

namespace paraslide {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_variable_name(std::string_view name) {
  return !name.empty() && name[0] >= 'u' && name[0] <= 'z';
}

struct Token {
  enum Kind { Ident, LParen, RParen, Comma, Dot, Minus, Eof } kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_trivia();
    current_.pos = SourcePos{line_, column_};
    if (pos_ >= text_.size()) {
      current_.kind = Token::Eof;
      current_.text.clear();
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '(': current_.kind = Token::LParen; break;
      case ')': current_.kind = Token::RParen; break;
      case ',': current_.kind = Token::Comma; break;
      case '.': current_.kind = Token::Dot; break;
      case '-': current_.kind = Token::Minus; break;
      default:
        if (is_ident_char(c)) {
          std::size_t start = pos_;
          while (pos_ < text_.size() && is_ident_char(text_[pos_])) consume();
          current_.kind = Token::Ident;
          current_.text = std::string(text_.substr(start, pos_ - start));
          return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'",
                         current_.pos);
    }
    current_.text = std::string(1, c);
    consume();
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') consume();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        consume();
      } else {
        break;
      }
    }
  }

  void consume() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_;
};

class Parser {
public:
  explicit Parser(std::string_view text) : lexer_(text) {
    // Pin the core vocabulary's arities before anything user-written
    // gets a chance to intern them differently.
    symbols::equal_pred();
    symbols::state_pred();
    symbols::list_fn();
    symbols::tile_fn();
    symbols::hole_const();
    symbols::end_const();
  }

  ProblemSpec parse() {
    ProblemSpec spec;
    while (lexer_.peek().kind != Token::Eof) {
      Token head = expect(Token::Ident, "list declaration");
      if (head.text != "list")
        throw ParseError("expected 'list(...)', found '" + head.text + "'",
                         head.pos);
      expect(Token::LParen, "'('");
      Token name = expect(Token::Ident, "list name");
      expect(Token::RParen, "')'");
      expect(Token::Dot, "'.'");
      std::vector<Clause> clauses;
      while (!(lexer_.peek().kind == Token::Ident &&
               lexer_.peek().text == "end_of_list")) {
        if (lexer_.peek().kind == Token::Eof)
          throw ParseError("unterminated list(" + name.text + "), missing end_of_list",
                           lexer_.peek().pos);
        clauses.push_back(parse_clause(name.text));
        expect(Token::Dot, "'.' after clause");
      }
      lexer_.take();
      expect(Token::Dot, "'.' after end_of_list");
      store(name, std::move(clauses), spec);
    }
    return spec;
  }

private:
  void store(const Token& name, std::vector<Clause> clauses, ProblemSpec& spec) {
    auto append = [&](std::vector<Clause>& dst) {
      for (Clause& c : clauses) dst.push_back(std::move(c));
    };
    if (name.text == "usable") append(spec.usable);
    else if (name.text == "sos") append(spec.sos);
    else if (name.text == "hot") append(spec.hot);
    else if (name.text == "passive") append(spec.passive);
    else if (name.text == "demodulators") {
      if (!clauses.empty())
        throw ParseError("list(demodulators) must be empty", name.pos);
    } else {
      throw ParseError("unknown list name '" + name.text + "'", name.pos);
    }
  }

  Clause parse_clause(const std::string& list_name) {
    Sign sign = Sign::Positive;
    if (lexer_.peek().kind == Token::Minus) {
      lexer_.take();
      sign = Sign::Negative;
    }
    Token head = expect(Token::Ident, "predicate");
    if (is_variable_name(head.text))
      throw ParseError("predicate '" + head.text + "' would be a variable", head.pos);
    std::vector<Term> args = parse_args();
    SymbolId pred;
    try {
      pred = symbols::intern(head.text, SymbolKind::Fixed,
                             static_cast<int>(args.size()));
    } catch (const ArityError& e) {
      throw ParseError(e.what(), head.pos);
    }
    return Clause{-1, {Literal{sign, pred, std::move(args)}}, InputOrigin{list_name}};
  }

  std::vector<Term> parse_args() {
    std::vector<Term> args;
    if (lexer_.peek().kind != Token::LParen) return args;
    lexer_.take();
    args.push_back(parse_term());
    while (lexer_.peek().kind == Token::Comma) {
      lexer_.take();
      args.push_back(parse_term());
    }
    expect(Token::RParen, "')' or ','");
    return args;
  }

  Term parse_term() {
    Token head = expect(Token::Ident, "term");
    if (is_variable_name(head.text)) {
      if (lexer_.peek().kind == Token::LParen)
        throw ParseError("variable '" + head.text + "' cannot take arguments",
                         head.pos);
      return Term::make_var(symbols::intern(head.text, SymbolKind::Variable, 0));
    }
    std::vector<Term> args = parse_args();
    try {
      SymbolId fn = symbols::intern(head.text, SymbolKind::Fixed,
                                    static_cast<int>(args.size()));
      return Term::make_app(fn, std::move(args));
    } catch (const ArityError& e) {
      throw ParseError(e.what(), head.pos);
    }
  }

  Token expect(Token::Kind kind, const char* what) {
    if (lexer_.peek().kind != kind)
      throw ParseError(std::string("expected ") + what +
                           (lexer_.peek().kind == Token::Eof
                                ? ", found end of input"
                                : ", found '" + lexer_.peek().text + "'"),
                       lexer_.peek().pos);
    return lexer_.take();
  }

  Lexer lexer_;
};

} // namespace

ProblemSpec parse_problem(std::string_view text) { return Parser(text).parse(); }

namespace {

void format_term(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += symbols::name(t.var().name);
    if (t.var().index != 0) out += std::to_string(t.var().index);
    return;
  }
  out += symbols::name(t.head());
  if (!t.args().empty()) {
    out.push_back('(');
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) out.push_back(',');
      format_term(t.args()[i], out);
    }
    out.push_back(')');
  }
}

} // namespace

std::string format(const Term& t) {
  std::string out;
  format_term(t, out);
  return out;
}

std::string format(const Literal& lit) {
  std::string out;
  if (lit.sign == Sign::Negative) out.push_back('-');
  out += symbols::name(lit.pred);
  if (!lit.args.empty()) {
    out.push_back('(');
    for (std::size_t i = 0; i < lit.args.size(); ++i) {
      if (i) out.push_back(',');
      format_term(lit.args[i], out);
    }
    out.push_back(')');
  }
  return out;
}

std::string format(const Clause& c) {
  std::string out;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (i) out += " | ";
    out += format(c.literals[i]);
  }
  return out;
}

std::string format_problem(const ProblemSpec& spec) {
  std::string out;
  auto block = [&](const char* name, const std::vector<Clause>& clauses) {
    if (clauses.empty()) return;
    out += "list(";
    out += name;
    out += ").\n";
    for (const Clause& c : clauses) {
      out += format(c);
      out += ".\n";
    }
    out += "end_of_list.\n";
  };
  block("usable", spec.usable);
  block("sos", spec.sos);
  block("hot", spec.hot);
  block("passive", spec.passive);
  return out;
}

} // namespace paraslide
