#include "ontoprobe/folify/tptp.hpp"

#include <cctype>
#include <set>
#include <unordered_set>

#include "ontoprobe/kif/analysis.hpp"

namespace ontoprobe::folify {

using kif::Formula;
using kif::Term;

TptpParseError::TptpParseError(std::size_t line, const std::string& detail)
    : std::runtime_error("TPTP parse error at line " + std::to_string(line) + ": " + detail),
      line_(line) {}

namespace {

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

void escape_into(std::string_view name, std::string& out) {
  static constexpr char kHex[] = "0123456789abcdef";
  for (char ch : name) {
    auto c = static_cast<unsigned char>(ch);
    if (is_alnum(ch)) {
      out += ch;
    } else if (ch == '_') {
      out += "__";
    } else if (ch == '-') {
      out += "_d";
    } else {
      out += "_x";
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

// Reverses escape_into; `allow_arity` accepts a trailing `_<digits>` suffix.
std::optional<std::string> unescape(std::string_view s, bool allow_arity) {
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    char c = s[i];
    if (is_alnum(c)) {
      out += c;
      ++i;
      continue;
    }
    if (c != '_' || i + 1 >= s.size()) return std::nullopt;
    char n = s[i + 1];
    if (n == '_') {
      out += '_';
      i += 2;
    } else if (n == 'd') {
      out += '-';
      i += 2;
    } else if (n == 'x') {
      if (i + 3 >= s.size()) return std::nullopt;
      int hi = hex_value(s[i + 2]);
      int lo = hex_value(s[i + 3]);
      if (hi < 0 || lo < 0) return std::nullopt;
      out += static_cast<char>(hi * 16 + lo);
      i += 4;
    } else if (allow_arity && n >= '0' && n <= '9') {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') return std::nullopt;
      }
      break;
    } else {
      return std::nullopt;
    }
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace

std::string encode_functor(std::string_view name, std::size_t arity) {
  if (name.empty()) throw UnencodableSymbol("empty symbol name");
  std::string out = "s_";
  escape_into(name, out);
  if (arity > 0) out += "_" + std::to_string(arity);
  return out;
}

std::string encode_variable(std::string_view name) {
  if (name.empty()) throw UnencodableSymbol("empty variable name");
  std::string out = "V";
  escape_into(name, out);
  return out;
}

std::optional<std::string> decode_functor(std::string_view symbol) {
  if (symbol.size() < 3 || symbol.substr(0, 2) != "s_") return std::nullopt;
  return unescape(symbol.substr(2), true);
}

std::optional<std::string> decode_variable(std::string_view symbol) {
  if (symbol.size() < 2 || symbol[0] != 'V') return std::nullopt;
  return unescape(symbol.substr(1), false);
}

// ---------------------------------------------------------------------------
// Output

namespace {

void term_to_tptp(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Constant: out += encode_functor(t.name(), 0); return;
    case Term::Kind::Variable: out += encode_variable(t.name()); return;
    case Term::Kind::RowVariable:
      throw UnencodableSymbol("row variable @" + t.name() + " has no first-order encoding");
    case Term::Kind::Compound: {
      if (!t.head().is_constant()) {
        throw UnencodableSymbol("variable function head in " + kif::render(t));
      }
      out += encode_functor(t.head().name(), t.args().size());
      out += '(';
      bool first = true;
      for (const Term& a : t.args()) {
        if (!first) out += ',';
        first = false;
        term_to_tptp(a, out);
      }
      out += ')';
      return;
    }
  }
}

void formula_to_tptp(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      if (!f.predicate().is_constant()) {
        throw UnencodableSymbol("variable predicate in " + kif::render(f));
      }
      out += encode_functor(f.predicate().name(), f.args().size());
      if (f.args().empty()) return;
      out += '(';
      bool first = true;
      for (const Term& a : f.args()) {
        if (!first) out += ',';
        first = false;
        term_to_tptp(a, out);
      }
      out += ')';
      return;
    }
    case Formula::Kind::Equal:
      out += '(';
      term_to_tptp(f.lhs_term(), out);
      out += " = ";
      term_to_tptp(f.rhs_term(), out);
      out += ')';
      return;
    case Formula::Kind::Not:
      out += "~ ";
      formula_to_tptp(f.operands()[0], out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      const char* op = f.kind() == Formula::Kind::And    ? " & "
                       : f.kind() == Formula::Kind::Or   ? " | "
                       : f.kind() == Formula::Kind::Implies ? " => "
                                                          : " <=> ";
      out += '(';
      bool first = true;
      for (const Formula& g : f.operands()) {
        if (!first) out += op;
        first = false;
        formula_to_tptp(g, out);
      }
      out += ')';
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      out += f.kind() == Formula::Kind::Forall ? "(! [" : "(? [";
      bool first = true;
      for (const auto& v : f.variables()) {
        if (!first) out += ',';
        first = false;
        out += encode_variable(v);
      }
      out += "] : ";
      formula_to_tptp(f.body(), out);
      out += ')';
      return;
    }
  }
}

bool is_lower_word(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s) {
    if (!is_alnum(c) && c != '_') return false;
  }
  return true;
}

}  // namespace

std::string to_tptp(const Formula& f) {
  std::string out;
  formula_to_tptp(f, out);
  return out;
}

std::string emit_tptp(const AxiomSet& axioms, const std::optional<Formula>& conjecture) {
  std::string out;
  for (const Axiom& a : axioms.axioms()) {
    if (!is_lower_word(a.name) || a.name == kConjectureName) {
      throw UnencodableSymbol("axiom name '" + a.name + "' is not a usable TPTP name");
    }
    out += "fof(";
    out += a.name;
    out += ", axiom, ";
    formula_to_tptp(a.formula, out);
    out += ").\n";
  }
  if (conjecture) out += conjecture_line(*conjecture);
  return out;
}

std::string conjecture_line(const Formula& conjecture) {
  if (!kif::is_closed(conjecture)) {
    throw std::invalid_argument("conjecture must be closed: " + kif::render(conjecture));
  }
  std::string out = "fof(";
  out += kConjectureName;
  out += ", conjecture, ";
  formula_to_tptp(conjecture, out);
  out += ").\n";
  return out;
}

// ---------------------------------------------------------------------------
// Input

namespace {

enum class Tok { Word, Upper, Quoted, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        pos_ += 2;
        while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
          if (text_[pos_] == '\n') ++line_;
          ++pos_;
        }
        pos_ += 2;
      } else {
        break;
      }
    }
  }

  Token next() {
    const char c = text_[pos_];
    const std::size_t start = pos_;
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '$' || c == '_') {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              (text_[pos_] == '.' && pos_ + 1 < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) &&
               std::isdigit(static_cast<unsigned char>(c))))) {
        ++pos_;
      }
      std::string word(text_.substr(start, pos_ - start));
      return {(c >= 'A' && c <= 'Z') || c == '_' ? Tok::Upper : Tok::Word, std::move(word), line_};
    }
    if (c == '\'' || c == '"') {
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != c) {
        if (text_[pos_] == '\\') ++pos_;
        ++pos_;
      }
      if (pos_ >= text_.size()) throw TptpParseError(line_, "unterminated quoted token");
      ++pos_;
      std::string raw(text_.substr(start + 1, pos_ - start - 2));
      return {Tok::Quoted, c == '\'' ? raw : "\"" + raw + "\"", line_};
    }
    static constexpr std::string_view kOps[] = {"<=>", "<~>", "=>", "<=", "~|", "~&", "!=",
                                                "(",   ")",   "[",  "]",  ",",  ".",  ":",
                                                "!",   "?",   "~",  "&",  "|",  "="};
    for (std::string_view op : kOps) {
      if (text_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return {Tok::Punct, std::string(op), line_};
      }
    }
    throw TptpParseError(line_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<TptpInput> inputs() {
    std::vector<TptpInput> out;
    while (peek().kind != Tok::End) {
      const Token& kw = take();
      if (kw.kind != Tok::Word || (kw.text != "fof" && kw.text != "cnf")) {
        fail("expected fof(...) or cnf(...), got '" + kw.text + "'");
      }
      const bool clausal = kw.text == "cnf";
      expect("(");
      const Token& name = take();
      if (name.kind == Tok::Punct || name.kind == Tok::End) fail("expected formula name");
      expect(",");
      const Token& role = take();
      if (role.kind != Tok::Word) fail("expected formula role");
      expect(",");
      Formula f = formula();
      if (clausal) {
        auto free = kif::free_variables_ordered(f);
        if (!free.empty()) f = Formula::forall(std::move(free), std::move(f));
      }
      if (accept(",")) skip_annotations();
      expect(")");
      expect(".");
      out.push_back(TptpInput{name.text, role.text, std::move(f)});
    }
    return out;
  }

  Formula single() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("trailing input after formula");
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() {
    const Token& t = toks_[i_];
    if (t.kind != Tok::End) ++i_;
    return t;
  }
  bool at(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool accept(std::string_view p) {
    if (!at(p)) return false;
    ++i_;
    return true;
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail("expected '" + std::string(p) + "', got '" + peek().text + "'");
  }
  [[noreturn]] void fail(const std::string& what) const { throw TptpParseError(peek().line, what); }

  void skip_annotations() {
    int depth = 0;
    while (peek().kind != Tok::End) {
      if (at("(") || at("[")) {
        ++depth;
      } else if (at(")") || at("]")) {
        if (depth == 0) return;
        --depth;
      }
      ++i_;
    }
  }

  Formula formula() {
    Formula lhs = unitary();
    if (at("&") || at("|")) {
      const std::string op = peek().text;
      std::vector<Formula> ops;
      ops.push_back(std::move(lhs));
      while (accept(op)) ops.push_back(unitary());
      if (at("&") || at("|")) fail("mixed '&' and '|' without parentheses");
      return op == "&" ? Formula::conjunction(std::move(ops)) : Formula::disjunction(std::move(ops));
    }
    if (accept("=>")) return Formula::implies(std::move(lhs), unitary());
    if (accept("<=")) {
      Formula rhs = unitary();
      return Formula::implies(std::move(rhs), std::move(lhs));
    }
    if (accept("<=>")) return Formula::iff(std::move(lhs), unitary());
    if (accept("<~>")) return Formula::negation(Formula::iff(std::move(lhs), unitary()));
    if (accept("~|")) return Formula::negation(Formula::disjunction({std::move(lhs), unitary()}));
    if (accept("~&")) return Formula::negation(Formula::conjunction({std::move(lhs), unitary()}));
    return lhs;
  }

  Formula unitary() {
    if (accept("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    if (accept("~")) return Formula::negation(unitary());
    if (at("!") || at("?")) {
      const bool universal = take().text == "!";
      expect("[");
      std::vector<std::string> vars;
      std::unordered_set<std::string> seen;
      do {
        const Token& v = take();
        if (v.kind != Tok::Upper) fail("expected variable in quantifier list");
        std::string name = decode_variable(v.text).value_or(v.text);
        if (!seen.insert(name).second) fail("duplicate quantified variable " + v.text);
        vars.push_back(std::move(name));
      } while (accept(","));
      expect("]");
      expect(":");
      Formula body = unitary();
      return universal ? Formula::forall(std::move(vars), std::move(body))
                       : Formula::exists(std::move(vars), std::move(body));
    }
    return atomic();
  }

  Formula atomic() {
    const bool is_var = peek().kind == Tok::Upper;
    Term lhs = term();
    if (accept("=")) return Formula::equal(std::move(lhs), term());
    if (accept("!=")) return Formula::negation(Formula::equal(std::move(lhs), term()));
    if (is_var) fail("variable used as a formula");
    if (lhs.is_compound()) {
      return Formula::atom(lhs.head(), std::vector<Term>(lhs.args().begin(), lhs.args().end()));
    }
    return Formula::atom(std::move(lhs), {});
  }

  Term term() {
    const Token& t = take();
    if (t.kind == Tok::Upper) return Term::variable(decode_variable(t.text).value_or(t.text));
    if (t.kind != Tok::Word && t.kind != Tok::Quoted) fail("expected a term, got '" + t.text + "'");
    std::string name = t.kind == Tok::Word ? decode_functor(t.text).value_or(t.text) : t.text;
    if (!accept("(")) return Term::constant(std::move(name));
    std::vector<Term> args;
    do {
      args.push_back(term());
    } while (accept(","));
    expect(")");
    return Term::compound(Term::constant(std::move(name)), std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

std::vector<TptpInput> parse_tptp(std::string_view text) {
  return Parser(Lexer(text).run()).inputs();
}

Formula parse_tptp_formula(std::string_view text) { return Parser(Lexer(text).run()).single(); }

}  // namespace ontoprobe::folify
