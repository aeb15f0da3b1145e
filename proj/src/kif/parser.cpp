#include "ontoprobe/kif/parser.hpp"

#include <array>
#include <unordered_set>

namespace ontoprobe::kif {

ParseError::ParseError(Code code, SourceLocation where, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + " at " + std::to_string(where.line) + ":" +
                         std::to_string(where.column) + (detail.empty() ? "" : ": " + detail)),
      code_(code),
      where_(where) {}

const char* to_string(ParseError::Code code) noexcept {
  switch (code) {
    case ParseError::Code::UnbalancedParens: return "UnbalancedParens";
    case ParseError::Code::EmptyExpression: return "EmptyExpression";
    case ParseError::Code::MalformedQuantifier: return "MalformedQuantifier";
    case ParseError::Code::MalformedConnective: return "MalformedConnective";
    case ParseError::Code::UnexpectedToken: return "UnexpectedToken";
  }
  return "ParseError";
}

bool is_non_logical_predicate(std::string_view name) noexcept {
  static constexpr std::array<std::string_view, 4> kNames = {"documentation", "comment",
                                                             "termFormat", "format"};
  for (auto n : kNames) {
    if (n == name) return true;
  }
  return false;
}

namespace {

struct SExpr {
  bool is_list = false;
  std::string token;
  std::vector<SExpr> items;
  SourceLocation where;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) break;
      if (text_[pos_] == ')') {
        throw ParseError(ParseError::Code::UnbalancedParens, here(), "unexpected ')'");
      }
      if (text_[pos_] != '(') {
        throw ParseError(ParseError::Code::UnexpectedToken, here(),
                         "top-level statements must be parenthesised");
      }
      out.push_back(read_list());
    }
    return out;
  }

 private:
  SourceLocation here() const { return {line_, column_, pos_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read_list() {
    SExpr list;
    list.is_list = true;
    list.where = here();
    advance();  // '('
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        // Point at the opening parenthesis: it is the one left unmatched.
        throw ParseError(ParseError::Code::UnbalancedParens, list.where, "missing ')'");
      }
      char c = text_[pos_];
      if (c == ')') {
        advance();
        return list;
      }
      if (c == '(') {
        list.items.push_back(read_list());
      } else {
        list.items.push_back(read_atom());
      }
    }
  }

  SExpr read_atom() {
    SExpr atom;
    atom.where = here();
    std::size_t start = pos_;
    if (text_[pos_] == '"') {
      advance();
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
        advance();
      }
      if (pos_ >= text_.size()) {
        throw ParseError(ParseError::Code::UnexpectedToken, atom.where, "unterminated string");
      }
      advance();
    } else {
      while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (c == '(' || c == ')' || c == ';' || c == '"' || c == ' ' || c == '\t' || c == '\n' ||
            c == '\r' || c == '\f' || c == '\v') {
          break;
        }
        advance();
      }
    }
    atom.token = std::string(text_.substr(start, pos_ - start));
    return atom;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool is_operator(std::string_view s) {
  return s == "=>" || s == "<=>" || s == "and" || s == "or" || s == "not" || s == "forall" ||
         s == "exists" || s == "equal";
}

Term to_term(const SExpr& e) {
  if (!e.is_list) {
    const std::string& tok = e.token;
    if (tok.size() > 1 && tok[0] == '?') return Term::variable(tok.substr(1));
    if (tok.size() > 1 && tok[0] == '@') return Term::row_variable(tok.substr(1));
    if (tok == "?" || tok == "@") {
      throw ParseError(ParseError::Code::UnexpectedToken, e.where, "variable without a name");
    }
    return Term::constant(tok);
  }
  if (e.items.empty()) throw ParseError(ParseError::Code::EmptyExpression, e.where, "");
  if (e.items.size() == 1) {
    throw ParseError(ParseError::Code::EmptyExpression, e.where, "function term without arguments");
  }
  Term head = to_term(e.items.front());
  if (head.is_compound()) {
    throw ParseError(ParseError::Code::UnexpectedToken, e.items.front().where,
                     "compound function head");
  }
  std::vector<Term> args;
  args.reserve(e.items.size() - 1);
  for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(to_term(e.items[i]));
  return Term::compound(std::move(head), std::move(args));
}

Formula to_formula(const SExpr& e) {
  if (!e.is_list) {
    // A bare symbol in formula position: a propositional constant or a
    // formula-valued variable. Later stages decide whether it is translatable.
    Term t = to_term(e);
    if (t.is_row_variable()) {
      throw ParseError(ParseError::Code::UnexpectedToken, e.where, "row variable as formula");
    }
    return Formula::atom(std::move(t), {});
  }
  if (e.items.empty()) throw ParseError(ParseError::Code::EmptyExpression, e.where, "");

  const SExpr& head = e.items.front();
  const std::size_t argc = e.items.size() - 1;
  if (!head.is_list && is_operator(head.token)) {
    const std::string& op = head.token;
    auto operand = [&](std::size_t i) { return to_formula(e.items[i]); };
    auto malformed = [&](const char* what) {
      return ParseError(ParseError::Code::MalformedConnective, e.where, what);
    };
    if (op == "not") {
      if (argc != 1) throw malformed("'not' takes one operand");
      return Formula::negation(operand(1));
    }
    if (op == "=>" || op == "<=>") {
      if (argc != 2) throw malformed("implication takes two operands");
      return op == "=>" ? Formula::implies(operand(1), operand(2))
                        : Formula::iff(operand(1), operand(2));
    }
    if (op == "and" || op == "or") {
      if (argc < 2) throw malformed("'and'/'or' need at least two operands");
      std::vector<Formula> ops;
      ops.reserve(argc);
      for (std::size_t i = 1; i <= argc; ++i) ops.push_back(operand(i));
      return op == "and" ? Formula::conjunction(std::move(ops))
                         : Formula::disjunction(std::move(ops));
    }
    if (op == "equal") {
      if (argc != 2) throw malformed("'equal' takes two terms");
      return Formula::equal(to_term(e.items[1]), to_term(e.items[2]));
    }
    // forall / exists
    if (argc != 2 || !e.items[1].is_list || e.items[1].items.empty()) {
      throw ParseError(ParseError::Code::MalformedQuantifier, e.where,
                       "expected a non-empty variable list and a body");
    }
    std::vector<std::string> vars;
    std::unordered_set<std::string> seen;
    for (const SExpr& v : e.items[1].items) {
      if (v.is_list || v.token.size() < 2 || v.token[0] != '?') {
        throw ParseError(ParseError::Code::MalformedQuantifier, v.where,
                         "quantifier list must hold ?variables");
      }
      std::string name = v.token.substr(1);
      if (!seen.insert(name).second) {
        throw ParseError(ParseError::Code::MalformedQuantifier, v.where,
                         "duplicate variable ?" + name);
      }
      vars.push_back(std::move(name));
    }
    Formula body = to_formula(e.items[2]);
    return op == "forall" ? Formula::forall(std::move(vars), std::move(body))
                          : Formula::exists(std::move(vars), std::move(body));
  }

  if (head.is_list) {
    throw ParseError(ParseError::Code::UnexpectedToken, head.where, "list in predicate position");
  }
  Term predicate = to_term(head);
  if (predicate.is_row_variable()) {
    throw ParseError(ParseError::Code::UnexpectedToken, head.where, "row variable as predicate");
  }
  std::vector<Term> args;
  args.reserve(argc);
  for (std::size_t i = 1; i <= argc; ++i) args.push_back(to_term(e.items[i]));
  return Formula::atom(std::move(predicate), std::move(args));
}

}  // namespace

std::vector<Statement> parse_suo_kif(std::string_view text) {
  Reader reader(text);
  std::vector<SExpr> exprs = reader.read_all();
  std::vector<Statement> out;
  out.reserve(exprs.size());
  for (const SExpr& e : exprs) {
    Formula f = to_formula(e);
    bool logical = !(f.kind() == Formula::Kind::Atom && f.predicate().is_constant() &&
                     is_non_logical_predicate(f.predicate().name()));
    out.push_back(Statement{std::move(f), e.where, logical});
  }
  return out;
}

Formula parse_formula(std::string_view text) {
  auto statements = parse_suo_kif(text);
  if (statements.size() != 1) {
    throw ParseError(ParseError::Code::UnexpectedToken, SourceLocation{},
                     "expected exactly one expression, got " + std::to_string(statements.size()));
  }
  return std::move(statements.front().formula);
}

}  // namespace ontoprobe::kif
