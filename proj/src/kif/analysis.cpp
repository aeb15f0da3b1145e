#include "ontoprobe/kif/analysis.hpp"

#include <algorithm>

namespace ontoprobe::kif {

namespace {

void render_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Constant: out += t.name(); return;
    case Term::Kind::Variable: out += '?'; out += t.name(); return;
    case Term::Kind::RowVariable: out += '@'; out += t.name(); return;
    case Term::Kind::Compound:
      out += '(';
      render_into(t.head(), out);
      for (const Term& a : t.args()) {
        out += ' ';
        render_into(a, out);
      }
      out += ')';
      return;
  }
}

const char* connective(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Not: return "not";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Or: return "or";
    case Formula::Kind::Implies: return "=>";
    case Formula::Kind::Iff: return "<=>";
    case Formula::Kind::Forall: return "forall";
    case Formula::Kind::Exists: return "exists";
    default: return "";
  }
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += '(';
      render_into(f.predicate(), out);
      for (const Term& a : f.args()) {
        out += ' ';
        render_into(a, out);
      }
      out += ')';
      return;
    case Formula::Kind::Equal:
      out += "(equal ";
      render_into(f.lhs_term(), out);
      out += ' ';
      render_into(f.rhs_term(), out);
      out += ')';
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      out += '(';
      out += connective(f.kind());
      out += " (";
      bool first = true;
      for (const auto& v : f.variables()) {
        if (!first) out += ' ';
        first = false;
        out += '?';
        out += v;
      }
      out += ") ";
      render_into(f.body(), out);
      out += ')';
      return;
    }
    default:
      out += '(';
      out += connective(f.kind());
      for (const Formula& g : f.operands()) {
        out += ' ';
        render_into(g, out);
      }
      out += ')';
      return;
  }
}

struct Collector {
  std::vector<std::string> bound;
  std::vector<std::string> free_order;
  std::set<std::string> free;
  std::set<std::string> row;

  bool is_bound(const std::string& v) const {
    return std::find(bound.begin(), bound.end(), v) != bound.end();
  }

  void term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Constant: return;
      case Term::Kind::Variable:
        if (!is_bound(t.name()) && free.insert(t.name()).second) free_order.push_back(t.name());
        return;
      case Term::Kind::RowVariable: row.insert(t.name()); return;
      case Term::Kind::Compound:
        term(t.head());
        for (const Term& a : t.args()) term(a);
        return;
    }
  }

  void formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
        term(f.predicate());
        for (const Term& a : f.args()) term(a);
        return;
      case Formula::Kind::Equal:
        term(f.lhs_term());
        term(f.rhs_term());
        return;
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        const std::size_t mark = bound.size();
        for (const auto& v : f.variables()) bound.push_back(v);
        formula(f.body());
        bound.resize(mark);
        return;
      }
      default:
        for (const Formula& g : f.operands()) formula(g);
        return;
    }
  }
};

}  // namespace

std::string render(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

VariableSets collect_variables(const Formula& f) {
  Collector c;
  c.formula(f);
  return VariableSets{std::move(c.free), std::move(c.row)};
}

std::vector<std::string> free_variables_ordered(const Formula& f) {
  Collector c;
  c.formula(f);
  return std::move(c.free_order);
}

FormulaKind classify_formula(const Formula& f) {
  if (!f.is_atomic()) return FormulaKind::GeneralClause;
  VariableSets vars = collect_variables(f);
  return vars.free.empty() && vars.row.empty() ? FormulaKind::UnitClause
                                               : FormulaKind::GeneralClause;
}

bool is_closed(const Formula& f) { return collect_variables(f).free.empty(); }

bool has_row_variables(const Formula& f) { return !collect_variables(f).row.empty(); }

}  // namespace ontoprobe::kif
