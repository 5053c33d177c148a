#pragma once

#include "nra/formula.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nra {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col) {}
  std::size_t line, col;
};

class UnsupportedLogic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CnfBlowup : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedProblem {
  std::vector<std::string> var_names;  // var_names[i] names x_{i+1}
  RawFormula raw;
  PolyFormula formula;
  std::string logic;
  std::string path;

  VarNamer namer() const {
    auto names = var_names;
    return [names](Var v) { return v.index >= 1 && v.index <= names.size() ? names[v.index - 1] : default_var_name(v); };
  }
};

namespace smt {

struct SExpr {
  std::string atom;  // empty for lists
  std::vector<SExpr> list;
  bool is_list = false;
  std::size_t line = 1, col = 1;
};

class Reader {
 public:
  explicit Reader(const std::string& text) : s_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip();
    while (i_ < s_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        advance();
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.col = col_;
    if (s_[i_] == '(') {
      advance();
      e.is_list = true;
      skip();
      while (true) {
        if (i_ >= s_.size()) throw ParseError("unterminated list", e.line, e.col);
        if (s_[i_] == ')') {
          advance();
          break;
        }
        e.list.push_back(read());
        skip();
      }
      return e;
    }
    if (s_[i_] == ')') throw ParseError("unexpected ')'", line_, col_);
    if (s_[i_] == '|') {
      advance();
      while (i_ < s_.size() && s_[i_] != '|') {
        e.atom += s_[i_];
        advance();
      }
      if (i_ >= s_.size()) throw ParseError("unterminated quoted symbol", e.line, e.col);
      advance();
      if (e.atom.empty()) throw ParseError("empty symbol", e.line, e.col);
      return e;
    }
    if (s_[i_] == '"') {
      e.atom += '"';
      advance();
      while (i_ < s_.size() && s_[i_] != '"') {
        e.atom += s_[i_];
        advance();
      }
      if (i_ >= s_.size()) throw ParseError("unterminated string", e.line, e.col);
      advance();
      e.atom += '"';
      return e;
    }
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')' &&
           s_[i_] != ';') {
      e.atom += s_[i_];
      advance();
    }
    return e;
  }

  const std::string& s_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
};

/// Boolean structure in negation normal form.
struct BoolExpr {
  enum Kind { Const, Atom, And, Or } kind = Const;
  bool value = true;
  RawAtom atom;
  std::vector<BoolExpr> kids;
};

inline Rel negate(Rel r) {
  switch (r) {
    case Rel::LT: return Rel::GE;
    case Rel::GT: return Rel::LE;
    case Rel::LE: return Rel::GT;
    case Rel::GE: return Rel::LT;
    case Rel::EQ: return Rel::NE;
    case Rel::NE: return Rel::EQ;
  }
  return r;
}

inline BoolExpr constant(bool v) {
  BoolExpr b;
  b.value = v;
  return b;
}

inline BoolExpr make_atom(const Polynomial& p, Rel r) {
  if (p.is_constant()) return constant(rel_holds(r, sign(p.constant_value())));
  BoolExpr b;
  b.kind = BoolExpr::Atom;
  b.atom = {p, r};
  return b;
}

inline BoolExpr junction(BoolExpr::Kind kind, std::vector<BoolExpr> kids) {
  BoolExpr b;
  b.kind = kind;
  bool unit = kind == BoolExpr::And;
  for (auto& k : kids) {
    if (k.kind == BoolExpr::Const) {
      if (k.value != unit) return constant(!unit);
      continue;
    }
    if (k.kind == kind) {
      for (auto& g : k.kids) b.kids.push_back(std::move(g));
    } else {
      b.kids.push_back(std::move(k));
    }
  }
  if (b.kids.empty()) return constant(unit);
  if (b.kids.size() == 1) return std::move(b.kids[0]);
  return b;
}

inline BoolExpr negated(BoolExpr e) {
  switch (e.kind) {
    case BoolExpr::Const: return constant(!e.value);
    case BoolExpr::Atom: return make_atom(e.atom.poly, negate(e.atom.rel));
    case BoolExpr::And:
    case BoolExpr::Or: {
      std::vector<BoolExpr> kids;
      for (auto& k : e.kids) kids.push_back(negated(std::move(k)));
      return junction(e.kind == BoolExpr::And ? BoolExpr::Or : BoolExpr::And, std::move(kids));
    }
  }
  return e;
}

/// CNF by distribution; at most `limit` clauses.
inline std::vector<RawClause> to_cnf(const BoolExpr& e, std::size_t limit) {
  switch (e.kind) {
    case BoolExpr::Const:
      if (e.value) return {};
      return {RawClause{}};
    case BoolExpr::Atom: return {RawClause{e.atom}};
    case BoolExpr::And: {
      std::vector<RawClause> out;
      for (auto& k : e.kids) {
        auto c = to_cnf(k, limit);
        out.insert(out.end(), c.begin(), c.end());
        if (out.size() > limit) throw CnfBlowup("CNF conversion exceeds " + std::to_string(limit) + " clauses");
      }
      return out;
    }
    case BoolExpr::Or: {
      std::vector<RawClause> acc{RawClause{}};
      for (auto& k : e.kids) {
        auto c = to_cnf(k, limit);
        if (acc.size() * c.size() > limit)
          throw CnfBlowup("CNF conversion exceeds " + std::to_string(limit) + " clauses");
        std::vector<RawClause> next;
        for (auto& a : acc)
          for (auto& b : c) {
            RawClause m = a;
            m.insert(m.end(), b.begin(), b.end());
            next.push_back(std::move(m));
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

class Parser {
 public:
  static constexpr std::size_t kCnfLimit = 10000;

  ParsedProblem parse(const std::string& text) {
    for (auto& cmd : Reader(text).read_all()) command(cmd);
    ParsedProblem out;
    out.var_names = names_;
    out.logic = logic_;
    out.raw.num_vars = static_cast<std::uint32_t>(names_.size());
    auto cnf = to_cnf(junction(BoolExpr::And, std::move(asserts_)), kCnfLimit);
    out.raw.clauses = std::move(cnf);
    out.formula = normalize(out.raw);
    return out;
  }

 private:
  using Value = std::variant<Polynomial, BoolExpr>;

  [[noreturn]] static void fail(const SExpr& e, const std::string& msg) { throw ParseError(msg, e.line, e.col); }

  static const std::string& head(const SExpr& e) {
    static const std::string none;
    if (!e.is_list || e.list.empty() || e.list[0].is_list) return none;
    return e.list[0].atom;
  }

  void expect_real_sort(const SExpr& s) {
    if (s.is_list || s.atom != "Real") fail(s, "unsupported sort (only Real)");
  }

  void declare(const SExpr& name) {
    if (name.is_list) fail(name, "expected a symbol");
    if (vars_.count(name.atom) || consts_.count(name.atom)) fail(name, "redeclared symbol '" + name.atom + "'");
    names_.push_back(name.atom);
    vars_[name.atom] = Var(static_cast<std::uint32_t>(names_.size()));
  }

  void command(const SExpr& c) {
    const std::string& h = head(c);
    if (h.empty()) fail(c, "expected a command");
    if (h == "set-logic") {
      if (c.list.size() != 2) fail(c, "malformed set-logic");
      logic_ = c.list[1].atom;
      if (logic_ != "QF_NRA") throw UnsupportedLogic("unsupported logic '" + logic_ + "'");
    } else if (h == "set-info" || h == "set-option" || h == "check-sat" || h == "exit" || h == "get-model" ||
               h == "get-info") {
    } else if (h == "declare-fun") {
      if (c.list.size() != 4 || !c.list[2].is_list || !c.list[2].list.empty())
        fail(c, "only nullary declare-fun is supported");
      expect_real_sort(c.list[3]);
      declare(c.list[1]);
    } else if (h == "declare-const") {
      if (c.list.size() != 3) fail(c, "malformed declare-const");
      expect_real_sort(c.list[2]);
      declare(c.list[1]);
    } else if (h == "define-fun") {
      if (c.list.size() != 5 || !c.list[2].is_list || !c.list[2].list.empty())
        fail(c, "only nullary define-fun is supported");
      if (c.list[1].is_list) fail(c.list[1], "expected a symbol");
      consts_.insert_or_assign(c.list[1].atom, term(c.list[4]));
    } else if (h == "assert") {
      if (c.list.size() != 2) fail(c, "malformed assert");
      asserts_.push_back(boolean(c.list[1]));
    } else {
      fail(c, "unsupported command '" + h + "'");
    }
  }

  Polynomial arith(const SExpr& e) {
    Value v = term(e);
    if (auto* p = std::get_if<Polynomial>(&v)) return *p;
    fail(e, "expected an arithmetic term");
  }

  BoolExpr boolean(const SExpr& e) {
    Value v = term(e);
    if (auto* b = std::get_if<BoolExpr>(&v)) return *b;
    fail(e, "expected a Boolean term");
  }

  static bool is_numeral(const std::string& s) {
    if (s.empty()) return false;
    bool dot = false, digit = false;
    for (char ch : s) {
      if (ch == '.') {
        if (dot) return false;
        dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        digit = true;
      } else {
        return false;
      }
    }
    return digit;
  }

  Value lookup(const SExpr& e) {
    for (auto it = lets_.rbegin(); it != lets_.rend(); ++it) {
      auto f = it->find(e.atom);
      if (f != it->end()) return f->second;
    }
    if (auto f = consts_.find(e.atom); f != consts_.end()) return f->second;
    if (auto f = vars_.find(e.atom); f != vars_.end()) return Polynomial::var(f->second);
    if (e.atom == "true") return constant(true);
    if (e.atom == "false") return constant(false);
    fail(e, "unknown symbol '" + e.atom + "'");
  }

  Value term(const SExpr& e) {
    if (!e.is_list) {
      if (is_numeral(e.atom)) return Polynomial(parse_rational(e.atom));
      return lookup(e);
    }
    const std::string& h = head(e);
    if (h.empty()) fail(e, "expected an operator");
    const auto& args = e.list;
    std::size_t argc = args.size() - 1;

    if (h == "let") {
      if (argc != 2 || !args[1].is_list) fail(e, "malformed let");
      std::map<std::string, Value> frame;
      for (auto& b : args[1].list) {
        if (!b.is_list || b.list.size() != 2 || b.list[0].is_list) fail(b, "malformed let binding");
        frame.insert_or_assign(b.list[0].atom, term(b.list[1]));
      }
      lets_.push_back(std::move(frame));
      Value v = term(args[2]);
      lets_.pop_back();
      return v;
    }
    if (h == "+" || h == "*") {
      if (argc == 0) fail(e, "'" + h + "' needs arguments");
      Polynomial acc = arith(args[1]);
      for (std::size_t i = 2; i <= argc; ++i) acc = h == "+" ? acc + arith(args[i]) : acc * arith(args[i]);
      return acc;
    }
    if (h == "-") {
      if (argc == 0) fail(e, "'-' needs arguments");
      Polynomial acc = arith(args[1]);
      if (argc == 1) return -acc;
      for (std::size_t i = 2; i <= argc; ++i) acc = acc - arith(args[i]);
      return acc;
    }
    if (h == "/") {
      if (argc < 2) fail(e, "'/' needs two arguments");
      Polynomial acc = arith(args[1]);
      for (std::size_t i = 2; i <= argc; ++i) {
        Polynomial d = arith(args[i]);
        if (!d.is_constant() || d.constant_value() == 0) throw UnsupportedOperator("division by a non-constant or zero");
        acc = acc.scaled(1 / d.constant_value());
      }
      return acc;
    }
    if (h == "^") {
      if (argc != 2 || args[2].is_list || !is_numeral(args[2].atom) || args[2].atom.find('.') != std::string::npos)
        fail(e, "'^' needs a numeral exponent");
      return arith(args[1]).pow(static_cast<std::uint32_t>(std::stoul(args[2].atom)));
    }
    if (h == "<" || h == ">" || h == "<=" || h == ">=" || h == "=") {
      if (argc < 2) fail(e, "'" + h + "' needs two arguments");
      if (h == "=") {
        Value first = term(args[1]);
        if (std::holds_alternative<BoolExpr>(first)) {
          if (argc != 2) fail(e, "Boolean '=' must be binary");
          BoolExpr a = std::get<BoolExpr>(first), b = boolean(args[2]);
          return junction(BoolExpr::Or, {junction(BoolExpr::And, {a, b}),
                                         junction(BoolExpr::And, {negated(a), negated(b)})});
        }
      }
      Rel r = h == "<" ? Rel::LT : h == ">" ? Rel::GT : h == "<=" ? Rel::LE : h == ">=" ? Rel::GE : Rel::EQ;
      std::vector<BoolExpr> parts;
      for (std::size_t i = 1; i < argc; ++i) parts.push_back(make_atom(arith(args[i]) - arith(args[i + 1]), r));
      return junction(BoolExpr::And, std::move(parts));
    }
    if (h == "distinct") {
      if (argc < 2) fail(e, "'distinct' needs two arguments");
      std::vector<Polynomial> ts;
      for (std::size_t i = 1; i <= argc; ++i) ts.push_back(arith(args[i]));
      std::vector<BoolExpr> parts;
      for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j) parts.push_back(make_atom(ts[i] - ts[j], Rel::NE));
      return junction(BoolExpr::And, std::move(parts));
    }
    if (h == "and" || h == "or") {
      std::vector<BoolExpr> kids;
      for (std::size_t i = 1; i <= argc; ++i) kids.push_back(boolean(args[i]));
      return junction(h == "and" ? BoolExpr::And : BoolExpr::Or, std::move(kids));
    }
    if (h == "not") {
      if (argc != 1) fail(e, "'not' takes one argument");
      return negated(boolean(args[1]));
    }
    if (h == "=>") {
      if (argc < 2) fail(e, "'=>' needs two arguments");
      BoolExpr acc = boolean(args[argc]);
      for (std::size_t i = argc - 1; i >= 1; --i) acc = junction(BoolExpr::Or, {negated(boolean(args[i])), acc});
      return acc;
    }
    if (h == "ite" || h == "xor") throw UnsupportedOperator("unsupported operator '" + h + "'");
    fail(e, "unknown operator '" + h + "'");
  }

  std::vector<std::string> names_;
  std::map<std::string, Var> vars_;
  std::map<std::string, Value> consts_;
  std::vector<std::map<std::string, Value>> lets_;
  std::vector<BoolExpr> asserts_;
  std::string logic_;
};

inline std::string rational_term(const Rational& q) {
  Rational a = abs(q);
  std::string body =
      is_integer(a) ? a.get_num().get_str() : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
  return q < 0 ? "(- " + body + ")" : body;
}

inline std::string polynomial_term(const Polynomial& p, const VarNamer& name) {
  std::vector<std::string> terms;
  for (auto& t : p.terms()) {
    std::vector<std::string> factors;
    if (t.coeff != 1 || t.mono.powers().empty()) factors.push_back(rational_term(t.coeff));
    for (auto& [v, e] : t.mono.powers())
      for (std::uint32_t k = 0; k < e; ++k) factors.push_back(name(Var(v)));
    if (factors.size() == 1) {
      terms.push_back(factors[0]);
    } else {
      std::string s = "(*";
      for (auto& f : factors) s += " " + f;
      terms.push_back(s + ")");
    }
  }
  if (terms.empty()) return "0";
  if (terms.size() == 1) return terms[0];
  std::string s = "(+";
  for (auto& t : terms) s += " " + t;
  return s + ")";
}

}  // namespace smt

inline ParsedProblem parse_smtlib(const std::string& text, const std::string& path = "") {
  smt::Parser parser;
  ParsedProblem p = parser.parse(text);
  p.path = path;
  return p;
}

/// SMT-LIB text for the normalized formula; reparsing yields the same
/// PolyFormula.
inline std::string print_smtlib(const PolyFormula& F, const std::vector<std::string>& names) {
  auto namer = [&](Var v) {
    if (v.index >= 1 && v.index <= names.size()) {
      const std::string& s = names[v.index - 1];
      bool plain = !s.empty() && !std::isdigit(static_cast<unsigned char>(s[0]));
      for (char ch : s) plain = plain && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.');
      return plain ? s : "|" + s + "|";
    }
    return default_var_name(v);
  };
  std::ostringstream out;
  out << "(set-logic QF_NRA)\n";
  for (std::uint32_t i = 1; i <= F.num_vars; ++i) out << "(declare-fun " << namer(Var(i)) << " () Real)\n";
  if (F.known_unsat) out << "(assert false)\n";
  for (auto& c : F.clauses) {
    std::vector<std::string> lits;
    for (auto l : c) {
      const Atom& a = F.atom(l);
      if (a.kind != Atom::Poly) throw std::invalid_argument("print_smtlib: root atoms have no SMT-LIB form");
      std::string s = std::string("(") + rel_symbol(a.op) + " " + smt::polynomial_term(a.poly, namer) + " 0)";
      lits.push_back(l.negated() ? "(not " + s + ")" : s);
    }
    out << "(assert ";
    if (lits.size() == 1) {
      out << lits[0];
    } else {
      out << "(or";
      for (auto& s : lits) out << " " << s;
      out << ")";
    }
    out << ")\n";
  }
  out << "(check-sat)\n";
  return out.str();
}

inline std::string print_smtlib(const ParsedProblem& p) { return print_smtlib(p.formula, p.var_names); }

/// Renumbers the variables so that `order` comes first (in that order),
/// followed by the remaining variables in declaration order.
inline ParsedProblem reorder_variables(const ParsedProblem& p, const std::vector<std::string>& order) {
  std::vector<std::string> names;
  for (auto& n : order) {
    if (std::find(p.var_names.begin(), p.var_names.end(), n) == p.var_names.end())
      throw std::invalid_argument("unknown variable '" + n + "' in variable order");
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  }
  for (auto& n : p.var_names)
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  std::map<std::uint32_t, Polynomial> sub;
  for (std::size_t i = 0; i < p.var_names.size(); ++i) {
    auto pos = std::find(names.begin(), names.end(), p.var_names[i]) - names.begin();
    sub[static_cast<std::uint32_t>(i + 1)] = Polynomial::var(Var(static_cast<std::uint32_t>(pos + 1)));
  }
  ParsedProblem out = p;
  out.var_names = names;
  for (auto& c : out.raw.clauses)
    for (auto& a : c) a.poly = a.poly.substitute(sub);
  out.formula = normalize(out.raw);
  return out;
}

}  // namespace nra
