#pragma once

#include "nra/realroots.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nra {

class UnsupportedOperator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Strict atom. A polynomial atom reads `poly op 0`; a root atom reads
/// `x_j op root_k(poly)` where x_j is the main variable of poly and
/// root_k the k-th real root of poly with x_1..x_{j-1} substituted (false
/// when that root does not exist). Root atoms only appear in learned
/// clauses.
struct Atom {
  enum Kind : std::uint8_t { Poly, Root };
  Kind kind = Poly;
  Polynomial poly;
  Rel op = Rel::LT;
  std::uint32_t root_index = 0;

  std::uint32_t level() const { return poly.level(); }

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.kind == b.kind && a.op == b.op && a.root_index == b.root_index && a.poly == b.poly;
  }

  std::string to_string(const VarNamer& name = default_var_name) const {
    if (kind == Poly) return poly.to_string(name) + " " + rel_symbol(op) + " 0";
    return name(Var(level())) + " " + rel_symbol(op) + " root_" + std::to_string(root_index) + "(" +
           poly.to_string(name) + ")";
  }
};

/// Canonical polynomial atom: primitive integer polynomial with positive
/// leading coefficient. Constant polynomials are not atoms.
inline Atom make_poly_atom(const Polynomial& p, Rel op) {
  if (op != Rel::LT && op != Rel::GT) throw UnsupportedOperator("atoms are strict: " + p.to_string());
  if (p.is_constant()) throw std::invalid_argument("constant atom " + p.to_string());
  Atom a;
  a.poly = primitive(p);
  a.op = op;
  if (p.leading_coeff() < 0) a.op = op == Rel::LT ? Rel::GT : Rel::LT;
  return a;
}

/// Canonical root atom; degree-one roots with a constant coefficient
/// become polynomial atoms.
inline Atom make_root_atom(const Polynomial& p, std::uint32_t index, Rel op) {
  Var v = p.main_var();
  auto cs = p.coefficients(v);
  if (cs.size() == 2 && cs[1].is_constant()) {
    Polynomial q = p.scaled(1 / cs[1].constant_value());  // x_j + c0/c1
    return make_poly_atom(q, op);
  }
  Atom a;
  a.kind = Atom::Root;
  a.poly = primitive(p);
  a.op = op;
  a.root_index = index;
  return a;
}

struct AtomHash {
  std::size_t operator()(const Atom& a) const {
    return a.poly.hash() * 31 + static_cast<std::size_t>(a.op) * 7 + a.root_index * 131 + a.kind;
  }
};

/// Interned atoms; an atom id is its index.
class AtomTable {
 public:
  std::uint32_t intern(const Atom& a) {
    auto it = index_.find(a);
    if (it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(atoms_.size());
    atoms_.push_back(a);
    index_.emplace(a, id);
    return id;
  }
  const Atom& operator[](std::uint32_t id) const { return atoms_[id]; }
  std::size_t size() const { return atoms_.size(); }
  std::optional<std::uint32_t> find(const Atom& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<Atom> atoms_;
  std::unordered_map<Atom, std::uint32_t, AtomHash> index_;
};

/// Literal code: 2 * atom id + (1 if negated).
struct Literal {
  std::uint32_t code = 0;

  static Literal pos(std::uint32_t atom) { return {atom * 2}; }
  static Literal neg(std::uint32_t atom) { return {atom * 2 + 1}; }
  std::uint32_t atom() const { return code >> 1; }
  bool negated() const { return code & 1; }
  Literal operator~() const { return {code ^ 1}; }
  friend auto operator<=>(Literal, Literal) = default;
};

/// Disjunction of literals, sorted and duplicate-free.
using Clause = std::vector<Literal>;

inline void canonicalize_clause(Clause& c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
}

/// True when the clause contains a literal and its negation.
inline bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i].atom() == c[i + 1].atom()) return true;
  return false;
}

/// CNF over strict atoms in variables x_1..x_n. No clauses means true;
/// known_unsat records a clause emptied by constant folding.
struct PolyFormula {
  std::shared_ptr<AtomTable> atoms = std::make_shared<AtomTable>();
  std::vector<Clause> clauses;
  std::uint32_t num_vars = 0;
  bool known_unsat = false;

  const Atom& atom(Literal l) const { return (*atoms)[l.atom()]; }

  std::uint32_t level(Literal l) const { return atom(l).level(); }
  std::uint32_t level(const Clause& c) const {
    std::uint32_t m = 0;
    for (auto l : c) m = std::max(m, level(l));
    return m;
  }

  /// Distinct polynomials of all atoms.
  std::vector<Polynomial> polynomials() const {
    std::vector<Polynomial> out;
    for (auto& c : clauses)
      for (auto l : c) {
        const Polynomial& p = atom(l).poly;
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
      }
    return out;
  }

  std::string to_string(const VarNamer& name = default_var_name) const {
    if (known_unsat) return "false";
    if (clauses.empty()) return "true";
    std::string s;
    for (auto& c : clauses) {
      if (!s.empty()) s += " & ";
      s += "(";
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += " | ";
        if (c[i].negated()) s += "!";
        s += atom(c[i]).to_string(name);
      }
      s += ")";
    }
    return s;
  }
};

/// Truth value of an atom at a point assigning all its variables.
inline bool eval_atom(const Atom& a, const Assignment& alpha) {
  if (a.kind == Atom::Poly) return rel_holds(a.op, sign(a.poly.evaluate(alpha)));
  Var v = a.poly.main_var();
  const Rational& x = alpha[v];
  Assignment lower = alpha;
  lower.unset(v);
  Polynomial u = a.poly.specialize(lower);
  if (u.is_zero() || u.is_constant()) return false;
  auto roots = isolate_real_roots(UPoly::from(u, v));
  if (roots.size() < a.root_index) return false;
  int c = roots[a.root_index - 1].compare(x);  // sign(root - x)
  return a.op == Rel::LT ? c > 0 : c < 0;
}

inline bool eval_literal(const PolyFormula& F, Literal l, const Assignment& alpha) {
  return eval_atom(F.atom(l), alpha) != l.negated();
}

inline bool eval_clause(const PolyFormula& F, const Clause& c, const Assignment& alpha) {
  for (auto l : c)
    if (eval_literal(F, l, alpha)) return true;
  return false;
}

/// Truth value of F at a complete assignment of x_1..x_n.
inline bool eval_formula(const PolyFormula& F, const Assignment& alpha) {
  for (std::uint32_t i = 1; i <= F.num_vars; ++i)
    if (!alpha.has(Var(i))) throw UnassignedVariable(Var(i));
  if (F.known_unsat) return false;
  for (auto& c : F.clauses)
    if (!eval_clause(F, c, alpha)) return false;
  return true;
}

struct RawAtom {
  Polynomial poly;
  Rel rel;
};
using RawClause = std::vector<RawAtom>;

/// CNF with relations from {<, >, !=}; the input side of normalize.
struct RawFormula {
  std::vector<RawClause> clauses;
  std::uint32_t num_vars = 0;
};

inline bool eval_raw(const RawFormula& F, const Assignment& alpha) {
  for (auto& c : F.clauses) {
    bool sat = false;
    for (auto& a : c)
      if (rel_holds(a.rel, sign(a.poly.evaluate(alpha)))) sat = true;
    if (!sat) return false;
  }
  return true;
}

namespace detail {

/// Adds a clause after folding constants and dropping duplicates;
/// returns false when the clause is empty.
inline bool add_clause(PolyFormula& F, std::vector<std::pair<Polynomial, Rel>> lits) {
  Clause c;
  for (auto& [p, rel] : lits) {
    if (p.is_constant()) {
      if (rel_holds(rel, sign(p.constant_value()))) return true;  // clause satisfied
      continue;
    }
    c.push_back(Literal::pos(F.atoms->intern(make_poly_atom(p, rel))));
  }
  canonicalize_clause(c);
  if (c.empty()) {
    F.known_unsat = true;
    return false;
  }
  if (std::find(F.clauses.begin(), F.clauses.end(), c) == F.clauses.end()) F.clauses.push_back(std::move(c));
  return true;
}

}  // namespace detail

/// Rewrites p != 0 as (p < 0 | p > 0) and interns strict atoms. Weak
/// inequalities and equations are rejected.
inline PolyFormula normalize(const RawFormula& raw) {
  PolyFormula F;
  F.num_vars = raw.num_vars;
  for (auto& rc : raw.clauses) {
    std::vector<std::pair<Polynomial, Rel>> lits;
    for (auto& a : rc) {
      switch (a.rel) {
        case Rel::LT:
        case Rel::GT:
          lits.emplace_back(a.poly, a.rel);
          break;
        case Rel::NE:
          lits.emplace_back(a.poly, Rel::LT);
          lits.emplace_back(a.poly, Rel::GT);
          break;
        default:
          throw UnsupportedOperator(std::string("unsupported operator '") + rel_symbol(a.rel) + "' in atom " +
                                    a.poly.to_string() + " " + rel_symbol(a.rel) + " 0");
      }
    }
    if (!detail::add_clause(F, std::move(lits))) {
      F.clauses.clear();
      return F;
    }
  }
  return F;
}

/// Substitutes the values of sigma; clauses made true are dropped,
/// literals made false removed, and an emptied clause sets known_unsat.
inline PolyFormula partial_restrict(const PolyFormula& F, const Assignment& sigma) {
  PolyFormula R;
  R.num_vars = F.num_vars;
  if (F.known_unsat) {
    R.known_unsat = true;
    return R;
  }
  for (auto& c : F.clauses) {
    std::vector<std::pair<Polynomial, Rel>> lits;
    bool sat = false;
    for (auto l : c) {
      const Atom& a = F.atom(l);
      if (a.kind != Atom::Poly || l.negated()) {
        bool all = true;
        for (Var v : a.poly.vars()) all = all && sigma.has(v);
        if (!all) throw std::invalid_argument("partial_restrict: unsupported literal " + a.to_string());
        if (eval_literal(F, l, sigma)) sat = true;
        continue;
      }
      lits.emplace_back(a.poly.specialize(sigma), a.op);
    }
    if (sat) continue;
    if (!detail::add_clause(R, std::move(lits))) {
      R.clauses.clear();
      return R;
    }
  }
  return R;
}

/// Largest total degree among the atom polynomials.
inline std::uint32_t max_degree(const PolyFormula& F) {
  std::uint32_t d = 0;
  for (auto& p : F.polynomials()) d = std::max(d, p.total_degree());
  return d;
}

inline std::uint32_t min_degree(const PolyFormula& F) {
  std::uint32_t d = 0;
  bool first = true;
  for (auto& p : F.polynomials()) {
    d = first ? p.total_degree() : std::min(d, p.total_degree());
    first = false;
  }
  return d;
}

}  // namespace nra
