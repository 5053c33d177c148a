#pragma once

#include "nra/projection.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace nra {

enum class Answer { Sat, Unsat, Unknown };

inline const char* answer_name(Answer a) {
  switch (a) {
    case Answer::Sat: return "sat";
    case Answer::Unsat: return "unsat";
    case Answer::Unknown: return "unknown";
  }
  return "unknown";
}

struct TrailElement {
  enum Kind : std::uint8_t { Decided, Propagated, Assigned };
  Kind kind = Decided;
  Literal lit;
  std::int64_t reason = -1;  // clause index, Propagated only
  std::uint32_t var = 0;     // Assigned only
};

enum class Value : std::int8_t { False = 0, True = 1, Undef = 2 };

struct McsatConfig {
  /// Trail mutations before giving up with Unknown; 0 disables the limit.
  std::uint64_t step_budget = 1'000'000;
  /// Digit bound for sampled values (0 = none).
  std::size_t len1 = 0;
};

struct McsatStats {
  std::uint64_t steps = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t lemmas = 0;
};

/// Outcome of the post-assignment hook.
enum class HookAction { Continue, Sat, Stop };

struct McsatHooks {
  /// Called after each successful assignment, with the new level.
  std::function<HookAction(std::uint32_t)> after_assign;
  /// Called when a propagated literal turns out inconsistent.
  std::function<void()> on_propagate_conflict;
  /// Called for every learned clause; `explanation` is true for theory
  /// explanations (valid everywhere) and false for resolvents (implied by F).
  std::function<void(const Clause&, bool explanation)> on_lemma;
  /// Polled once per loop iteration; true aborts the search.
  std::function<bool()> should_stop;
};

struct McsatResult {
  Answer answer = Answer::Unknown;
  Assignment model;
  bool stopped = false;           // aborted by should_stop or a hook
  bool budget_exhausted = false;  // step budget reached
};

class Mcsat {
 public:
  explicit Mcsat(const PolyFormula& F, McsatConfig cfg = {})
      : cfg_(cfg), n_(F.num_vars), cs_(F.num_vars + 2), assign_pos_(F.num_vars + 2, 0),
        stamp_(F.num_vars + 2, 0), seed_(F.num_vars) {
    db_.atoms = std::make_shared<AtomTable>(*F.atoms);
    db_.num_vars = F.num_vars;
    db_.known_unsat = F.known_unsat;
    for (auto& c : F.clauses) add_clause(c, false);
  }

  McsatHooks hooks;

  /// Assignment candidates consulted before picking a fresh sample; the
  /// chosen value is written back.
  Assignment& seed() { return seed_; }
  const McsatStats& stats() const { return stats_; }
  std::uint32_t level() const { return level_; }
  std::uint32_t num_vars() const { return n_; }
  const Assignment& assignment() const { return assignment_; }
  const std::vector<TrailElement>& trail() const { return trail_; }
  const PolyFormula& database() const { return db_; }

  /// Learned clauses (over database().atoms).
  PolyFormula learned() const {
    PolyFormula L;
    L.atoms = db_.atoms;
    L.num_vars = n_;
    for (auto i : learned_) L.clauses.push_back(clauses_[i]);
    return L;
  }

  McsatResult solve() {
    McsatResult res;
    if (db_.known_unsat) {
      res.answer = Answer::Unsat;
      return res;
    }
    if (n_ == 0) {
      res.answer = Answer::Sat;
      return res;
    }
    while (true) {
      if (cfg_.step_budget && stats_.steps >= cfg_.step_budget) {
        res.budget_exhausted = true;
        return res;
      }
      if (hooks.should_stop && hooks.should_stop()) {
        res.stopped = true;
        return res;
      }
      Value v = value_level(level_);
      if (v == Value::True) {
        IntervalSet S = solve_trail(std::nullopt);
        if (S.interior_empty()) {
          // Only reachable through degenerate closed propagations; treat the
          // whole level as the conflict.
          if (!conflict_on_level(std::nullopt)) return unsat(res);
          continue;
        }
        Var x(level_);
        auto chosen = pick_rational(S, seed_.get(x), cfg_.len1);
        seed_.set(x, *chosen);
        push_assign(x, *chosen);
        ++level_;
        if (level_ > n_) {
          res.answer = Answer::Sat;
          res.model = assignment_;
          return res;
        }
        if (hooks.after_assign) {
          HookAction act = hooks.after_assign(level_);
          if (act == HookAction::Sat) {
            res.answer = Answer::Sat;
            res.model = assignment_;
            return res;
          }
          if (act == HookAction::Stop) {
            res.stopped = true;
            return res;
          }
        }
        continue;
      }

      // Status update.
      std::optional<std::size_t> conflict;
      std::optional<std::pair<Literal, std::size_t>> propagate, decide;
      for (auto ci : cs_[level_]) {
        Value cv = value_clause(clauses_[ci]);
        if (cv == Value::False) {
          conflict = ci;
          break;
        }
        if (cv == Value::Undef) {
          std::optional<Literal> only;
          int undef = 0;
          for (auto l : clauses_[ci])
            if (value_literal(l) == Value::Undef) {
              ++undef;
              if (!only) only = l;
            }
          if (undef == 1 && !propagate) propagate = std::make_pair(*only, ci);
          if (!decide) decide = std::make_pair(*only, ci);
        }
      }
      if (!conflict) {
        bool is_prop = propagate.has_value();
        auto [lit, ci] = is_prop ? *propagate : *decide;
        if (consistent(lit)) {
          if (is_prop) {
            ++stats_.propagations;
            push_literal(TrailElement::Propagated, lit, static_cast<std::int64_t>(ci));
          } else {
            ++stats_.decisions;
            push_literal(TrailElement::Decided, lit, -1);
          }
          continue;
        }
        std::size_t lemma = explain_conflict(lit);
        push_literal(TrailElement::Propagated, ~lit, static_cast<std::int64_t>(lemma));
        if (!is_prop) continue;
        if (hooks.on_propagate_conflict) hooks.on_propagate_conflict();
        conflict = ci;
      }
      if (!resolve_conflict(*conflict)) return unsat(res);
    }
  }

  // --- Semantics exposed for testing -------------------------------------

  Value value_literal(Literal l) {
    std::int8_t t = on_trail(l.atom());
    if (t != 0) return (t > 0) != l.negated() ? Value::True : Value::False;
    const Atom& a = db_.atom(l);
    std::uint32_t lv = a.level();
    if (lv >= level_ || lv > n_) return Value::Undef;
    return atom_value(l.atom()) != l.negated() ? Value::True : Value::False;
  }

  Value value_clause(const Clause& c) {
    bool undef = false;
    for (auto l : c) {
      Value v = value_literal(l);
      if (v == Value::True) return Value::True;
      if (v == Value::Undef) undef = true;
    }
    return undef ? Value::Undef : Value::False;
  }

  Value value_level(std::uint32_t k) {
    bool undef = false;
    for (auto ci : cs_[k]) {
      Value v = value_clause(clauses_[ci]);
      if (v == Value::False) return Value::False;
      if (v == Value::Undef) undef = true;
    }
    return undef ? Value::Undef : Value::True;
  }

  /// Solution set of x_level under the level's trail literals (plus l).
  IntervalSet solve_trail(std::optional<Literal> extra) {
    std::vector<Literal> lits = level_literals();
    if (extra) lits.push_back(*extra);
    return solve_literals(lits);
  }

  bool consistent(Literal l) { return !solve_trail(l).interior_empty(); }

  /// Subset-minimal set of the level's trail literals inconsistent with l
  /// (or, without l, inconsistent on its own).
  std::vector<Literal> min_conflict_core(std::optional<Literal> l) {
    std::vector<Literal> core = level_literals();
    for (std::size_t i = 0; i < core.size();) {
      std::vector<Literal> trial;
      for (std::size_t j = 0; j < core.size(); ++j)
        if (j != i) trial.push_back(core[j]);
      if (l) trial.push_back(*l);
      if (solve_literals(trial).interior_empty())
        core.erase(core.begin() + static_cast<long>(i));
      else
        ++i;
    }
    return core;
  }

  /// Resolution of c against the level's propagated literals, walking
  /// the trail backwards and stopping at a decided literal whose negation
  /// is in the clause.
  Clause resolve(const Clause& c) {
    Clause cur = c;
    for (std::size_t i = trail_.size(); i-- > level_start();) {
      const TrailElement& e = trail_[i];
      if (e.kind == TrailElement::Assigned) break;
      auto pos = std::find(cur.begin(), cur.end(), ~e.lit);
      if (pos == cur.end()) continue;
      if (e.kind == TrailElement::Decided) break;
      cur.erase(pos);
      for (auto l : clauses_[static_cast<std::size_t>(e.reason)])
        if (l != e.lit) cur.push_back(l);
      canonicalize_clause(cur);
    }
    return cur;
  }

  /// Literal for an atom, interning it into the engine's table.
  Literal literal(const Atom& a, bool positive) {
    auto id = db_.atoms->intern(a);
    return positive ? Literal::pos(id) : Literal::neg(id);
  }

  void push_literal(TrailElement::Kind kind, Literal l, std::int64_t reason) {
    ++stats_.steps;
    ensure_atoms();
    trail_.push_back({kind, l, reason, 0});
    on_trail_[l.atom()] = l.negated() ? -1 : 1;
  }

  void push_assign(Var x, const Rational& q) {
    ++stats_.steps;
    assignment_.set(x, q);
    stamp_[x.index] = ++stamp_counter_;
    assign_pos_[x.index] = trail_.size();
    trail_.push_back({TrailElement::Assigned, {}, -1, x.index});
  }

  std::size_t add_clause(const Clause& c, bool learned, bool explanation = false) {
    std::size_t idx = clauses_.size();
    clauses_.push_back(c);
    std::uint32_t lv = db_.level(c);
    if (lv == 0) lv = 1;
    cs_[lv].push_back(idx);
    if (learned) {
      learned_.push_back(idx);
      ++stats_.lemmas;
      if (hooks.on_lemma) hooks.on_lemma(c, explanation);
    }
    return idx;
  }

 private:
  std::size_t level_start() const { return level_ <= 1 ? 0 : assign_pos_[level_ - 1] + 1; }

  std::vector<Literal> level_literals() const {
    std::vector<Literal> out;
    for (std::size_t i = level_start(); i < trail_.size(); ++i)
      if (trail_[i].kind != TrailElement::Assigned) out.push_back(trail_[i].lit);
    return out;
  }

  void ensure_atoms() {
    std::size_t n = db_.atoms->size();
    if (on_trail_.size() < n) {
      on_trail_.resize(n, 0);
      cache_val_.resize(n, 0);
      cache_stamp_.resize(n, 0);
    }
  }

  std::int8_t on_trail(std::uint32_t atom) {
    ensure_atoms();
    return on_trail_[atom];
  }

  bool atom_value(std::uint32_t id) {
    ensure_atoms();
    const Atom& a = (*db_.atoms)[id];
    std::uint32_t lv = a.level();
    std::uint64_t st = lv == 0 ? 1 : stamp_[lv];
    if (cache_stamp_[id] != st) {
      cache_val_[id] = eval_atom(a, assignment_) ? 1 : 0;
      cache_stamp_[id] = st;
    }
    return cache_val_[id] != 0;
  }

  IntervalSet solve_literals(const std::vector<Literal>& lits) {
    Var x(level_);
    Assignment lower = prefix_assignment(assignment_, level_);
    std::vector<SignCondition> conds;
    std::vector<IntervalSet> extra;
    for (auto l : lits) {
      const Atom& a = db_.atom(l);
      Polynomial u = a.poly.specialize(lower);
      if (a.kind == Atom::Poly) {
        Rel r = a.op;
        if (l.negated()) r = r == Rel::LT ? Rel::GE : Rel::LE;
        conds.push_back({u, r});
        continue;
      }
      std::optional<RealRoot> root;
      if (!u.is_constant()) {
        auto roots = isolate_real_roots(UPoly::from(u, x));
        if (roots.size() >= a.root_index) root = roots[a.root_index - 1];
      }
      if (!root) {
        if (!l.negated()) return {};
        continue;
      }
      bool lt = a.op == Rel::LT;
      if (!l.negated())
        extra.push_back(IntervalSet({lt ? Interval{Bound::neg_inf(), Bound::at(*root, false)}
                                        : Interval{Bound::at(*root, false), Bound::pos_inf()}}));
      else
        extra.push_back(IntervalSet({lt ? Interval{Bound::at(*root, true), Bound::pos_inf()}
                                        : Interval{Bound::neg_inf(), Bound::at(*root, true)}}));
    }
    IntervalSet S = solve_sign_conditions(conds);
    for (auto& e : extra) {
      if (S.empty()) break;
      S = S.intersect(e);
    }
    return S;
  }

  /// Learns the explanation clause for a literal inconsistent with the
  /// trail and returns its index.
  std::size_t explain_conflict(std::optional<Literal> l) {
    ++stats_.conflicts;
    std::vector<Literal> core = min_conflict_core(l);
    std::vector<Polynomial> P;
    for (auto c : core) P.push_back(db_.atom(c).poly);
    if (l) P.push_back(db_.atom(*l).poly);
    auto cell = explain_cell(P, level_, assignment_);
    Clause lemma;
    for (auto& cl : cell) lemma.push_back(literal(cl.atom, !cl.positive));
    for (auto c : core) lemma.push_back(~c);
    if (l) lemma.push_back(~*l);
    canonicalize_clause(lemma);
    ensure_atoms();
    return add_clause(lemma, true, true);
  }

  /// Level-wide conflict without a candidate literal; false means UNSAT.
  bool conflict_on_level(std::optional<Literal> l) {
    std::size_t lemma = explain_conflict(l);
    return resolve_conflict(lemma);
  }

  /// Conflict resolution and backjumping; false when the empty clause is
  /// derived.
  bool resolve_conflict(std::size_t ci) {
    Clause lemma = resolve(clauses_[ci]);
    if (lemma.empty()) return false;
    if (lemma != clauses_[ci]) ci = add_clause(lemma, true);
    std::uint32_t lv = db_.level(lemma);
    if (lv == level_) {
      for (std::size_t i = trail_.size(); i-- > 0;) {
        const TrailElement& e = trail_[i];
        if (e.kind != TrailElement::Decided) continue;
        bool in_lemma = false;
        for (auto l : lemma) in_lemma = in_lemma || l.atom() == e.lit.atom();
        if (in_lemma) {
          pop_to(i);
          return true;
        }
      }
      // No decision to undo: fall back to the previous level.
      if (level_ <= 1) return false;
      lv = level_ - 1;
    }
    if (lv == 0) return false;
    pop_to(assign_pos_[lv]);
    level_ = lv;
    return true;
  }

  void pop_to(std::size_t size) {
    while (trail_.size() > size) {
      ++stats_.steps;
      const TrailElement& e = trail_.back();
      if (e.kind == TrailElement::Assigned) {
        assignment_.unset(Var(e.var));
        stamp_[e.var] = ++stamp_counter_;
        if (e.var < level_) level_ = e.var;
      } else {
        on_trail_[e.lit.atom()] = 0;
      }
      trail_.pop_back();
    }
  }

  McsatResult& unsat(McsatResult& res) {
    res.answer = Answer::Unsat;
    return res;
  }

  McsatConfig cfg_;
  std::uint32_t n_;
  PolyFormula db_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<std::size_t>> cs_;
  std::vector<std::size_t> learned_;
  std::vector<TrailElement> trail_;
  std::vector<std::size_t> assign_pos_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t stamp_counter_ = 1;
  std::vector<std::int8_t> on_trail_;
  std::vector<std::int8_t> cache_val_;
  std::vector<std::uint64_t> cache_stamp_;
  Assignment assignment_;
  Assignment seed_;
  std::uint32_t level_ = 1;
  McsatStats stats_;
};

/// Stand-alone MCSAT run.
inline McsatResult mcsat_solve(const PolyFormula& F, McsatConfig cfg = {}) {
  Mcsat engine(F, cfg);
  return engine.solve();
}

/// Model of a conjunction of strict atoms in at most two variables, or
/// none when it has no model. Values in `hint` are reused when possible.
inline std::optional<Assignment> bivariate_sat(const std::vector<Atom>& atoms, const Assignment& hint = {},
                                               std::size_t len1 = 0) {
  std::vector<Var> vars;
  for (auto& a : atoms)
    for (Var v : a.poly.vars())
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  if (vars.size() > 2) throw std::invalid_argument("bivariate_sat: more than two variables");
  if (vars.size() <= 1) {
    std::vector<SignCondition> conds;
    for (auto& a : atoms) conds.push_back({a.poly, a.op});
    IntervalSet S = solve_sign_conditions(conds);
    Assignment out;
    if (vars.empty()) {
      if (S.empty()) return std::nullopt;
      return out;
    }
    auto q = pick_rational(S, hint.get(vars[0]), len1);
    if (!q) return std::nullopt;
    out.set(vars[0], *q);
    return out;
  }
  // Rename to x1, x2 and run MCSAT on unit clauses.
  std::map<std::uint32_t, Polynomial> ren{{vars[0].index, Polynomial::var(Var(1))},
                                          {vars[1].index, Polynomial::var(Var(2))}};
  PolyFormula F;
  F.num_vars = 2;
  for (auto& a : atoms) {
    Polynomial p = a.poly.substitute(ren);
    if (p.is_constant()) {
      if (!rel_holds(a.op, sign(p.constant_value()))) return std::nullopt;
      continue;
    }
    Clause c{Literal::pos(F.atoms->intern(make_poly_atom(p, a.op)))};
    if (std::find(F.clauses.begin(), F.clauses.end(), c) == F.clauses.end()) F.clauses.push_back(c);
  }
  McsatConfig cfg;
  cfg.len1 = len1;
  cfg.step_budget = 0;
  Mcsat engine(F, cfg);
  for (std::uint32_t i = 0; i < 2; ++i)
    if (hint.has(vars[i])) engine.seed().set(Var(i + 1), hint[vars[i]]);
  auto res = engine.solve();
  if (res.answer != Answer::Sat) return std::nullopt;
  Assignment out;
  out.set(vars[0], res.model[Var(1)]);
  out.set(vars[1], res.model[Var(2)]);
  return out;
}

}  // namespace nra
