#pragma once

#include "nra/localsearch.hpp"
#include "nra/opencad.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

namespace nra {

// --- Heuristic formulas ---------------------------------------------------

namespace detail {

/// base^e, exact when e is an integer.
inline Rational power(long base, const Rational& e) {
  if (is_integer(e)) {
    long k = e.get_num().get_si();
    Rational r = pow(Rational(base), static_cast<unsigned>(k < 0 ? -k : k));
    return k < 0 ? Rational(1) / r : r;
  }
  return Rational(std::pow(static_cast<double>(base), e.get_d()));
}

}  // namespace detail

/// Stage-1 budget in seconds, never below 0.85.
inline Rational stage1_time_limit(std::uint32_t mindeg, std::uint32_t polynum, std::uint32_t n,
                                  std::uint32_t clausenum) {
  Rational t = 2 * detail::power(3, make_rational(mindeg, 5) - 2) +
               detail::power(2, make_rational(polynum, 10) - Rational(3, 2)) +
               detail::power(2, make_rational(n, 10) - Rational(3, 2)) + make_rational(clausenum, 50) - Rational(1, 5);
  return std::max(t, make_rational(85, 100));
}

inline bool goto_2dls(std::uint32_t level, std::uint32_t n, std::uint32_t maxlevel) {
  Rational lv(level);
  return Rational(n) - 2 > lv && lv > std::min(make_rational(2 * n, 5), make_rational(9 * maxlevel, 10));
}

inline std::uint64_t max_num_fail_cells(std::uint32_t polynum, std::uint32_t maxdeg, std::uint32_t n) {
  Rational v = make_rational(std::min(polynum, maxdeg) * n, 10);
  return nra::floor(v).get_ui();
}

inline bool opencad_trigger(std::uint64_t num_fail_cells, std::uint64_t threshold, double stage2_elapsed,
                            std::uint32_t maxdeg, double min_elapsed = 20.0) {
  return num_fail_cells > threshold && stage2_elapsed > min_elapsed && maxdeg > 2;
}

// --- Preprocessing --------------------------------------------------------

struct VarInterval {
  std::optional<Rational> lo, hi;  // open bounds; none = unbounded

  bool empty() const { return lo && hi && *lo >= *hi; }
  bool fixed() const { return lo && hi && *hi - *lo < Rational(1, 100000); }
};

struct Preprocessed {
  std::vector<VarInterval> intervals;  // indexed by variable
  std::vector<Var> fixed;
  bool unsat = false;
  /// Strategy 3: at most two unfixed variables, solve directly with MCSAT.
  bool direct_mcsat = false;
};

inline Preprocessed preprocess(const PolyFormula& F) {
  Preprocessed pre;
  pre.intervals.resize(F.num_vars + 1);
  for (auto& c : F.clauses) {
    if (c.size() != 1 || c[0].negated()) continue;
    const Atom& a = F.atom(c[0]);
    if (a.kind != Atom::Poly) continue;
    auto vs = a.poly.vars();
    if (vs.size() != 1 || a.poly.degree(vs[0]) != 1) continue;
    auto cs = a.poly.coefficients(vs[0]);
    Rational bound = -cs[0].constant_value() / cs[1].constant_value();
    bool upper = (a.op == Rel::LT) == (cs[1].constant_value() > 0);
    auto& iv = pre.intervals[vs[0].index];
    if (upper)
      iv.hi = iv.hi ? std::min(*iv.hi, bound) : bound;
    else
      iv.lo = iv.lo ? std::max(*iv.lo, bound) : bound;
  }
  std::uint32_t unfixed = 0;
  for (std::uint32_t i = 1; i <= F.num_vars; ++i) {
    auto& iv = pre.intervals[i];
    if (iv.empty()) pre.unsat = true;
    if (iv.fixed())
      pre.fixed.push_back(Var(i));
    else
      ++unfixed;
  }
  pre.direct_mcsat = !pre.unsat && unfixed <= 2;
  return pre;
}

// --- Hybrid solver --------------------------------------------------------

struct HybridParams {
  std::uint32_t max_restart1 = 1;
  std::uint32_t max_restart2 = 3;
  std::uint32_t m = 6;
  /// Jump limit; 0 means 10^5 * polynum * n.
  std::uint64_t max_jump = 0;
  /// Stage-1 budget override in seconds; negative means stage1_time_limit.
  double stage1_budget = -1;
  double inner_ls_budget = 1.0;
  std::uint32_t inner_ls_max_timeouts = 3;
  double opencad_min_stage2_time = 20.0;
  std::uint64_t mcsat_step_budget = 1'000'000;
  std::size_t len1 = 4;
  std::uint64_t seed = 0;

  bool stage1 = true;
  bool stage2 = true;
  bool stage3 = true;
  bool inner_ls = true;
  bool suffix_seeding = true;
  bool preprocessing = true;

  Clock::Mode clock = Clock::Mode::Wall;
  double work_units_per_second = 4000.0;
  /// Overall limit in seconds on the chosen clock; 0 means none.
  double timeout = 0;
  int verbosity = 0;
  std::ostream* log = nullptr;
};

/// Ablation presets V1..V5 applied on top of the defaults.
inline HybridParams ablation_preset(int v, HybridParams p = {}) {
  switch (v) {
    case 1: p.stage1 = false; break;
    case 2: p.stage2 = false; break;
    case 3: p.stage3 = false; break;
    case 4:
      p.stage1 = false;
      p.inner_ls = false;
      break;
    case 5: p.suffix_seeding = false; break;
    default: throw std::invalid_argument("unknown ablation preset V" + std::to_string(v));
  }
  return p;
}

struct HybridResult {
  Answer answer = Answer::Unknown;
  Assignment model;
  int stage = 0;  // 0 preprocessing, 1 local search, 2 MCSAT, 3 OpenCAD
  std::uint64_t num_fail_cells = 0;
  std::uint64_t lemmas = 0;
  std::uint64_t cells = 0;
  double elapsed = 0;  // seconds on the solver clock
  std::vector<std::string> events;
};

class HybridSolver {
 public:
  HybridSolver(const PolyFormula& F, HybridParams params)
      : F_(F), p_(std::move(params)), clock_(p_.clock, p_.work_units_per_second) {
    n_ = F.num_vars;
    polynum_ = static_cast<std::uint32_t>(F.polynomials().size());
    maxdeg_ = max_degree(F);
    mindeg_ = min_degree(F);
    threshold_ = max_num_fail_cells(polynum_, maxdeg_, n_);
  }

  HybridResult solve() {
    if (F_.known_unsat) return finish(Answer::Unsat, {}, 0);
    if (F_.clauses.empty()) {
      Assignment a(n_);
      for (std::uint32_t i = 1; i <= n_; ++i) a.set(Var(i), 0);
      return finish(Answer::Sat, a, 0);
    }
    Preprocessed pre;
    pre.intervals.resize(n_ + 1);
    if (p_.preprocessing) {
      pre = preprocess(F_);
      if (pre.unsat) {
        event("preprocess unsat");
        return finish(Answer::Unsat, {}, 0);
      }
      if (pre.direct_mcsat) {
        event("preprocess direct-mcsat");
        McsatConfig cfg;
        cfg.step_budget = 0;
        cfg.len1 = p_.len1;
        Mcsat engine(F_, cfg);
        engine.hooks.should_stop = [&] {
          clock_.tick();
          return timed_out();
        };
        auto r = engine.solve();
        res_.lemmas = engine.stats().lemmas;
        return finish(r.answer, r.model, 2);
      }
    }
    for (Var v : pre.fixed) {
      auto& iv = pre.intervals[v.index];
      pinned_.set(v, (*iv.lo + *iv.hi) / 2);
    }

    Assignment alpha;
    if (p_.stage1) {
      LSParams lp = ls_params(p_.max_restart1);
      double budget = p_.stage1_budget >= 0
                          ? p_.stage1_budget
                          : stage1_time_limit(std::max(mindeg_, 1u), polynum_, n_,
                                              static_cast<std::uint32_t>(F_.clauses.size()))
                                .get_d();
      lp.deadline = deadline(budget);
      lp.pinned = pinned_;
      auto r = run_2d_ls(F_, lp);
      res_.num_fail_cells = r.num_jump;
      event("stage1 answer=" + std::string(answer_name(r.status)) + " numJump=" + std::to_string(r.num_jump));
      if (r.status == Answer::Sat) return finish(Answer::Sat, r.alpha, 1);
      alpha = r.alpha;
      if (timed_out()) return finish(Answer::Unknown, {}, 1);
    }

    std::optional<PolyFormula> learned;
    if (p_.stage2) {
      auto r = stage2(alpha);
      if (r) return *r;
      learned = learned_;
    }
    if (!p_.stage3) return finish(Answer::Unknown, {}, 2);
    event("stage3 start numFailCells=" + std::to_string(res_.num_fail_cells));
    OpenCadConfig oc;
    oc.len1 = p_.len1;
    oc.deadline = deadline(remaining());
    oc.learned = learned ? &*learned : nullptr;
    auto r = opencad_solve(F_, oc);
    res_.cells = r.stats.visited;
    return finish(r.answer, r.model, 3);
  }

 private:
  LSParams ls_params(std::uint32_t restarts) {
    LSParams lp;
    lp.max_restart = restarts;
    lp.max_jump = p_.max_jump ? p_.max_jump : 100000ull * std::max(polynum_, 1u) * std::max(n_, 1u);
    lp.m = p_.m;
    lp.len1 = p_.len1;
    lp.seed = p_.seed + ls_calls_++;
    lp.verbosity = p_.verbosity;
    return lp;
  }

  double remaining() const {
    if (p_.timeout <= 0) return std::numeric_limits<double>::infinity();
    return std::max(0.0, p_.timeout - clock_.now());
  }
  bool timed_out() const { return p_.timeout > 0 && clock_.now() >= p_.timeout; }

  Deadline deadline(double seconds) { return Deadline(&clock_, std::min(seconds, remaining())); }

  std::optional<HybridResult> stage2(const Assignment& alpha) {
    McsatConfig cfg;
    cfg.len1 = p_.len1;
    cfg.step_budget = p_.stage3 ? p_.mcsat_step_budget : 0;
    Mcsat engine(F_, cfg);
    for (std::uint32_t i = 1; i <= n_; ++i)
      if (alpha.has(Var(i))) engine.seed().set(Var(i), alpha[Var(i)]);
    event("stage2 start");
    const double start = clock_.now();
    std::uint32_t maxlevel = 0;
    std::uint32_t timeouts = 0;
    std::uint32_t disabled_at = 0;  // 0 = inner local search enabled
    std::optional<Assignment> ls_model;
    bool trigger = false;

    engine.hooks.after_assign = [&](std::uint32_t level) {
      maxlevel = std::max(maxlevel, level);
      if (!p_.inner_ls || disabled_at || !goto_2dls(level, n_, maxlevel)) return HookAction::Continue;
      Assignment prefix = prefix_assignment(engine.assignment(), level);
      PolyFormula restricted = partial_restrict(F_, prefix);
      LSParams lp = ls_params(p_.max_restart2);
      lp.deadline = deadline(p_.inner_ls_budget);
      lp.pinned = prefix;
      for (std::uint32_t i = level; i <= n_; ++i)
        if (pinned_.has(Var(i))) lp.pinned.set(Var(i), pinned_[Var(i)]);
      auto r = run_2d_ls(restricted, lp);
      res_.num_fail_cells += r.num_jump;
      event("inner-ls level=" + std::to_string(level) + " answer=" + answer_name(r.status) +
            " numJump=" + std::to_string(r.num_jump));
      if (r.status == Answer::Sat) {
        Assignment model = prefix;
        for (std::uint32_t i = level; i <= n_; ++i) model.set(Var(i), r.alpha.has(Var(i)) ? r.alpha[Var(i)] : Rational(0));
        if (eval_formula(F_, model)) {
          ls_model = model;
          return HookAction::Sat;
        }
      }
      if (p_.suffix_seeding)
        for (std::uint32_t i = level; i <= n_; ++i)
          if (r.alpha.has(Var(i))) engine.seed().set(Var(i), r.alpha[Var(i)]);
      if (r.status != Answer::Sat && lp.deadline.expired() && ++timeouts >= p_.inner_ls_max_timeouts) {
        disabled_at = level;
        event("inner-ls disabled level=" + std::to_string(level));
      }
      return HookAction::Continue;
    };
    engine.hooks.on_propagate_conflict = [&] { ++res_.num_fail_cells; };
    engine.hooks.should_stop = [&] {
      clock_.tick();
      if (disabled_at && engine.level() < disabled_at) {
        disabled_at = 0;
        timeouts = 0;
      }
      if (timed_out()) return true;
      if (p_.stage3 && opencad_trigger(res_.num_fail_cells, threshold_, clock_.now() - start, maxdeg_,
                                       p_.opencad_min_stage2_time)) {
        trigger = true;
        return true;
      }
      return false;
    };

    auto r = engine.solve();
    res_.lemmas = engine.stats().lemmas;
    learned_ = engine.learned();
    if (r.answer == Answer::Sat) return finish(Answer::Sat, ls_model ? *ls_model : r.model, 2);
    if (r.answer == Answer::Unsat) return finish(Answer::Unsat, {}, 2);
    if (timed_out()) return finish(Answer::Unknown, {}, 2);
    event(trigger ? "stage2 trigger" : "stage2 budget-exhausted");
    return std::nullopt;
  }

  void event(const std::string& e) {
    res_.events.push_back(e);
    if (p_.verbosity >= 1 && p_.log) *p_.log << "event " << e << "\n";
  }

  HybridResult finish(Answer a, Assignment model, int stage) {
    if (a == Answer::Sat) {
      for (std::uint32_t i = 1; i <= n_; ++i)
        if (!model.has(Var(i))) model.set(Var(i), 0);
      if (!eval_formula(F_, model)) throw std::logic_error("model does not satisfy the formula");
    }
    res_.answer = a;
    res_.model = std::move(model);
    res_.stage = stage;
    res_.elapsed = clock_.now();
    event(std::string("result ") + answer_name(a) + " stage=" + std::to_string(stage));
    return res_;
  }

  const PolyFormula& F_;
  HybridParams p_;
  Clock clock_;
  std::uint32_t n_ = 0, polynum_ = 0, maxdeg_ = 0, mindeg_ = 0;
  std::uint64_t threshold_ = 0;
  std::uint64_t ls_calls_ = 0;
  Assignment pinned_;
  PolyFormula learned_;
  HybridResult res_;
};

inline HybridResult hybrid_solve(const PolyFormula& F, HybridParams params = {}) {
  HybridSolver s(F, std::move(params));
  return s.solve();
}

}  // namespace nra
