#pragma once

#include "nra/clock.hpp"
#include "nra/mcsat.hpp"
#include "nra/opencad.hpp"

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace nra {

using Direction = std::vector<Rational>;  // indexed by variable, entry 0 unused

struct LSParams {
  std::uint32_t max_restart = 1;
  std::uint64_t max_jump = 1'000'000;
  std::uint32_t m = 6;
  std::size_t len1 = 4;
  Deadline deadline;
  std::uint64_t seed = 0;
  /// Starting point of the first restart (all-zero when absent).
  std::optional<Assignment> initial;
  /// Variables that never move, with their values.
  Assignment pinned;
  int verbosity = 0;
};

struct LSResult {
  Answer status = Answer::Unknown;  // Sat or Unknown
  Assignment alpha;
  std::uint64_t num_jump = 1;
};

/// Kind of move, in cascade order.
enum class JumpKind { Axis = 1, Line = 2, AxesPlane = 3, Plane = 4 };

struct JumpRecord {
  JumpKind kind;
  std::uint32_t atom;
  std::int64_t score;
  bool from_falsified;
};

// --- Scoring --------------------------------------------------------------

/// Weighted count of clauses satisfied by the move minus clauses it
/// falsifies.
inline std::int64_t score(const PolyFormula& F, const Assignment& before, const Assignment& after,
                          const std::vector<std::uint64_t>& weights) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < F.clauses.size(); ++i) {
    bool b = eval_clause(F, F.clauses[i], before), a = eval_clause(F, F.clauses[i], after);
    if (a && !b) s += static_cast<std::int64_t>(weights[i]);
    if (b && !a) s -= static_cast<std::int64_t>(weights[i]);
  }
  return s;
}

/// Clause-weight update: +1 for every falsified clause; when `smooth`
/// fires every weight above one drops by one.
inline void update_weights(const PolyFormula& F, const Assignment& alpha, std::vector<std::uint64_t>& weights,
                           bool smooth) {
  if (smooth) {
    for (auto& w : weights)
      if (w > 1) --w;
    return;
  }
  for (std::size_t i = 0; i < F.clauses.size(); ++i)
    if (!eval_clause(F, F.clauses[i], alpha)) ++weights[i];
}

inline void update_weights(const PolyFormula& F, const Assignment& alpha, std::vector<std::uint64_t>& weights,
                           std::mt19937_64& rng) {
  std::uniform_int_distribution<int> draw(0, 999);
  update_weights(F, alpha, weights, draw(rng) == 0);
}

// --- Cell jumps -----------------------------------------------------------

namespace detail {

/// Up to two rationals inside an interval with nonempty interior: the
/// integer nearest the midpoint, and the midpoint itself (digit-bounded).
inline std::vector<Rational> interval_candidates(const Interval& iv, std::size_t len1) {
  std::vector<Rational> out;
  auto inside = [&](const Rational& q) { return iv.interior_contains(q); };
  if (iv.lo.kind != Bound::Finite && iv.hi.kind != Bound::Finite) {
    out.push_back(0);
    return out;
  }
  if (iv.lo.kind != Bound::Finite) {
    out.push_back(Rational(iv.hi.value->ceil() - 1));
    return out;
  }
  if (iv.hi.kind != Bound::Finite) {
    out.push_back(Rational(iv.lo.value->floor() + 1));
    return out;
  }
  const RealRoot& l = *iv.lo.value;
  const RealRoot& h = *iv.hi.value;
  while (!(l.hi() < h.lo())) {
    l.refine();
    h.refine();
  }
  Rational mid = (l.hi() + h.lo()) / 2;
  Integer near = nra::floor(mid + Rational(1, 2));
  if (inside(Rational(near))) out.push_back(Rational(near));
  Rational t = len1 ? truncate_rational(mid, len1) : mid;
  if (!inside(t)) t = mid;
  if (out.empty() || out[0] != t) out.push_back(t);
  return out;
}

inline Polynomial line_restriction(const Polynomial& p, const Assignment& alpha, const Direction& d, Var t) {
  std::map<std::uint32_t, Polynomial> sub;
  Polynomial tv = Polynomial::var(t);
  for (Var v : p.vars()) {
    Rational dv = v.index < d.size() ? d[v.index] : Rational(0);
    sub[v.index] = Polynomial(alpha[v]) + tv.scaled(dv);
  }
  return p.substitute(sub);
}

inline Rational bounded(const Rational& q, std::size_t len1) { return len1 ? truncate_rational(q, len1) : q; }

}  // namespace detail

/// Points on the line through alpha in direction d where the atom holds;
/// up to two per solution interval.
inline std::vector<Assignment> line_candidates(const Atom& atom, const Assignment& alpha, const Direction& d,
                                               std::size_t len1 = 4) {
  bool nonzero = false;
  for (auto& x : d) nonzero = nonzero || x != 0;
  if (!nonzero) throw std::invalid_argument("cell_jump_line: zero direction");
  Var t(static_cast<std::uint32_t>(std::max<std::size_t>(d.size(), alpha.num_vars() + 1) + 1));
  Polynomial u = detail::line_restriction(atom.poly, alpha, d, t);
  IntervalSet S = solve_sign_conditions({{u, atom.op}});
  std::vector<Assignment> out;
  for (auto& iv : S.parts()) {
    if (!iv.has_interior()) continue;
    for (auto& tv : detail::interval_candidates(iv, len1)) {
      if (tv == 0) continue;
      Assignment a = alpha, b = alpha;
      for (std::uint32_t i = 1; i < d.size(); ++i) {
        if (d[i] == 0) continue;
        Rational x = alpha[Var(i)] + tv * d[i];
        a.set(Var(i), x);
        b.set(Var(i), detail::bounded(x, len1));
      }
      out.push_back(eval_atom(atom, b) ? b : a);
    }
  }
  return out;
}

inline std::optional<Assignment> cell_jump_line(const Atom& atom, const Assignment& alpha, const Direction& d,
                                                std::size_t len1 = 4) {
  auto c = line_candidates(atom, alpha, d, len1);
  if (c.empty()) return std::nullopt;
  return c.front();
}

inline Direction axis_direction(Var x, std::uint32_t n) {
  Direction d(std::max<std::uint32_t>(n, x.index) + 1, Rational(0));
  d[x.index] = 1;
  return d;
}

inline std::vector<Assignment> axis_candidates(const Atom& atom, const Assignment& alpha, Var x, std::size_t len1 = 4) {
  Assignment others = alpha;
  others.unset(x);
  Polynomial u = atom.poly.specialize(others);
  IntervalSet S = solve_sign_conditions({{u, atom.op}});
  std::vector<Assignment> out;
  for (auto& iv : S.parts()) {
    if (!iv.has_interior()) continue;
    for (auto& v : detail::interval_candidates(iv, len1)) {
      if (alpha.has(x) && alpha[x] == v) continue;
      Assignment a = alpha;
      a.set(x, v);
      out.push_back(a);
    }
  }
  return out;
}

inline std::optional<Assignment> cell_jump_axis(const Atom& atom, const Assignment& alpha, Var x, std::size_t len1 = 4) {
  auto c = axis_candidates(atom, alpha, x, len1);
  if (c.empty()) return std::nullopt;
  return c.front();
}

/// Sample point of the atom with respect to x_i, x_j: a model of the atom
/// with every other variable fixed by alpha.
inline std::optional<std::pair<Rational, Rational>> sample_point_2v(const Atom& atom, const Assignment& alpha, Var xi,
                                                                    Var xj, std::size_t len1 = 4) {
  Assignment others = alpha;
  others.unset(xi);
  others.unset(xj);
  Atom restricted{Atom::Poly, atom.poly.specialize(others), atom.op, 0};
  if (restricted.poly.is_constant()) {
    if (!rel_holds(atom.op, sign(restricted.poly.constant_value()))) return std::nullopt;
    return std::make_pair(alpha[xi], alpha[xj]);
  }
  auto m = bivariate_sat({restricted}, alpha, len1);
  if (!m) return std::nullopt;
  Rational vi = m->has(xi) ? (*m)[xi] : alpha[xi];
  Rational vj = m->has(xj) ? (*m)[xj] : alpha[xj];
  return std::make_pair(vi, vj);
}

inline std::optional<Assignment> two_d_cell_jump_axes(const Atom& atom, const Assignment& alpha, Var xi, Var xj,
                                                      std::size_t len1 = 4) {
  auto sp = sample_point_2v(atom, alpha, xi, xj, len1);
  if (!sp) return std::nullopt;
  Assignment a = alpha;
  a.set(xi, sp->first);
  a.set(xj, sp->second);
  return a;
}

inline bool independent(const Direction& d1, const Direction& d2) {
  std::size_t n = std::max(d1.size(), d2.size());
  auto at = [](const Direction& d, std::size_t i) { return i < d.size() ? d[i] : Rational(0); };
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (at(d1, i) * at(d2, j) - at(d1, j) * at(d2, i) != 0) return true;
  return false;
}

/// The atom's polynomial on the plane alpha + t1 d1 + t2 d2, with t1, t2
/// given as variables.
inline Polynomial plane_restriction(const Polynomial& p, const Assignment& alpha, const Direction& d1,
                                    const Direction& d2, Var t1, Var t2) {
  std::map<std::uint32_t, Polynomial> sub;
  Polynomial T1 = Polynomial::var(t1), T2 = Polynomial::var(t2);
  auto at = [](const Direction& d, std::uint32_t i) { return i < d.size() ? d[i] : Rational(0); };
  for (Var v : p.vars())
    sub[v.index] = Polynomial(alpha[v]) + T1.scaled(at(d1, v.index)) + T2.scaled(at(d2, v.index));
  return p.substitute(sub);
}

inline std::optional<Assignment> two_d_cell_jump_plane(const Atom& atom, const Assignment& alpha, const Direction& d1,
                                                       const Direction& d2, std::size_t len1 = 4) {
  if (!independent(d1, d2)) throw std::invalid_argument("two_d_cell_jump_plane: dependent directions");
  std::uint32_t n = static_cast<std::uint32_t>(std::max({d1.size(), d2.size(), std::size_t(alpha.num_vars() + 1)}));
  Var t1(n + 1), t2(n + 2);
  Polynomial u = plane_restriction(atom.poly, alpha, d1, d2, t1, t2);
  Atom restricted{Atom::Poly, u, atom.op, 0};
  std::optional<Assignment> m;
  if (u.is_constant()) {
    if (!rel_holds(atom.op, sign(u.constant_value()))) return std::nullopt;
    m = Assignment();
  } else {
    m = bivariate_sat({restricted}, Assignment(), len1);
  }
  if (!m) return std::nullopt;
  Rational s1 = m->has(t1) ? (*m)[t1] : Rational(0);
  Rational s2 = m->has(t2) ? (*m)[t2] : Rational(0);
  auto at = [](const Direction& d, std::uint32_t i) { return i < d.size() ? d[i] : Rational(0); };
  Assignment a = alpha, b = alpha;
  for (std::uint32_t i = 1; i < n; ++i) {
    if (!alpha.has(Var(i))) continue;
    Rational dx = s1 * at(d1, i) + s2 * at(d2, i);
    if (dx == 0) continue;
    Rational x = alpha[Var(i)] + dx;
    a.set(Var(i), x);
    b.set(Var(i), detail::bounded(x, len1));
  }
  return eval_atom(atom, b) ? b : a;
}

/// Points of the (t1, t2)-plane, one per open cell of the decomposition
/// induced by the target and context polynomials (all in t1, t2 only), at
/// which the target atom holds. At most `limit` points.
inline std::vector<std::pair<Rational, Rational>> plane_cell_samples(const Atom& target,
                                                                    const std::vector<Polynomial>& context, Var t1,
                                                                    Var t2, std::size_t len1, std::size_t limit = 32) {
  std::map<std::uint32_t, Polynomial> ren{{t1.index, Polynomial::var(Var(1))}, {t2.index, Polynomial::var(Var(2))}};
  Polynomial u = target.poly.substitute(ren);
  std::vector<Polynomial> polys{u};
  for (auto& c : context) polys.push_back(c.substitute(ren));
  auto levels = project_open(polys, 2);
  std::vector<std::pair<Rational, Rational>> out;
  Assignment a(2);
  for (auto& s1 : open_cell_samples(levels[1], Var(1), Assignment(), len1)) {
    a.set(Var(1), s1);
    for (auto& s2 : open_cell_samples(levels[2], Var(2), a, len1)) {
      a.set(Var(2), s2);
      if (!rel_holds(target.op, sign(u.evaluate(a)))) continue;
      out.emplace_back(s1, s2);
      if (out.size() >= limit) return out;
    }
    a.unset(Var(2));
  }
  return out;
}

// --- 2d-LS ----------------------------------------------------------------

class LocalSearch {
 public:
  LocalSearch(const PolyFormula& F, LSParams params) : F_(F), p_(std::move(params)), rng_(p_.seed) {
    n_ = F.num_vars;
    std::vector<bool> occurs(n_ + 1, false);
    for (auto& c : F.clauses)
      for (auto l : c)
        for (Var v : F.atom(l).poly.vars()) occurs[v.index] = true;
    for (std::uint32_t i = 1; i <= n_; ++i)
      if (occurs[i] && !p_.pinned.has(Var(i))) free_.push_back(Var(i));
    var_clauses_.resize(n_ + 1);
    for (std::size_t ci = 0; ci < F.clauses.size(); ++ci) {
      std::vector<std::uint32_t> vs;
      for (auto l : F.clauses[ci])
        for (Var v : F.atom(l).poly.vars()) vs.push_back(v.index);
      std::sort(vs.begin(), vs.end());
      vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
      for (auto v : vs) var_clauses_[v].push_back(ci);
    }
    weights_.assign(F.clauses.size(), 1);
  }

  const std::vector<JumpRecord>& log() const { return log_; }
  const std::vector<std::uint64_t>& weights() const { return weights_; }

  LSResult run() {
    LSResult res;
    std::uint64_t num_jump = 1;
    if (F_.known_unsat) {
      res.alpha = start_point(0);
      return res;
    }
    for (std::uint32_t restart = 1; restart <= p_.max_restart; ++restart) {
      set_alpha(start_point(restart));
      while (num_jump <= p_.max_jump) {
        if (unsat_count_ == 0) {
          res.status = Answer::Sat;
          res.alpha = alpha_;
          res.num_jump = num_jump;
          return res;
        }
        if (p_.deadline.expired()) {
          res.alpha = alpha_;
          res.num_jump = num_jump;
          return res;
        }
        Step st = jump();
        if (st == Step::None) break;
        // Local minimum: bump the weights of falsified clauses (or smooth).
        if (st == Step::Stuck) update_weights(F_, alpha_, weights_, rng_);
        ++num_jump;
      }
      if (num_jump > p_.max_jump) break;
    }
    res.alpha = alpha_;
    res.num_jump = num_jump;
    return res;
  }

 private:
  enum class Step { Moved, Stuck, None };

  struct Candidate {
    Assignment point;
    std::int64_t score;
    std::size_t cost;
    std::uint32_t first_var;
  };

  Assignment start_point(std::uint32_t restart) {
    Assignment a(n_);
    for (std::uint32_t i = 1; i <= n_; ++i) a.set(Var(i), 0);
    if (restart == 1 && p_.initial) {
      for (std::uint32_t i = 1; i <= n_; ++i)
        if (p_.initial->has(Var(i))) a.set(Var(i), (*p_.initial)[Var(i)]);
    } else if (restart > 1) {
      std::uniform_int_distribution<int> draw(-10, 10);
      for (Var v : free_) a.set(v, draw(rng_));
    }
    for (std::uint32_t i = 1; i <= n_; ++i)
      if (p_.pinned.has(Var(i))) a.set(Var(i), p_.pinned[Var(i)]);
    return a;
  }

  void set_alpha(Assignment a) {
    alpha_ = std::move(a);
    sat_.assign(F_.clauses.size(), false);
    unsat_count_ = 0;
    for (std::size_t i = 0; i < F_.clauses.size(); ++i) {
      sat_[i] = eval_clause(F_, F_.clauses[i], alpha_);
      if (!sat_[i]) ++unsat_count_;
    }
  }

  std::int64_t score_move(const Assignment& next, std::vector<std::size_t>& touched) {
    touched.clear();
    for (Var v : free_)
      if (!(alpha_[v] == next[v]))
        for (auto ci : var_clauses_[v.index]) touched.push_back(ci);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    std::int64_t s = 0;
    for (auto ci : touched) {
      bool now = eval_clause(F_, F_.clauses[ci], next);
      if (now && !sat_[ci]) s += static_cast<std::int64_t>(weights_[ci]);
      if (!now && sat_[ci]) s -= static_cast<std::int64_t>(weights_[ci]);
    }
    p_.deadline.tick();
    return s;
  }

  void apply(const Assignment& next) {
    std::vector<std::size_t> touched;
    score_move(next, touched);
    alpha_ = next;
    for (auto ci : touched) {
      bool now = eval_clause(F_, F_.clauses[ci], alpha_);
      if (now != sat_[ci]) unsat_count_ += now ? -1 : 1;
      sat_[ci] = now;
    }
  }

  /// False atoms of falsified clauses (first) and of satisfied clauses.
  std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> false_atoms() {
    std::vector<std::uint32_t> a, b;
    for (std::size_t ci = 0; ci < F_.clauses.size(); ++ci)
      for (auto l : F_.clauses[ci]) {
        if (eval_literal(F_, l, alpha_)) continue;
        auto& dst = sat_[ci] ? b : a;
        if (std::find(dst.begin(), dst.end(), l.atom()) == dst.end()) dst.push_back(l.atom());
      }
    return {a, b};
  }

  std::vector<Var> movable_vars(const Atom& atom) const {
    std::vector<Var> out;
    for (Var v : atom.poly.vars())
      if (std::find(free_.begin(), free_.end(), v) != free_.end()) out.push_back(v);
    return out;
  }

  void generate_directions() {
    dirs_.clear();
    std::uniform_int_distribution<int> draw(-10, 10);
    for (std::uint32_t k = 0; k < 2 * p_.m; ++k) {
      for (int attempt = 0; attempt < 100; ++attempt) {
        Direction d(n_ + 1, Rational(0));
        bool nonzero = false;
        for (Var v : free_) {
          d[v.index] = draw(rng_);
          nonzero = nonzero || d[v.index] != 0;
        }
        if (!nonzero) continue;
        if (k % 2 == 1 && free_.size() >= 2 && !independent(dirs_.back(), d)) continue;
        dirs_.push_back(std::move(d));
        break;
      }
      if (dirs_.size() != k + 1) return;
    }
  }

  std::optional<Candidate> best_of(const std::vector<Assignment>& pts) {
    std::optional<Candidate> best;
    std::vector<std::size_t> touched;
    for (auto& pt : pts) {
      seen_candidate_ = true;
      std::int64_t s = score_move(pt, touched);
      if (s <= 0) continue;
      std::size_t cost = 0;
      std::uint32_t first = 0;
      for (Var v : free_)
        if (!(alpha_[v] == pt[v])) {
          cost += digit_cost(pt[v]);
          if (!first) first = v.index;
        }
      Candidate c{pt, s, cost, first};
      if (!best || c.score > best->score || (c.score == best->score && c.cost < best->cost) ||
          (c.score == best->score && c.cost == best->cost && c.first_var < best->first_var))
        best = std::move(c);
    }
    return best;
  }

  std::vector<Assignment> step_candidates(JumpKind kind, std::uint32_t atom_id) {
    const Atom& atom = (*F_.atoms)[atom_id];
    std::vector<Assignment> pts;
    auto vars = movable_vars(atom);
    switch (kind) {
      case JumpKind::Axis:
        for (Var v : vars)
          for (auto& c : axis_candidates(atom, alpha_, v, p_.len1)) pts.push_back(std::move(c));
        break;
      case JumpKind::Line:
        for (auto& d : dirs_)
          for (auto& c : line_candidates(atom, alpha_, d, p_.len1)) pts.push_back(std::move(c));
        break;
      case JumpKind::AxesPlane:
        for (std::size_t i = 0; i < vars.size(); ++i)
          for (std::size_t j = i + 1; j < vars.size(); ++j) {
            if (auto c = two_d_cell_jump_axes(atom, alpha_, vars[i], vars[j], p_.len1)) pts.push_back(std::move(*c));
            axes_plane_cells(atom, vars[i], vars[j], pts);
          }
        break;
      case JumpKind::Plane:
        for (std::size_t k = 0; k + 1 < dirs_.size(); k += 2)
          if (independent(dirs_[k], dirs_[k + 1])) {
            if (auto c = two_d_cell_jump_plane(atom, alpha_, dirs_[k], dirs_[k + 1], p_.len1)) pts.push_back(std::move(*c));
            plane_cells(atom, dirs_[k], dirs_[k + 1], pts);
          }
        break;
    }
    p_.deadline.tick(pts.size() + 1);
    return pts;
  }

  static constexpr std::uint32_t kCellDegree = 6;
  static constexpr std::size_t kCellContext = 3;

  /// Atoms that are the only true literal of a satisfied clause.
  void collect_critical() {
    critical_.clear();
    for (std::size_t ci = 0; ci < F_.clauses.size(); ++ci) {
      if (!sat_[ci]) continue;
      std::optional<std::uint32_t> only;
      std::size_t count = 0;
      for (auto l : F_.clauses[ci])
        if (eval_literal(F_, l, alpha_) && !l.negated()) {
          only = l.atom();
          ++count;
        }
      if (count == 1 && std::find(critical_.begin(), critical_.end(), *only) == critical_.end())
        critical_.push_back(*only);
    }
  }

  /// Critical polynomials restricted by `restrict`, nonconstant and of low degree.
  template <class Restrict>
  std::vector<Polynomial> cell_context(std::uint32_t skip, Restrict restrict) const {
    std::vector<Polynomial> out;
    for (auto id : critical_) {
      if (id == skip || out.size() >= kCellContext) continue;
      const Atom& a = (*F_.atoms)[id];
      if (a.kind != Atom::Poly) continue;
      Polynomial p = restrict(a.poly);
      if (!p.is_constant() && p.total_degree() <= kCellDegree) out.push_back(p);
    }
    return out;
  }

  void axes_plane_cells(const Atom& atom, Var xi, Var xj, std::vector<Assignment>& pts) {
    Assignment others = alpha_;
    others.unset(xi);
    others.unset(xj);
    auto restrict = [&](const Polynomial& p) { return p.specialize(others); };
    Atom target{Atom::Poly, restrict(atom.poly), atom.op, 0};
    if (target.poly.is_constant() || target.poly.total_degree() > kCellDegree) return;
    auto ctx = cell_context(UINT32_MAX, restrict);
    if (ctx.empty()) return;
    for (auto& [vi, vj] : plane_cell_samples(target, ctx, xi, xj, p_.len1)) {
      Assignment a = alpha_;
      a.set(xi, vi);
      a.set(xj, vj);
      pts.push_back(std::move(a));
    }
  }

  void plane_cells(const Atom& atom, const Direction& d1, const Direction& d2, std::vector<Assignment>& pts) {
    Var t1(n_ + 1), t2(n_ + 2);
    auto restrict = [&](const Polynomial& p) { return plane_restriction(p, alpha_, d1, d2, t1, t2); };
    Atom target{Atom::Poly, restrict(atom.poly), atom.op, 0};
    if (target.poly.is_constant() || target.poly.total_degree() > kCellDegree) return;
    auto ctx = cell_context(UINT32_MAX, restrict);
    if (ctx.empty()) return;
    auto at = [](const Direction& d, std::uint32_t i) { return i < d.size() ? d[i] : Rational(0); };
    for (auto& [s1, s2] : plane_cell_samples(target, ctx, t1, t2, p_.len1)) {
      Assignment a = alpha_, b = alpha_;
      for (Var v : free_) {
        Rational dx = s1 * at(d1, v.index) + s2 * at(d2, v.index);
        if (dx == 0) continue;
        a.set(v, alpha_[v] + dx);
        b.set(v, detail::bounded(alpha_[v] + dx, p_.len1));
      }
      pts.push_back(eval_atom(atom, b) ? std::move(b) : std::move(a));
    }
  }

  /// One move of the four-step cascade. Stuck: operations exist but none
  /// has a positive score; None: no operation exists at all.
  Step jump() {
    auto [falsified, satisfied] = false_atoms();
    bool dirs_ready = false;
    seen_candidate_ = false;
    collect_critical();
    for (JumpKind kind : {JumpKind::Axis, JumpKind::Line, JumpKind::AxesPlane, JumpKind::Plane}) {
      if ((kind == JumpKind::Line || kind == JumpKind::Plane) && !dirs_ready) {
        generate_directions();
        dirs_ready = true;
      }
      for (int tier = 0; tier < 2; ++tier) {
        const auto& atoms = tier == 0 ? falsified : satisfied;
        std::optional<Candidate> best;
        std::uint32_t best_atom = 0;
        for (auto id : atoms) {
          if (p_.deadline.expired()) return Step::None;
          auto c = best_of(step_candidates(kind, id));
          if (c && (!best || c->score > best->score || (c->score == best->score && c->cost < best->cost))) {
            best = std::move(c);
            best_atom = id;
          }
        }
        if (best) {
          log_.push_back({kind, best_atom, best->score, tier == 0});
          if (p_.verbosity >= 2)
            std::cerr << "jump step=" << static_cast<int>(kind) << " atom=" << best_atom << " score=" << best->score
                      << "\n";
          apply(best->point);
          return Step::Moved;
        }
      }
    }
    return seen_candidate_ ? Step::Stuck : Step::None;
  }

  const PolyFormula& F_;
  LSParams p_;
  std::mt19937_64 rng_;
  std::uint32_t n_ = 0;
  std::vector<Var> free_;
  std::vector<std::vector<std::size_t>> var_clauses_;
  std::vector<std::uint64_t> weights_;
  Assignment alpha_;
  std::vector<bool> sat_;
  std::int64_t unsat_count_ = 0;
  std::vector<Direction> dirs_;
  std::vector<JumpRecord> log_;
  bool seen_candidate_ = false;
  std::vector<std::uint32_t> critical_;
};

inline LSResult run_2d_ls(const PolyFormula& F, const LSParams& params) {
  LocalSearch ls(F, params);
  return ls.run();
}

}  // namespace nra
