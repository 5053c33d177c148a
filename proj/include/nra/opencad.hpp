#pragma once

#include "nra/clock.hpp"
#include "nra/mcsat.hpp"

#include <map>
#include <vector>

namespace nra {

/// Open projection: levels[j] holds a square-free, pairwise coprime basis
/// of the level-j polynomials (main variable x_j), closed under
/// coefficients, discriminants and pairwise resultants.
inline std::vector<std::vector<Polynomial>> project_open(const std::vector<Polynomial>& F, std::uint32_t n) {
  std::vector<std::vector<Polynomial>> levels(n + 1);
  std::vector<std::vector<Polynomial>> pending(n + 1);
  auto push = [&](const Polynomial& p) {
    if (p.is_constant()) return;
    Polynomial q = primitive(p);
    auto& b = pending[q.level()];
    if (std::find(b.begin(), b.end(), q) == b.end()) b.push_back(q);
  };
  for (auto& f : F) push(f);
  for (std::uint32_t j = n; j >= 1; --j) {
    if (pending[j].empty()) continue;
    auto basis = square_free_basis(pending[j]);
    for (auto& b : basis) {
      if (b.level() < j) {
        push(b);
        continue;
      }
      levels[j].push_back(b);
    }
    if (j == 1) break;
    Var x(j);
    auto& L = levels[j];
    for (std::size_t i = 0; i < L.size(); ++i) {
      for (auto& c : L[i].coefficients(x)) push(c);
      if (L[i].degree(x) >= 2) push(discriminant(L[i], x));
      for (std::size_t k = i + 1; k < L.size(); ++k) push(resultant(L[i], L[k], x));
    }
  }
  return levels;
}

/// One rational sample in each open interval of the x line cut out by the
/// real roots of `polys` with the lower variables fixed by a.
inline std::vector<Rational> open_cell_samples(const std::vector<Polynomial>& polys, Var x, const Assignment& a,
                                               std::size_t len1) {
  std::vector<RealRoot> roots;
  for (auto& p : polys) {
    Polynomial u = p.specialize(a);
    if (u.is_constant()) continue;
    for (auto& r : isolate_real_roots(UPoly::from(u, x))) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), [](const RealRoot& p, const RealRoot& q) { return compare(p, q) < 0; });
  std::vector<Rational> out;
  Bound lo = Bound::neg_inf();
  for (std::size_t i = 0; i <= roots.size(); ++i) {
    Bound hi = i < roots.size() ? Bound::at(roots[i], false) : Bound::pos_inf();
    IntervalSet cell({{lo, hi}});
    if (!cell.interior_empty()) out.push_back(*pick_rational(cell, std::nullopt, len1));
    lo = hi;
  }
  return out;
}

struct OpenCadConfig {
  std::size_t len1 = 4;
  Deadline deadline;
  /// Extra clauses used for pruning only (learned lemmas), may be null.
  const PolyFormula* learned = nullptr;
};

struct OpenCadStats {
  std::uint64_t visited = 0;  // partial samples lifted
  std::uint64_t pruned = 0;   // partial samples refuted by a clause
  std::vector<std::size_t> projection_sizes;
};

struct OpenCadResult {
  Answer answer = Answer::Unknown;
  Assignment model;
  OpenCadStats stats;
};

class OpenCad {
 public:
  OpenCad(const PolyFormula& F, OpenCadConfig cfg) : F_(F), cfg_(cfg), n_(F.num_vars) {
    levels_ = project_open(F.polynomials(), n_);
    by_level_.resize(n_ + 1);
    for (std::size_t i = 0; i < F.clauses.size(); ++i) by_level_[F.level(F.clauses[i])].push_back({&F, i});
    if (cfg_.learned)
      for (std::size_t i = 0; i < cfg_.learned->clauses.size(); ++i) {
        auto lv = cfg_.learned->level(cfg_.learned->clauses[i]);
        if (lv <= n_) by_level_[lv].push_back({cfg_.learned, i});
      }
  }

  OpenCadResult run() {
    OpenCadResult res;
    for (std::uint32_t j = 1; j <= n_; ++j) res.stats.projection_sizes.push_back(levels_[j].size());
    if (F_.known_unsat) {
      res.answer = Answer::Unsat;
      return res;
    }
    Assignment a(n_);
    auto r = lift(1, a, res.stats);
    if (r == Answer::Sat) {
      res.answer = Answer::Sat;
      res.model = a;
    } else {
      res.answer = r;
    }
    return res;
  }

 private:
  struct ClauseRef {
    const PolyFormula* owner;
    std::size_t index;
  };

  std::vector<Rational> samples(std::uint32_t j, const Assignment& a) {
    return open_cell_samples(levels_[j], Var(j), a, cfg_.len1);
  }

  Answer lift(std::uint32_t j, Assignment& a, OpenCadStats& stats) {
    if (j > n_) return Answer::Sat;
    Answer worst = Answer::Unsat;
    for (auto& q : samples(j, a)) {
      if (cfg_.deadline.expired()) return Answer::Unknown;
      cfg_.deadline.tick();
      ++stats.visited;
      a.set(Var(j), q);
      bool refuted = false;
      for (auto& ref : by_level_[j])
        if (!eval_clause(*ref.owner, ref.owner->clauses[ref.index], a)) {
          refuted = true;
          break;
        }
      if (refuted) {
        ++stats.pruned;
        continue;
      }
      Answer r = lift(j + 1, a, stats);
      if (r == Answer::Sat) return r;
      if (r == Answer::Unknown) worst = Answer::Unknown;
      if (cfg_.deadline.expired()) break;
    }
    a.unset(Var(j));
    return cfg_.deadline.expired() ? Answer::Unknown : worst;
  }

  const PolyFormula& F_;
  OpenCadConfig cfg_;
  std::uint32_t n_;
  std::vector<std::vector<Polynomial>> levels_;
  std::vector<std::vector<ClauseRef>> by_level_;
};

inline OpenCadResult opencad_solve(const PolyFormula& F, OpenCadConfig cfg = {}) {
  OpenCad cad(F, cfg);
  return cad.run();
}

}  // namespace nra
