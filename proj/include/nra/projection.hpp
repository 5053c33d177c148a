#pragma once

#include "nra/formula.hpp"

#include <map>
#include <set>
#include <vector>

namespace nra {

/// Values of x_1..x_{k-1} only.
inline Assignment prefix_assignment(const Assignment& a, std::uint32_t k) {
  Assignment p;
  for (std::uint32_t i = 1; i < k; ++i)
    if (a.has(Var(i))) p.set(Var(i), a[Var(i)]);
  return p;
}

/// Sample coefficients: c_m, c_{m-1}, ... down to the first coefficient
/// not vanishing at a; every coefficient when all vanish.
inline std::vector<Polynomial> scoeff(const Polynomial& f, Var x, const Assignment& a) {
  auto cs = f.coefficients(x);
  Assignment lower = prefix_assignment(a, x.index);
  std::vector<Polynomial> out;
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
    out.push_back(*it);
    if (!it->is_zero() && sign(it->evaluate(lower)) != 0) return out;
  }
  return out;
}

/// f with the leading coefficients that vanish at a removed.
inline Polynomial reduced_at(const Polynomial& f, Var x, const Assignment& a) {
  auto cs = f.coefficients(x);
  Assignment lower = prefix_assignment(a, x.index);
  while (!cs.empty() && (cs.back().is_zero() || sign(cs.back().evaluate(lower)) == 0)) cs.pop_back();
  return Polynomial::from_coefficients(x, cs);
}

namespace detail {

struct OwnedRoot {
  RealRoot root;
  std::size_t owner;
};

/// Roots of every f(a_1..a_{k-1}, x_k) in increasing order, tagged with
/// the index of the owning polynomial.
inline std::vector<OwnedRoot> fiber_roots(const std::vector<Polynomial>& F, Var x, const Assignment& a) {
  Assignment lower = prefix_assignment(a, x.index);
  std::vector<OwnedRoot> out;
  for (std::size_t i = 0; i < F.size(); ++i) {
    Polynomial u = F[i].specialize(lower);
    if (u.is_constant()) continue;
    for (auto& r : isolate_real_roots(UPoly::from(u, x))) out.push_back({r, i});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const OwnedRoot& p, const OwnedRoot& q) { return compare(p.root, q.root) < 0; });
  return out;
}

inline void add_nonconstant(std::vector<Polynomial>& out, const Polynomial& p) {
  if (p.is_constant()) return;
  Polynomial q = primitive(p);
  if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
}

}  // namespace detail

/// Sample polynomial set: the polynomials whose roots on the fiber over
/// a_1..a_{n-1} match or bracket a_n (at most two).
inline std::vector<Polynomial> spoly(const std::vector<Polynomial>& F, Var x, const Assignment& a) {
  auto roots = detail::fiber_roots(F, x, a);
  if (roots.empty()) return {};
  const Rational& an = a[x];
  std::optional<std::size_t> below, above;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    int c = roots[i].root.compare(an);
    if (c == 0) return {F[roots[i].owner]};
    if (c < 0) below = i;
    if (c > 0 && !above) above = i;
  }
  std::vector<Polynomial> out;
  if (below) out.push_back(F[roots[*below].owner]);
  if (above && (!below || roots[*above].owner != roots[*below].owner)) out.push_back(F[roots[*above].owner]);
  return out;
}

/// Sample-cell projection of F on x at the full sample a (a assigns x as
/// well). Returns the square-free basis of the non-constant results.
inline std::vector<Polynomial> proj(const std::vector<Polynomial>& Fin, Var x, const Assignment& a) {
  std::vector<Polynomial> F;
  for (auto& f : Fin)
    if (!f.is_constant()) F.push_back(f);
  if (F.empty()) return {};
  F = square_free_basis(F);
  std::vector<Polynomial> raw;
  for (auto& f : F) {
    if (!f.has_var(x)) {
      detail::add_nonconstant(raw, f);
      continue;
    }
    for (auto& c : scoeff(f, x, a)) detail::add_nonconstant(raw, c);
    if (f.degree(x) >= 2) detail::add_nonconstant(raw, discriminant(f, x));
  }
  auto sp = spoly(F, x, a);
  for (auto& f : F) {
    if (!f.has_var(x)) continue;
    for (auto& g : sp)
      if (!(f == g)) detail::add_nonconstant(raw, resultant(f, g, x));
  }
  if (raw.empty()) return {};
  return square_free_basis(raw);
}

/// One conjunct of a cell: an atom and the polarity that holds at the
/// sample.
struct CellLiteral {
  Atom atom;
  bool positive;
};

namespace detail {

inline void push_sign_condition(std::vector<CellLiteral>& cell, const Polynomial& p, int s) {
  if (s < 0) cell.push_back({make_poly_atom(p, Rel::LT), true});
  if (s > 0) cell.push_back({make_poly_atom(p, Rel::GT), true});
  if (s == 0) {
    cell.push_back({make_poly_atom(p, Rel::LT), false});
    cell.push_back({make_poly_atom(p, Rel::GT), false});
  }
}

inline std::size_t root_index_of(const std::vector<OwnedRoot>& roots, std::size_t pos) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i <= pos; ++i)
    if (roots[i].owner == roots[pos].owner) ++idx;
  return idx;
}

}  // namespace detail

/// Cell around the sample a (assigning x_1..x_{k-1}) on which the solution
/// structure of P along the x_k fiber does not change. Every returned
/// literal holds at a.
inline std::vector<CellLiteral> explain_cell(const std::vector<Polynomial>& P, std::uint32_t k, const Assignment& a) {
  std::map<std::uint32_t, std::vector<Polynomial>> todo;
  auto push = [&](const Polynomial& p) {
    if (p.is_constant()) return;
    Polynomial q = primitive(p);
    auto& bucket = todo[q.level()];
    if (std::find(bucket.begin(), bucket.end(), q) == bucket.end()) bucket.push_back(q);
  };
  for (auto& p : P) push(p);

  std::vector<CellLiteral> cell;
  for (std::uint32_t j = k; j >= 1; --j) {
    auto it = todo.find(j);
    if (it == todo.end() || it->second.empty()) continue;
    auto basis = square_free_basis(it->second);
    std::vector<Polynomial> Fj;
    for (auto& b : basis) {
      if (b.level() < j)
        push(b);
      else
        Fj.push_back(b);
    }
    if (Fj.empty()) continue;
    Var x(j);
    Assignment lower = prefix_assignment(a, j);

    // Coefficients and discriminants, on the reduced polynomials.
    std::vector<Polynomial> red(Fj.size());
    for (std::size_t i = 0; i < Fj.size(); ++i) {
      for (auto& c : scoeff(Fj[i], x, a)) push(c);
      red[i] = reduced_at(Fj[i], x, a);
      if (red[i].degree(x) >= 2) push(discriminant(red[i], x));
    }
    auto roots = detail::fiber_roots(red, x, a);

    if (j == k) {
      // x_k is unassigned: keep every pair of neighbouring roots ordered.
      for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        std::size_t f = roots[i].owner, g = roots[i + 1].owner;
        if (f != g) push(resultant(red[f], red[g], x));
      }
      continue;
    }

    const Rational& aj = a[x];
    std::optional<std::size_t> below, above, on;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      int c = roots[i].root.compare(aj);
      if (c == 0 && !on) on = i;
      if (c < 0) below = i;
      if (c > 0 && !above) above = i;
    }
    for (std::size_t i = 0; i < Fj.size(); ++i) detail::push_sign_condition(cell, Fj[i], sign(Fj[i].evaluate(prefix_assignment(a, j + 1))));

    std::vector<std::size_t> sp;
    if (on) {
      std::size_t f = roots[*on].owner;
      sp.push_back(f);
      if (red[f].degree(x) >= 2) {
        auto idx = static_cast<std::uint32_t>(detail::root_index_of(roots, *on));
        cell.push_back({make_root_atom(red[f], idx, Rel::LT), false});
        cell.push_back({make_root_atom(red[f], idx, Rel::GT), false});
      }
    } else {
      if (below) {
        std::size_t f = roots[*below].owner;
        sp.push_back(f);
        if (red[f].degree(x) >= 2)
          cell.push_back({make_root_atom(red[f], static_cast<std::uint32_t>(detail::root_index_of(roots, *below)), Rel::GT), true});
      }
      if (above) {
        std::size_t g = roots[*above].owner;
        if (sp.empty() || sp[0] != g) sp.push_back(g);
        if (red[g].degree(x) >= 2)
          cell.push_back({make_root_atom(red[g], static_cast<std::uint32_t>(detail::root_index_of(roots, *above)), Rel::LT), true});
      }
    }
    for (std::size_t s : sp)
      for (std::size_t i = 0; i < Fj.size(); ++i)
        if (i != s && red[i].degree(x) >= 1 && red[s].degree(x) >= 1) push(resultant(red[i], red[s], x));
  }
  return cell;
}

}  // namespace nra
