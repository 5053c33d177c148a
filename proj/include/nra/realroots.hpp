#pragma once

#include "nra/upoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nra {

enum class Rel { LT, GT, EQ, NE, LE, GE };

inline const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::LT: return "<";
    case Rel::GT: return ">";
    case Rel::EQ: return "=";
    case Rel::NE: return "!=";
    case Rel::LE: return "<=";
    case Rel::GE: return ">=";
  }
  return "?";
}

inline bool rel_holds(Rel r, int sign) {
  switch (r) {
    case Rel::LT: return sign < 0;
    case Rel::GT: return sign > 0;
    case Rel::EQ: return sign == 0;
    case Rel::NE: return sign != 0;
    case Rel::LE: return sign <= 0;
    case Rel::GE: return sign >= 0;
  }
  return false;
}

/// Real roots of a univariate polynomial, sorted ascending.
inline std::vector<RealRoot> isolate_roots(const Polynomial& f) {
  if (f.is_zero()) throw AlgebraError("isolate_roots: zero polynomial");
  return isolate_real_roots(UPoly::from(f));
}

/// Same, with every irrational root refined below the given width.
inline std::vector<RealRoot> isolate_roots(const Polynomial& f, const Rational& width) {
  auto roots = isolate_roots(f);
  for (auto& r : roots) r.refine_below(width);
  return roots;
}

inline int sign_at(const Polynomial& f, const Rational& q) {
  return UPoly::from(f).sign_at(q);
}

/// An interval endpoint: -inf, +inf, or a real root with an open/closed
/// flag.
struct Bound {
  enum Kind { NegInf, Finite, PosInf };
  Kind kind = NegInf;
  std::optional<RealRoot> value;
  bool closed = false;

  static Bound neg_inf() { return {NegInf, std::nullopt, false}; }
  static Bound pos_inf() { return {PosInf, std::nullopt, false}; }
  static Bound at(RealRoot r, bool closed) { return {Finite, std::move(r), closed}; }
  static Bound at(const Rational& q, bool closed) { return at(RealRoot::rational(q), closed); }
};

struct Interval {
  Bound lo, hi;

  /// True when lo < hi as real numbers.
  bool has_interior() const {
    if (lo.kind != Bound::Finite || hi.kind != Bound::Finite) return true;
    return compare(*lo.value, *hi.value) < 0;
  }
  bool contains(const Rational& q) const {
    if (lo.kind == Bound::Finite) {
      int c = lo.value->compare(q);
      if (c > 0 || (c == 0 && !lo.closed)) return false;
    }
    if (hi.kind == Bound::Finite) {
      int c = hi.value->compare(q);
      if (c < 0 || (c == 0 && !hi.closed)) return false;
    }
    return true;
  }
  bool interior_contains(const Rational& q) const {
    if (lo.kind == Bound::Finite && lo.value->compare(q) >= 0) return false;
    if (hi.kind == Bound::Finite && hi.value->compare(q) <= 0) return false;
    return true;
  }
  std::string to_string() const {
    std::string s = lo.kind == Bound::Finite ? (lo.closed ? "[" : "(") + lo.value->to_string() : "(-oo";
    s += ", ";
    s += hi.kind == Bound::Finite ? hi.value->to_string() + (hi.closed ? "]" : ")") : "+oo)";
    return s;
  }
};

namespace detail {

/// A rational strictly between the bounds (lo < hi assumed), preferring
/// the integer of least magnitude, then the bracket midpoint.
inline Rational rational_between(const Bound& lo, const Bound& hi, std::size_t len1) {
  std::optional<Integer> a, b;  // integer range [a, b] inside (lo, hi)
  if (lo.kind == Bound::Finite) a = lo.value->floor() + 1;
  if (hi.kind == Bound::Finite) b = hi.value->ceil() - 1;
  if (!a || !b || *a <= *b) {
    if ((!a || *a <= 0) && (!b || *b >= 0)) return 0;
    if (a && *a > 0) return Rational(*a);
    return Rational(*b);
  }
  const RealRoot& l = *lo.value;
  const RealRoot& h = *hi.value;
  while (!(l.hi() < h.lo())) {
    if (l.is_exact() && h.is_exact()) break;
    l.refine();
    h.refine();
  }
  Rational m = (l.hi() + h.lo()) / 2;
  if (len1 > 0) {
    Rational t = truncate_rational(m, len1);
    if (l.compare(t) < 0 && h.compare(t) > 0) return t;
  }
  return m;
}

}  // namespace detail

/// Sorted, disjoint union of intervals over the extended reals.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) {}

  static IntervalSet all() { return IntervalSet({{Bound::neg_inf(), Bound::pos_inf()}}); }
  static IntervalSet open(const Rational& a, const Rational& b) {
    if (a >= b) return {};
    return IntervalSet({{Bound::at(a, false), Bound::at(b, false)}});
  }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool interior_empty() const {
    for (auto& p : parts_)
      if (p.has_interior()) return false;
    return true;
  }
  bool contains(const Rational& q) const {
    for (auto& p : parts_)
      if (p.contains(q)) return true;
    return false;
  }
  bool interior_contains(const Rational& q) const {
    for (auto& p : parts_)
      if (p.interior_contains(q)) return true;
    return false;
  }

  /// Intersection of two sets.
  IntervalSet intersect(const IntervalSet& o) const {
    std::vector<Interval> out;
    auto lower_max = [](const Bound& x, const Bound& y) -> const Bound& {
      if (x.kind == Bound::NegInf) return y;
      if (y.kind == Bound::NegInf) return x;
      int c = compare(*x.value, *y.value);
      if (c != 0) return c > 0 ? x : y;
      return x.closed ? y : x;
    };
    auto upper_min = [](const Bound& x, const Bound& y) -> const Bound& {
      if (x.kind == Bound::PosInf) return y;
      if (y.kind == Bound::PosInf) return x;
      int c = compare(*x.value, *y.value);
      if (c != 0) return c < 0 ? x : y;
      return x.closed ? y : x;
    };
    for (auto& p : parts_)
      for (auto& q : o.parts_) {
        Interval r{lower_max(p.lo, q.lo), upper_min(p.hi, q.hi)};
        if (r.lo.kind == Bound::Finite && r.hi.kind == Bound::Finite) {
          int c = compare(*r.lo.value, *r.hi.value);
          if (c > 0 || (c == 0 && !(r.lo.closed && r.hi.closed))) continue;
        }
        out.push_back(std::move(r));
      }
    return IntervalSet(std::move(out));
  }

  std::string to_string() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (auto& p : parts_) {
      if (!s.empty()) s += " U ";
      s += p.to_string();
    }
    return s;
  }

 private:
  std::vector<Interval> parts_;
};

/// A rational in the interior of s, or none when the interior is empty.
/// The integer of least magnitude wins over every non-integer candidate;
/// otherwise the candidate with the fewest digits. A seed inside the
/// interior is returned unchanged. len1 > 0 bounds the digits of
/// midpoints where possible.
inline std::optional<Rational> pick_rational(const IntervalSet& s, const std::optional<Rational>& seed = std::nullopt,
                                             std::size_t len1 = 0) {
  if (seed && s.interior_contains(*seed)) return seed;
  std::optional<Rational> best;
  for (auto& p : s.parts()) {
    if (!p.has_interior()) continue;
    Rational c = detail::rational_between(p.lo, p.hi, len1);
    if (!best) {
      best = c;
      continue;
    }
    bool ci = is_integer(c), bi = is_integer(*best);
    if (ci != bi) {
      if (ci) best = c;
      continue;
    }
    if (ci) {
      if (abs(c) < abs(*best) || (abs(c) == abs(*best) && c > *best)) best = c;
    } else if (digit_cost(c) < digit_cost(*best)) {
      best = c;
    }
  }
  return best;
}

struct SignCondition {
  Polynomial poly;  // univariate (or constant)
  Rel rel;
};

/// Solution set of a conjunction of univariate sign conditions, all in
/// the same variable.
inline IntervalSet solve_sign_conditions(const std::vector<SignCondition>& cs) {
  std::vector<std::pair<UPoly, Rel>> live;
  for (auto& c : cs) {
    if (c.poly.is_constant()) {
      if (!rel_holds(c.rel, sign(c.poly.constant_value()))) return {};
      continue;
    }
    live.emplace_back(UPoly::from(c.poly), c.rel);
  }
  if (live.empty()) return IntervalSet::all();

  // Pairwise coprime square-free basis of the constraint polynomials.
  std::vector<UPoly> basis;
  for (auto& [u, rel] : live) {
    UPoly g = square_free_part(u);
    for (std::size_t i = 0; i < basis.size() && g.degree() > 0; ++i) {
      if (basis[i] == g) {
        g = UPoly({Integer(1)});
        break;
      }
      UPoly d = gcd(basis[i], g);
      if (d.degree() <= 0) continue;
      UPoly rest = divide_exact(basis[i], d);
      g = divide_exact(g, d);
      basis[i] = d;
      if (rest.degree() > 0) basis.insert(basis.begin() + static_cast<long>(i) + 1, rest), ++i;
    }
    if (g.degree() > 0) basis.push_back(g);
  }

  // Merge the roots of all basis elements; they are pairwise distinct.
  struct Point {
    RealRoot root;
    std::size_t owner;
  };
  std::vector<Point> points;
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (auto& r : isolate_real_roots(basis[b])) points.push_back({r, b});
  std::sort(points.begin(), points.end(),
            [](const Point& x, const Point& y) { return compare(x.root, y.root) < 0; });

  // divides[k][b]: basis element b divides the k-th constraint.
  std::vector<std::vector<bool>> divides_c(live.size(), std::vector<bool>(basis.size()));
  for (std::size_t k = 0; k < live.size(); ++k)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      UPoly g = gcd(live[k].first, basis[b]);
      divides_c[k][b] = g.degree() > 0;
    }

  // Signs on the open pieces between consecutive roots.
  std::size_t np = points.size();
  std::vector<std::vector<int>> piece_sign(np + 1, std::vector<int>(live.size()));
  for (std::size_t i = 0; i <= np; ++i) {
    Bound lo = i == 0 ? Bound::neg_inf() : Bound::at(points[i - 1].root, false);
    Bound hi = i == np ? Bound::pos_inf() : Bound::at(points[i].root, false);
    Rational q = detail::rational_between(lo, hi, 0);
    for (std::size_t k = 0; k < live.size(); ++k) piece_sign[i][k] = live[k].first.sign_at(q);
  }
  std::vector<bool> piece_ok(np + 1, true), point_ok(np, true);
  for (std::size_t i = 0; i <= np; ++i)
    for (std::size_t k = 0; k < live.size(); ++k)
      if (!rel_holds(live[k].second, piece_sign[i][k])) piece_ok[i] = false;
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t k = 0; k < live.size(); ++k) {
      int s = divides_c[k][points[i].owner] ? 0 : piece_sign[i + 1][k];
      if (!rel_holds(live[k].second, s)) point_ok[i] = false;
    }

  // Sweep left to right, merging adjacent true pieces.
  std::vector<Interval> out;
  std::optional<Bound> open_lo;
  for (std::size_t i = 0; i <= np; ++i) {
    if (piece_ok[i] && !open_lo) open_lo = i == 0 ? Bound::neg_inf() : Bound::at(points[i - 1].root, false);
    if (i == np) break;
    bool pt = point_ok[i];
    if (open_lo) {
      if (!pt) {
        out.push_back({*open_lo, Bound::at(points[i].root, false)});
        open_lo.reset();
      } else if (!piece_ok[i + 1]) {
        out.push_back({*open_lo, Bound::at(points[i].root, true)});
        open_lo.reset();
      }
    } else if (pt) {
      if (piece_ok[i + 1])
        open_lo = Bound::at(points[i].root, true);
      else
        out.push_back({Bound::at(points[i].root, true), Bound::at(points[i].root, true)});
    }
  }
  if (open_lo) out.push_back({*open_lo, Bound::pos_inf()});
  return IntervalSet(std::move(out));
}

}  // namespace nra
