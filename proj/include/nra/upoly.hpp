#pragma once

#include "nra/algebra.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace nra {

/// Dense univariate polynomial with integer coefficients, lowest degree
/// first; the top coefficient is nonzero unless the polynomial is zero.
struct UPoly {
  std::vector<Integer> c;

  UPoly() = default;
  explicit UPoly(std::vector<Integer> coeffs) : c(std::move(coeffs)) { trim(); }

  /// Positive rational multiple of a polynomial in v alone (or a constant).
  static UPoly from(const Polynomial& p, Var v) {
    Integer l = 1;
    for (auto& t : p.terms()) {
      if (t.mono.total_degree() != t.mono.degree(v))
        throw AlgebraError("UPoly: polynomial is not univariate in x" + std::to_string(v.index));
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    UPoly u;
    u.c.assign(p.degree(v) + 1, Integer(0));
    for (auto& t : p.terms()) u.c[t.mono.degree(v)] = t.coeff.get_num() * (l / t.coeff.get_den());
    u.trim();
    return u;
  }
  /// Univariate in its only variable (constants are allowed).
  static UPoly from(const Polynomial& p) { return from(p, p.main_var()); }

  Polynomial to_polynomial(Var v) const {
    std::vector<Term> ts;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) ts.push_back({Monomial::var(v, static_cast<std::uint32_t>(i)), Rational(c[i])});
    return Polynomial::from_terms(std::move(ts));
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Integer& lc() const { return c.back(); }

  /// Sign of the value at q, computed without rational arithmetic.
  int sign_at(const Rational& q) const {
    if (c.empty()) return 0;
    const Integer& num = q.get_num();
    const Integer& den = q.get_den();
    Integer acc = c.back(), qp = 1;
    for (int i = degree() - 1; i >= 0; --i) {
      qp *= den;
      acc *= num;
      acc += c[i] * qp;
    }
    return sgn(acc);
  }
  Rational eval(const Rational& q) const {
    Rational acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * q + Rational(c[i]);
    return acc;
  }

  UPoly derivative() const {
    UPoly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * static_cast<unsigned long>(i));
    d.trim();
    return d;
  }

  /// Divides out the integer content and makes the leading coefficient
  /// positive.
  UPoly primitive() const {
    UPoly r = *this;
    if (r.c.empty()) return r;
    Integer g = 0;
    for (auto& x : r.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (r.lc() < 0) g = -g;
    for (auto& x : r.c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return r;
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }
};

namespace detail {

/// lc(b)^(deg a - deg b + 1) * a mod b over the integers.
inline UPoly uprem(UPoly a, const UPoly& b) {
  int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    Integer la = a.lc();
    int shift = a.degree() - db;
    for (auto& x : a.c) x *= b.lc();
    for (int i = 0; i <= db; ++i) a.c[i + shift] -= la * b.c[i];
    a.trim();
  }
  return a;
}

}  // namespace detail

/// Primitive gcd with positive leading coefficient.
inline UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  UPoly x = a.primitive(), y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.degree() == 0) return UPoly({Integer(1)});
    UPoly r = detail::uprem(x, y).primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

/// a / b where b divides a; the result is made primitive.
inline UPoly divide_exact(const UPoly& a, const UPoly& b) {
  UPoly r = a.primitive();
  UPoly d = b.primitive();
  if (d.is_zero()) throw AlgebraError("division by the zero polynomial");
  int dq = r.degree() - d.degree();
  if (dq < 0) {
    if (r.is_zero()) return r;
    throw AlgebraError("inexact polynomial division");
  }
  std::vector<Integer> q(dq + 1);
  for (int i = dq; i >= 0; --i) {
    const Integer& top = r.c[i + d.degree()];
    if (!mpz_divisible_p(top.get_mpz_t(), d.lc().get_mpz_t()))
      throw AlgebraError("inexact polynomial division");
    Integer t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), d.lc().get_mpz_t());
    for (int j = 0; j <= d.degree(); ++j) r.c[i + j] -= t * d.c[j];
    q[i] = t;
  }
  r.trim();
  if (!r.is_zero()) throw AlgebraError("inexact polynomial division");
  return UPoly(std::move(q)).primitive();
}

inline UPoly square_free_part(const UPoly& p) {
  if (p.degree() <= 0) return p.primitive();
  return divide_exact(p, gcd(p, p.derivative()));
}

/// A real root of a square-free integer polynomial, given either exactly
/// or by an open isolating interval (lo, hi) whose endpoints are not
/// roots. Refinement only narrows the interval; the number represented
/// never changes.
class RealRoot {
 public:
  static RealRoot rational(const Rational& q) {
    RealRoot r;
    r.lo_ = r.hi_ = q;
    r.exact_ = true;
    return r;
  }
  RealRoot(std::shared_ptr<const UPoly> p, Rational lo, Rational hi)
      : poly_(std::move(p)), lo_(std::move(lo)), hi_(std::move(hi)) {
    sign_lo_ = poly_->sign_at(lo_);
  }

  bool is_exact() const { return exact_; }
  /// Valid only when is_exact().
  const Rational& value() const { return lo_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const std::shared_ptr<const UPoly>& poly() const { return poly_; }

  /// Halves the isolating interval.
  void refine() const {
    if (exact_) return;
    Rational m = (lo_ + hi_) / 2;
    int s = poly_->sign_at(m);
    if (s == 0) {
      lo_ = hi_ = m;
      exact_ = true;
    } else if (s == sign_lo_) {
      lo_ = m;
    } else {
      hi_ = m;
    }
  }
  void refine_below(const Rational& width) const {
    while (!exact_ && hi_ - lo_ >= width) refine();
  }

  /// sign(this - q).
  int compare(const Rational& q) const {
    if (exact_) return sgn(lo_ - q);
    if (q <= lo_) return 1;
    if (q >= hi_) return -1;
    int s = poly_->sign_at(q);
    if (s == 0) {
      lo_ = hi_ = q;
      exact_ = true;
      return 0;
    }
    if (s == sign_lo_) {
      lo_ = q;
      return 1;
    }
    hi_ = q;
    return -1;
  }

  /// Largest integer not above the root.
  Integer floor() const {
    if (exact_) return nra::floor(lo_);
    while (true) {
      Integer a = nra::floor(lo_) + 1;  // smallest integer above lo
      if (Rational(a) >= hi_) return a - 1;
      int s = compare(Rational(a));
      if (s == 0) return a;
    }
  }
  Integer ceil() const {
    Integer f = floor();
    return compare(Rational(f)) == 0 ? f : Integer(f + 1);
  }

  double approx() const { return Rational((lo_ + hi_) / 2).get_d(); }

  std::string to_string() const {
    if (exact_) return lo_.get_str();
    return "root(" + poly_->to_polynomial(Var(1)).to_string([](Var) { return std::string("t"); }) +
           ", " + lo_.get_str() + ", " + hi_.get_str() + ")";
  }

 private:
  RealRoot() = default;

  std::shared_ptr<const UPoly> poly_;
  mutable Rational lo_, hi_;
  mutable bool exact_ = false;
  int sign_lo_ = 0;
};

/// sign(a - b). Equal irrational roots of different polynomials are
/// detected through their gcd.
inline int compare(const RealRoot& a, const RealRoot& b) {
  if (a.is_exact()) return -b.compare(a.value());
  if (b.is_exact()) return a.compare(b.value());
  auto disjoint = [&]() -> int {
    if (a.hi() <= b.lo()) return -1;
    if (b.hi() <= a.lo()) return 1;
    return 0;
  };
  if (int d = disjoint()) return d;
  UPoly g = a.poly() == b.poly() ? *a.poly() : gcd(*a.poly(), *b.poly());
  if (g.degree() > 0) {
    Rational lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
    if (lo < hi && g.sign_at(lo) * g.sign_at(hi) < 0) return 0;
  }
  while (true) {
    a.refine();
    b.refine();
    if (a.is_exact()) return -b.compare(a.value());
    if (b.is_exact()) return a.compare(b.value());
    if (int d = disjoint()) return d;
  }
}

namespace detail {

inline std::vector<Integer> taylor_shift1(std::vector<Integer> a) {
  std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) a[j - 1] += a[j];
  return a;
}

/// Upper bound on the number of roots in (0, 1) by Descartes' rule.
inline int descartes_01(const std::vector<Integer>& q) {
  std::vector<Integer> r(q.rbegin(), q.rend());
  r = taylor_shift1(std::move(r));
  int changes = 0, last = 0;
  for (auto& x : r) {
    int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

struct PositiveRoot {
  Rational lo, hi;
  bool exact;
};

/// Roots of a square-free p in (0, bound) with p(0) != 0, bound = 2^k above
/// every positive root.
inline std::vector<PositiveRoot> positive_roots(const std::vector<Integer>& p, unsigned k) {
  std::vector<PositiveRoot> out;
  int d = static_cast<int>(p.size()) - 1;
  std::vector<Integer> q(p.size());
  for (int i = 0; i <= d; ++i) q[i] = p[i] << (k * static_cast<unsigned>(i));
  struct Job {
    std::vector<Integer> q;
    Integer c;
    unsigned depth;
  };
  Rational bound = Rational(pow(Integer(2), k));
  auto point = [&](const Integer& c, unsigned depth) {
    Rational r(c, pow(Integer(2), depth));
    r.canonicalize();
    return Rational(r * bound);
  };
  std::vector<Job> stack{{std::move(q), 0, 0}};
  while (!stack.empty()) {
    Job job = std::move(stack.back());
    stack.pop_back();
    int v = descartes_01(job.q);
    if (v == 0) continue;
    if (v == 1) {
      out.push_back({point(job.c, job.depth), point(job.c + 1, job.depth), false});
      continue;
    }
    int dj = static_cast<int>(job.q.size()) - 1;
    std::vector<Integer> left(job.q.size());
    for (int i = 0; i <= dj; ++i) left[i] = job.q[i] << static_cast<unsigned>(dj - i);
    std::vector<Integer> right = taylor_shift1(left);
    Integer c2 = job.c * 2;
    if (right[0] == 0) {
      out.push_back({point(c2 + 1, job.depth + 1), point(c2 + 1, job.depth + 1), true});
      right.erase(right.begin());
    }
    stack.push_back({std::move(right), c2 + 1, job.depth + 1});
    stack.push_back({std::move(left), c2, job.depth + 1});
  }
  std::sort(out.begin(), out.end(), [](const PositiveRoot& a, const PositiveRoot& b) { return a.lo < b.lo; });
  return out;
}

inline unsigned bits(const Integer& z) {
  return z == 0 ? 0u : static_cast<unsigned>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

/// Shrinks (lo, hi), which holds exactly one simple root of p, until
/// neither endpoint is a root. A root at an endpoint is only possible for
/// points found exactly during bisection; the derivative gives the sign
/// next to it.
inline RealRoot isolating(const std::shared_ptr<const UPoly>& p, const UPoly& dp, Rational lo, Rational hi) {
  int sl = p->sign_at(lo), sh = p->sign_at(hi);
  if (sl != 0 && sh != 0) return RealRoot(p, lo, hi);
  int el = sl != 0 ? sl : dp.sign_at(lo);
  while (p->sign_at(lo) == 0 || p->sign_at(hi) == 0) {
    Rational m = (lo + hi) / 2;
    int s = p->sign_at(m);
    if (s == 0) return RealRoot::rational(m);
    if (s == el)
      lo = m;
    else
      hi = m;
  }
  return RealRoot(p, lo, hi);
}

}  // namespace detail

/// Distinct real roots in increasing order. Rational roots are returned
/// exactly; the rest carry isolating intervals of the square-free part.
inline std::vector<RealRoot> isolate_real_roots(const UPoly& f) {
  if (f.is_zero()) throw AlgebraError("isolate_roots: zero polynomial");
  std::vector<RealRoot> out;
  if (f.degree() == 0) return out;
  UPoly p = square_free_part(f);
  if (p.degree() == 1) {
    out.push_back(RealRoot::rational(make_rational(Integer(-p.c[0]), p.c[1])));
    return out;
  }
  bool zero_root = p.c[0] == 0;
  if (zero_root) p.c.erase(p.c.begin());
  auto shared = std::make_shared<const UPoly>(p);
  if (p.degree() >= 1) {
    unsigned big = 0;
    for (int i = 0; i < p.degree(); ++i) big = std::max(big, detail::bits(abs(p.c[i])));
    unsigned lcb = detail::bits(abs(p.lc()));
    unsigned k = big + 2 > lcb ? big + 2 - lcb : 1;
    if (k < 1) k = 1;
    std::vector<Integer> neg = p.c;
    for (std::size_t i = 1; i < neg.size(); i += 2) neg[i] = -neg[i];
    auto negs = detail::positive_roots(neg, k);
    UPoly dp = p.derivative();
    for (auto it = negs.rbegin(); it != negs.rend(); ++it) {
      if (it->exact)
        out.push_back(RealRoot::rational(-it->lo));
      else
        out.push_back(detail::isolating(shared, dp, -it->hi, -it->lo));
    }
    if (zero_root) out.push_back(RealRoot::rational(0));
    for (auto& r : detail::positive_roots(p.c, k)) {
      if (r.exact)
        out.push_back(RealRoot::rational(r.lo));
      else
        out.push_back(detail::isolating(shared, dp, r.lo, r.hi));
    }
  } else if (zero_root) {
    out.push_back(RealRoot::rational(0));
  }
  // Detect the remaining rational roots: any rational root is k / lc, and
  // an interval narrower than 1 / lc holds at most one such point.
  Rational grid = abs(make_rational(Integer(1), p.lc()));
  for (auto& r : out) {
    if (r.is_exact()) continue;
    r.refine_below(grid);
    if (r.is_exact()) continue;
    Integer k = nra::ceil(r.lo() * Rational(p.lc()));
    Rational cand = make_rational(k, p.lc());
    if (cand < r.hi() && cand > r.lo() && p.sign_at(cand) == 0) r = RealRoot::rational(cand);
  }
  return out;
}

}  // namespace nra
