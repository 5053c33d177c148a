#pragma once

#include "nra/polynomial.hpp"

#include <set>
#include <stdexcept>
#include <vector>

namespace nra {

class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coefficients of a polynomial in one variable, index = degree; the top
/// entry is nonzero unless the vector is empty.
using Coeffs = std::vector<Polynomial>;

namespace detail {

inline void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

inline int deg(const Coeffs& c) { return static_cast<int>(c.size()) - 1; }

inline Coeffs mul_scalar(const Coeffs& a, const Polynomial& s) {
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  trim(r);
  return r;
}

/// lc(B)^(deg A - deg B + 1) * A mod B.
inline Coeffs prem(Coeffs a, const Coeffs& b) {
  int db = deg(b);
  int e = deg(a) - db + 1;
  const Polynomial& lb = b.back();
  while (!a.empty() && deg(a) >= db) {
    Polynomial la = a.back();
    int shift = deg(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
    --e;
  }
  if (e > 0 && !a.empty()) a = mul_scalar(a, lb.pow(static_cast<unsigned>(e)));
  return a;
}

}  // namespace detail

/// Exact quotient a / b; throws when b does not divide a.
inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw AlgebraError("division by the zero polynomial");
  if (b.is_constant()) return a.scaled(1 / b.leading_coeff());
  const Term& lt = b.terms().front();
  Rational inv = 1 / lt.coeff;
  Polynomial r = a;
  std::vector<Term> quotient;
  while (!r.is_zero()) {
    const Term& t = r.terms().front();
    std::vector<Monomial::Power> qp;
    const auto& bp = lt.mono.powers();
    std::size_t j = 0;
    for (auto& p : t.mono.powers()) {
      std::uint32_t sub = 0;
      if (j < bp.size() && bp[j].first < p.first) throw AlgebraError("inexact polynomial division");
      if (j < bp.size() && bp[j].first == p.first) {
        sub = bp[j].second;
        ++j;
      }
      if (p.second < sub) throw AlgebraError("inexact polynomial division");
      qp.emplace_back(p.first, p.second - sub);
    }
    if (j != bp.size()) throw AlgebraError("inexact polynomial division");
    Term q{Monomial(std::move(qp)), t.coeff * inv};
    r -= Polynomial::monomial(q.mono, q.coeff) * b;
    quotient.push_back(std::move(q));
  }
  return Polynomial::from_terms(std::move(quotient));
}

/// True when b divides a.
inline bool divides(const Polynomial& b, const Polynomial& a) {
  try {
    divide_exact(a, b);
    return true;
  } catch (const AlgebraError&) {
    return false;
  }
}

/// Scales p to an integer polynomial with coprime coefficients and a
/// positive leading coefficient.
inline Polynomial primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer l = 1, g = 0;
  for (auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  for (auto& t : p.terms()) {
    Integer n = t.coeff.get_num() * (l / t.coeff.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational s(l, g);
  s.canonicalize();
  if (p.leading_coeff() < 0) s = -s;
  return p.scaled(s);
}

inline bool shares_var(const Polynomial& a, const Polynomial& b) {
  for (Var v : a.vars())
    if (b.has_var(v)) return true;
  return false;
}

inline Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// gcd of the coefficients of p with respect to v (a polynomial free of v).
inline Polynomial content(const Polynomial& p, Var v) {
  Polynomial g;
  for (auto& c : p.coefficients(v)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? primitive(c) : gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g.is_zero() ? Polynomial(1) : g;
}

/// Normalized gcd: a primitive integer polynomial with positive leading
/// coefficient; gcd(0, 0) = 0.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return primitive(b);
  if (b.is_zero()) return primitive(a);
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (!shares_var(a, b)) return Polynomial(1);
  Var v(std::max(a.level(), b.level()));
  if (!a.has_var(v)) return gcd(a, content(b, v));
  if (!b.has_var(v)) return gcd(content(a, v), b);
  Polynomial ca = content(a, v), cb = content(b, v);
  Polynomial g0 = gcd(ca, cb);
  Coeffs pa = divide_exact(a, ca).coefficients(v);
  Coeffs pb = divide_exact(b, cb).coefficients(v);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  // Primitive remainder sequence in v.
  while (true) {
    Coeffs r = detail::prem(pa, pb);
    if (r.empty()) break;
    if (r.size() == 1) {
      pb = {Polynomial(1)};
      break;
    }
    Polynomial rp = Polynomial::from_coefficients(v, r);
    rp = primitive(divide_exact(rp, content(rp, v)));
    pa = std::move(pb);
    pb = rp.coefficients(v);
  }
  Polynomial g = Polynomial::from_coefficients(v, pb);
  g = divide_exact(g, content(g, v));
  return primitive(g0 * g);
}

/// Resultant of f and g with respect to v (subresultant algorithm).
inline Polynomial resultant(const Polynomial& f, const Polynomial& g, Var v) {
  Coeffs A = f.coefficients(v), B = g.coefficients(v);
  detail::trim(A);
  detail::trim(B);
  if (A.empty() || B.empty()) return Polynomial();
  int da = detail::deg(A), db = detail::deg(B);
  if (da == 0 && db == 0) throw AlgebraError("resultant: both polynomials are constant in the variable");
  if (da == 0) return A[0].pow(static_cast<unsigned>(db));
  if (db == 0) return B[0].pow(static_cast<unsigned>(da));
  int s = 1;
  if (da < db) {
    std::swap(A, B);
    if ((da & 1) && (db & 1)) s = -1;
  }
  Polynomial gg(1), h(1);
  while (true) {
    int delta = detail::deg(A) - detail::deg(B);
    if ((detail::deg(A) & 1) && (detail::deg(B) & 1)) s = -s;
    Coeffs R = detail::prem(A, B);
    if (R.empty()) return Polynomial();
    A = std::move(B);
    Polynomial divisor = gg * h.pow(static_cast<unsigned>(delta));
    B.clear();
    for (auto& c : R) B.push_back(divide_exact(c, divisor));
    gg = A.back();
    if (delta > 0)
      h = divide_exact(gg.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    if (detail::deg(B) <= 0) break;
  }
  int dA = detail::deg(A);
  Polynomial res = divide_exact(B.back().pow(static_cast<unsigned>(dA)),
                                h.pow(static_cast<unsigned>(dA - 1)));
  return s < 0 ? -res : res;
}

/// Discriminant of f with respect to v.
inline Polynomial discriminant(const Polynomial& f, Var v) {
  unsigned d = f.degree(v);
  if (d < 2) throw AlgebraError("discriminant: degree in the variable is below 2");
  Polynomial r = resultant(f, f.derivative(v), v);
  Polynomial q = divide_exact(r, f.leading_coeff(v));
  return (d * (d - 1) / 2) % 2 ? -q : q;
}

/// Square-free part, normalized as a primitive integer polynomial.
inline Polynomial square_free_part(const Polynomial& f) {
  if (f.is_constant()) return Polynomial(1);
  Polynomial g = f;
  for (Var v : f.vars()) g = gcd(g, f.derivative(v));
  return primitive(divide_exact(f, g));
}

namespace detail {

/// Splits f recursively into square-free primitive pieces (content with
/// respect to each main variable peeled off first).
inline void square_free_pieces(const Polynomial& f, std::vector<Polynomial>& out) {
  if (f.is_constant()) return;
  Var v = f.main_var();
  Polynomial c = content(f, v);
  Polynomial p = divide_exact(f, c);
  square_free_pieces(c, out);
  Polynomial g = gcd(p, p.derivative(v));
  out.push_back(primitive(divide_exact(p, g)));
}

}  // namespace detail

/// Primitive, square-free, pairwise coprime polynomials such that every
/// input is a constant times a product of their powers.
inline std::vector<Polynomial> square_free_basis(const std::vector<Polynomial>& F) {
  std::vector<Polynomial> basis;
  for (auto& f : F) {
    if (f.is_constant()) throw AlgebraError("square_free_basis: constant input polynomial");
    std::vector<Polynomial> pieces;
    detail::square_free_pieces(f, pieces);
    for (auto g : pieces) {
      for (std::size_t i = 0; i < basis.size() && !g.is_constant(); ++i) {
        if (basis[i] == g) {
          g = Polynomial(1);
          break;
        }
        if (!shares_var(basis[i], g)) continue;
        Polynomial d = gcd(basis[i], g);
        if (d.is_constant()) continue;
        Polynomial rest = primitive(divide_exact(basis[i], d));
        g = primitive(divide_exact(g, d));
        basis[i] = d;
        if (!rest.is_constant()) basis.insert(basis.begin() + static_cast<long>(i) + 1, rest), ++i;
      }
      if (!g.is_constant()) basis.push_back(g);
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

/// Shape of f viewed as a polynomial in its highest variable.
struct DegreeInfo {
  std::uint32_t level = 0;
  std::uint32_t degree = 0;
  std::uint32_t total_degree = 0;
  /// c_m, ..., c_0 including zero entries.
  std::vector<Polynomial> coefficients;
  /// c_m, ..., c_0 with zero entries dropped.
  std::vector<Polynomial> nonzero_coefficients;
};

inline DegreeInfo degree_info(const Polynomial& f) {
  if (f.is_zero()) throw AlgebraError("degree_info: zero polynomial has no level");
  DegreeInfo info;
  info.level = f.level();
  info.total_degree = f.total_degree();
  if (info.level == 0) {
    info.coefficients = {f};
    info.nonzero_coefficients = {f};
    return info;
  }
  Var v(info.level);
  info.degree = f.degree(v);
  auto cs = f.coefficients(v);
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
    info.coefficients.push_back(*it);
    if (!it->is_zero()) info.nonzero_coefficients.push_back(*it);
  }
  return info;
}

}  // namespace nra
