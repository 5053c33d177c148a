#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the solver's own resultant, root isolation or sign machinery.

#include "nra/nra.hpp"

#include <random>
#include <vector>

namespace oracle {

using nra::Rational;
using Dense = std::vector<Rational>;  // coefficients, low degree first

inline void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Rational horner(const Dense& p, const Rational& x) {
  Rational r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

inline Rational determinant(std::vector<std::vector<Rational>> m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

/// Determinant of the Sylvester matrix of f (degree m) and g (degree n).
inline Rational sylvester_resultant(Dense f, Dense g) {
  trim(f);
  trim(g);
  std::size_t m = f.size() - 1, n = g.size() - 1;
  std::size_t N = m + n;
  if (N == 0) return 1;
  std::vector<std::vector<Rational>> M(N, std::vector<Rational>(N, Rational(0)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) M[r][r + k] = f[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) M[n + r][r + k] = g[n - k];
  return determinant(M);
}

inline Dense derivative(const Dense& p) {
  Dense d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

inline Dense remainder(Dense a, const Dense& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline std::vector<Dense> sturm_sequence(Dense p) {
  trim(p);
  std::vector<Dense> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    Dense r = remainder(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(r);
  }
  if (seq.back().empty()) seq.pop_back();
  return seq;
}

inline int sign_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

/// Distinct real roots of p in (a, b], by Sturm's theorem.
inline int sturm_count(const Dense& p, const Rational& a, const Rational& b) {
  auto seq = sturm_sequence(p);
  std::vector<int> sa, sb;
  for (auto& q : seq) {
    sa.push_back(nra::sign(horner(q, a)));
    sb.push_back(nra::sign(horner(q, b)));
  }
  return sign_variations(sa) - sign_variations(sb);
}

/// Distinct real roots of p on the whole line.
inline int sturm_count(const Dense& p) {
  auto seq = sturm_sequence(p);
  std::vector<int> lo, hi;
  for (auto& q : seq) {
    int lc = nra::sign(q.back());
    hi.push_back(lc);
    lo.push_back((q.size() - 1) % 2 ? -lc : lc);
  }
  return sign_variations(lo) - sign_variations(hi);
}

inline Dense dense(const nra::Polynomial& p, nra::Var v) {
  Dense d;
  auto cs = p.coefficients(v);
  for (auto& c : cs) d.push_back(c.is_zero() ? Rational(0) : c.constant_value());
  trim(d);
  return d;
}

inline nra::Polynomial from_dense(const Dense& d, nra::Var v) {
  std::vector<nra::Polynomial> cs;
  for (auto& c : d) cs.push_back(nra::Polynomial(c));
  return nra::Polynomial::from_coefficients(v, cs);
}

inline Dense random_dense(std::mt19937_64& rng, int max_degree, long bound) {
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_int_distribution<long> coeff(-bound, bound);
  Dense d(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& c : d) c = coeff(rng);
  if (d.back() == 0) d.back() = 1;
  return d;
}

/// Random polynomial in x_1..x_n with total degree at most `degree`.
inline nra::Polynomial random_polynomial(std::mt19937_64& rng, std::uint32_t n, std::uint32_t degree, int terms,
                                         long bound) {
  std::uniform_int_distribution<std::uint32_t> var(1, n), d(0, degree);
  std::uniform_int_distribution<long> coeff(-bound, bound);
  nra::Polynomial p;
  for (int t = 0; t < terms; ++t) {
    std::vector<nra::Monomial::Power> pw;
    std::uint32_t k = d(rng);
    for (std::uint32_t i = 0; i < k; ++i) pw.emplace_back(var(rng), 1);
    p = p + nra::Polynomial::monomial(nra::Monomial(pw), Rational(coeff(rng)));
  }
  return p;
}

inline Rational random_rational(std::mt19937_64& rng, long range = 8, long den = 1000003) {
  std::uniform_int_distribution<long> num(-range * den, range * den);
  Rational q(num(rng), den);
  q.canonicalize();
  return q;
}

/// Random strict formula in at most `n` variables: up to `clauses` clauses
/// of up to `atoms` atoms, polynomials of total degree at most `degree`.
inline nra::PolyFormula random_formula(std::mt19937_64& rng, std::uint32_t n, std::uint32_t degree,
                                       std::uint32_t clauses, std::uint32_t atoms) {
  nra::RawFormula raw;
  std::uniform_int_distribution<std::uint32_t> nv(1, n), nc(1, clauses), na(1, atoms), deg(1, degree);
  std::uniform_int_distribution<int> terms(1, 4), op(0, 4);
  raw.num_vars = nv(rng);
  std::uint32_t cn = nc(rng);
  for (std::uint32_t c = 0; c < cn; ++c) {
    nra::RawClause rc;
    std::uint32_t an = na(rng);
    for (std::uint32_t a = 0; a < an; ++a) {
      nra::Polynomial p;
      while (p.is_constant()) p = random_polynomial(rng, raw.num_vars, deg(rng), terms(rng), 5);
      int o = op(rng);
      rc.push_back({p, o < 2 ? nra::Rel::LT : o < 4 ? nra::Rel::GT : nra::Rel::NE});
    }
    raw.clauses.push_back(rc);
  }
  return nra::normalize(raw);
}

/// Exhaustive search of the grid {k/8 : -64 <= k <= 64}^n (129 points per
/// axis over [-8, 8]) with exact integer arithmetic; true when some grid
/// point satisfies F.
class GridSearch {
 public:
  explicit GridSearch(const nra::PolyFormula& F) : F_(F) {
    for (std::size_t i = 0; i < F.atoms->size(); ++i) {
      const auto& atom = (*F.atoms)[static_cast<std::uint32_t>(i)];
      Scaled s;
      s.op = atom.op;
      std::uint32_t D = atom.poly.total_degree();
      for (auto& t : atom.poly.terms()) {
        // p(k/8) * 8^D = sum c * 8^(D - deg t) * prod k_i^e_i; coefficients
        // are integers after normalization.
        ScaledTerm st;
        __int128 c = t.coeff.get_num().get_si();
        for (std::uint32_t e = t.mono.total_degree(); e < D; ++e) c *= 8;
        st.coeff = c;
        for (auto& [v, e] : t.mono.powers()) st.powers.emplace_back(v, e);
        s.terms.push_back(st);
      }
      atoms_.push_back(s);
    }
  }

  bool find_model(nra::Assignment* model = nullptr) {
    std::uint32_t n = F_.num_vars;
    std::vector<long> k(n + 1, -64);
    if (F_.known_unsat) return false;
    while (true) {
      if (holds(k)) {
        if (model) {
          *model = nra::Assignment(n);
          for (std::uint32_t i = 1; i <= n; ++i) model->set(nra::Var(i), Rational(k[i], 8));
        }
        return true;
      }
      std::uint32_t i = 1;
      while (i <= n && k[i] == 64) k[i++] = -64;
      if (i > n) return false;
      ++k[i];
    }
  }

 private:
  struct ScaledTerm {
    __int128 coeff;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> powers;
  };
  struct Scaled {
    nra::Rel op;
    std::vector<ScaledTerm> terms;
  };

  bool holds(const std::vector<long>& k) const {
    for (auto& c : F_.clauses) {
      bool sat = false;
      for (auto l : c) {
        const Scaled& s = atoms_[l.atom()];
        __int128 v = 0;
        for (auto& t : s.terms) {
          __int128 m = t.coeff;
          for (auto& [var, e] : t.powers)
            for (std::uint32_t j = 0; j < e; ++j) m *= k[var];
          v += m;
        }
        int sg = v > 0 ? 1 : v < 0 ? -1 : 0;
        if (nra::rel_holds(s.op, sg) != l.negated()) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    return true;
  }

  const nra::PolyFormula& F_;
  std::vector<Scaled> atoms_;
};

}  // namespace oracle
