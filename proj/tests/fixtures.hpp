#pragma once

#include "nra/nra.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace fixture {

using namespace nra;

inline Polynomial X(std::uint32_t i) { return Polynomial::var(Var(i)); }

inline Assignment point(std::initializer_list<Rational> values) {
  Assignment a(static_cast<std::uint32_t>(values.size()));
  std::uint32_t i = 1;
  for (auto& v : values) a.set(Var(i++), v);
  return a;
}

/// CNF built from (polynomial, relation) clauses.
inline PolyFormula formula(std::uint32_t n, std::vector<std::vector<std::pair<Polynomial, Rel>>> clauses) {
  RawFormula raw;
  raw.num_vars = n;
  for (auto& c : clauses) {
    RawClause rc;
    for (auto& [p, r] : c) rc.push_back({p, r});
    raw.clauses.push_back(rc);
  }
  return normalize(raw);
}

/// Running example: variables x = x1, y_i = x_{1+i}, z = x_{r+2}.
inline Polynomial f1(std::uint32_t r) {
  Polynomial p = X(1) * X(1) - X(r + 2) * X(r + 2);
  for (std::uint32_t i = 1; i <= r; ++i) p = p + X(1 + i) * X(1 + i);
  return p;
}

inline Polynomial f2(std::uint32_t r) {
  Polynomial p = (X(1) - 3) * (X(1) - 3) + X(r + 2) * X(r + 2) - 5;
  for (std::uint32_t i = 1; i <= r; ++i) p = p + X(1 + i) * X(1 + i);
  return p;
}

inline PolyFormula running_example(std::uint32_t r) {
  return formula(r + 2, {{{f1(r), Rel::LT}}, {{f2(r), Rel::LT}}});
}

inline Assignment running_witness(std::uint32_t r) {
  Assignment a(r + 2);
  a.set(Var(1), Rational(3, 2));
  for (std::uint32_t i = 2; i <= r + 1; ++i) a.set(Var(i), 0);
  a.set(Var(r + 2), Rational(8, 5));
  return a;
}

/// (x1^2+...+x5^2)^2 - 4(x1^2 x2^2 + x2^2 x3^2 + x3^2 x4^2 + x4^2 x5^2 + x5^2 x1^2)
inline Polynomial five_var_quartic() {
  Polynomial s, c;
  for (std::uint32_t i = 1; i <= 5; ++i) {
    s = s + X(i) * X(i);
    std::uint32_t j = i % 5 + 1;
    c = c + X(i) * X(i) * X(j) * X(j);
  }
  return s * s - c * 4;
}

inline PolyFormula five_var_formula(Rel r = Rel::GT) { return formula(5, {{{five_var_quartic(), r}}}); }

}  // namespace fixture
