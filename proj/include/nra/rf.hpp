#pragma once

#include "nra/formula.hpp"

#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace nra {

class InfeasibleParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter sets of the random formula generator, in positional order.
/// Each structural quantity is drawn uniformly from the elements of its set.
struct RfParams {
  std::vector<std::uint32_t> var_counts{30, 40};
  std::vector<std::uint32_t> poly_counts{60, 80};
  std::vector<std::uint32_t> clause_counts{20, 30};
  std::vector<std::uint32_t> atoms_per_clause{10, 20};
  std::vector<std::uint32_t> degrees{20, 30};
  std::vector<std::uint32_t> coeff_bounds{40, 60};
  std::vector<std::uint32_t> terms{3, 5};
};

namespace detail {

inline std::uint32_t draw(const std::vector<std::uint32_t>& set, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, set.size() - 1);
  return set[d(rng)];
}

inline void check_set(const std::vector<std::uint32_t>& set, const char* what) {
  if (set.empty()) throw InfeasibleParameters(std::string("empty parameter set: ") + what);
  for (auto v : set)
    if (v == 0) throw InfeasibleParameters(std::string("parameter set contains 0: ") + what);
}

/// Random polynomial in x_1..x_n of total degree exactly `degree` with
/// `terms` monomials (fewer only when that many do not exist).
inline Polynomial random_polynomial(std::uint32_t n, std::uint32_t degree, std::uint32_t terms, std::uint32_t bound,
                                    std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> var(1, n);
  std::uniform_int_distribution<long> coeff(1, bound);
  std::bernoulli_distribution neg(0.5);
  std::set<Monomial> seen;
  std::vector<Term> out;
  for (std::uint32_t k = 0, attempts = 0; k < terms && attempts < 100 * terms; ++attempts) {
    std::uint32_t d = k == 0 ? degree : std::uniform_int_distribution<std::uint32_t>(0, degree)(rng);
    std::vector<Monomial::Power> pw;
    for (std::uint32_t i = 0; i < d; ++i) pw.emplace_back(var(rng), 1);
    Monomial m(pw);
    if (!seen.insert(m).second) continue;
    long c = coeff(rng);
    out.push_back({m, Rational(neg(rng) ? -c : c)});
    ++k;
  }
  return Polynomial::from_terms(out);
}

}  // namespace detail

inline PolyFormula rf_generate(const RfParams& p, std::uint64_t seed) {
  detail::check_set(p.var_counts, "variables");
  detail::check_set(p.poly_counts, "polynomials");
  detail::check_set(p.clause_counts, "clauses");
  detail::check_set(p.atoms_per_clause, "atoms per clause");
  detail::check_set(p.degrees, "degrees");
  detail::check_set(p.coeff_bounds, "coefficient bounds");
  detail::check_set(p.terms, "terms");
  std::mt19937_64 rng(seed);
  std::uint32_t n = detail::draw(p.var_counts, rng);
  std::uint32_t polynum = detail::draw(p.poly_counts, rng);
  std::uint32_t clausenum = detail::draw(p.clause_counts, rng);

  std::vector<Polynomial> pool;
  for (std::uint32_t attempts = 0; pool.size() < polynum; ++attempts) {
    if (attempts > 100 * polynum) throw InfeasibleParameters("cannot draw enough distinct polynomials");
    Polynomial f = detail::random_polynomial(n, detail::draw(p.degrees, rng), detail::draw(p.terms, rng),
                                             detail::draw(p.coeff_bounds, rng), rng);
    if (f.is_constant()) continue;
    Polynomial g = primitive(f);
    if (g.leading_coeff() < 0) g = -g;
    if (std::find(pool.begin(), pool.end(), g) == pool.end()) pool.push_back(g);
  }

  PolyFormula F;
  F.num_vars = n;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::bernoulli_distribution less(0.5);
  for (std::uint32_t c = 0; c < clausenum; ++c) {
    std::uint32_t k = detail::draw(p.atoms_per_clause, rng);
    if (k > 2 * pool.size()) throw InfeasibleParameters("more atoms per clause than distinct atoms");
    Clause clause;
    while (clause.size() < k) {
      Literal l = Literal::pos(F.atoms->intern(make_poly_atom(pool[pick(rng)], less(rng) ? Rel::LT : Rel::GT)));
      if (std::find(clause.begin(), clause.end(), l) == clause.end()) clause.push_back(l);
    }
    canonicalize_clause(clause);
    F.clauses.push_back(std::move(clause));
  }
  return F;
}

}  // namespace nra
