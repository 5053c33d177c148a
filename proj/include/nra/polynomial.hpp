#pragma once

#include "nra/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nra {

/// A real variable x_i; the index is also its level in the variable order.
struct Var {
  std::uint32_t index = 0;

  constexpr Var() = default;
  constexpr explicit Var(std::uint32_t i) : index(i) {}
  friend constexpr auto operator<=>(Var, Var) = default;
};

class UnassignedVariable : public std::runtime_error {
 public:
  explicit UnassignedVariable(Var v)
      : std::runtime_error("variable x" + std::to_string(v.index) +
                           " is unassigned"),
        var(v) {}
  Var var;
};

/// Partial map from variables to rationals, indexed by level.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t num_vars) : values_(num_vars + 1) {}

  std::size_t num_vars() const { return values_.empty() ? 0 : values_.size() - 1; }

  bool has(Var v) const {
    return v.index < values_.size() && values_[v.index].has_value();
  }
  const Rational& operator[](Var v) const {
    if (!has(v)) throw UnassignedVariable(v);
    return *values_[v.index];
  }
  const std::optional<Rational>& get(Var v) const {
    static const std::optional<Rational> none;
    return v.index < values_.size() ? values_[v.index] : none;
  }
  void set(Var v, Rational q) {
    if (v.index >= values_.size()) values_.resize(v.index + 1);
    values_[v.index] = std::move(q);
  }
  void unset(Var v) {
    if (v.index < values_.size()) values_[v.index].reset();
  }
  /// True when x_1..x_n all carry values.
  bool complete(std::size_t n) const {
    for (std::uint32_t i = 1; i <= n; ++i)
      if (!has(Var(i))) return false;
    return true;
  }
  friend bool operator==(const Assignment& a, const Assignment& b) {
    std::size_t n = std::max(a.values_.size(), b.values_.size());
    for (std::uint32_t i = 1; i < n; ++i)
      if (a.get(Var(i)) != b.get(Var(i))) return false;
    return true;
  }
  /// "(a1, a2, ...)" with "_" for unassigned entries.
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 1; i < values_.size(); ++i) {
      if (i > 1) s += ", ";
      s += values_[i] ? nra::to_string(*values_[i]) : "_";
    }
    return s + ")";
  }

 private:
  std::vector<std::optional<Rational>> values_;
};

/// Power product with variables in increasing index order.
class Monomial {
 public:
  using Power = std::pair<std::uint32_t, std::uint32_t>;  // (var index, exponent)

  Monomial() = default;
  explicit Monomial(std::vector<Power> powers) : powers_(std::move(powers)) {
    std::sort(powers_.begin(), powers_.end());
    std::vector<Power> merged;
    for (auto& p : powers_) {
      if (p.second == 0) continue;
      if (!merged.empty() && merged.back().first == p.first)
        merged.back().second += p.second;
      else
        merged.push_back(p);
    }
    powers_ = std::move(merged);
    for (auto& p : powers_) total_ += p.second;
  }
  static Monomial var(Var v, std::uint32_t e = 1) {
    return e == 0 ? Monomial() : Monomial({{v.index, e}});
  }

  const std::vector<Power>& powers() const { return powers_; }
  bool is_constant() const { return powers_.empty(); }
  std::uint32_t total_degree() const { return total_; }
  std::uint32_t max_var() const { return powers_.empty() ? 0 : powers_.back().first; }

  std::uint32_t degree(Var v) const {
    for (auto& p : powers_)
      if (p.first == v.index) return p.second;
    return 0;
  }

  Monomial without(Var v) const {
    Monomial m;
    for (auto& p : powers_)
      if (p.first != v.index) {
        m.powers_.push_back(p);
        m.total_ += p.second;
      }
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.powers_.reserve(a.powers_.size() + b.powers_.size());
    std::size_t i = 0, j = 0;
    while (i < a.powers_.size() || j < b.powers_.size()) {
      if (j == b.powers_.size() ||
          (i < a.powers_.size() && a.powers_[i].first < b.powers_[j].first)) {
        m.powers_.push_back(a.powers_[i++]);
      } else if (i == a.powers_.size() || b.powers_[j].first < a.powers_[i].first) {
        m.powers_.push_back(b.powers_[j++]);
      } else {
        m.powers_.emplace_back(a.powers_[i].first, a.powers_[i].second + b.powers_[j].second);
        ++i;
        ++j;
      }
    }
    m.total_ = a.total_ + b.total_;
    return m;
  }

  /// Graded lexicographic order; higher-indexed variables are more
  /// significant within a degree.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.total_ != b.total_) return a.total_ <=> b.total_;
    auto ia = a.powers_.rbegin();
    auto ib = b.powers_.rbegin();
    for (; ia != a.powers_.rend() && ib != b.powers_.rend(); ++ia, ++ib) {
      if (ia->first != ib->first) return ia->first <=> ib->first;
      if (ia->second != ib->second) return ia->second <=> ib->second;
    }
    if (ia != a.powers_.rend()) return std::strong_ordering::greater;
    if (ib != b.powers_.rend()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.powers_ == b.powers_;
  }

 private:
  std::vector<Power> powers_;
  std::uint32_t total_ = 0;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Default variable naming: x1, x2, ...
inline std::string default_var_name(Var v) { return "x" + std::to_string(v.index); }

using VarNamer = std::function<std::string(Var)>;

/// Sparse multivariate polynomial over Q in canonical form: terms sorted
/// by decreasing monomial, no zero coefficients, no repeated monomials.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(implicit)
  Polynomial(const Rational& c) {                  // NOLINT(implicit)
    if (c != 0) terms_.push_back({Monomial(), c});
  }
  static Polynomial var(Var v) { return monomial(Monomial::var(v), 1); }
  static Polynomial monomial(Monomial m, Rational c) {
    Polynomial p;
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }
  /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
  static Polynomial from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.mono > b.mono; });
    Polynomial p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
        p.terms_.back().coeff += t.coeff;
      else {
        if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || terms_.front().mono.is_constant(); }
  Rational constant_value() const {
    if (terms_.empty() || !terms_.back().mono.is_constant()) return 0;
    return terms_.back().coeff;
  }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  /// Highest variable index occurring; 0 for constants.
  std::uint32_t level() const {
    std::uint32_t l = 0;
    for (auto& t : terms_) l = std::max(l, t.mono.max_var());
    return l;
  }
  Var main_var() const { return Var(level()); }

  std::uint32_t degree(Var v) const {
    std::uint32_t d = 0;
    for (auto& t : terms_) d = std::max(d, t.mono.degree(v));
    return d;
  }
  std::uint32_t total_degree() const {
    return terms_.empty() ? 0 : terms_.front().mono.total_degree();
  }
  bool has_var(Var v) const {
    for (auto& t : terms_)
      if (t.mono.degree(v) > 0) return true;
    return false;
  }
  std::vector<Var> vars() const {
    std::vector<std::uint32_t> ids;
    for (auto& t : terms_)
      for (auto& p : t.mono.powers()) ids.push_back(p.first);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<Var> out;
    for (auto i : ids) out.emplace_back(i);
    return out;
  }

  /// Coefficients with respect to v, index = degree in v.
  std::vector<Polynomial> coefficients(Var v) const {
    std::vector<std::vector<Term>> buckets(degree(v) + 1);
    for (auto& t : terms_) buckets[t.mono.degree(v)].push_back({t.mono.without(v), t.coeff});
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_sorted_terms(std::move(b)));
    return out;
  }
  static Polynomial from_coefficients(Var v, const std::vector<Polynomial>& cs) {
    std::vector<Term> terms;
    for (std::size_t d = 0; d < cs.size(); ++d) {
      Monomial xd = Monomial::var(v, static_cast<std::uint32_t>(d));
      for (auto& t : cs[d].terms_) terms.push_back({t.mono * xd, t.coeff});
    }
    return from_terms(std::move(terms));
  }
  Polynomial leading_coeff(Var v) const {
    auto cs = coefficients(v);
    return cs.back();
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    return merge(a, b, false);
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return merge(a, b, true);
  }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r = a;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.terms_.size() == 1 && b.is_constant()) return a.scaled(b.terms_[0].coeff);
    if (a.terms_.size() == 1 && a.is_constant()) return b.scaled(a.terms_[0].coeff);
    std::map<Monomial, Rational, std::greater<>> acc;
    for (auto& ta : a.terms_)
      for (auto& tb : b.terms_) {
        auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono, 0);
        it->second += ta.coeff * tb.coeff;
      }
    Polynomial r;
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back({m, c});
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Rational& c) const {
    if (c == 0) return {};
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }
  Polynomial pow(unsigned e) const {
    Polynomial r(1), base = *this;
    while (e) {
      if (e & 1) r *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
        return false;
    return true;
  }
  /// Total order on canonical forms (for use as map keys).
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      auto c = a.terms_[i].mono <=> b.terms_[i].mono;
      if (c != 0) return c < 0;
      if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff < b.terms_[i].coeff;
    }
    return a.terms_.size() < b.terms_.size();
  }

  std::size_t hash() const {
    std::size_t h = terms_.size();
    for (auto& t : terms_) {
      for (auto& p : t.mono.powers()) h = h * 1000003u ^ (p.first * 31u + p.second);
      h = h * 1000003u ^ mpz_get_ui(t.coeff.get_num_mpz_t());
      h = h * 1000003u ^ mpz_get_ui(t.coeff.get_den_mpz_t());
    }
    return h;
  }

  /// Exact value at a point; every variable of the polynomial must be
  /// assigned.
  Rational evaluate(const Assignment& a) const {
    Rational sum = 0;
    for (auto& t : terms_) {
      Rational v = t.coeff;
      for (auto& [idx, e] : t.mono.powers()) v *= nra::pow(a[Var(idx)], e);
      sum += v;
    }
    return sum;
  }

  /// Substitutes the values of all assigned variables, keeping the rest
  /// symbolic.
  Polynomial specialize(const Assignment& a) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      Rational c = t.coeff;
      std::vector<Monomial::Power> keep;
      for (auto& [idx, e] : t.mono.powers()) {
        const auto& val = a.get(Var(idx));
        if (val)
          c *= nra::pow(*val, e);
        else
          keep.emplace_back(idx, e);
      }
      if (c != 0) out.push_back({Monomial(std::move(keep)), c});
    }
    return from_terms(std::move(out));
  }

  /// Replaces variables by polynomials. Variables absent from `images`
  /// are kept.
  Polynomial substitute(const std::map<std::uint32_t, Polynomial>& images) const {
    std::map<std::pair<std::uint32_t, std::uint32_t>, Polynomial> cache;
    auto power_of = [&](std::uint32_t idx, std::uint32_t e) -> const Polynomial& {
      auto key = std::make_pair(idx, e);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      Polynomial p = images.at(idx).pow(e);
      return cache.emplace(key, std::move(p)).first->second;
    };
    Polynomial result;
    std::vector<Term> plain;
    for (auto& t : terms_) {
      std::vector<Monomial::Power> keep;
      std::vector<std::pair<std::uint32_t, std::uint32_t>> subs;
      for (auto& pw : t.mono.powers()) {
        if (images.count(pw.first))
          subs.push_back(pw);
        else
          keep.push_back(pw);
      }
      if (subs.empty()) {
        plain.push_back(t);
        continue;
      }
      Polynomial prod = Polynomial::monomial(Monomial(std::move(keep)), t.coeff);
      for (auto& [idx, e] : subs) prod *= power_of(idx, e);
      result += prod;
    }
    return result + from_terms(std::move(plain));
  }

  Polynomial derivative(Var v) const {
    std::vector<Term> out;
    for (auto& t : terms_) {
      std::uint32_t e = t.mono.degree(v);
      if (e == 0) continue;
      std::vector<Monomial::Power> pw;
      for (auto& p : t.mono.powers())
        pw.emplace_back(p.first, p.first == v.index ? p.second - 1 : p.second);
      out.push_back({Monomial(std::move(pw)), t.coeff * e});
    }
    return from_terms(std::move(out));
  }

  std::string to_string(const VarNamer& name = default_var_name) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
      Rational c = t.coeff;
      bool neg = c < 0;
      if (neg) c = -c;
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      bool unit = (c == 1);
      if (!unit || t.mono.is_constant()) {
        os << c.get_str();
        if (!t.mono.is_constant()) os << "*";
      }
      bool first_pow = true;
      for (auto& [idx, e] : t.mono.powers()) {
        if (!first_pow) os << "*";
        first_pow = false;
        os << name(Var(idx));
        if (e > 1) os << "^" << e;
      }
    }
    return os.str();
  }

 private:
  static Polynomial from_sorted_terms(std::vector<Term> terms) {
    // `without` preserves the relative order only when the removed variable
    // has equal degree, so re-sort.
    return from_terms(std::move(terms));
  }
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size()) {
        r.terms_.push_back(a.terms_[i++]);
        continue;
      }
      if (i == a.terms_.size()) {
        r.terms_.push_back(b.terms_[j++]);
        if (subtract) r.terms_.back().coeff = -r.terms_.back().coeff;
        continue;
      }
      auto c = a.terms_[i].mono <=> b.terms_[j].mono;
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j++]);
        if (subtract) r.terms_.back().coeff = -r.terms_.back().coeff;
      } else {
        Rational s = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                              : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
        if (s != 0) r.terms_.push_back({a.terms_[i].mono, s});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  return os << p.to_string();
}

struct PolynomialHash {
  std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

}  // namespace nra
