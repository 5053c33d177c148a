// Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include "fixtures.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace nra;
using fixture::X;

namespace {

// Pinned limits.
constexpr double kRunningExampleSeconds = 5.0;    // per instance
constexpr int kSuiteSize = 200;
constexpr double kSuiteSeconds = 600.0;
constexpr int kLemmaPoints = 1000;
constexpr int kKernelPolynomials = 500;
constexpr int kKernelMaxDegree = 12;
constexpr double kKernelSeconds = 120.0;
constexpr double kFiveVarSeconds = 60.0;
constexpr double kBenchTimeout = 120.0;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

/// Even instances: generic random formulas. Odd instances: mostly unit
/// clauses over polynomials with a signed sum-of-squares part, which are
/// unsatisfiable far more often.
PolyFormula suite_instance(int i) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(10007 + i));
  if (i % 2 == 0) return oracle::random_formula(rng, 3, 3, 4, 3);
  std::uniform_int_distribution<std::uint32_t> nv(1, 3), nc(2, 4), coin(0, 3);
  std::uniform_int_distribution<long> scale(1, 3), shift(-2, 4);
  RawFormula raw;
  raw.num_vars = nv(rng);
  std::uint32_t clauses = nc(rng);
  for (std::uint32_t c = 0; c < clauses; ++c) {
    RawClause rc;
    std::uint32_t atoms = coin(rng) == 0 ? 2 : 1;
    for (std::uint32_t a = 0; a < atoms; ++a) {
      Polynomial p;
      while (p.is_constant()) {
        Polynomial squares;
        for (std::uint32_t v = 1; v <= raw.num_vars; ++v)
          if (coin(rng) != 0) squares = squares + X(v) * X(v);
        long k = scale(rng);
        bool upward = coin(rng) < 2;
        p = squares * (upward ? k : -k) + oracle::random_polynomial(rng, raw.num_vars, 2, 2, 2) +
            (upward ? shift(rng) : -shift(rng));
      }
      rc.push_back({p, coin(rng) < 2 ? Rel::LT : Rel::GT});
    }
    raw.clauses.push_back(rc);
  }
  return normalize(raw);
}

HybridParams suite_params() {
  HybridParams p;
  p.clock = nra::Clock::Mode::Work;
  return p;
}

Assignment random_point(std::mt19937_64& rng, std::uint32_t n) {
  Assignment a(n);
  for (std::uint32_t v = 1; v <= n; ++v) a.set(Var(v), oracle::random_rational(rng, 8, 10007));
  return a;
}

// 1 ---------------------------------------------------------------------

Outcome running_example() {
  Outcome o;
  double worst = 0;
  for (std::uint32_t r = 1; r <= 10; ++r) {
    PolyFormula F = fixture::running_example(r);
    auto t = Clock::now();
    auto res = hybrid_solve(F);
    double s = since(t);
    worst = std::max(worst, s);
    if (res.answer != Answer::Sat) o.fail("r=" + std::to_string(r) + " not SAT");
    else if (!eval_formula(F, res.model)) o.fail("r=" + std::to_string(r) + " model fails");
    if (s >= kRunningExampleSeconds) o.fail("r=" + std::to_string(r) + " took " + std::to_string(s) + " s");
  }
  if (o.pass) o.detail = "r=1..10 SAT, models verified, slowest " + std::to_string(worst) + " s";
  return o;
}

// 2 ---------------------------------------------------------------------

Outcome micro_values() {
  Outcome o;
  Var t1(4), t2(5);
  Assignment origin = fixture::point({0, 0, 0});
  Polynomial u = plane_restriction(fixture::f2(1), origin, Direction{0, 0, 1, 0}, Direction{0, 15, 0, 16}, t1, t2);
  Polynomial T1 = Polynomial::var(t1), T2 = Polynomial::var(t2);
  if (u != T1 * T1 + T2 * T2 * 481 - T2 * 90 + 4) o.fail("plane substitution gave " + u.to_string());

  for (std::uint32_t r = 1; r <= 10; ++r) {
    std::uint32_t n = r + 2;
    Assignment zero(n);
    for (std::uint32_t i = 1; i <= n; ++i) zero.set(Var(i), 0);
    Atom l1 = make_poly_atom(fixture::f1(r), Rel::LT), l2 = make_poly_atom(fixture::f2(r), Rel::LT);
    Assignment p = zero;
    p.set(Var(1), 1);
    p.set(Var(n), 2);
    if (!eval_atom(l1, p)) o.fail("(1,0,..,0,2) rejected for l1 at r=" + std::to_string(r));
    if (!sample_point_2v(l1, zero, Var(1), Var(n))) o.fail("no (x,z) sample for l1 at r=" + std::to_string(r));
    if (sample_point_2v(l2, zero, Var(r + 1), Var(n))) o.fail("(y_r,z) sample for l2 at r=" + std::to_string(r));
  }
  if (truncate_fraction(1234, 12345, 4) != std::pair<Integer, Integer>(12, 123)) o.fail("1234/12345 truncation");
  if (truncate_fraction(12345, 1234, 4) != std::pair<Integer, Integer>(123, 12)) o.fail("12345/1234 truncation");
  if (o.pass) o.detail = "plane substitution, sample points r=1..10, truncations exact";
  return o;
}

// 3 ---------------------------------------------------------------------

Outcome heuristic_formulas() {
  Outcome o;
  if (stage1_time_limit(10, 15, 15, 60) != Rational(5)) o.fail("stage1_time_limit(10,15,15,60) != 5");
  if (!goto_2dls(5, 10, 5)) o.fail("goto_2dls(5,10,5) false");
  if (goto_2dls(4, 10, 5)) o.fail("goto_2dls(4,10,5) true");
  for (std::uint32_t n = 2; n <= 40; ++n)
    for (std::uint32_t m = 1; m <= n; ++m)
      if (goto_2dls(n - 1, n, m)) o.fail("goto_2dls(n-1,n,.) true at n=" + std::to_string(n));
  if (max_num_fail_cells(20, 5, 10) != 5) o.fail("max_numFailCells(20,5,10) != 5");
  if (o.pass) o.detail = "all values exact";
  return o;
}

// 4, 5, 8 -----------------------------------------------------------------

struct SuiteResult {
  Outcome oracle, lemmas, ablation;
};

SuiteResult random_suite() {
  SuiteResult s;
  auto start = Clock::now();
  int sat = 0, unsat = 0;
  std::size_t explanations = 0, resolvents = 0, checks = 0;
  std::mt19937_64 rng(99);
  for (int i = 0; i < kSuiteSize; ++i) {
    PolyFormula F = suite_instance(i);
    std::string id = "instance " + std::to_string(i);

    Mcsat engine(F);
    std::vector<std::pair<Clause, bool>> learned;
    engine.hooks.on_lemma = [&](const Clause& c, bool explanation) { learned.emplace_back(c, explanation); };
    Answer a_mcsat = engine.solve().answer;
    auto cad = opencad_solve(F);
    auto hyb = hybrid_solve(F, suite_params());

    if (a_mcsat == Answer::Unknown || cad.answer != a_mcsat || hyb.answer != a_mcsat)
      s.oracle.fail(id + ": mcsat " + answer_name(a_mcsat) + ", opencad " + answer_name(cad.answer) + ", hybrid " +
                    answer_name(hyb.answer));
    if (cad.answer == Answer::Sat && !eval_formula(F, cad.model)) s.oracle.fail(id + ": opencad witness fails");
    if (hyb.answer == Answer::Sat && !eval_formula(F, hyb.model)) s.oracle.fail(id + ": hybrid witness fails");
    if (a_mcsat == Answer::Sat) ++sat;
    if (a_mcsat == Answer::Unsat) {
      ++unsat;
      if (oracle::GridSearch(F).find_model()) s.oracle.fail(id + ": grid finds a model of an UNSAT answer");
    }

    // Explanations must hold everywhere; resolvents wherever F holds.
    for (auto& [c, explanation] : learned) {
      ++(explanation ? explanations : resolvents);
      for (int k = 0; k < kLemmaPoints; ++k) {
        Assignment p = random_point(rng, F.num_vars);
        if (!explanation && !eval_formula(F, p)) continue;
        ++checks;
        if (!eval_clause(engine.database(), c, p)) {
          s.lemmas.fail(id + ": lemma false at " + p.to_string());
          break;
        }
      }
    }

    for (int v = 1; v <= 5; ++v) {
      auto r = hybrid_solve(F, ablation_preset(v, suite_params()));
      if (r.answer != hyb.answer)
        s.ablation.fail(id + ": V" + std::to_string(v) + " " + answer_name(r.answer) + " vs " + answer_name(hyb.answer));
      if (r.answer == Answer::Sat && !eval_formula(F, r.model)) s.ablation.fail(id + ": V" + std::to_string(v) + " witness");
    }
  }
  double secs = since(start);
  if (secs >= kSuiteSeconds) s.oracle.fail("suite took " + std::to_string(secs) + " s");
  if (s.oracle.pass)
    s.oracle.detail = std::to_string(kSuiteSize) + " instances (" + std::to_string(sat) + " SAT, " +
                      std::to_string(unsat) + " UNSAT) agree, witnesses and grid verified, " + std::to_string(secs) + " s";
  if (explanations == 0) s.lemmas.fail("no lemmas learned");
  if (s.lemmas.pass)
    s.lemmas.detail = std::to_string(explanations) + " explanations, " + std::to_string(resolvents) + " resolvents, " +
                      std::to_string(checks) + " point checks, 0 violations";
  if (s.ablation.pass) s.ablation.detail = "V1-V5 match the full pipeline on all instances";
  return s;
}

// 6 ---------------------------------------------------------------------

Outcome kernel_identities() {
  Outcome o;
  auto start = Clock::now();
  std::mt19937_64 rng(123);
  Var x(1);
  std::uniform_int_distribution<int> half(2, kKernelMaxDegree / 2);
  for (int done = 0; done < kKernelPolynomials && o.pass;) {
    // disc(fg) = disc(f) disc(g) res(f, g)^2, with deg(fg) <= 12.
    auto fd = oracle::random_dense(rng, half(rng), 20), gd = oracle::random_dense(rng, half(rng), 20);
    if (fd.size() < 3 || gd.size() < 3) continue;  // discriminants need degree >= 2
    Polynomial f = oracle::from_dense(fd, x), g = oracle::from_dense(gd, x);
    ++done;
    Rational res = resultant(f, g, x).constant_value();
    if (res != oracle::sylvester_resultant(fd, gd)) o.fail("resultant differs from Sylvester determinant");
    Rational lhs = discriminant(f * g, x).constant_value();
    Rational rhs = discriminant(f, x).constant_value() * discriminant(g, x).constant_value() * res * res;
    if (lhs != rhs) o.fail("disc(fg) identity fails for " + f.to_string() + " and " + g.to_string());
    // disc(f) = (-1)^(d(d-1)/2) res(f, f') / lc(f), via the determinant oracle.
    std::size_t d = fd.size() - 1;
    Rational viaSylvester = oracle::sylvester_resultant(fd, oracle::derivative(fd)) / fd.back();
    if ((d * (d - 1) / 2) % 2) viaSylvester = -viaSylvester;
    if (discriminant(f, x).constant_value() != viaSylvester) o.fail("disc vs res(f, f') for " + f.to_string());
  }
  // Sturm agreement on the same number of fresh polynomials.
  for (int i = 0; i < kKernelPolynomials && o.pass; ++i) {
    auto pd = oracle::random_dense(rng, kKernelMaxDegree, 30);
    // Repeated factors exercise the square-free handling.
    if (i % 3 == 0) {
      oracle::Dense sq(2 * pd.size() - 1, Rational(0));
      for (std::size_t a = 0; a < pd.size(); ++a)
        for (std::size_t b = 0; b < pd.size(); ++b) sq[a + b] += pd[a] * pd[b];
      if (sq.size() - 1 <= static_cast<std::size_t>(kKernelMaxDegree)) pd = sq;
    }
    Polynomial p = oracle::from_dense(pd, x);
    if (p.is_constant()) continue;
    auto roots = isolate_roots(p);
    if (static_cast<int>(roots.size()) != oracle::sturm_count(pd)) o.fail("root count differs from Sturm for " + p.to_string());
    for (auto& r : roots)
      if (!r.is_exact() && oracle::sturm_count(pd, r.lo(), r.hi()) != 1) o.fail("isolating interval not isolating");
  }
  double secs = since(start);
  if (secs >= kKernelSeconds) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = std::to_string(kKernelPolynomials) + " + " + std::to_string(kKernelPolynomials) +
                         " polynomials, 0 violations, " + std::to_string(secs) + " s";
  return o;
}

// 7 ---------------------------------------------------------------------

Outcome five_variable_quartic() {
  Outcome o;
  PolyFormula F = fixture::five_var_formula(Rel::GT);
  if (fixture::five_var_quartic().evaluate(fixture::point({1, 1, 1, 1, 1})) != 5) o.fail("all-ones value is not 5");
  auto t = Clock::now();
  auto res = hybrid_solve(F);
  double s = since(t);
  if (res.answer != Answer::Sat) o.fail(std::string("answer ") + answer_name(res.answer));
  else if (!eval_formula(F, res.model)) o.fail("witness fails");
  if (s >= kFiveVarSeconds) o.fail("took " + std::to_string(s) + " s");
  if (o.pass) o.detail = "SAT at " + res.model.to_string() + " in " + std::to_string(s) + " s";
  return o;
}

// 9 ---------------------------------------------------------------------

Outcome determinism() {
  Outcome o;
  std::vector<BenchInstance> instances;
  for (int i = 0; i < kSuiteSize; ++i)
    instances.push_back({"rand_" + std::to_string(i), [i] { return suite_instance(i); }});
  HybridParams p = suite_params();
  p.seed = 7;
  auto run = [&] {
    std::ostringstream out;
    write_csv(out, run_bench(instances, p, kBenchTimeout));
    return out.str();
  };
  std::string a = run(), b = run();
  if (a != b) o.fail("CSV outputs differ");
  if (o.pass) o.detail = "two runs of " + std::to_string(kSuiteSize) + " instances, " + std::to_string(a.size()) +
                         " identical bytes";
  return o;
}

void report(int n, const char* name, const Outcome& o) {
  std::cout << "criterion " << n << " [" << name << "]: " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail
            << std::endl;
}

}  // namespace

int main() {
  bool all = true;
  auto run = [&](int n, const char* name, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    report(n, name, o);
    all = all && o.pass;
  };
  run(1, "running example", running_example);
  run(2, "micro-values", micro_values);
  run(3, "heuristic formulas", heuristic_formulas);
  SuiteResult suite;
  try {
    suite = random_suite();
  } catch (const std::exception& e) {
    suite.oracle.fail(std::string("exception: ") + e.what());
    suite.lemmas.fail("suite aborted");
    suite.ablation.fail("suite aborted");
  }
  report(4, "cross-engine oracle", suite.oracle);
  report(5, "lemma validity", suite.lemmas);
  all = all && suite.oracle.pass && suite.lemmas.pass;
  run(6, "kernel identities", kernel_identities);
  run(7, "five-variable quartic", five_variable_quartic);
  report(8, "ablation consistency", suite.ablation);
  all = all && suite.ablation.pass;
  run(9, "determinism", determinism);
  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
  return all ? 0 : 1;
}
