#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace nra;
using fixture::X;

namespace {

const char* kHeader = "(set-logic QF_NRA)\n(declare-fun x () Real)\n(declare-fun y () Real)\n";

ParsedProblem parse(const std::string& body) { return parse_smtlib(std::string(kHeader) + body + "\n(check-sat)\n"); }

std::vector<std::string> atom_strings(const PolyFormula& F) {
  std::vector<std::string> out;
  for (auto& c : F.clauses) {
    std::string s;
    for (auto l : c) s += (l.negated() ? "~" : "") + F.atom(l).to_string() + ";";
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// --- SMT-LIB ---------------------------------------------------------------

TEST(SmtLib, ParsesStrictAtoms) {
  auto p = parse("(assert (< (* x x) 2))");
  EXPECT_EQ(p.var_names, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(p.logic, "QF_NRA");
  ASSERT_EQ(p.formula.clauses.size(), 1u);
  ASSERT_EQ(p.formula.clauses[0].size(), 1u);
  const Atom& a = p.formula.atom(p.formula.clauses[0][0]);
  EXPECT_EQ(a.poly, X(1) * X(1) - 2);
  EXPECT_EQ(a.op, Rel::LT);
}

TEST(SmtLib, DistinctBecomesTwoStrictAtoms) {
  auto p = parse("(assert (distinct x 0))");
  ASSERT_EQ(p.formula.clauses.size(), 1u);
  EXPECT_EQ(atom_strings(p.formula), std::vector<std::string>{"x1 < 0;x1 > 0;"});
  EXPECT_EQ(atom_strings(parse("(assert (not (= x 0)))").formula), atom_strings(p.formula));
}

TEST(SmtLib, RejectsWeakAndUnsupportedInput) {
  EXPECT_THROW(parse("(assert (<= x 0))"), UnsupportedOperator);
  EXPECT_THROW(parse("(assert (= x y))"), UnsupportedOperator);
  EXPECT_THROW(parse_smtlib("(set-logic QF_LRA)(declare-fun x () Real)(assert (< x 0))"), UnsupportedLogic);
  EXPECT_THROW(parse("(assert (< x 0)"), ParseError);
  EXPECT_THROW(parse("(assert (< z 0))"), ParseError);
  EXPECT_THROW(parse("(assert (< (ite (> x 0) x y) 0))"), UnsupportedOperator);
  // Negating a strict atom yields a weak one.
  EXPECT_THROW(parse("(assert (=> (> x 1) (< y 0)))"), UnsupportedOperator);
}

TEST(SmtLib, ArithmeticAndBooleanStructure) {
  auto p = parse(
      "(define-fun c () Real 2.5)\n"
      "(assert (let ((s (+ x y))) (> (* s s (/ 1 2)) c)))\n"
      "(assert (=> (>= x 1) (< (- y) (^ x 2))))\n"
      "(assert (not (and (>= x 3) (>= y 3))))");
  Polynomial s = X(1) + X(2);
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b) {
      Rational xa(a), yb(b);
      bool expect = (s * s).evaluate(fixture::point({xa, yb})) / 2 > Rational(5, 2) &&
                    (!(xa >= 1) || -yb < xa * xa) && !(xa >= 3 && yb >= 3);
      EXPECT_EQ(eval_formula(p.formula, fixture::point({xa, yb})), expect) << a << "," << b;
    }
}

TEST(SmtLib, RoundTripThroughPrinter) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 50; ++i) {
    PolyFormula F = oracle::random_formula(rng, 3, 3, 4, 3);
    std::vector<std::string> names;
    for (std::uint32_t v = 1; v <= F.num_vars; ++v) names.push_back("v" + std::to_string(v));
    std::string text = print_smtlib(F, names);
    auto p = parse_smtlib(text);
    EXPECT_EQ(p.var_names, names);
    EXPECT_EQ(atom_strings(p.formula), atom_strings(F)) << text;
    EXPECT_EQ(print_smtlib(p), text);
  }
}

TEST(SmtLib, VariableOrder) {
  auto p = parse("(assert (< (- x (* y y)) 0))");
  auto q = reorder_variables(p, {"y"});
  EXPECT_EQ(q.var_names, (std::vector<std::string>{"y", "x"}));
  ASSERT_EQ(q.formula.clauses.size(), 1u);
  EXPECT_EQ(q.formula.atom(q.formula.clauses[0][0]).poly, X(1) * X(1) - X(2));
  EXPECT_THROW(reorder_variables(p, {"w"}), std::invalid_argument);
}

// --- Random formula generator ----------------------------------------------

TEST(RandomFormulas, PostconditionsOnDefaultParameters) {
  RfParams p;
  std::set<std::uint32_t> degs(p.degrees.begin(), p.degrees.end());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PolyFormula F = rf_generate(p, seed);
    EXPECT_TRUE(std::count(p.var_counts.begin(), p.var_counts.end(), F.num_vars)) << seed;
    EXPECT_TRUE(std::count(p.clause_counts.begin(), p.clause_counts.end(), F.clauses.size())) << seed;
    auto polys = F.polynomials();
    EXPECT_LE(polys.size(), *std::max_element(p.poly_counts.begin(), p.poly_counts.end()));
    for (auto& c : F.clauses)
      EXPECT_TRUE(std::count(p.atoms_per_clause.begin(), p.atoms_per_clause.end(), c.size())) << seed;
    for (auto& f : polys) {
      EXPECT_TRUE(degs.count(f.total_degree())) << f.to_string();
      EXPECT_LE(f.level(), F.num_vars);
      EXPECT_LE(f.terms().size(), *std::max_element(p.terms.begin(), p.terms.end()));
      for (auto& t : f.terms()) EXPECT_LE(abs(t.coeff), Rational(60));
    }
  }
}

TEST(RandomFormulas, SingletonSetsGiveExactCounts) {
  RfParams p{{4}, {6}, {5}, {3}, {2}, {9}, {2}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PolyFormula F = rf_generate(p, seed);
    EXPECT_EQ(F.num_vars, 4u);
    EXPECT_EQ(F.clauses.size(), 5u);
    for (auto& c : F.clauses) EXPECT_EQ(c.size(), 3u);
    EXPECT_LE(F.polynomials().size(), 6u);
    for (auto& f : F.polynomials()) EXPECT_EQ(f.total_degree(), 2u);
  }
  EXPECT_EQ(rf_generate(p, 5).to_string(), rf_generate(p, 5).to_string());
  EXPECT_NE(rf_generate(p, 5).to_string(), rf_generate(p, 6).to_string());
}

TEST(RandomFormulas, InfeasibleParameters) {
  RfParams p;
  p.clause_counts = {0};
  EXPECT_THROW(rf_generate(p, 0), InfeasibleParameters);
  RfParams q;
  q.terms = {};
  EXPECT_THROW(rf_generate(q, 0), InfeasibleParameters);
  RfParams r{{2}, {1}, {1}, {3}, {1}, {5}, {1}};  // one polynomial gives only two atoms
  EXPECT_THROW(rf_generate(r, 0), InfeasibleParameters);
}

// --- Bench -----------------------------------------------------------------

namespace {

std::vector<BenchInstance> trivial_instances() {
  return {
      {"sat_interval", [] { return fixture::formula(1, {{{X(1), Rel::GT}}, {{X(1) - 1, Rel::LT}}}); }},
      {"unsat_empty", [] { return fixture::formula(1, {{{X(1), Rel::GT}}, {{X(1), Rel::LT}}}); }},
      {"running_1", [] { return fixture::running_example(1); }},
  };
}

std::string csv(const std::vector<BenchRecord>& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

}  // namespace

TEST(Bench, ThreeTrivialInstances) {
  HybridParams p;
  p.clock = Clock::Mode::Work;
  auto records = run_bench(trivial_instances(), p, 30);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].answer, "sat");
  EXPECT_EQ(records[1].answer, "unsat");
  EXPECT_EQ(records[2].answer, "sat");
  std::string text = csv(records);
  EXPECT_EQ(text.substr(0, text.find('\n')), "id,answer,time_s,stage,numFailCells,lemmas,cells");
  EXPECT_NE(text.find("#summary,#SAT=2,#UNSAT=1,#ALL=3,,,"), std::string::npos);
}

TEST(Bench, TimeoutGivesUnknown) {
  HybridParams p;
  p.stage1 = false;
  p.stage3 = false;
  std::vector<BenchInstance> slow{{"spin", [] {
                                     for (;;) pause();
                                     return PolyFormula();
                                   }}};
  auto records = run_bench(slow, p, 0.5);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].answer, "unknown");
  EXPECT_EQ(records[0].time_s, 0.5);
  EXPECT_NE(csv(records).find("#ALL=0"), std::string::npos);
}

TEST(Bench, DeterministicWithWorkClock) {
  HybridParams p;
  p.clock = Clock::Mode::Work;
  p.seed = 3;
  EXPECT_EQ(csv(run_bench(trivial_instances(), p, 30)), csv(run_bench(trivial_instances(), p, 30, 2)));
}
