#include "nra/nra.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace nra;

namespace {

enum Exit { kSat = 0, kUnsat = 1, kUnknown = 2, kError = 3 };

struct SolverOptions {
  std::string stage1 = "on", stage2 = "on", stage3 = "on";
  bool v[6] = {};
  std::uint64_t seed = 0;
  double timeout = 0;
  std::size_t len1 = 4;
  int verbosity = 0;
  std::string var_order;
  std::string clock = "wall";
};

void add_solver_options(CLI::App* app, SolverOptions& o) {
  auto onoff = CLI::IsMember({"on", "off"});
  app->add_option("--stage1", o.stage1, "Local search stage")->check(onoff);
  app->add_option("--stage2", o.stage2, "MCSAT stage")->check(onoff);
  app->add_option("--stage3", o.stage3, "OpenCAD stage")->check(onoff);
  for (int i = 1; i <= 5; ++i) app->add_flag("--v" + std::to_string(i), o.v[i], "Ablation preset V" + std::to_string(i));
  app->add_option("--seed", o.seed, "Random seed");
  app->add_option("--timeout", o.timeout, "Time limit in seconds (0 = none)");
  app->add_option("--len1", o.len1, "Digit bound for sampled rationals (0 = none)");
  app->add_option("--verbosity", o.verbosity, "Event log level on stderr");
  app->add_option("--var-order", o.var_order, "Comma-separated variable names, first = lowest level");
  app->add_option("--clock", o.clock, "Budget clock: wall or work (deterministic)")
      ->check(CLI::IsMember({"wall", "work"}));
}

HybridParams make_params(const SolverOptions& o) {
  HybridParams p;
  for (int i = 1; i <= 5; ++i)
    if (o.v[i]) p = ablation_preset(i, p);
  if (o.stage1 == "off") p.stage1 = false;
  if (o.stage2 == "off") p.stage2 = false;
  if (o.stage3 == "off") p.stage3 = false;
  p.seed = o.seed;
  p.timeout = o.timeout;
  p.len1 = o.len1;
  p.verbosity = o.verbosity;
  p.log = &std::cerr;
  p.clock = o.clock == "work" ? Clock::Mode::Work : Clock::Mode::Wall;
  return p;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::uint32_t> parse_set(const std::string& s) {
  std::vector<std::uint32_t> out;
  for (auto& t : split(s, ',')) out.push_back(static_cast<std::uint32_t>(std::stoul(t)));
  return out;
}

ParsedProblem load(const std::string& path, const SolverOptions& o) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  ParsedProblem p = parse_smtlib(buf.str(), path);
  if (!o.var_order.empty()) p = reorder_variables(p, split(o.var_order, ','));
  return p;
}

int solve(const std::string& path, const SolverOptions& o) {
  ParsedProblem p = load(path, o);
  HybridResult r = hybrid_solve(p.formula, make_params(o));
  std::cout << answer_name(r.answer) << "\n";
  if (r.answer == Answer::Sat) {
    std::cout << "(\n";
    for (std::uint32_t i = 1; i <= p.formula.num_vars; ++i)
      std::cout << "  (define-fun " << p.var_names[i - 1] << " () Real " << smt::rational_term(r.model[Var(i)])
                << ")\n";
    std::cout << ")\n";
  }
  return r.answer == Answer::Sat ? kSat : r.answer == Answer::Unsat ? kUnsat : kUnknown;
}

int bench(const std::vector<std::string>& inputs, const SolverOptions& o, const std::string& csv, unsigned jobs) {
  std::vector<std::string> files;
  for (auto& in : inputs) {
    if (fs::is_directory(in)) {
      for (auto& e : fs::directory_iterator(in))
        if (e.path().extension() == ".smt2") files.push_back(e.path().string());
    } else {
      files.push_back(in);
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchInstance> instances;
  for (auto& f : files)
    instances.push_back({fs::path(f).stem().string(), [f, o] { return load(f, o).formula; }});
  HybridParams p = make_params(o);
  p.verbosity = 0;
  auto records = run_bench(instances, p, o.timeout, jobs);
  if (csv.empty()) {
    write_csv(std::cout, records);
  } else {
    std::ofstream out(csv);
    write_csv(out, records);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satisfiability of strict polynomial constraints over the reals"};
  app.require_subcommand(1);

  SolverOptions opts;
  std::string file;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one SMT-LIB file");
  solve_cmd->add_option("file", file, "Input .smt2 file")->required();
  add_solver_options(solve_cmd, opts);

  std::vector<std::string> inputs;
  std::string csv;
  unsigned jobs = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark set and write a CSV report");
  bench_cmd->add_option("inputs", inputs, "Files or directories of .smt2 files")->required();
  bench_cmd->add_option("--csv", csv, "Output CSV path (default stdout)");
  bench_cmd->add_option("--jobs", jobs, "Parallel worker processes");
  add_solver_options(bench_cmd, opts);

  RfParams rf;
  std::string vars = "30,40", polys = "60,80", clauses = "20,30", atoms = "10,20", degrees = "20,30",
              coeffs = "40,60", terms = "3,5";
  std::uint64_t gen_seed = 0;
  unsigned count = 1;
  std::string out_dir = ".";
  auto* gen_cmd = app.add_subcommand("gen", "Generate random SMT-LIB instances");
  gen_cmd->add_option("--vars", vars, "Variable counts");
  gen_cmd->add_option("--polys", polys, "Polynomial counts");
  gen_cmd->add_option("--clauses", clauses, "Clause counts");
  gen_cmd->add_option("--atoms", atoms, "Atoms per clause");
  gen_cmd->add_option("--degrees", degrees, "Polynomial degrees");
  gen_cmd->add_option("--coeffs", coeffs, "Coefficient bounds");
  gen_cmd->add_option("--terms", terms, "Terms per polynomial");
  gen_cmd->add_option("--seed", gen_seed, "First seed");
  gen_cmd->add_option("--count", count, "Number of instances");
  gen_cmd->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) return solve(file, opts);
    if (*bench_cmd) return bench(inputs, opts, csv, jobs);
    if (*gen_cmd) {
      rf.var_counts = parse_set(vars);
      rf.poly_counts = parse_set(polys);
      rf.clause_counts = parse_set(clauses);
      rf.atoms_per_clause = parse_set(atoms);
      rf.degrees = parse_set(degrees);
      rf.coeff_bounds = parse_set(coeffs);
      rf.terms = parse_set(terms);
      fs::create_directories(out_dir);
      for (unsigned i = 0; i < count; ++i) {
        PolyFormula F = rf_generate(rf, gen_seed + i);
        std::vector<std::string> names;
        for (std::uint32_t v = 1; v <= F.num_vars; ++v) names.push_back("x" + std::to_string(v));
        fs::path path = fs::path(out_dir) / ("rf_" + std::to_string(gen_seed + i) + ".smt2");
        std::ofstream(path) << print_smtlib(F, names);
        std::cout << path.string() << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
