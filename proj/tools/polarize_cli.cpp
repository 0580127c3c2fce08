// polarize: command-line front end for the slice minimum, proof checks and
// witness pipeline.
//
// Exit codes: 0 success / check passed, 1 a checked property failed,
// 2 usage or input error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polarize/polarize.hpp"

namespace {

using namespace polarize;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

enum class Format { text, json, csv };

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const std::vector<double>& xs, bool csv = false) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += csv ? "," : " ";
    out += csv ? csv_number(xs[i]) : num(xs[i]);
  }
  return out;
}

std::string join_signs(const std::vector<int>& eps) {
  std::string out;
  for (int e : eps) out += e > 0 ? '+' : '-';
  return out;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

struct Options {
  Format format = Format::text;
  int n = 0;
  double s = 0.0;
  int n_min = 3;
  int n_max = 16;
  int grid = 10000;
  std::string input;
  std::string method = "exhaustive";
  std::uint64_t seed = 0;
  int trials = 0;
  int starts = 0;
  int restarts = 32;
  int max_iters = 500;
  double grad_tol = 1e-10;
  std::string kind = "mixed";
  double param = 0.1;
};

int cmd_mu(const Options& o) {
  const MinimumCertificate c = mu_closed_form(CubeSliceProblem(o.n, o.s));
  switch (o.format) {
    case Format::json: print_json(certificate_to_json(c)); break;
    case Format::csv:
      std::cout << "n,s,k0,residual_sum,value\n"
                << o.n << "," << csv_number(c.problem.s()) << "," << c.k0 << ","
                << csv_number(c.residual_sum) << "," << csv_number(c.value) << "\n";
      break;
    case Format::text:
      std::cout << "n         " << c.problem.n() << "\n"
                << "s         " << num(c.problem.s()) << "\n"
                << "k0        " << c.k0 << "\n"
                << "residual  " << num(c.residual_sum) << "\n"
                << "minimizer " << join(c.minimizer.coords()) << "\n"
                << "value     " << num(c.value) << "\n";
  }
  return kOk;
}

int cmd_breakpoints(const Options& o) {
  const ProofCheckReport r = proof_check(o.n, std::max(o.grid, 100));
  bool ok = true;
  for (const BreakpointRecord& b : r.per_j) ok = ok && b.bound_holds;
  if (o.format == Format::json) {
    json rows = json::array();
    for (const BreakpointRecord& b : r.per_j)
      rows.push_back({{"j", b.j}, {"s_j", b.s_j}, {"s_j_pow_j", b.s_j_pow},
                      {"mu_s_j", b.j > 0 ? json(mu_at_breakpoint(o.n, b.j)) : json(mu(o.n, b.s_j))},
                      {"sqrt_n_pow_n", b.half_power}, {"bound_holds", b.bound_holds},
                      {"strict", b.strict},
                      {"mj_quasiconcave", b.j > 0 ? json(r.mj_quasiconcave[b.j - 1].quasiconcave)
                                                  : json(nullptr)}});
    print_json({{"n", o.n}, {"breakpoints", rows}, {"discriminant", r.discriminant}});
  } else {
    const bool csv = o.format == Format::csv;
    std::cout << (csv ? "j,s_j,s_j_pow_j,mu_s_j,sqrt_n_pow_n,bound_holds,strict\n"
                      : "j  s_j                  s_j^j                mu(s_j)              bound strict\n");
    for (const BreakpointRecord& b : r.per_j) {
      const double m = mu(o.n, b.s_j);
      if (csv) {
        std::cout << b.j << "," << csv_number(b.s_j) << "," << csv_number(b.s_j_pow) << ","
                  << csv_number(m) << "," << csv_number(b.half_power) << ","
                  << (b.bound_holds ? "true" : "false") << "," << (b.strict ? "true" : "false") << "\n";
      } else {
        char line[160];
        std::snprintf(line, sizeof line, "%-2d %-20.15g %-20.15g %-20.15g %-5s %s\n", b.j, b.s_j,
                      b.s_j_pow, m, b.bound_holds ? "yes" : "no", b.strict ? "yes" : "no");
        std::cout << line;
      }
    }
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_table(const Options& o) {
  if (o.n_min < 3 || o.n_max > 16 || o.n_min > o.n_max)
    throw std::domain_error("table range must satisfy 3 <= n-min <= n-max <= 16");
  std::vector<TableRow> rows;
  for (int n = o.n_min; n <= o.n_max; ++n) rows.push_back(table_row(n));
  switch (o.format) {
    case Format::csv: std::cout << table_csv(rows); break;
    case Format::json: {
      json arr = json::array();
      for (const TableRow& r : rows)
        arr.push_back({{"n", r.n}, {"column2", r.column2}, {"s_nm1_pow_nm1", r.s_nm1_pow},
                       {"sqrt_n_pow_n", r.half_power}, {"bound_holds", r.bound_holds}});
      print_json(arr);
      break;
    }
    case Format::text:
      std::cout << " n  column2   s_{n-1}^{n-1}        sqrt(n^n)            holds\n";
      for (const TableRow& r : rows) {
        char line[160];
        std::snprintf(line, sizeof line, "%2d  %-8.3f  %-19.3f  %-19.3f  %s\n", r.n, r.column2,
                      r.s_nm1_pow, r.half_power, r.bound_holds ? "yes" : "no");
        std::cout << line;
      }
  }
  return kOk;
}

int cmd_scan(const Options& o) {
  if (o.n < 2 || o.n > 14) throw std::domain_error("scan is defined for 2 <= n <= 14");
  const GlobalMinimum g = global_minimum_scan(o.n, o.grid);
  const double bound = polarization_bound(o.n);
  if (o.format == Format::json) {
    print_json({{"n", o.n}, {"grid", o.grid}, {"min_value", g.min_value}, {"argmin", g.argmin},
                {"bound", bound}, {"bound_holds", g.bound_holds}});
  } else if (o.format == Format::csv) {
    std::cout << "n,grid,min_value,argmin,bound,bound_holds\n"
              << o.n << "," << o.grid << "," << csv_number(g.min_value) << "," << csv_number(g.argmin)
              << "," << csv_number(bound) << "," << (g.bound_holds ? "true" : "false") << "\n";
  } else {
    std::cout << "min mu     " << num(g.min_value) << "\n"
              << "argmin     " << num(g.argmin) << "\n"
              << "n^{-n/2}   " << num(bound) << "\n"
              << "bound      " << (g.bound_holds ? "holds" : "FAILS") << "\n";
  }
  return g.bound_holds ? kOk : kCheckFailed;
}

LongestSumResult search(const UnitVectorSet& set, const Options& o) {
  if (o.method == "exhaustive") return longest_sum_exhaustive(set);
  if (o.method == "local") return longest_sum_local(set, o.seed, o.restarts);
  throw std::invalid_argument("unknown method: " + o.method);
}

int cmd_witness(const Options& o) {
  const UnitVectorSet set = read_vectors_file(o.input);
  const LongestSumResult sum = search(set, o);
  const WitnessReport w = witness_for(set, sum);
  if (o.format == Format::json) {
    print_json({{"longest_sum", longest_sum_to_json(sum)}, {"witness", w}});
  } else if (o.format == Format::csv) {
    std::cout << "signs,norm,product,bound,passes\n"
              << join_signs(sum.signs.eps()) << "," << csv_number(sum.norm) << ","
              << csv_number(w.product) << "," << csv_number(w.bound) << ","
              << (w.passes ? "true" : "false") << "\n";
  } else {
    std::cout << "signs     " << join_signs(sum.signs.eps()) << " (" << to_string(sum.method) << ")\n"
              << "|v|       " << num(sum.norm) << "\n"
              << "x         " << join(w.x) << "\n"
              << "product   " << num(w.product) << "\n"
              << "bound     " << num(w.bound) << "\n"
              << "passes    " << (w.passes ? "yes" : "no") << "\n";
  }
  return w.passes ? kOk : kCheckFailed;
}

int cmd_maximize(const Options& o) {
  const UnitVectorSet set = read_vectors_file(o.input);
  OptimizerConfig cfg = OptimizerConfig::defaults(set.n(), o.seed);
  if (o.starts > 0) cfg.starts = o.starts;
  cfg.max_iters = o.max_iters;
  cfg.grad_tol = o.grad_tol;
  const OptimizationResult r = maximize_product(set, cfg);
  if (o.format == Format::json) {
    print_json({{"witness", r.report},
                {"stats", {{"iterations", r.iterations}, {"best_start", r.best_start},
                           {"starts", r.starts_run}, {"degenerate_starts", r.degenerate_starts},
                           {"failed", r.failed}}}});
  } else if (o.format == Format::csv) {
    std::cout << "product,bound,passes,source,iterations,starts,degenerate_starts\n"
              << csv_number(r.report.product) << "," << csv_number(r.report.bound) << ","
              << (r.report.passes ? "true" : "false") << "," << to_string(r.report.source) << ","
              << r.iterations << "," << r.starts_run << "," << r.degenerate_starts << "\n";
  } else {
    std::cout << "source     " << to_string(r.report.source) << "\n"
              << "x          " << join(r.report.x) << "\n"
              << "product    " << num(r.report.product) << "\n"
              << "bound      " << num(r.report.bound) << "\n"
              << "passes     " << (r.report.passes ? "yes" : "no") << "\n"
              << "iterations " << r.iterations << " over " << r.starts_run << " starts ("
              << r.degenerate_starts << " degenerate, best start " << r.best_start << ")\n";
  }
  return r.failed ? kCheckFailed : kOk;
}

int cmd_verify(const Options& o) {
  const VerificationSummary v = run_verification(o.n_max, o.trials, o.seed, o.grid);
  if (o.format == Format::json) {
    json arr = json::array();
    for (const CheckResult& c : v.checks)
      arr.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    print_json({{"checks", arr}, {"all_passed", v.all_passed()}});
  } else {
    for (const CheckResult& c : v.checks)
      std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name
                << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    std::cout << (v.all_passed() ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return v.all_passed() ? kOk : kCheckFailed;
}

int cmd_random_trials(const Options& o) {
  if (o.n < 2) throw std::domain_error("n must be at least 2");
  if (o.trials < 1) throw std::domain_error("trials must be at least 1");
  TrialSummary s;
  if (o.kind == "mixed") {
    s = witness_trials(o.n, o.trials, o.seed);
  } else {
    const VectorKind kind = parse_vector_kind(o.kind);
    s.n = o.n;
    s.trials = o.trials;
    for (int t = 0; t < o.trials; ++t) {
      const UnitVectorSet set = generate(kind, o.n, detail::derive_seed(o.seed, o.n, t), o.param);
      WitnessOptions wopt;
      wopt.allow_local = true;
      wopt.seed = detail::derive_seed(o.seed, 0xA11CE, t);
      const WitnessReport w = witness_from_longest_sum(set, wopt);
      const double ratio = w.product / w.bound;
      if (w.passes) ++s.passed;
      if (ratio < s.worst_ratio) {
        s.worst_ratio = ratio;
        s.worst_trial = t;
      }
    }
  }
  if (o.format == Format::json) {
    print_json({{"n", s.n}, {"trials", s.trials}, {"passed", s.passed},
                {"worst_ratio", s.worst_ratio}, {"worst_trial", s.worst_trial}});
  } else if (o.format == Format::csv) {
    std::cout << "n,trials,passed,worst_ratio,worst_trial\n"
              << s.n << "," << s.trials << "," << s.passed << "," << csv_number(s.worst_ratio) << ","
              << s.worst_trial << "\n";
  } else {
    std::cout << s.passed << "/" << s.trials << " witnesses reach n^{-n/2}; worst product/bound "
              << num(s.worst_ratio) << " (trial " << s.worst_trial << ")\n";
  }
  return s.passed == s.trials ? kOk : kCheckFailed;
}

int cmd_lambda(const Options& o) {
  const UnitVectorSet set = read_vectors_file(o.input);
  const LongestSumResult sum = search(set, o);
  const SlicePoint a = lambda_map(set, sum);
  const double f = product_value(a);
  const double m = mu(a.problem());
  const bool ok = f >= m * (1.0 - 1e-9);
  if (o.format == Format::json) {
    print_json({{"s", a.problem().s()}, {"a", a.coords()}, {"product", f}, {"mu", m},
                {"product_at_least_mu", ok}});
  } else if (o.format == Format::csv) {
    std::cout << "s,product,mu,a\n"
              << csv_number(a.problem().s()) << "," << csv_number(f) << "," << csv_number(m) << ","
              << join(a.coords(), true) << "\n";
  } else {
    std::cout << "s         " << num(a.problem().s()) << "\n"
              << "a         " << join(a.coords()) << "\n"
              << "f(a)      " << num(f) << "\n"
              << "mu(s)     " << num(m) << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear polarization constant of R^n: slice minima, proof checks, witnesses"};
  app.require_subcommand(1);
  Options o;
  std::string format = "text";

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
  };

  auto* mu_cmd = app.add_subcommand("mu", "Closed-form minimum of the coordinate product on the slice");
  mu_cmd->add_option("--n", o.n, "Dimension")->required();
  mu_cmd->add_option("--s", o.s, "Slice level in [sqrt(n), n]")->required();
  add_format(mu_cmd);

  auto* bp_cmd = app.add_subcommand("breakpoints", "Breakpoints s_j and the bound s_j^j <= sqrt(n^n)");
  bp_cmd->add_option("--n", o.n, "Dimension")->required();
  add_format(bp_cmd);

  auto* table_cmd = app.add_subcommand("table", "Reproduce the s_{n-1}^{n-1} vs sqrt(n^n) table");
  table_cmd->add_option("--n-min", o.n_min, "First row (>= 3)");
  table_cmd->add_option("--n-max", o.n_max, "Last row (<= 16)");
  add_format(table_cmd);

  auto* scan_cmd = app.add_subcommand("scan", "Grid scan of mu over [sqrt(n), n]");
  scan_cmd->add_option("--n", o.n, "Dimension")->required();
  scan_cmd->add_option("--grid", o.grid, "Grid points")->check(CLI::Range(2, 100000000));
  add_format(scan_cmd);

  auto* witness_cmd = app.add_subcommand("witness", "Longest-sum witness for a vector file");
  witness_cmd->add_option("--input", o.input, "Vectors (.json or .csv)")->required();
  witness_cmd->add_option("--method", o.method, "exhaustive or local")
      ->check(CLI::IsMember({"exhaustive", "local"}));
  witness_cmd->add_option("--seed", o.seed, "Seed for local search");
  witness_cmd->add_option("--restarts", o.restarts, "Local search restarts")->check(CLI::PositiveNumber);
  add_format(witness_cmd);

  auto* max_cmd = app.add_subcommand("maximize", "Multi-start maximization of the product on the sphere");
  max_cmd->add_option("--input", o.input, "Vectors (.json or .csv)")->required();
  max_cmd->add_option("--seed", o.seed, "Seed")->required();
  max_cmd->add_option("--starts", o.starts, "Starts (default 8 + 2n)")->check(CLI::PositiveNumber);
  max_cmd->add_option("--max-iters", o.max_iters, "Iterations per start")->check(CLI::PositiveNumber);
  max_cmd->add_option("--grad-tol", o.grad_tol, "Tangent gradient tolerance")->check(CLI::PositiveNumber);
  add_format(max_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run every check for 2 <= n <= n-max");
  verify_cmd->add_option("--n-max", o.n_max, "Largest dimension (<= 14)")->required();
  verify_cmd->add_option("--trials", o.trials, "Random witness instances per n");
  verify_cmd->add_option("--seed", o.seed, "Seed")->required();
  verify_cmd->add_option("--grid", o.grid, "Scan grid points");
  add_format(verify_cmd);

  auto* trials_cmd = app.add_subcommand("random-trials", "Longest-sum witness on random instances");
  trials_cmd->add_option("--n", o.n, "Dimension")->required();
  trials_cmd->add_option("--trials", o.trials, "Instances")->required();
  trials_cmd->add_option("--seed", o.seed, "Seed")->required();
  trials_cmd->add_option("--kind", o.kind, "mixed, random_uniform, perturbed_orthonormal or clustered");
  trials_cmd->add_option("--param", o.param, "Generator parameter for a fixed kind");
  trials_cmd->add_option("--restarts", o.restarts, "Local search restarts (n > 24)");
  add_format(trials_cmd);

  auto* lambda_cmd = app.add_subcommand("lambda", "Map a longest sum to its point of the slice");
  lambda_cmd->add_option("--input", o.input, "Vectors (.json or .csv)")->required();
  lambda_cmd->add_option("--method", o.method, "exhaustive or local")
      ->check(CLI::IsMember({"exhaustive", "local"}));
  lambda_cmd->add_option("--seed", o.seed, "Seed for local search");
  add_format(lambda_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  o.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;

  try {
    if (*mu_cmd) return cmd_mu(o);
    if (*bp_cmd) return cmd_breakpoints(o);
    if (*table_cmd) return cmd_table(o);
    if (*scan_cmd) return cmd_scan(o);
    if (*witness_cmd) return cmd_witness(o);
    if (*max_cmd) return cmd_maximize(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*trials_cmd) return cmd_random_trials(o);
    if (*lambda_cmd) return cmd_lambda(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kInputError;
}
