#include <cmath>
#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "polarize/proof_check.hpp"

using namespace polarize;

namespace {
double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST(Breakpoints, TableExamples) {
  EXPECT_DOUBLE_EQ(breakpoints(3).s[2], 2.0);
  EXPECT_DOUBLE_EQ(breakpoints(7).s[6], 3.0);
  EXPECT_DOUBLE_EQ(breakpoints(13).s[12], 4.0);
  EXPECT_EQ(std::pow(breakpoints(13).s[12], 12), 16777216.0);
  EXPECT_EQ(std::pow(breakpoints(7).s[6], 6), 729.0);
}

TEST(Breakpoints, Invariants) {
  for (int n = 2; n <= 16; ++n) {
    const BreakpointTable t = breakpoints(n);
    ASSERT_EQ(static_cast<int>(t.s.size()), n + 1);
    EXPECT_EQ(t.s[0], n);
    EXPECT_EQ(t.s[n], std::sqrt(static_cast<double>(n)));
    for (int j = 0; j <= n; ++j) {
      EXPECT_NEAR(t.s[j] * t.s[j] - (n - j) * t.s[j] - j, 0.0, 1e-12);
      if (j > 0) {
        EXPECT_LT(t.s[j], t.s[j - 1]);
      }
    }
  }
  EXPECT_THROW(breakpoints(1), std::domain_error);
}

TEST(MuAtBreakpoint, Examples) {
  EXPECT_LE(rel_err(mu_at_breakpoint(7, 6), 1.0 / 729), 1e-11);
  EXPECT_LE(rel_err(mu_at_breakpoint(3, 2), 0.25), 1e-11);
  for (int n = 2; n <= 14; ++n) EXPECT_LE(rel_err(mu_at_breakpoint(n, n), polarization_bound(n)), 1e-11);
  EXPECT_THROW(mu_at_breakpoint(5, 0), std::domain_error);
  EXPECT_THROW(mu_at_breakpoint(5, 6), std::domain_error);
}

TEST(MjEval, Examples) {
  for (int n = 2; n <= 10; ++n) {
    const double x = 0.5 * (breakpoint(n, 1) + n);
    EXPECT_NEAR(mj_eval(n, 1, x), x + 1 - n, 1e-12);
  }
  EXPECT_GT(4.0, breakpoint(9, 7));
  EXPECT_LT(4.0, breakpoint(9, 6));
  EXPECT_LE(rel_err(mj_eval(9, 7, 4.0), 1.0 / 8192), 1e-12);
  EXPECT_LE(rel_err(mj_eval(7, 6, 3.0), 1.0 / 729), 1e-12);
  EXPECT_THROW(mj_eval(9, 7, 4.5), std::domain_error);
  EXPECT_THROW(mj_eval(9, 0, 4.0), std::domain_error);
}

TEST(MjEval, AgreesWithMuInsideEachBranch) {
  for (int n = 2; n <= 14; ++n) {
    for (int j = 1; j <= n; ++j) {
      const double lo = breakpoint(n, j), hi = breakpoint(n, j - 1);
      for (int i = 1; i <= 100; ++i) {
        const double x = lo + (hi - lo) * i / 101.0;
        EXPECT_LE(rel_err(mj_eval(n, j, x), mu(n, x)), 1e-11) << "n=" << n << " j=" << j << " x=" << x;
      }
    }
  }
}

TEST(MjDerivative, MatchesCentralDifferences) {
  for (int n : {5, 9, 14}) {
    for (int j = 1; j <= n; ++j) {
      const double lo = breakpoint(n, j), hi = breakpoint(n, j - 1);
      const double x = 0.5 * (lo + hi);
      const double h = 1e-6 * (hi - lo);
      const double fd = (mj_eval(n, j, x + h) - mj_eval(n, j, x - h)) / (2 * h);
      EXPECT_NEAR(mj_derivative(n, j, x), fd, 1e-5 * std::max(1.0, std::abs(fd)) + 1e-9);
    }
  }
}

TEST(Quasiconcavity, Examples) {
  const QuasiconcavityResult one = quasiconcavity_check(9, 1);
  EXPECT_TRUE(one.quasiconcave);
  EXPECT_FALSE(one.critical_point.has_value());

  EXPECT_TRUE(quasiconcavity_check(14, 7, 10000).quasiconcave);

  const QuasiconcavityResult r = quasiconcavity_check(14, 13, 10000);
  EXPECT_TRUE(r.quasiconcave);
  EXPECT_GT(mj_derivative(14, 13, breakpoint(14, 13)), 0.0);
  ASSERT_TRUE(r.critical_point.has_value());
  EXPECT_NEAR(mj_derivative(14, 13, *r.critical_point), 0.0, 1e-12);
  EXPECT_GT(*r.critical_point, breakpoint(14, 13));
  EXPECT_LT(*r.critical_point, breakpoint(14, 12));

  EXPECT_THROW(quasiconcavity_check(14, 3, 50), std::domain_error);
}

TEST(Quasiconcavity, AllBranchesUpToFourteen) {
  for (int n = 2; n <= 14; ++n) {
    for (int j = 1; j <= n; ++j) {
      const QuasiconcavityResult r = quasiconcavity_check(n, j, 2000);
      EXPECT_TRUE(r.quasiconcave) << "n=" << n << " j=" << j;
      EXPECT_FALSE(r.indeterminate);
      EXPECT_GT(mj_derivative(n, j, breakpoint(n, j)), 0.0) << "n=" << n << " j=" << j;
    }
  }
}

TEST(TableRow, PrintedRows) {
  const TableRow r3 = table_row(3);
  EXPECT_NEAR(r3.column2, 5.065, 5e-3 * 5.065);
  EXPECT_EQ(std::llround(r3.s_nm1_pow), 4);
  EXPECT_NEAR(r3.half_power, 5.196, 5e-3 * 5.196);
  EXPECT_TRUE(r3.bound_holds);

  const TableRow r14 = table_row(14);
  EXPECT_NEAR(r14.column2, 1.049, 5e-3 * 1.049);
  EXPECT_NEAR(r14.s_nm1_pow, 104973424.100, 5e-3 * 104973424.100);
  EXPECT_EQ(std::llround(r14.half_power), 105413504);
  EXPECT_TRUE(r14.bound_holds);

  const TableRow r16 = table_row(16);
  EXPECT_NEAR(r16.column2, 0.992, 5e-3 * 0.992);
  EXPECT_LT(r16.column2, 1.0);
  EXPECT_NEAR(r16.s_nm1_pow, 4564290812.351, 5e-3 * 4564290812.351);
  EXPECT_GT(r16.s_nm1_pow, r16.half_power);
  EXPECT_EQ(std::llround(r16.half_power), 4294967296LL);
  EXPECT_FALSE(r16.bound_holds);

  EXPECT_THROW(table_row(2), std::domain_error);
}

TEST(PhiAnalysis, Examples) {
  const PhiAnalysis a14 = phi_analysis(14, 1000);
  EXPECT_TRUE(a14.phi_prime_positive);
  EXPECT_EQ(a14.discriminant, -104.0);
  EXPECT_GE(a14.phi_left, 0.0);

  const PhiAnalysis a16 = phi_analysis(16, 1000);
  EXPECT_EQ(a16.discriminant, 0.0);
  EXPECT_FALSE(a16.phi_prime_positive);

  EXPECT_LT(phi_analysis(15, 1000).discriminant, 0.0);
  EXPECT_THROW(phi_analysis(2, 1000), std::domain_error);
  EXPECT_THROW(phi_analysis(5, 10), std::domain_error);
}

TEST(PhiAnalysis, AnalyticDerivativeMatchesDifferences) {
  for (int n : {4, 9, 14, 16}) {
    const auto [a, b] = j_interval(n);
    const double lo = std::sqrt(static_cast<double>(n)) + 0.1, hi = n - 0.1;
    for (int i = 0; i < 20; ++i) {
      const double x = (a < b) ? a + (b - a) * i / 19.0 : lo + (hi - lo) * i / 19.0;
      const double h = 1e-6 * x;
      const double fd = (phi(n, x + h) - phi(n, x - h)) / (2 * h);
      const double an = phi_prime(n, x);
      EXPECT_NEAR(an, fd, 1e-6 * std::max(std::abs(an), 1.0 / (x * 0.5 * n * std::log(n))))
          << "n=" << n << " x=" << x;
    }
  }
}

TEST(PhiAnalysis, LeftEndpointSignMatchesTable) {
  // phi at the left end of J_n is nonnegative exactly when s_{n-1}^{n-1} <= sqrt(n^n).
  for (int n = 3; n <= 16; ++n) {
    const TableRow r = table_row(n);
    EXPECT_EQ(phi_analysis(n, 1000).phi_left >= 0.0, r.s_nm1_pow <= r.half_power) << "n=" << n;
  }
}

TEST(GlobalMinimum, Examples) {
  const GlobalMinimum g2 = global_minimum_scan(2, 10000);
  EXPECT_LE(rel_err(g2.min_value, 0.5), 1e-12);
  EXPECT_NEAR(g2.argmin, std::sqrt(2.0), g2.grid_step);
  EXPECT_TRUE(g2.bound_holds);

  const GlobalMinimum g14 = global_minimum_scan(14, 10000);
  EXPECT_LE(rel_err(g14.min_value, 1.0 / 105413504.0), 1e-10);
  EXPECT_NEAR(g14.argmin, std::sqrt(14.0), g14.grid_step);

  const GlobalMinimum g5 = global_minimum_scan(5, 10000);
  EXPECT_NEAR(1.0 / g5.min_value, 55.901, 1e-3);
}

TEST(GlobalMinimum, ArgminAtRootForAllProvenDimensions) {
  for (int n = 2; n <= 14; ++n) {
    const GlobalMinimum g = global_minimum_scan(n, 10000);
    EXPECT_TRUE(g.bound_holds) << "n=" << n;
    EXPECT_LE(std::abs(g.argmin - std::sqrt(static_cast<double>(n))), g.grid_step);
  }
}

TEST(GlobalMinimum, IndependentOfWorkerCount) {
  const char* old = std::getenv("POLARIZE_THREADS");
  const std::string saved = old ? old : "";
  setenv("POLARIZE_THREADS", "1", 1);
  const GlobalMinimum one = global_minimum_scan(11, 20000);
  setenv("POLARIZE_THREADS", "5", 1);
  const GlobalMinimum five = global_minimum_scan(11, 20000);
  if (old) setenv("POLARIZE_THREADS", saved.c_str(), 1);
  else unsetenv("POLARIZE_THREADS");
  EXPECT_EQ(one.min_value, five.min_value);
  EXPECT_EQ(one.argmin, five.argmin);
  EXPECT_EQ(one.bound_holds, five.bound_holds);
}

TEST(BreakpointBound, HoldsUpToFourteenAndFailsAfter) {
  for (int n = 2; n <= 14; ++n) {
    const BreakpointTable t = breakpoints(n);
    for (int j = 0; j < n; ++j) EXPECT_LT(std::pow(t.s[j], j), half_power(n)) << "n=" << n << " j=" << j;
    EXPECT_NEAR(std::pow(t.s[n], n) / half_power(n), 1.0, 1e-12);
  }
  for (int n : {15, 16}) EXPECT_GT(std::pow(breakpoint(n, n - 1), n - 1), half_power(n));
}

TEST(LowerSemicontinuity, ProbeHolds) {
  for (int n = 2; n <= 14; ++n) EXPECT_TRUE(lower_semicontinuity_probe(n)) << "n=" << n;
}

TEST(ProofCheckReport, BoundAndDiscriminantPattern) {
  for (int n = 2; n <= 16; ++n) {
    const ProofCheckReport r = proof_check(n, 1000);
    bool all = true, strict = true;
    for (const BreakpointRecord& b : r.per_j) {
      all = all && b.bound_holds;
      if (b.j < n) strict = strict && b.strict;
    }
    EXPECT_EQ(all, n <= 14) << "n=" << n;
    if (n <= 14) {
      EXPECT_TRUE(strict) << "n=" << n;
    }
    EXPECT_FALSE(r.per_j.back().strict);
    EXPECT_EQ(r.discriminant < 0.0, n <= 15);
    EXPECT_EQ(static_cast<int>(r.mj_quasiconcave.size()), n);
    EXPECT_EQ(r.table_column2.has_value(), n >= 3);
  }
}
