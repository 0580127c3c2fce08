// Numeric checks of the structure of mu(s): breakpoints, the piecewise
// branches M_j, the bound s_j^j <= sqrt(n^n) and the global minimum at sqrt(n).
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polarize/detail/parallel.hpp"
#include "polarize/slice_min.hpp"

namespace polarize {

/// s_j for j = 0..n, the positive roots of x^2 - (n - j)x - j = 0.
struct BreakpointTable {
  int n;
  std::vector<double> s;
};

inline double breakpoint(int n, int j) {
  const double b = n - j;
  return 0.5 * (b + std::sqrt(b * b + 4.0 * j));
}

inline BreakpointTable breakpoints(int n) {
  if (n < 2) throw std::domain_error("n must be at least 2");
  BreakpointTable t{n, std::vector<double>(n + 1)};
  for (int j = 0; j <= n; ++j) t.s[j] = breakpoint(n, j);
  return t;
}

/// sqrt(n^n), evaluated as n^(n/2).
inline double half_power(int n) { return std::pow(static_cast<double>(n), 0.5 * n); }

/// Lower bound n^{-n/2} of the polarization inequality.
inline double polarization_bound(int n) { return 1.0 / half_power(n); }

/// mu(s_j), computed by the closed form (left-continuous branch).
inline double mu_at_breakpoint(int n, int j) {
  if (j < 1 || j > n) throw std::domain_error("breakpoint index out of range");
  return mu_closed_form(CubeSliceProblem(n, breakpoint(n, j))).value;
}

/// M_j(x) = x^{2-j} + (j - n)x^{1-j} + (1 - j)x^{-j}, the branch of mu on (s_j, s_{j-1}).
inline double mj_eval(int n, int j, double x) {
  if (j < 1 || j > n) throw std::domain_error("branch index out of range");
  const double lo = breakpoint(n, j), hi = breakpoint(n, j - 1);
  if (x < lo * (1.0 - 1e-14) || x > hi * (1.0 + 1e-14))
    throw std::domain_error("x outside [s_j, s_{j-1}]");
  return std::pow(x, 2 - j) + (j - n) * std::pow(x, 1 - j) + (1 - j) * std::pow(x, -j);
}

/// M_j'(x) = (x^2 + (1 - j)(x^2 + (j - n)x - j)) / x^{j+1}.
inline double mj_derivative(int n, int j, double x) {
  return (x * x + (1 - j) * (x * x + (j - n) * x - j)) / std::pow(x, j + 1);
}

struct QuasiconcavityResult {
  bool quasiconcave = false;
  bool indeterminate = false;
  std::optional<double> critical_point;
};

/// Sign scan of M_j' on a uniform grid over [s_j, s_{j-1}]. Quasi-concave
/// means the sign pattern is (+)* or (+)*(-)*; a sign change is refined to
/// the critical point by bisection.
inline QuasiconcavityResult quasiconcavity_check(int n, int j, int grid = 10000) {
  if (j < 1 || j > n) throw std::domain_error("branch index out of range");
  if (grid < 100) throw std::domain_error("grid must have at least 100 points");
  constexpr double kZero = 1e-14;
  const double lo = breakpoint(n, j), hi = breakpoint(n, j - 1);
  const double h = (hi - lo) / (grid - 1);

  QuasiconcavityResult out;
  bool seen_negative = false;
  bool prev_zero = false;
  int change_at = -1;
  for (int i = 0; i < grid; ++i) {
    const double x = i + 1 == grid ? hi : lo + i * h;
    const double d = mj_derivative(n, j, x);
    if (std::abs(d) < kZero) {
      if (prev_zero) out.indeterminate = true;
      prev_zero = true;
      continue;
    }
    prev_zero = false;
    if (d < 0.0) {
      if (!seen_negative) change_at = i;
      seen_negative = true;
    } else if (seen_negative) {
      return out;  // (-) followed by (+)
    }
  }
  out.quasiconcave = !out.indeterminate;
  if (seen_negative && change_at > 0) {
    double a = lo + (change_at - 1) * h, b = lo + change_at * h;
    for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
      const double m = 0.5 * (a + b);
      (mj_derivative(n, j, m) > 0.0 ? a : b) = m;
    }
    out.critical_point = 0.5 * (a + b);
  }
  return out;
}

/// varphi(x) = (x^2 - 2x + n) / (x (x - n)^2).
inline double varphi(int n, double x) {
  return (x * x - 2.0 * x + n) / (x * (x - n) * (x - n));
}

/// phi(x) = (1 - x)/(x^2 - nx) - ln(x)/ln(sqrt(n^n)).
inline double phi(int n, double x) {
  const double log_half_power = 0.5 * n * std::log(static_cast<double>(n));
  return (1.0 - x) / (x * x - n * x) - std::log(x) / log_half_power;
}

/// phi'(x) from the quotient rule, not by differencing.
inline double phi_prime(int n, double x) {
  const double log_half_power = 0.5 * n * std::log(static_cast<double>(n));
  return (x * x - 2.0 * x + n) / (x * x * (x - n) * (x - n)) - 1.0 / (x * log_half_power);
}

/// Endpoints of J_n = [n^{n/(2(n-1))}, n^{n/(2(floor(n/2)+1))}].
inline std::pair<double, double> j_interval(int n) {
  const double dn = n;
  return {std::pow(dn, dn / (2.0 * (n - 1))), std::pow(dn, dn / (2.0 * (n / 2 + 1)))};
}

struct TableRow {
  int n;
  double column2;     // ln(sqrt(n^n)) * varphi(n^{n/(2(n-1))})
  double s_nm1_pow;   // s_{n-1}^{n-1}
  double half_power;  // sqrt(n^n)
  bool bound_holds;   // column2 > 1 and s_{n-1}^{n-1} <= sqrt(n^n)
};

inline TableRow table_row(int n) {
  if (n < 3) throw std::domain_error("table rows start at n = 3");
  const double x0 = j_interval(n).first;
  const double column2 = 0.5 * n * std::log(static_cast<double>(n)) * varphi(n, x0);
  const double top = std::pow(breakpoint(n, n - 1), n - 1);
  const double hp = half_power(n);
  return TableRow{n, column2, top, hp, column2 > 1.0 && top <= hp};
}

struct PhiAnalysis {
  double phi_left;
  bool phi_prime_positive;
  double discriminant;  // 4(n-1)(n-16)
};

inline PhiAnalysis phi_analysis(int n, int grid = 1000) {
  if (n < 3) throw std::domain_error("phi analysis needs n >= 3");
  if (grid < 1000) throw std::domain_error("grid must have at least 1000 points");
  const auto [a, b] = j_interval(n);
  bool positive = true;
  for (int i = 0; i < grid; ++i) {
    const double x = i + 1 == grid ? b : a + (b - a) * i / (grid - 1);
    if (!(phi_prime(n, x) > 0.0)) {
      positive = false;
      break;
    }
  }
  return PhiAnalysis{phi(n, a), positive, 4.0 * (n - 1) * (n - 16)};
}

struct GlobalMinimum {
  double min_value;
  double argmin;
  bool bound_holds;
  double grid_step;
};

/// mu on a uniform grid over [sqrt(n), n] plus every breakpoint. Grid
/// chunks are evaluated in parallel and merged in index order.
inline GlobalMinimum global_minimum_scan(int n, int grid = 10000) {
  if (n < 2) throw std::domain_error("n must be at least 2");
  if (grid < 2) throw std::domain_error("grid must have at least 2 points");
  const double lo = std::sqrt(static_cast<double>(n)), hi = n;
  const double h = (hi - lo) / (grid - 1);
  const double bound = polarization_bound(n);

  struct Partial {
    double min_value = std::numeric_limits<double>::infinity();
    double argmin = 0.0;
    bool strict = true;
  };
  auto chunks = detail::partition(grid);
  std::vector<Partial> partial(chunks.size());
  detail::parallel_for(static_cast<int>(chunks.size()), [&](int c) {
    Partial& p = partial[c];
    for (int i = chunks[c].first; i < chunks[c].second; ++i) {
      const double s = i + 1 == grid ? hi : lo + i * h;
      const double m = mu(n, s);
      if (m < p.min_value) {
        p.min_value = m;
        p.argmin = s;
      }
      if (s > lo && !(m > bound)) p.strict = false;
    }
  });

  GlobalMinimum out{std::numeric_limits<double>::infinity(), lo, true, h};
  for (const Partial& p : partial) {
    if (p.min_value < out.min_value) {
      out.min_value = p.min_value;
      out.argmin = p.argmin;
    }
    out.bound_holds = out.bound_holds && p.strict;
  }
  for (int j = 0; j <= n; ++j) {
    const double s = breakpoint(n, j);
    const double m = mu(n, s);
    if (m < out.min_value) {
      out.min_value = m;
      out.argmin = s;
    }
  }
  out.bound_holds = out.bound_holds && out.min_value >= bound * (1.0 - 1e-12);
  return out;
}

/// mu(s_j + delta) >= mu(s_j) - 1e-9 for j = 1..n and each probe offset.
inline bool lower_semicontinuity_probe(int n) {
  for (int j = 1; j <= n; ++j) {
    const double sj = breakpoint(n, j);
    const double at = mu(n, sj);
    for (double delta : {1e-6, 1e-5, 1e-4}) {
      if (sj + delta > n) continue;
      if (mu(n, sj + delta) < at - 1e-9) return false;
    }
  }
  return true;
}

struct BreakpointRecord {
  int j;
  double s_j;
  double s_j_pow;     // s_j^j
  double half_power;  // sqrt(n^n)
  bool bound_holds;   // s_j^j <= sqrt(n^n)
  bool strict;        // s_j^j < sqrt(n^n)
};

struct ProofCheckReport {
  int n;
  std::vector<BreakpointRecord> per_j;
  std::optional<double> phi_at_left_endpoint;
  std::optional<double> phi_prime_min_on_grid;
  std::optional<double> table_column2;
  double discriminant;
  std::vector<QuasiconcavityResult> mj_quasiconcave;  // index j - 1 for j = 1..n
};

inline ProofCheckReport proof_check(int n, int grid = 10000) {
  const BreakpointTable table = breakpoints(n);
  const double hp = half_power(n);
  ProofCheckReport r;
  r.n = n;
  for (int j = 0; j <= n; ++j) {
    const double p = std::pow(table.s[j], j);
    r.per_j.push_back({j, table.s[j], p, hp, p <= hp * (1.0 + 1e-12), p < hp * (1.0 - 1e-12)});
  }
  if (n >= 3) {
    const auto [a, b] = j_interval(n);
    r.phi_at_left_endpoint = phi(n, a);
    double m = std::numeric_limits<double>::infinity();
    const int pts = std::max(grid, 1000);
    for (int i = 0; i < pts; ++i) m = std::min(m, phi_prime(n, a + (b - a) * i / (pts - 1)));
    r.phi_prime_min_on_grid = m;
    r.table_column2 = table_row(n).column2;
  }
  r.discriminant = 4.0 * (n - 1) * (n - 16);
  for (int j = 1; j <= n; ++j) r.mj_quasiconcave.push_back(quasiconcavity_check(n, j, std::max(grid, 100)));
  return r;
}

}  // namespace polarize
