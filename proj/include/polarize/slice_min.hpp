// Minimum of the coordinate product over the slice of the cube [1/s, 1]^n
// cut by the hyperplane sum(a) = s, for s in [sqrt(n), n].
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarize {

/// Relative slack accepted when a slice level arrives from a computation
/// (e.g. the norm of a vector sum) and lands a few ulps outside [sqrt(n), n].
inline constexpr double kSliceLevelSlack = 1e-12;

/// Distance to an integer below which s(n-s)/(s-1) is treated as sitting
/// on a breakpoint.
inline constexpr double kBreakpointTol = 1e-9;

/// Default per-coordinate feasibility tolerance for slice points.
inline constexpr double kSliceTol = 1e-12;

/// Below this coordinate value products are accumulated as sums of logs.
inline constexpr double kLogDomainThreshold = 1e-3;

/// The pair (n, s) defining the box [1/s, 1]^n and its slice sum(a) = s.
class CubeSliceProblem {
 public:
  /// Throws std::domain_error if n < 2 or s lies outside [sqrt(n), n]
  /// (beyond a relative slack of kSliceLevelSlack, in which case s is
  /// clamped onto the interval).
  CubeSliceProblem(int n, double s) : n_(n), s_(s) {
    if (n < 2) throw std::domain_error("n must be at least 2");
    if (!std::isfinite(s)) throw std::domain_error("s must be finite");
    const double lo = std::sqrt(static_cast<double>(n));
    const double hi = static_cast<double>(n);
    if (s < lo * (1.0 - kSliceLevelSlack) || s > hi * (1.0 + kSliceLevelSlack))
      throw std::domain_error("s outside [√n, n]");
    s_ = std::clamp(s, lo, hi);
  }

  int n() const { return n_; }
  double s() const { return s_; }
  double lower() const { return 1.0 / s_; }

  /// True when s coincides with sqrt(n), where the slice is a single point.
  bool degenerate() const {
    const double lo = std::sqrt(static_cast<double>(n_));
    return s_ - lo <= kSliceLevelSlack * lo;
  }

  /// s(n - s)/(s - 1); k0 - 1 is its floor away from breakpoints.
  double breakpoint_ratio() const { return s_ * (n_ - s_) / (s_ - 1.0); }

 private:
  int n_;
  double s_;
};

/// A feasible point of the slice.
class SlicePoint {
 public:
  /// Validates box membership and the sum constraint; throws
  /// std::domain_error on violation.
  SlicePoint(CubeSliceProblem problem, std::vector<double> a, double tol = kSliceTol)
      : problem_(problem), a_(std::move(a)) {
    const int n = problem_.n();
    if (static_cast<int>(a_.size()) != n)
      throw std::domain_error("slice point has wrong dimension");
    const double lo = problem_.lower();
    double sum = 0.0;
    for (double ai : a_) {
      if (!(ai >= lo - tol && ai <= 1.0 + tol))
        throw std::domain_error("slice point coordinate outside [1/s, 1]");
      sum += ai;
    }
    if (std::abs(sum - problem_.s()) > n * tol)
      throw std::domain_error("slice point does not satisfy sum(a) = s");
  }

  const CubeSliceProblem& problem() const { return problem_; }
  const std::vector<double>& coords() const { return a_; }

 private:
  CubeSliceProblem problem_;
  std::vector<double> a_;
};

/// Result of the closed-form minimization.
struct MinimumCertificate {
  CubeSliceProblem problem;
  int k0;
  double residual_sum;  // s - (k0 - 1)/s
  SlicePoint minimizer;
  double value;
};

/// Product of the coordinates of an arbitrary list, switching to the log
/// domain when any entry is small.
inline double coordinate_product(const std::vector<double>& a) {
  const bool small = std::any_of(a.begin(), a.end(),
                                 [](double x) { return std::abs(x) < kLogDomainThreshold; });
  if (!small) {
    double p = 1.0;
    for (double x : a) p *= x;
    return p;
  }
  double log_abs = 0.0;
  bool negative = false;
  for (double x : a) {
    if (x == 0.0) return 0.0;
    log_abs += std::log(std::abs(x));
    negative ^= (x < 0.0);
  }
  const double p = std::exp(log_abs);
  return negative ? -p : p;
}

inline double product_value(const SlicePoint& point) { return coordinate_product(point.coords()); }

/// Least k >= 1 with n - k < s - k/s, by direct scan of the defining set.
inline int k0_scan(const CubeSliceProblem& p) {
  const int n = p.n();
  const double s = p.s();
  for (int k = 1; k <= n + 1; ++k)
    if (n - k < s - k / s) return k;
  return n + 1;
}

/// floor(s(n - s)/(s - 1)) + 1.
inline int k0_floor(const CubeSliceProblem& p) {
  return static_cast<int>(std::floor(p.breakpoint_ratio())) + 1;
}

/// Structural index k0(s). Uses the floor formula away from breakpoints and
/// the defining scan near them; the degenerate endpoint s = sqrt(n) maps to
/// n + 1.
inline int k0(const CubeSliceProblem& p) {
  if (p.degenerate()) return p.n() + 1;
  const double r = p.breakpoint_ratio();
  if (std::abs(r - std::round(r)) <= kBreakpointTol) return k0_scan(p);
  return std::min(k0_floor(p), p.n() + 1);
}

/// Scalar mu(s) without materializing the minimizer. Same branch logic as
/// mu_closed_form.
inline double mu(const CubeSliceProblem& p) {
  const int n = p.n();
  const double s = p.s();
  const int k = k0(p);
  if (k == n + 1) return std::pow(s, -n);
  const double free = s - (k - 1) / s - (n - k);
  return std::pow(s, 1 - k) * free;
}

inline double mu(int n, double s) { return mu(CubeSliceProblem(n, s)); }

/// Closed-form minimum with its structured minimizer: k0 - 1 coordinates at
/// 1/s, one free coordinate, the rest at 1.
inline MinimumCertificate mu_closed_form(const CubeSliceProblem& p) {
  const int n = p.n();
  const double s = p.s();
  const int k = k0(p);
  const double lo = 1.0 / s;
  if (k == n + 1) {
    SlicePoint point(p, std::vector<double>(n, lo));
    return MinimumCertificate{p, k, s - n / s, point, std::pow(s, -n)};
  }
  const double residual = s - (k - 1) / s;
  // Rounding can push the free coordinate a hair past the box at breakpoints.
  const double free = std::clamp(residual - (n - k), lo, 1.0);
  std::vector<double> a;
  a.reserve(n);
  a.insert(a.end(), k - 1, lo);
  a.push_back(free);
  a.insert(a.end(), n - k, 1.0);
  SlicePoint point(p, std::move(a));
  const double value = std::pow(s, 1 - k) * (residual - (n - k));
  return MinimumCertificate{p, k, residual, point, value};
}

namespace detail {

// Uniform-ish random point of the slice: a uniform box sample shifted by a
// common offset and clipped, with the offset fixed by bisection so that the
// sum hits s.
inline std::vector<double> random_slice_point(const CubeSliceProblem& p, std::mt19937_64& rng) {
  const int n = p.n();
  const double lo = p.lower();
  std::uniform_real_distribution<double> unif(lo, 1.0);
  std::vector<double> u(n);
  for (double& x : u) x = unif(rng);
  auto shifted_sum = [&](double t) {
    double acc = 0.0;
    for (double x : u) acc += std::clamp(x + t, lo, 1.0);
    return acc;
  };
  double a = -1.0, b = 1.0;
  for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
    const double m = 0.5 * (a + b);
    (shifted_sum(m) < p.s() ? a : b) = m;
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = std::clamp(u[i] + 0.5 * (a + b), lo, 1.0);
  // Put the remaining sum defect on a coordinate with room for it.
  double defect = p.s();
  for (double x : out) defect -= x;
  for (double& x : out) {
    const double moved = std::clamp(x + defect, lo, 1.0) - x;
    x += moved;
    defect -= moved;
    if (defect == 0.0) break;
  }
  return out;
}

// Pairwise transfer descent: move mass from a smaller coordinate to a larger
// one, which strictly lowers the product of the pair while keeping the sum.
inline double pair_transfer_descent(const CubeSliceProblem& p, std::vector<double> a) {
  const int n = p.n();
  const double lo = p.lower();
  double step = 0.5;
  while (step >= 1e-12) {
    bool improved = false;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || a[i] > a[j]) continue;
        const double eps = std::min({step, a[i] - lo, 1.0 - a[j]});
        if (eps <= 0.0) continue;
        const double before = a[i] * a[j];
        const double after = (a[i] - eps) * (a[j] + eps);
        if (after < before) {
          a[i] -= eps;
          a[j] += eps;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return coordinate_product(a);
}

}  // namespace detail

/// Independent check of mu(s): minimum over every structured candidate with
/// p coordinates at 1/s, q at 1 and one free coordinate, refined by pairwise
/// transfer descent from `random_starts` random feasible points.
inline double mu_oracle(const CubeSliceProblem& p, std::uint64_t seed = 0, int random_starts = 100) {
  const int n = p.n();
  const double s = p.s();
  const double lo = 1.0 / s;
  double best = std::numeric_limits<double>::infinity();
  for (int pinned_low = 0; pinned_low <= n - 1; ++pinned_low) {
    const int pinned_high = n - 1 - pinned_low;
    const double free = s - pinned_low * lo - pinned_high;
    if (free < lo - kSliceTol || free > 1.0 + kSliceTol) continue;
    std::vector<double> a(pinned_low, lo);
    a.push_back(free);
    a.insert(a.end(), pinned_high, 1.0);
    best = std::min(best, coordinate_product(a));
  }
  if (!std::isfinite(best)) throw std::runtime_error("no feasible structured candidate");
  std::mt19937_64 rng(seed);
  for (int start = 0; start < random_starts; ++start)
    best = std::min(best, detail::pair_transfer_descent(p, detail::random_slice_point(p, rng)));
  return best;
}

}  // namespace polarize
