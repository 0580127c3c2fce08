// Maximization of |<x, v_1> ... <x, v_n>| over the unit sphere, and the
// longest-sum witness x = v/||v||.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "polarize/detail/parallel.hpp"
#include "polarize/proof_check.hpp"
#include "polarize/sign_search.hpp"
#include "polarize/vectors.hpp"

namespace polarize {

enum class WitnessSource { longest_sum, optimizer, provided };

inline std::string_view to_string(WitnessSource s) {
  switch (s) {
    case WitnessSource::longest_sum: return "longest_sum";
    case WitnessSource::optimizer: return "optimizer";
    case WitnessSource::provided: return "provided";
  }
  return "unknown";
}

struct WitnessReport {
  std::vector<double> x;
  double log_product;  // -inf when some <x, v_i> is exactly 0
  double product;
  double bound;  // n^{-n/2}
  bool passes;
  WitnessSource source;
};

/// Sum of log|<x, v_i>|; -inf if any inner product is exactly zero.
inline double log_product_objective(const UnitVectorSet& set, std::span<const double> x) {
  double acc = 0.0;
  for (int i = 0; i < set.n(); ++i) {
    const double c = dot(set.row(i), x);
    if (c == 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(std::abs(c));
  }
  return acc;
}

/// Riemannian gradient g - <g, x>x of the log-product at unit x, where
/// g = sum v_i / <x, v_i>.
inline std::vector<double> tangent_gradient(const UnitVectorSet& set, std::span<const double> x) {
  const int n = set.n();
  std::vector<double> g(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto r = set.row(i);
    const double c = dot(r, x);
    for (int k = 0; k < n; ++k) g[k] += r[k] / c;
  }
  const double radial = dot(g, x);
  for (int k = 0; k < n; ++k) g[k] -= radial * x[k];
  return g;
}

namespace detail {

inline WitnessReport make_report(int n, std::vector<double> x, double log_product, WitnessSource source) {
  const double bound = polarization_bound(n);
  const double product = std::isfinite(log_product) ? std::exp(log_product) : 0.0;
  return WitnessReport{std::move(x), log_product, product, bound, product >= bound * (1.0 - 1e-9), source};
}

inline void normalize_in_place(std::vector<double>& x) {
  const double r = norm(x);
  for (double& c : x) c /= r;
}

}  // namespace detail

/// Evaluates the product at x, which must have unit norm within 1e-6 and is
/// renormalized.
inline WitnessReport witness_product(const UnitVectorSet& set, std::vector<double> x,
                                     WitnessSource source = WitnessSource::provided) {
  if (static_cast<int>(x.size()) != set.n()) throw std::invalid_argument("dimension mismatch");
  const double r = norm(x);
  if (!std::isfinite(r) || std::abs(r - 1.0) > kRenormalizeTol)
    throw std::invalid_argument("x is not a unit vector");
  for (double& c : x) c /= r;
  const double lp = log_product_objective(set, x);
  return detail::make_report(set.n(), std::move(x), lp, source);
}

/// Witness x = v/||v|| for a given signed sum.
inline WitnessReport witness_for(const UnitVectorSet& set, const LongestSumResult& sum) {
  std::vector<double> x = sum.v;
  detail::normalize_in_place(x);
  return witness_product(set, std::move(x), WitnessSource::longest_sum);
}

struct WitnessOptions {
  bool allow_local = false;  // required for n > 24
  std::uint64_t seed = 0;
  int restarts = 32;
  bool verify = false;  // raise std::logic_error if the bound fails for 2 <= n <= 14
};

inline LongestSumResult longest_sum(const UnitVectorSet& set, const WitnessOptions& opt = {}) {
  if (set.n() <= kMaxExhaustiveN) return longest_sum_exhaustive(set);
  if (!opt.allow_local) throw std::length_error("n > 24 requires opting in to local search");
  return longest_sum_local(set, opt.seed, opt.restarts);
}

inline WitnessReport witness_from_longest_sum(const UnitVectorSet& set, const WitnessOptions& opt = {}) {
  WitnessReport report = witness_for(set, longest_sum(set, opt));
  if (opt.verify && set.n() <= 14 && !report.passes)
    throw std::logic_error("longest-sum witness below n^{-n/2}");
  return report;
}

struct OptimizerConfig {
  int starts = 12;
  int max_iters = 500;
  double grad_tol = 1e-10;
  double step_init = 0.1;
  std::uint64_t seed = 0;

  static OptimizerConfig defaults(int n, std::uint64_t seed) {
    OptimizerConfig c;
    c.starts = 8 + 2 * n;
    c.seed = seed;
    return c;
  }

  void validate() const {
    if (starts < 1) throw std::invalid_argument("starts must be at least 1");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
    if (!(grad_tol > 0.0)) throw std::invalid_argument("grad_tol must be positive");
    if (!(step_init > 0.0)) throw std::invalid_argument("step_init must be positive");
  }
};

struct OptimizationResult {
  WitnessReport report;
  int iterations = 0;       // summed over starts
  int best_start = -1;      // index of the start that produced the report
  int starts_run = 0;
  int degenerate_starts = 0;
  bool failed = false;      // every start was stuck on the zero set
};

namespace detail {

inline constexpr double kZeroInner = 1e-14;

inline bool near_zero_set(const UnitVectorSet& set, std::span<const double> x) {
  for (int i = 0; i < set.n(); ++i)
    if (std::abs(dot(set.row(i), x)) < kZeroInner) return true;
  return false;
}

struct StartOutcome {
  std::vector<double> x;
  double log_product = -std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool degenerate = false;
};

// Projected gradient ascent with step doubling on success and halving on
// failure. Unit norm is restored after every step.
inline StartOutcome ascend(const UnitVectorSet& set, std::vector<double> x, double f,
                           const OptimizerConfig& cfg, std::mt19937_64& rng) {
  const int n = set.n();
  std::normal_distribution<double> gauss;
  for (int attempt = 0; near_zero_set(set, x) || !std::isfinite(f); ++attempt) {
    if (attempt == 10) return StartOutcome{std::move(x), f, 0, true};
    for (double& c : x) c += 1e-3 * gauss(rng);
    normalize_in_place(x);
    f = log_product_objective(set, x);
  }

  StartOutcome out{std::move(x), f, 0, false};
  double alpha = cfg.step_init;
  std::vector<double> y(n);
  for (int it = 0; it < cfg.max_iters; ++it) {
    const std::vector<double> t = tangent_gradient(set, out.x);
    if (norm(t) < cfg.grad_tol) break;
    bool moved = false;
    while (alpha > 1e-18) {
      for (int k = 0; k < n; ++k) y[k] = out.x[k] + alpha * t[k];
      normalize_in_place(y);
      const double fy = log_product_objective(set, y);
      if (fy > out.log_product) {
        out.x = y;
        out.log_product = fy;
        alpha *= 2.0;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    ++out.iterations;
    if (!moved) break;
  }
  return out;
}

// First coordinate made nonnegative; the objective is even in x.
inline void canonicalize_sign(std::vector<double>& x) {
  for (double c : x) {
    if (c == 0.0) continue;
    if (c < 0.0)
      for (double& d : x) d = -d;
    return;
  }
}

}  // namespace detail

/// Multi-start ascent of F(x) = sum log|<x, v_i>| on the unit sphere. Start
/// 0 is the longest-sum witness; the rest alternate between normalized sums
/// of random sign patterns and uniform random points. The reported product
/// is attained, hence a lower bound on the supremum.
inline OptimizationResult maximize_product(const UnitVectorSet& set, const OptimizerConfig& cfg) {
  cfg.validate();
  const int n = set.n();

  WitnessOptions wopt;
  wopt.allow_local = true;
  wopt.seed = cfg.seed;
  const WitnessReport witness = witness_from_longest_sum(set, wopt);

  std::vector<detail::StartOutcome> outcomes(cfg.starts);
  detail::parallel_for(cfg.starts, [&](int k) {
    std::mt19937_64 rng(detail::derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    std::vector<double> x0;
    double f0;
    if (k == 0) {
      x0 = witness.x;
      f0 = witness.log_product;
    } else if (k % 2 == 1) {
      std::bernoulli_distribution coin(0.5);
      x0.assign(n, 0.0);
      while (norm(x0) < 1e-8) {
        std::fill(x0.begin(), x0.end(), 0.0);
        for (int i = 0; i < n; ++i) {
          const double e = coin(rng) ? 1.0 : -1.0;
          for (int c = 0; c < n; ++c) x0[c] += e * set.row(i)[c];
        }
      }
      detail::normalize_in_place(x0);
      f0 = log_product_objective(set, x0);
    } else {
      x0 = detail::gaussian_unit(n, rng);
      f0 = log_product_objective(set, x0);
    }
    outcomes[k] = detail::ascend(set, std::move(x0), f0, cfg, rng);
  });

  OptimizationResult result{detail::make_report(n, witness.x, -std::numeric_limits<double>::infinity(),
                                                WitnessSource::optimizer)};
  result.starts_run = cfg.starts;
  for (int k = 0; k < cfg.starts; ++k) {
    detail::StartOutcome& o = outcomes[k];
    result.iterations += o.iterations;
    if (o.degenerate) {
      ++result.degenerate_starts;
      continue;
    }
    detail::canonicalize_sign(o.x);
    const bool take = result.best_start < 0 || o.log_product > result.report.log_product ||
                      (o.log_product == result.report.log_product && o.x < result.report.x);
    if (take) {
      result.best_start = k;
      result.report = detail::make_report(n, o.x, o.log_product, WitnessSource::optimizer);
    }
  }
  result.failed = result.best_start < 0;
  return result;
}

struct EqualityCheck {
  bool equality;    // near_bound && orthonormal
  bool near_bound;  // optimum within 1e-7 relative of n^{-n/2}
  bool orthonormal;
  double product;
  double bound;
};

/// Checks whether the optimum sits at n^{-n/2} and the set is orthonormal.
/// With verify set, an orthonormal set whose optimum misses the bound raises
/// std::logic_error.
inline EqualityCheck equality_case_check(const UnitVectorSet& set, const OptimizerConfig& cfg,
                                         bool verify = false) {
  if (set.n() > 14) throw std::domain_error("equality check is stated for n <= 14");
  const OptimizationResult opt = maximize_product(set, cfg);
  const double bound = polarization_bound(set.n());
  const bool near = std::abs(opt.report.product - bound) <= 1e-7 * bound;
  const bool ortho = gram(set).orthonormal;
  if (verify && ortho && !near)
    throw std::logic_error("orthonormal set whose optimum differs from n^{-n/2}");
  return EqualityCheck{near && ortho, near, ortho, opt.report.product, bound};
}

}  // namespace polarize
