// Longest signed sum max_eps ||sum eps_i v_i|| and the map from a longest sum
// to a point of the slice Sigma_s.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "polarize/slice_min.hpp"
#include "polarize/vectors.hpp"

namespace polarize {

/// Signs eps_i in {-1, +1}, canonicalized so that eps_0 = +1.
class SignAssignment {
 public:
  explicit SignAssignment(std::vector<int> eps) : eps_(std::move(eps)) {
    for (int e : eps_)
      if (e != 1 && e != -1) throw std::invalid_argument("signs must be +1 or -1");
    if (!eps_.empty() && eps_[0] == -1)
      for (int& e : eps_) e = -e;
  }

  /// From a Gray-code mask: bit i - 1 set means eps_i = -1.
  static SignAssignment from_mask(int n, std::uint32_t mask) {
    std::vector<int> eps(n, 1);
    for (int i = 1; i < n; ++i)
      if ((mask >> (i - 1)) & 1u) eps[i] = -1;
    return SignAssignment(std::move(eps));
  }

  const std::vector<int>& eps() const { return eps_; }
  int operator[](int i) const { return eps_[i]; }
  int size() const { return static_cast<int>(eps_.size()); }

  /// Lexicographic order with + ranked before -.
  friend bool operator<(const SignAssignment& a, const SignAssignment& b) {
    for (std::size_t i = 0; i < a.eps_.size(); ++i)
      if (a.eps_[i] != b.eps_[i]) return a.eps_[i] > b.eps_[i];
    return false;
  }
  friend bool operator==(const SignAssignment&, const SignAssignment&) = default;

 private:
  std::vector<int> eps_;
};

enum class SearchMethod { exhaustive, local_search };

inline std::string_view to_string(SearchMethod m) {
  return m == SearchMethod::exhaustive ? "exhaustive" : "local_search";
}

struct LongestSumResult {
  SignAssignment signs;
  std::vector<double> v;  // sum eps_i v_i
  double norm;
  SearchMethod method;
  bool is_global;
};

namespace detail {

// Relative window inside which two squared norms count as tied.
inline constexpr double kTieTol = 1e-12;

inline std::vector<double> signed_sum(const UnitVectorSet& set, const SignAssignment& signs) {
  const int n = set.n();
  std::vector<double> v(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) v[k] += signs[i] * set.row(i)[k];
  return v;
}

inline LongestSumResult make_result(const UnitVectorSet& set, SignAssignment signs, SearchMethod method) {
  std::vector<double> v = signed_sum(set, signs);
  const double r = norm(v);
  return LongestSumResult{std::move(signs), std::move(v), r, method, method == SearchMethod::exhaustive};
}

// Better = larger squared norm, ties to the lexicographically smaller signs.
inline bool better(double norm2, const SignAssignment& signs, double best_norm2,
                   const SignAssignment& best_signs) {
  const double window = kTieTol * std::max(1.0, best_norm2);
  if (norm2 > best_norm2 + window) return true;
  if (norm2 < best_norm2 - window) return false;
  return signs < best_signs;
}

}  // namespace detail

/// Global maximum over all 2^{n-1} canonical assignments, n <= 24.
inline LongestSumResult longest_sum_exhaustive(const UnitVectorSet& set) {
  const int n = set.n();
  if (n > kMaxExhaustiveN) throw std::length_error("exhaustive search limited to n <= 24");
  double best_norm2 = -1.0;
  SignAssignment best_signs = SignAssignment::from_mask(n, 0);
  for_each_canonical_sign_sum(set, [&](std::uint32_t mask, std::span<const double> v) {
    const double norm2 = dot(v, v);
    const double window = detail::kTieTol * std::max(1.0, best_norm2);
    if (norm2 < best_norm2 - window) return;
    if (norm2 <= best_norm2 + window) {
      // Tie: only materialize signs when a tie actually needs breaking.
      SignAssignment cand = SignAssignment::from_mask(n, mask);
      if (!(cand < best_signs)) return;
      best_signs = std::move(cand);
    } else {
      best_signs = SignAssignment::from_mask(n, mask);
    }
    best_norm2 = norm2;
  });
  return detail::make_result(set, std::move(best_signs), SearchMethod::exhaustive);
}

/// Steepest-ascent sign flipping from `restarts` random starts. Flipping
/// eps_k changes ||v||^2 by 4 - 4 eps_k <v_k, v>, so the search stops at an
/// assignment with eps_i <v_i, v> >= 1 for all i.
inline LongestSumResult longest_sum_local(const UnitVectorSet& set, std::uint64_t seed, int restarts) {
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  const int n = set.n();
  const GramSummary g = gram(set);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);

  std::vector<int> best_eps;
  double best_norm2 = -1.0;
  std::vector<int> eps(n);
  std::vector<double> proj(n);  // <v_k, v>
  for (int r = 0; r < restarts; ++r) {
    for (int& e : eps) e = coin(rng) ? 1 : -1;
    for (int k = 0; k < n; ++k) {
      proj[k] = 0.0;
      for (int i = 0; i < n; ++i) proj[k] += eps[i] * g(k, i);
    }
    for (;;) {
      int pick = -1;
      double lowest = 1.0 - 1e-12;
      for (int k = 0; k < n; ++k) {
        const double c = eps[k] * proj[k];
        if (c < lowest) {
          lowest = c;
          pick = k;
        }
      }
      if (pick < 0) break;
      const double shift = -2.0 * eps[pick];
      for (int k = 0; k < n; ++k) proj[k] += shift * g(k, pick);
      eps[pick] = -eps[pick];
    }
    SignAssignment signs(eps);
    const std::vector<double> v = detail::signed_sum(set, signs);
    const double norm2 = dot(v, v);
    if (best_eps.empty() || detail::better(norm2, signs, best_norm2, SignAssignment(best_eps))) {
      best_eps = signs.eps();
      best_norm2 = norm2;
    }
  }
  return detail::make_result(set, SignAssignment(best_eps), SearchMethod::local_search);
}

/// Sends a longest sum v with s = ||v|| to a = (eps_i <v_i, v> / s)_i in
/// Sigma_s. Throws std::domain_error when the result is not a point of the
/// slice, which happens when the signs are not locally maximal.
inline SlicePoint lambda_map(const UnitVectorSet& set, const LongestSumResult& result) {
  const int n = set.n();
  if (result.signs.size() != n || static_cast<int>(result.v.size()) != n)
    throw std::invalid_argument("longest-sum result does not match vector set");
  const double s = result.norm;
  std::vector<double> a(n);
  for (int i = 0; i < n; ++i) a[i] = result.signs[i] * dot(set.row(i), result.v) / s;
  return SlicePoint(CubeSliceProblem(n, s), std::move(a));
}

}  // namespace polarize
