// Systems of n unit vectors in R^n.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polarize {

/// Rows whose norm differs from 1 by more than this are rejected on load.
inline constexpr double kRenormalizeTol = 1e-6;
inline constexpr double kOrthoTol = 1e-9;
/// Largest n for which sign assignments are enumerated exhaustively.
inline constexpr int kMaxExhaustiveN = 24;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// n unit vectors of R^n, stored row-major. Immutable once built.
class UnitVectorSet {
 public:
  /// Builds from square data. Rows are rescaled to unit norm; rows more than
  /// kRenormalizeTol away from unit norm, non-finite entries and non-square
  /// input are rejected with std::invalid_argument.
  static UnitVectorSet load(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 2) throw std::invalid_argument("need at least 2 vectors");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n)
        throw std::invalid_argument("vector data must be square (n vectors of dimension n)");
      for (double x : rows[i])
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite coordinate");
      const double r = norm(rows[i]);
      if (std::abs(r - 1.0) > kRenormalizeTol)
        throw std::invalid_argument("row " + std::to_string(i) + " is not a unit vector (norm " +
                                    std::to_string(r) + ")");
      for (double x : rows[i]) flat.push_back(x / r);
    }
    return UnitVectorSet(n, std::move(flat));
  }

  int n() const { return n_; }
  std::span<const double> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }
  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out;
    for (int i = 0; i < n_; ++i) out.emplace_back(row(i).begin(), row(i).end());
    return out;
  }

 private:
  UnitVectorSet(int n, std::vector<double> data) : n_(n), data_(std::move(data)) {}
  int n_;
  std::vector<double> data_;
};

struct GramSummary {
  std::vector<double> gram;  // n x n, row-major
  int n;
  double max_offdiag_abs;
  bool orthonormal;

  double operator()(int i, int j) const { return gram[static_cast<std::size_t>(i) * n + j]; }
};

inline GramSummary gram(const UnitVectorSet& set, double ortho_tol = kOrthoTol) {
  const int n = set.n();
  GramSummary g{std::vector<double>(static_cast<std::size_t>(n) * n), n, 0.0, false};
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double d = dot(set.row(i), set.row(j));
      g.gram[static_cast<std::size_t>(i) * n + j] = d;
      g.gram[static_cast<std::size_t>(j) * n + i] = d;
      if (i != j) g.max_offdiag_abs = std::max(g.max_offdiag_abs, std::abs(d));
    }
  }
  g.orthonormal = g.max_offdiag_abs <= ortho_tol;
  return g;
}

enum class VectorKind { orthonormal, random_uniform, perturbed_orthonormal, clustered };

inline VectorKind parse_vector_kind(std::string_view name) {
  if (name == "orthonormal") return VectorKind::orthonormal;
  if (name == "random_uniform" || name == "uniform") return VectorKind::random_uniform;
  if (name == "perturbed_orthonormal" || name == "perturbed") return VectorKind::perturbed_orthonormal;
  if (name == "clustered") return VectorKind::clustered;
  throw std::invalid_argument("unknown vector kind: " + std::string(name));
}

inline std::string_view to_string(VectorKind kind) {
  switch (kind) {
    case VectorKind::orthonormal: return "orthonormal";
    case VectorKind::random_uniform: return "random_uniform";
    case VectorKind::perturbed_orthonormal: return "perturbed_orthonormal";
    case VectorKind::clustered: return "clustered";
  }
  return "unknown";
}

namespace detail {

inline std::vector<double> gaussian_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<double> v(n);
  double r = 0.0;
  while (r < 1e-8) {
    for (double& x : v) x = gauss(rng);
    r = norm(v);
  }
  for (double& x : v) x /= r;
  return v;
}

}  // namespace detail

/// Seeded test instances.
///   orthonormal            standard basis; param ignored
///   random_uniform         rows uniform on the sphere; param ignored
///   perturbed_orthonormal  basis plus N(0, param^2) noise, renormalized; param >= 0
///   clustered              rows within angle param of a random axis; 0 < param <= pi/2
inline UnitVectorSet generate(VectorKind kind, int n, std::uint64_t seed, double param = 0.0) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (!std::isfinite(param)) throw std::invalid_argument("param must be finite");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  switch (kind) {
    case VectorKind::orthonormal:
      for (int i = 0; i < n; ++i) rows[i][i] = 1.0;
      break;
    case VectorKind::random_uniform:
      for (auto& r : rows) r = detail::gaussian_unit(n, rng);
      break;
    case VectorKind::perturbed_orthonormal: {
      if (param < 0.0) throw std::invalid_argument("perturbation scale must be nonnegative");
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) rows[i][k] = (i == k ? 1.0 : 0.0) + param * gauss(rng);
        const double r = norm(rows[i]);
        if (r == 0.0) throw std::invalid_argument("perturbation produced a zero row");
        for (double& x : rows[i]) x /= r;
      }
      break;
    }
    case VectorKind::clustered: {
      if (!(param > 0.0 && param <= std::numbers::pi / 2))
        throw std::invalid_argument("cluster radius must lie in (0, pi/2]");
      const std::vector<double> axis = detail::gaussian_unit(n, rng);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      for (auto& r : rows) {
        // Unit tangent direction at the axis.
        std::vector<double> w = detail::gaussian_unit(n, rng);
        const double c = dot(w, axis);
        for (int k = 0; k < n; ++k) w[k] -= c * axis[k];
        const double wn = norm(w);
        const double theta = param * unif(rng);
        for (int k = 0; k < n; ++k)
          r[k] = std::cos(theta) * axis[k] + (wn > 0.0 ? std::sin(theta) * w[k] / wn : 0.0);
      }
      break;
    }
  }
  return UnitVectorSet::load(rows);
}

/// Visits every canonical sign assignment (eps_0 = +1) in binary reflected
/// Gray-code order, keeping the running sum v = sum eps_i v_i up to date with
/// one O(n) update per flip. fn(eps, v) receives eps as a bitmask where bit
/// i - 1 set means eps_i = -1.
template <typename Fn>
void for_each_canonical_sign_sum(const UnitVectorSet& set, Fn&& fn) {
  const int n = set.n();
  if (n > kMaxExhaustiveN) throw std::length_error("exhaustive sign enumeration limited to n <= 24");
  std::vector<double> v(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) v[k] += set.row(i)[k];
  std::uint32_t code = 0;
  fn(code, std::span<const double>(v));
  const std::uint32_t total = std::uint32_t{1} << (n - 1);
  for (std::uint32_t g = 1; g < total; ++g) {
    const int bit = std::countr_zero(g);
    const int idx = bit + 1;
    // Flipping +1 -> -1 subtracts 2 v_idx; the reverse adds it.
    const double sign = (code >> bit) & 1u ? 2.0 : -2.0;
    const auto r = set.row(idx);
    for (int k = 0; k < n; ++k) v[k] += sign * r[k];
    code ^= std::uint32_t{1} << bit;
    fn(code, std::span<const double>(v));
  }
}

/// Average of ||sum eps_i v_i||^2 over all 2^n sign assignments. Each
/// assignment and its negation share a norm, so the canonical half suffices.
inline double mean_squared_sign_sum(const UnitVectorSet& set) {
  long double acc = 0.0L;
  std::uint64_t count = 0;
  for_each_canonical_sign_sum(set, [&](std::uint32_t, std::span<const double> v) {
    acc += dot(v, v);
    ++count;
  });
  return static_cast<double>(acc / count);
}

/// True iff every sign sum has squared norm n (within 1e-9). A true result
/// implies orthonormality; that implication is checked and a violation
/// raises std::logic_error.
inline bool rigidity_check(const UnitVectorSet& set) {
  const int n = set.n();
  if (n > kMaxExhaustiveN) throw std::length_error("rigidity check limited to n <= 24");
  bool all_equal = true;
  for_each_canonical_sign_sum(set, [&](std::uint32_t, std::span<const double> v) {
    if (std::abs(dot(v, v) - n) > 1e-9) all_equal = false;
  });
  if (all_equal && !gram(set).orthonormal)
    throw std::logic_error("equal sign-sum norms without orthonormality");
  return all_equal;
}

}  // namespace polarize
