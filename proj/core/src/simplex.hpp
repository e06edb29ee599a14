#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace ivcheck::detail {

template <class Scalar>
struct Phase1Result {
  /// Values of the structural variables at the final basis.
  std::vector<Scalar> x;
  /// Optimal sum of artificial variables; zero iff A x = b, x >= 0 is feasible.
  Scalar infeasibility;
};

/// Phase-1 simplex for { x >= 0 : A x = b } with b >= 0.
///
/// Dense tableau, one artificial per row, Bland's rule for both the entering
/// and leaving choice so degenerate problems terminate. `eps` is the pivot
/// and reduced-cost threshold: 0 for exact arithmetic.
template <class Scalar>
Phase1Result<Scalar> phase1_simplex(const std::vector<std::vector<Scalar>>& a,
                                    const std::vector<Scalar>& b, const Scalar& eps) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a.front().size();
  const std::size_t cols = n + m;

  // Row i: [A_i | e_i | b_i]; the last row holds reduced costs and -objective.
  std::vector<std::vector<Scalar>> t(m + 1, std::vector<Scalar>(cols + 1, Scalar(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = Scalar(1);
    t[i][cols] = b[i];
    basis[i] = n + i;
  }
  auto& cost = t[m];
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
    cost[cols] -= t[i][cols];
  }

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j] < -eps) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    Scalar best_ratio(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (!(t[i][enter] > eps)) continue;
      Scalar ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best_ratio ||
          (!(best_ratio < ratio) && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Phase-1 objective is bounded below by zero, so a pivot row always exists.
    if (leave == m) break;

    const Scalar pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const Scalar factor = t[i][enter];
      if (factor == Scalar(0)) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  Phase1Result<Scalar> result{std::vector<Scalar>(n, Scalar(0)), -cost[cols]};
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) result.x[basis[i]] = t[i][cols];
  }
  return result;
}

}  // namespace ivcheck::detail
