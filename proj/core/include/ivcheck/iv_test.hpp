#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ivcheck/tables.hpp"

namespace ivcheck {

/// Tolerance for verdicts on exact tables.
inline constexpr double kVerdictTolerance = 1e-9;

/// Result of the instrumental inequality max_x sum_y max_z P(x, y | z) <= 1.
struct IvReport {
  double score = 0.0;
  /// sum_y max_z P(x, y | z), indexed by x.
  std::vector<double> per_x_sums;
  /// The maximizing z for each (x, y), indexed [x][y]. Ties go to the lowest z index.
  std::vector<std::vector<std::size_t>> argmax_z;
  double tolerance = kVerdictTolerance;
  bool violated = false;
};

IvReport iv_score(const ConditionalTable& table, double tolerance = kVerdictTolerance);

/// The four all-binary inequalities, in this order:
///   1. P(Y=0,X=0|Z=0) + P(Y=1,X=0|Z=1)
///   2. P(Y=0,X=1|Z=0) + P(Y=1,X=1|Z=1)
///   3. P(Y=1,X=0|Z=0) + P(Y=0,X=0|Z=1)
///   4. P(Y=1,X=1|Z=0) + P(Y=0,X=1|Z=1)
/// where level 0/1 means first/second declared level.
struct BinaryIvReport {
  std::array<double, 4> lhs{};
  /// 1-based indices i with lhs[i-1] > 1 + tolerance.
  std::vector<int> violated_indices;
  double tolerance = kVerdictTolerance;

  [[nodiscard]] bool violated() const { return !violated_indices.empty(); }
};

BinaryIvReport binary_inequalities(const ConditionalTable& table,
                                   double tolerance = kVerdictTolerance);

/// One comparison lhs >= rhs of the monotonicity-tightened inequalities.
struct MonotonicityComparison {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

/// Under "no contrarians" (g(z1,u) >= g(z2,u) for z1 >= z2):
///   line 1: P(y, X=1 | Z=1) >= P(y, X=1 | Z=0)
///   line 2: P(y, X=0 | Z=0) >= P(y, X=0 | Z=1)
/// for y in {0, 1}. Ids are "line1_y0", "line1_y1", "line2_y0", "line2_y1".
std::vector<MonotonicityComparison> monotonicity_check(const ConditionalTable& table,
                                                       double tolerance = kVerdictTolerance);

/// Conditional density f(y | x, z) on a shared y grid plus the weights P(x | z).
class GriddedDensity {
 public:
  /// `y_edges` has cells+1 strictly increasing entries. `density` is indexed
  /// [x][z][cell] and `weight` [x][z].
  GriddedDensity(Domain x_domain, std::vector<double> z_levels, std::vector<double> y_edges,
                 std::vector<std::vector<std::vector<double>>> density,
                 std::vector<std::vector<double>> weight);

  [[nodiscard]] const Domain& x_domain() const { return x_domain_; }
  [[nodiscard]] const std::vector<double>& z_levels() const { return z_levels_; }
  [[nodiscard]] const std::vector<double>& y_edges() const { return y_edges_; }
  [[nodiscard]] std::size_t cells() const { return y_edges_.size() - 1; }
  [[nodiscard]] double width(std::size_t cell) const { return y_edges_[cell + 1] - y_edges_[cell]; }
  [[nodiscard]] double max_width() const;
  [[nodiscard]] double density(std::size_t x, std::size_t z, std::size_t cell) const {
    return density_[x][z][cell];
  }
  [[nodiscard]] double weight(std::size_t x, std::size_t z) const { return weight_[x][z]; }

 private:
  Domain x_domain_;
  std::vector<double> z_levels_;
  std::vector<double> y_edges_;
  std::vector<std::vector<std::vector<double>>> density_;
  std::vector<std::vector<double>> weight_;
};

struct ContinuousIvReport {
  /// Rectangle-rule value of integral_y max_z f(y|x,z) P(x|z) dy, per x.
  std::vector<double> values;
  /// 1e-6 + 2 * (max cell width).
  double tolerance = 0.0;
  std::vector<bool> violated;
};

ContinuousIvReport continuous_iv_score(const GriddedDensity& density);

/// Lower bound on the mass of units whose treatment does not respond to
/// switching between two instrument levels.
struct NonresponsiveBound {
  double bound = 0.0;
  /// The (x, z1, z2) achieving the bound, z1 < z2. Meaningful when bound > 0.
  std::size_t x = 0;
  std::size_t z1 = 0;
  std::size_t z2 = 0;
};

/// max over x and z1 != z2 of max(0, P(x|z1) + P(x|z2) - 1).
/// `x_given_z` is indexed [x][z]; every z column must sum to 1.
NonresponsiveBound nonresponsive_bound(const std::vector<std::vector<double>>& x_given_z);

/// P(x | z) of a fully defined table, indexed [x][z].
std::vector<std::vector<double>> x_given_z_matrix(const ConditionalTable& table);

/// Percentile bootstrap interval on the instrumental-inequality score.
struct MarginInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  std::size_t replicates = 0;
  /// Score of the plug-in estimate on the observed counts.
  double point = 0.0;
  std::vector<std::string> warnings;
};

/// Resamples within each observed z stratum (stratum sizes fixed), scores
/// every replicate, and returns the equal-tailed percentile interval.
/// Replicate r draws from CounterRng(seed).split(r), so the result does not
/// depend on evaluation order.
MarginInterval bootstrap_margin(const SampleCounts& counts, std::size_t replicates, double level,
                                std::uint64_t seed);

}  // namespace ivcheck
