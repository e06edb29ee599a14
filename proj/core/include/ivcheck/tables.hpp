#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ivcheck {

/// Normalization tolerance for probability tables.
inline constexpr double kMassTolerance = 1e-9;
/// A z stratum is defined iff its marginal probability exceeds this.
inline constexpr double kStratumCutoff = 1e-12;

/// A named categorical variable with an ordered list of levels.
///
/// Level order is fixed at construction; the monotonicity checks read the
/// `z1 >= z2` relation from it, never from the label text.
class Domain {
 public:
  Domain(std::string name, std::vector<std::string> levels);

  /// Levels "0", "1", ..., "n-1".
  static Domain indexed(std::string name, std::size_t n);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<std::string>& levels() const { return levels_; }
  [[nodiscard]] std::size_t size() const { return levels_.size(); }
  [[nodiscard]] const std::string& label(std::size_t i) const { return levels_.at(i); }

  /// Position of `label`; throws Error for unknown labels.
  [[nodiscard]] std::size_t index_of(std::string_view label) const;

  bool operator==(const Domain&) const = default;

 private:
  std::string name_;
  std::vector<std::string> levels_;
};

/// The (Z, X, Y) domain triple shared by every table. Cells are stored
/// densely in z-major, then x, then y order.
struct Domains {
  Domain z;
  Domain x;
  Domain y;

  [[nodiscard]] std::size_t cells() const { return z.size() * x.size() * y.size(); }
  [[nodiscard]] std::size_t stratum_cells() const { return x.size() * y.size(); }
  [[nodiscard]] std::size_t index(std::size_t zi, std::size_t xi, std::size_t yi) const {
    return (zi * x.size() + xi) * y.size() + yi;
  }
  [[nodiscard]] bool all_binary() const { return z.size() == 2 && x.size() == 2 && y.size() == 2; }

  /// Binary-or-larger domains named "Z", "X", "Y" with indexed levels.
  static Domains indexed(std::size_t nz, std::size_t nx, std::size_t ny);

  bool operator==(const Domains&) const = default;
};

/// Joint distribution P(z, x, y).
class JointTable {
 public:
  /// Validates nonnegativity and unit mass; a total within kMassTolerance
  /// of 1 is renormalized, anything further off is rejected.
  JointTable(Domains domains, std::vector<double> values);

  [[nodiscard]] const Domains& domains() const { return domains_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double operator()(std::size_t z, std::size_t x, std::size_t y) const {
    return values_[domains_.index(z, x, y)];
  }
  [[nodiscard]] std::vector<double> z_marginal() const;

 private:
  Domains domains_;
  std::vector<double> values_;
};

/// Conditional distribution P(x, y | z) over the defined strata.
///
/// Undefined strata hold zeros and are skipped by every evaluator.
class ConditionalTable {
 public:
  /// Each defined stratum must sum to 1 within kMassTolerance (and is then
  /// renormalized); undefined strata must be all zero.
  ConditionalTable(Domains domains, std::vector<double> values, std::vector<bool> defined);

  /// Convenience for tables where every stratum is defined.
  ConditionalTable(Domains domains, std::vector<double> values);

  [[nodiscard]] const Domains& domains() const { return domains_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double operator()(std::size_t z, std::size_t x, std::size_t y) const {
    return values_[domains_.index(z, x, y)];
  }
  [[nodiscard]] std::span<const double> stratum(std::size_t z) const;

  [[nodiscard]] bool defined(std::size_t z) const { return defined_.at(z); }
  [[nodiscard]] std::vector<std::size_t> defined_strata() const;
  [[nodiscard]] bool fully_defined() const;

  /// P(x | z) for a defined stratum, summing out y.
  [[nodiscard]] double x_given_z(std::size_t x, std::size_t z) const;

 private:
  Domains domains_;
  std::vector<double> values_;
  std::vector<bool> defined_;
};

/// Observed (z, x, y) cell counts.
class SampleCounts {
 public:
  SampleCounts(Domains domains, std::vector<std::uint64_t> counts);

  [[nodiscard]] const Domains& domains() const { return domains_; }
  [[nodiscard]] std::span<const std::uint64_t> counts() const { return counts_; }
  [[nodiscard]] std::uint64_t operator()(std::size_t z, std::size_t x, std::size_t y) const {
    return counts_[domains_.index(z, x, y)];
  }
  [[nodiscard]] std::uint64_t total() const;
  [[nodiscard]] std::uint64_t stratum_total(std::size_t z) const;

 private:
  Domains domains_;
  std::vector<std::uint64_t> counts_;
};

/// P(x, y | z) = P(z, x, y) / P(z) on strata with P(z) > kStratumCutoff.
ConditionalTable condition_on_z(const JointTable& joint);

/// Multiplies each defined stratum by `p_z`; the inverse of condition_on_z.
JointTable reweight(const ConditionalTable& table, std::span<const double> p_z);

/// Maximum-likelihood plug-in; strata with zero count are left undefined.
ConditionalTable estimate_from_counts(const SampleCounts& counts);

/// max over defined z of half the L1 distance between the two strata.
double total_variation(const ConditionalTable& a, const ConditionalTable& b);

}  // namespace ivcheck
