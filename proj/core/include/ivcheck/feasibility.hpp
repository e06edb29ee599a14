#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ivcheck/scm.hpp"
#include "ivcheck/tables.hpp"

namespace ivcheck {

/// Upper limit on |X|^|Z| * |Y|^|X| for the exact oracle.
inline constexpr std::uint64_t kMaxResponseTypes = 1'000'000;
/// Reconstruction tolerance per cell for a returned witness.
inline constexpr double kWitnessTolerance = 1e-7;

/// Deterministic section of a unit: which x it takes under each z, and which
/// y it produces under each x.
struct ResponseType {
  std::vector<std::size_t> g;  // indexed by z
  std::vector<std::size_t> h;  // indexed by x

  bool operator==(const ResponseType&) const = default;
};

/// All response types, ordered lexicographically by (g read as a |Z|-digit
/// base-|X| numeral, h read as a |X|-digit base-|Y| numeral), most
/// significant digit first. Throws when the count exceeds kMaxResponseTypes.
std::vector<ResponseType> enumerate_types(const Domains& domains);

/// Number of response types, or nullopt on overflow past kMaxResponseTypes.
std::optional<std::uint64_t> response_type_count(const Domains& domains);

/// Mixture weights over response types.
struct WeightedType {
  ResponseType type;
  double q = 0.0;
};

struct FeasibilityWitness {
  Domains domains;
  std::vector<WeightedType> types;
  /// max over cells of |reconstructed - observed|.
  double residual = 0.0;
};

/// sum over types with g(z) = x and h(x) = y of q, for every (z, x, y).
ConditionalTable reconstruct(const FeasibilityWitness& witness);

struct FeasibilityResult {
  bool feasible = false;
  /// Phase-1 optimum of the floating-point solve: the L1 distance from the
  /// table to the set of generable tables along the final basis.
  double lp_residual = 0.0;
  /// True when the verdict came from the exact rational solve.
  bool exact = false;
  std::optional<FeasibilityWitness> witness;
};

/// Decides whether some mixture of response types reproduces every cell of
/// P(x, y | z).
///
/// The floating-point phase-1 residual decides outright when it is below
/// 1e-12 (feasible) or at least 1e-5 (infeasible). Anything in between is
/// re-solved in exact rational arithmetic on the table's binary values, with
/// each stratum renormalized exactly.
FeasibilityResult check_feasibility(const ConditionalTable& table);

/// One u per positive-weight type, p_u = weights.
FiniteScm witness_to_scm(const FeasibilityWitness& witness, const std::vector<double>& p_z);

}  // namespace ivcheck
