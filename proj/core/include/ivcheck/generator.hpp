#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ivcheck {

/// A point on the half-open unit interval [0, 1). Inputs equal to 1.0 fold to 0.0.
class UnitValue {
 public:
  UnitValue() = default;
  explicit UnitValue(double v);

  [[nodiscard]] double value() const { return value_; }
  operator double() const { return value_; }  // NOLINT(google-explicit-constructor)

 private:
  double value_ = 0.0;
};

/// (z + u) mod 1.
UnitValue mod1_add(UnitValue z, UnitValue u);
/// (x - u) mod 1; the inverse of mod1_add in its first argument.
UnitValue mod1_sub(UnitValue x, UnitValue u);

/// Distance on the circle [0, 1) with 0 and 1 identified.
double circular_distance(double a, double b);

/// Inverse-CDF description of a conditional law F(x | z) on the unit interval.
struct GeneratorSpec {
  /// p -> F^{-1}(p | z), nondecreasing in p for each z.
  std::function<double(double p, double z)> inverse_cdf;
  /// x -> F(x | z). Needed to invert the generator.
  std::function<double(double x, double z)> cdf;
  /// True when F(x | z) = F(x); only then is the generator one-to-one.
  bool z_independent = true;
  std::string description;

  /// F(x) = x on [0, 1).
  static GeneratorSpec uniform();
  /// F(x) = x^2, the x-marginal of the worked one-to-one example.
  static GeneratorSpec square();
};

struct ExampleDraw {
  double x = 0.0;
  double y = 0.0;
};

/// One-to-one generator with a z-independent X marginal and a z-dependent Y:
///   x = sqrt(z (+) u),  y = v * (x^2 (-) u)
/// The second factor recovers z from (x, u), so y = v z without y reading z.
ExampleDraw example1_sample(UnitValue z, UnitValue u, UnitValue v);

/// x = F^{-1}(u (+) z | z). With u uniform, x ~ F(. | z).
double corollary1_sample(const GeneratorSpec& spec, UnitValue z, UnitValue u);

/// The unique z with corollary1_sample(spec, z, u) = x, i.e. F(x) (-) u.
/// Throws Error("one-to-one inverse not available") for z-dependent specs.
UnitValue invert_generator(const GeneratorSpec& spec, double x, UnitValue u);

/// Number of points in the CDF comparison grid.
inline constexpr std::size_t kCdfGridPoints = 512;

/// sup over a uniform kCdfGridPoints grid on [lo, hi] of |empirical CDF - cdf|.
/// `samples` is sorted in place.
double cdf_grid_deviation(std::vector<double>& samples, const std::function<double(double)>& cdf,
                          double lo, double hi);

struct GeneratorCheck {
  /// Grid-sup deviation for each probe z.
  std::vector<double> per_probe;
  double max_deviation = 0.0;
  /// One grid width scaled by the 2-Lipschitz constant of the in-scope targets;
  /// max_deviation + lipschitz_slack bounds the off-grid supremum.
  double lipschitz_slack = 0.0;
};

/// Draws n uniform u per probe z (stream split(probe index) of CounterRng(seed)),
/// and compares the law of corollary1_sample(spec, z, u) to target_cdf(., z)
/// on [0, 1].
GeneratorCheck verify_generator(const GeneratorSpec& spec,
                                const std::function<double(double x, double z)>& target_cdf,
                                const std::vector<double>& z_probes, std::size_t n,
                                std::uint64_t seed);

struct Example1Check {
  std::vector<double> z_probes;
  /// sup |F_n(x) - x^2| per probe.
  std::vector<double> x_deviation;
  /// sup over [0, z] of |F_n(y) - y/z| per probe.
  std::vector<double> y_deviation;
};

/// Monte Carlo check of example1_sample against F(x|z) = x^2 and Y | z ~ U[0, z].
Example1Check verify_example1(const std::vector<double>& z_probes, std::size_t n,
                              std::uint64_t seed);

}  // namespace ivcheck
