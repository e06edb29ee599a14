#include "ivcheck/generator.hpp"

#include <algorithm>
#include <cmath>

#include "ivcheck/error.hpp"
#include "ivcheck/rng.hpp"

namespace ivcheck {

UnitValue::UnitValue(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error("unit value must lie in [0, 1]");
  value_ = v == 1.0 ? 0.0 : v;
}

UnitValue mod1_add(UnitValue z, UnitValue u) {
  double r = z.value() + u.value();
  if (r >= 1.0) r -= 1.0;
  return UnitValue(r);
}

UnitValue mod1_sub(UnitValue x, UnitValue u) {
  double r = x.value() - u.value();
  if (r < 0.0) r += 1.0;
  return UnitValue(r);
}

double circular_distance(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

GeneratorSpec GeneratorSpec::uniform() {
  return GeneratorSpec{
      [](double p, double) { return p; },
      [](double x, double) { return std::clamp(x, 0.0, 1.0); },
      true,
      "uniform: F(x) = x",
  };
}

GeneratorSpec GeneratorSpec::square() {
  return GeneratorSpec{
      [](double p, double) { return std::sqrt(p); },
      [](double x, double) {
        const double c = std::clamp(x, 0.0, 1.0);
        return c * c;
      },
      true,
      "square: F(x) = x^2",
  };
}

ExampleDraw example1_sample(UnitValue z, UnitValue u, UnitValue v) {
  const double x = std::sqrt(mod1_add(z, u).value());
  // x^2 (-) u reconstructs z; y never reads z directly.
  const double y = v.value() * mod1_sub(UnitValue(x * x), u).value();
  return {x, y};
}

double corollary1_sample(const GeneratorSpec& spec, UnitValue z, UnitValue u) {
  return spec.inverse_cdf(mod1_add(u, z).value(), z.value());
}

UnitValue invert_generator(const GeneratorSpec& spec, double x, UnitValue u) {
  if (!spec.z_independent || !spec.cdf) throw Error("one-to-one inverse not available");
  return mod1_sub(UnitValue(std::clamp(spec.cdf(x, 0.0), 0.0, 1.0)), u);
}

double cdf_grid_deviation(std::vector<double>& samples, const std::function<double(double)>& cdf,
                          double lo, double hi) {
  if (samples.empty()) throw Error("no samples to compare");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < kCdfGridPoints; ++k) {
    const double t = lo + (hi - lo) * static_cast<double>(k) / (kCdfGridPoints - 1);
    const auto below = std::upper_bound(samples.begin(), samples.end(), t) - samples.begin();
    worst = std::max(worst, std::abs(static_cast<double>(below) / n - cdf(t)));
  }
  return worst;
}

GeneratorCheck verify_generator(const GeneratorSpec& spec,
                                const std::function<double(double x, double z)>& target_cdf,
                                const std::vector<double>& z_probes, std::size_t n,
                                std::uint64_t seed) {
  if (n < 10'000) throw Error("generator verification needs n >= 10^4");
  const CounterRng root(seed);
  GeneratorCheck check;
  check.lipschitz_slack = 2.0 / (kCdfGridPoints - 1);
  std::vector<double> xs(n);
  for (std::size_t p = 0; p < z_probes.size(); ++p) {
    const UnitValue z(z_probes[p]);
    CounterRng rng = root.split(p);
    for (auto& x : xs) x = corollary1_sample(spec, z, UnitValue(rng.uniform()));
    const double dev =
        cdf_grid_deviation(xs, [&](double t) { return target_cdf(t, z.value()); }, 0.0, 1.0);
    check.per_probe.push_back(dev);
    check.max_deviation = std::max(check.max_deviation, dev);
  }
  return check;
}

Example1Check verify_example1(const std::vector<double>& z_probes, std::size_t n,
                              std::uint64_t seed) {
  if (n < 10'000) throw Error("generator verification needs n >= 10^4");
  const CounterRng root(seed);
  Example1Check check{z_probes, {}, {}};
  std::vector<double> xs(n);
  std::vector<double> ys(n);
  for (std::size_t p = 0; p < z_probes.size(); ++p) {
    const UnitValue z(z_probes[p]);
    if (z.value() == 0.0) throw Error("Y | z is degenerate at z = 0");
    CounterRng rng = root.split(p);
    for (std::size_t i = 0; i < n; ++i) {
      const UnitValue u(rng.uniform());
      const UnitValue v(rng.uniform());
      const auto draw = example1_sample(z, u, v);
      xs[i] = draw.x;
      ys[i] = draw.y;
    }
    check.x_deviation.push_back(cdf_grid_deviation(xs, [](double t) { return t * t; }, 0.0, 1.0));
    const double zv = z.value();
    check.y_deviation.push_back(
        cdf_grid_deviation(ys, [zv](double t) { return std::clamp(t / zv, 0.0, 1.0); }, 0.0, zv));
  }
  return check;
}

}  // namespace ivcheck
