// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "ivcheck/error.hpp"
#include "ivcheck/feasibility.hpp"
#include "ivcheck/generator.hpp"
#include "ivcheck/iv_test.hpp"
#include "ivcheck/linear_iv.hpp"
#include "ivcheck/scm.hpp"
#include <nlohmann/json.hpp>
#include "support/oracles.hpp"

namespace {

using namespace ivcheck;
using nlohmann::json;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const Domains kBinary = Domains::indexed(2, 2, 2);

Outcome ac1() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
    CounterRng rng(seed, 1);
    const ScmDims dims{2 + rng.below(2), 2 + rng.below(2), 2 + rng.below(2), 1 + rng.below(32)};
    worst = std::max(worst, iv_score(induced_conditional(random_instrumental_scm(dims, seed, false))).score);
  }
  return {worst <= 1.0 + 1e-12, "10000 SCMs, max iv_score " + fmt("%.15f", worst) + " <= 1 + 1e-12"};
}

Outcome ac2() {
  CounterRng rng(2);
  int disagreements = 0;
  int feasible = 0;
  for (int i = 0; i < 10'000; ++i) {
    const auto t = testing::random_table(kBinary, rng);
    const bool lp = check_feasibility(t).feasible;
    const auto lhs = binary_inequalities(t).lhs;
    const bool holds = std::all_of(lhs.begin(), lhs.end(), [](double v) { return v <= 1.0 + 1e-7; });
    disagreements += lp != holds ? 1 : 0;
    feasible += lp ? 1 : 0;
  }
  const Domains three = Domains::indexed(3, 2, 2);
  int reverse = 0;
  int feasible3 = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto t = testing::random_table(three, rng);
    if (check_feasibility(t).feasible) {
      ++feasible3;
      reverse += iv_score(t, 1e-7).violated ? 1 : 0;
    }
  }
  return {disagreements == 0 && reverse == 0,
          std::to_string(disagreements) + " disagreements over 10000 binary tables (" +
              std::to_string(feasible) + " feasible); " + std::to_string(reverse) +
              " feasible-but-violating over 1000 |Z|=3 tables (" + std::to_string(feasible3) + " feasible)"};
}

Outcome ac3() {
  CounterRng rng(3);
  int mismatches = 0;
  int violated = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto t = testing::random_table(kBinary, rng);
    const bool b = binary_inequalities(t).violated();
    mismatches += b != iv_score(t).violated ? 1 : 0;
    violated += b ? 1 : 0;
  }
  return {mismatches == 0, std::to_string(mismatches) + " verdict mismatches over 1000 binary tables (" +
                               std::to_string(violated) + " violating)"};
}

Outcome ac4() {
  int failing = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto scm = random_instrumental_scm({2, 2, 2, 1 + seed % 32}, seed, true);
    for (const auto& c : monotonicity_check(induced_conditional(scm))) failing += c.holds ? 0 : 1;
  }
  const FiniteScm contrarian(kBinary, {0.5, 0.5}, {1.0}, {{1}, {0}}, {{0}, {1}});
  const auto t = induced_conditional(contrarian);
  const auto rows = monotonicity_check(t);
  const bool eq9_fails = std::any_of(rows.begin(), rows.end(), [](const auto& c) { return !c.holds; });
  const bool eq3_holds = !iv_score(t).violated;
  return {failing == 0 && eq9_fails && eq3_holds,
          std::to_string(failing) + " failed comparisons over 1000 monotone SCMs; contrarian: monotonicity " +
              (eq9_fails ? "violated" : "holds") + ", instrumental inequality " + (eq3_holds ? "holds" : "violated")};
}

Outcome ac5() {
  const auto start = std::chrono::steady_clock::now();
  const auto check = verify_example1({0.25, 0.5, 0.75}, 1'000'000, 5);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double x = *std::max_element(check.x_deviation.begin(), check.x_deviation.end());
  const double y = *std::max_element(check.y_deviation.begin(), check.y_deviation.end());
  return {x < 5e-3 && y < 5e-3 && secs < 30.0,
          "n=1e6, z in {0.25,0.5,0.75}: max sup|F_n - x^2| " + fmt("%.5f", x) + ", max sup|F_n - y/z| " +
              fmt("%.5f", y) + " (limit 5e-3), " + fmt("%.2f", secs) + " s"};
}

Outcome ac6() {
  const auto spec = GeneratorSpec::square();
  CounterRng rng(6);
  double worst = 0.0;
  for (int i = 0; i < 100'000; ++i) {
    const UnitValue z(rng.uniform());
    const UnitValue u(rng.uniform());
    const UnitValue back = invert_generator(spec, corollary1_sample(spec, z, u), u);
    worst = std::max(worst, circular_distance(back, z));
  }
  return {worst <= 1e-9, "1e5 (z,u) pairs, max |z - recovered| " + fmt("%.3e", worst) + " (limit 1e-9)"};
}

Outcome ac7() {
  CounterRng rng(7);
  int fitted = 0;
  int inconsistent = 0;
  int ratio_mismatch = 0;
  double worst = 0.0;
  while (fitted + inconsistent < 100) {
    double l[3][3] = {};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j <= i; ++j) l[i][j] = i == j ? 0.2 + rng.uniform() : 2.0 * rng.uniform() - 1.0;
    }
    CovarianceTriple::Matrix m{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) m[i][j] += l[i][k] * l[j][k];
      }
    }
    const CovarianceTriple cov(m);
    if (!cov.positive_definite() || cov(0, 1) <= 0.05) continue;
    try {
      const auto fit = fit_linear_iv(cov);
      worst = std::max(worst, implied_covariance(fit).max_abs_diff(cov));
      ratio_mismatch += fit.b == cov(0, 2) / cov(0, 1) ? 0 : 1;
      ++fitted;
    } catch (const Error&) {
      ++inconsistent;
    }
  }
  return {worst <= 1e-9 && ratio_mismatch == 0,
          std::to_string(fitted) + " fitted, " + std::to_string(inconsistent) +
              " reported inconsistent; max covariance error " + fmt("%.3e", worst) + " (limit 1e-9); " +
              std::to_string(ratio_mismatch) + " slope mismatches"};
}

Outcome ac8() {
  const std::uint64_t n = 100'000;
  int cells = 0;
  int outside = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CounterRng rng(seed, 8);
    const ScmDims dims{2 + rng.below(2), 2 + rng.below(2), 2 + rng.below(2), 1 + rng.below(16)};
    const auto scm = random_instrumental_scm(dims, seed, false);
    for (std::size_t x = 0; x < dims.x; ++x) {
      const auto exact = causal_effect(scm, x);
      const auto counts = sample(set_x(scm, x), n, 1000 + seed);
      for (std::size_t y = 0; y < dims.y; ++y) {
        const double p = exact[y];
        std::uint64_t hits = 0;
        for (std::size_t z = 0; z < dims.z; ++z) hits += counts(z, x, y);
        const double freq = static_cast<double>(hits) / static_cast<double>(n);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        const double z = se > 0.0 ? std::abs(freq - p) / se : (freq == p ? 0.0 : INFINITY);
        worst = std::max(worst, z);
        outside += z > 3.0 ? 1 : 0;
        ++cells;
      }
    }
  }
  return {outside == 0, std::to_string(outside) + " of " + std::to_string(cells) +
                            " cells beyond 3 binomial SE (largest " + fmt("%.2f", worst) + " SE)"};
}

Outcome ac9() {
  std::ostringstream out;
  std::ostringstream err;
  const int code =
      cli::run({"ivcheck", "restrictions", std::string(IVCHECK_TEST_DATA) + "/instrument_graph.json"}, out, err);
  if (code != cli::kOk) return {false, "restrictions exited " + std::to_string(code)};
  const auto v = json::parse(out.str())["verdicts"];
  std::set<std::set<std::string>> excl;
  for (const auto& r : v["exclusion"]) {
    std::set<std::string> eq{r["subject"].get<std::string>()};
    for (const auto& t : r["terms"]) eq.insert(t.get<std::string>());
    excl.insert(eq);
  }
  const std::set<std::set<std::string>> expected{
      {"Z(x)", "Z(y)", "Z(x,y)", "Z"}, {"X(y,z)", "X(z)"}, {"Y(x)", "Y(x,z)"}};
  bool indep_ok = v["independence"].size() == 1;
  if (indep_ok) {
    const auto& r = v["independence"][0];
    std::set<std::string> terms;
    for (const auto& t : r["terms"]) terms.insert(t.get<std::string>());
    indep_ok = r["subject"] == "X(z)" && terms == std::set<std::string>{"Z", "Y(x)"};
  }
  std::string lines;
  for (const auto& r : v["exclusion"]) lines += r["text"].get<std::string>() + "; ";
  for (const auto& r : v["independence"]) lines += r["text"].get<std::string>();
  return {excl == expected && indep_ok, lines};
}

Outcome ac10() {
  CounterRng rng(10);
  int tables = 0;
  int drawn = 0;
  int short_witnesses = 0;
  int positive = 0;
  double tightest = INFINITY;
  while (tables < 1000) {
    ++drawn;
    const auto t = testing::random_table(kBinary, rng);
    const auto r = check_feasibility(t);
    if (!r.feasible) continue;
    ++tables;
    const auto bound = nonresponsive_bound(x_given_z_matrix(t));
    double mass = 0.0;
    for (const auto& [type, q] : r.witness->types) {
      if (type.g[bound.z1] == type.g[bound.z2]) mass += q;
    }
    positive += bound.bound > 0.0 ? 1 : 0;
    tightest = std::min(tightest, mass - bound.bound);
    short_witnesses += mass < bound.bound - 1e-9 ? 1 : 0;
  }
  return {short_witnesses == 0,
          std::to_string(short_witnesses) + " witnesses below the bound over 1000 feasible tables (" +
              std::to_string(drawn) + " drawn, " + std::to_string(positive) +
              " with positive bound); min slack " + fmt("%.3e", tightest)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 instrumental inequality necessity", ac1},
      {"AC2 binary sufficiency of the oracle", ac2},
      {"AC3 binary inequalities match general score", ac3},
      {"AC4 monotonicity", ac4},
      {"AC5 one-to-one generator reproduces target law", ac5},
      {"AC6 generator inversion round trip", ac6},
      {"AC7 linear-Gaussian models fit every covariance", ac7},
      {"AC8 causal effect matches interventional simulation", ac8},
      {"AC9 instrument graph restrictions", ac9},
      {"AC10 nonresponsive mass in oracle witnesses", ac10},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
