#include "ivcheck/scm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ivcheck/error.hpp"
#include "ivcheck/rng.hpp"

namespace ivcheck {

namespace {

void check_distribution(const std::vector<double>& p, const char* what) {
  if (p.empty()) throw Error(std::string(what) + " is empty");
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) throw Error(std::string(what) + " has a negative entry");
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw Error(std::string(what) + " does not sum to 1");
}

void check_function(const std::vector<std::vector<std::size_t>>& table, std::size_t rows,
                    std::size_t cols, std::size_t range, const char* what) {
  if (table.size() != rows) throw Error(std::string(what) + " has the wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != cols) throw Error(std::string(what) + " must have one entry per u");
    for (std::size_t v : row) {
      if (v >= range) throw Error(std::string(what) + " maps outside its codomain");
    }
  }
}

}  // namespace

FiniteScm::FiniteScm(Domains domains, std::vector<double> p_z, std::vector<double> p_u,
                     std::vector<std::vector<std::size_t>> g,
                     std::vector<std::vector<std::size_t>> h)
    : domains_(std::move(domains)),
      p_z_(std::move(p_z)),
      p_u_(std::move(p_u)),
      g_(std::move(g)),
      h_(std::move(h)) {
  if (p_z_.size() != domains_.z.size()) throw Error("p_z does not match the Z domain");
  check_distribution(p_z_, "p_z");
  check_distribution(p_u_, "p_u");
  check_function(g_, domains_.z.size(), p_u_.size(), domains_.x.size(), "g");
  check_function(h_, domains_.x.size(), p_u_.size(), domains_.y.size(), "h");
}

ConditionalTable induced_conditional(const FiniteScm& scm) {
  const Domains& d = scm.domains();
  std::vector<double> values(d.cells(), 0.0);
  std::vector<bool> defined(d.z.size(), false);
  for (std::size_t z = 0; z < d.z.size(); ++z) {
    if (scm.p_z()[z] <= 0.0) continue;
    defined[z] = true;
    for (std::size_t u = 0; u < scm.u_size(); ++u) {
      const std::size_t x = scm.g(z, u);
      values[d.index(z, x, scm.h(x, u))] += scm.p_u()[u];
    }
  }
  return ConditionalTable(d, std::move(values), std::move(defined));
}

SampleCounts sample(const FiniteScm& scm, std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw Error("sample size must be positive");
  const Domains& d = scm.domains();
  const DiscreteSampler draw_z(scm.p_z());
  const DiscreteSampler draw_u(scm.p_u());
  CounterRng rng(seed);
  std::vector<std::uint64_t> counts(d.cells(), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::size_t z = draw_z(rng);
    const std::size_t u = draw_u(rng);
    const std::size_t x = scm.g(z, u);
    ++counts[d.index(z, x, scm.h(x, u))];
  }
  return SampleCounts(d, std::move(counts));
}

FiniteScm set_x(const FiniteScm& scm, std::size_t x) {
  if (x >= scm.domains().x.size()) throw Error("intervention level outside the X domain");
  std::vector<std::vector<std::size_t>> g(scm.domains().z.size(),
                                          std::vector<std::size_t>(scm.u_size(), x));
  return FiniteScm(scm.domains(), scm.p_z(), scm.p_u(), std::move(g), scm.h_table());
}

std::vector<double> causal_effect(const FiniteScm& scm, std::size_t x) {
  const FiniteScm intervened = set_x(scm, x);
  const Domains& d = intervened.domains();
  // Under set(X = x) every stratum carries the same law, so any z gives P(y | do(x)).
  std::vector<double> p_y(d.y.size(), 0.0);
  for (std::size_t u = 0; u < intervened.u_size(); ++u) {
    p_y[intervened.h(intervened.g(0, u), u)] += intervened.p_u()[u];
  }
  return p_y;
}

FiniteScm random_instrumental_scm(const ScmDims& dims, std::uint64_t seed, bool monotone_g) {
  if (dims.z < 2 || dims.x < 2 || dims.y < 2 || dims.u < 1) {
    throw Error("random SCM needs |Z|,|X|,|Y| >= 2 and |U| >= 1");
  }
  CounterRng rng(seed);
  auto p_z = rng.flat_dirichlet(dims.z);
  auto p_u = rng.flat_dirichlet(dims.u);
  // Dirichlet draws are normalized in floating point; pin the total exactly.
  p_z.back() = 1.0 - std::accumulate(p_z.begin(), p_z.end() - 1, 0.0);
  p_u.back() = 1.0 - std::accumulate(p_u.begin(), p_u.end() - 1, 0.0);
  p_z.back() = std::max(p_z.back(), 0.0);
  p_u.back() = std::max(p_u.back(), 0.0);

  std::vector<std::vector<std::size_t>> g(dims.z, std::vector<std::size_t>(dims.u));
  for (std::size_t u = 0; u < dims.u; ++u) {
    std::vector<std::size_t> column(dims.z);
    for (auto& v : column) v = rng.below(dims.x);
    if (monotone_g) std::sort(column.begin(), column.end());
    for (std::size_t z = 0; z < dims.z; ++z) g[z][u] = column[z];
  }
  std::vector<std::vector<std::size_t>> h(dims.x, std::vector<std::size_t>(dims.u));
  for (auto& row : h) {
    for (auto& v : row) v = rng.below(dims.y);
  }
  return FiniteScm(Domains::indexed(dims.z, dims.x, dims.y), std::move(p_z), std::move(p_u),
                   std::move(g), std::move(h));
}

}  // namespace ivcheck
