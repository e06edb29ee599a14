#include "ivcheck/feasibility.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ivcheck/error.hpp"
#include "simplex.hpp"

namespace ivcheck {

namespace {

constexpr double kClearlyFeasible = 1e-12;
constexpr double kClearlyInfeasible = 1e-5;

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > kMaxResponseTypes / base) return std::nullopt;
    r *= base;
  }
  return r;
}

std::vector<std::size_t> digits(std::uint64_t value, std::size_t width, std::size_t base) {
  std::vector<std::size_t> out(width);
  for (std::size_t i = width; i-- > 0;) {
    out[i] = static_cast<std::size_t>(value % base);
    value /= base;
  }
  return out;
}

template <class Scalar>
std::vector<std::vector<Scalar>> constraint_matrix(const Domains& d,
                                                   const std::vector<ResponseType>& types) {
  std::vector<std::vector<Scalar>> a(d.cells(), std::vector<Scalar>(types.size(), Scalar(0)));
  for (std::size_t z = 0; z < d.z.size(); ++z) {
    for (std::size_t t = 0; t < types.size(); ++t) {
      const std::size_t x = types[t].g[z];
      a[d.index(z, x, types[t].h[x])][t] = Scalar(1);
    }
  }
  return a;
}

FeasibilityWitness make_witness(const ConditionalTable& table,
                                const std::vector<ResponseType>& types, std::vector<double> q) {
  // Simplex round-off leaves weights of order 1e-17 on some basic types.
  for (auto& v : q) v = v > 1e-14 ? v : 0.0;
  const double total = std::accumulate(q.begin(), q.end(), 0.0);
  FeasibilityWitness w{table.domains(), {}, 0.0};
  for (std::size_t t = 0; t < types.size(); ++t) {
    if (q[t] > 0.0) w.types.push_back({types[t], q[t] / total});
  }
  const ConditionalTable rebuilt = reconstruct(w);
  for (std::size_t i = 0; i < table.values().size(); ++i) {
    w.residual = std::max(w.residual, std::abs(rebuilt.values()[i] - table.values()[i]));
  }
  return w;
}

}  // namespace

std::optional<std::uint64_t> response_type_count(const Domains& d) {
  const auto g = checked_pow(d.x.size(), d.z.size());
  const auto h = checked_pow(d.y.size(), d.x.size());
  if (!g || !h || *g > kMaxResponseTypes / *h) return std::nullopt;
  return *g * *h;
}

std::vector<ResponseType> enumerate_types(const Domains& d) {
  if (!response_type_count(d)) throw Error("domain too large for exact oracle");
  const std::uint64_t g_count = *checked_pow(d.x.size(), d.z.size());
  const std::uint64_t h_count = *checked_pow(d.y.size(), d.x.size());
  std::vector<ResponseType> types;
  types.reserve(static_cast<std::size_t>(g_count * h_count));
  for (std::uint64_t gi = 0; gi < g_count; ++gi) {
    const auto g = digits(gi, d.z.size(), d.x.size());
    for (std::uint64_t hi = 0; hi < h_count; ++hi) {
      types.push_back({g, digits(hi, d.x.size(), d.y.size())});
    }
  }
  return types;
}

ConditionalTable reconstruct(const FeasibilityWitness& witness) {
  const Domains& d = witness.domains;
  std::vector<double> values(d.cells(), 0.0);
  for (const auto& [type, q] : witness.types) {
    for (std::size_t z = 0; z < d.z.size(); ++z) {
      const std::size_t x = type.g[z];
      values[d.index(z, x, type.h[x])] += q;
    }
  }
  return ConditionalTable(d, std::move(values));
}

FeasibilityResult check_feasibility(const ConditionalTable& table) {
  if (!table.fully_defined()) {
    throw Error("feasibility oracle needs every z stratum defined");
  }
  const Domains& d = table.domains();
  const auto types = enumerate_types(d);

  FeasibilityResult result;
  {
    const auto a = constraint_matrix<double>(d, types);
    const std::vector<double> b(table.values().begin(), table.values().end());
    auto lp = detail::phase1_simplex<double>(a, b, 1e-12);
    result.lp_residual = std::max(lp.infeasibility, 0.0);
    if (result.lp_residual <= kClearlyFeasible) {
      auto w = make_witness(table, types, std::move(lp.x));
      if (w.residual <= kWitnessTolerance) {
        result.feasible = true;
        result.witness = std::move(w);
        return result;
      }
    } else if (result.lp_residual >= kClearlyInfeasible) {
      return result;
    }
  }

  // Near the boundary: decide on the exact binary values of the table.
  result.exact = true;
  const auto a = constraint_matrix<mpq_class>(d, types);
  std::vector<mpq_class> b(d.cells());
  const std::size_t block = d.stratum_cells();
  for (std::size_t z = 0; z < d.z.size(); ++z) {
    mpq_class total(0);
    for (std::size_t i = 0; i < block; ++i) {
      b[z * block + i] = mpq_class(table.values()[z * block + i]);
      total += b[z * block + i];
    }
    for (std::size_t i = 0; i < block; ++i) b[z * block + i] /= total;
  }
  const auto lp = detail::phase1_simplex<mpq_class>(a, b, mpq_class(0));
  if (lp.infeasibility == 0) {
    std::vector<double> q(lp.x.size());
    std::transform(lp.x.begin(), lp.x.end(), q.begin(), [](const mpq_class& v) { return v.get_d(); });
    result.feasible = true;
    result.witness = make_witness(table, types, std::move(q));
  }
  return result;
}

FiniteScm witness_to_scm(const FeasibilityWitness& witness, const std::vector<double>& p_z) {
  const Domains& d = witness.domains;
  std::vector<double> p_u;
  std::vector<std::vector<std::size_t>> g(d.z.size());
  std::vector<std::vector<std::size_t>> h(d.x.size());
  for (const auto& [type, q] : witness.types) {
    if (q <= 0.0) continue;
    p_u.push_back(q);
    for (std::size_t z = 0; z < d.z.size(); ++z) g[z].push_back(type.g[z]);
    for (std::size_t x = 0; x < d.x.size(); ++x) h[x].push_back(type.h[x]);
  }
  if (p_u.empty()) throw Error("witness has no positive-weight types");
  const double total = std::accumulate(p_u.begin(), p_u.end(), 0.0);
  for (auto& v : p_u) v /= total;
  return FiniteScm(d, p_z, std::move(p_u), std::move(g), std::move(h));
}

}  // namespace ivcheck
