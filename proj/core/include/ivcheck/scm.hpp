#pragma once

#include <cstdint>
#include <vector>

#include "ivcheck/tables.hpp"

namespace ivcheck {

/// Finite instrumental process: z ~ p_z, u ~ p_u independently,
/// x = g(z, u), y = h(x, u).
///
/// Z and U are independent by construction: there is no joint (z, u) table
/// to get wrong. `g` is indexed [z][u] and holds X level indices; `h` is
/// indexed [x][u] and holds Y level indices.
class FiniteScm {
 public:
  FiniteScm(Domains domains, std::vector<double> p_z, std::vector<double> p_u,
            std::vector<std::vector<std::size_t>> g, std::vector<std::vector<std::size_t>> h);

  [[nodiscard]] const Domains& domains() const { return domains_; }
  [[nodiscard]] std::size_t u_size() const { return p_u_.size(); }
  [[nodiscard]] const std::vector<double>& p_z() const { return p_z_; }
  [[nodiscard]] const std::vector<double>& p_u() const { return p_u_; }
  [[nodiscard]] std::size_t g(std::size_t z, std::size_t u) const { return g_[z][u]; }
  [[nodiscard]] std::size_t h(std::size_t x, std::size_t u) const { return h_[x][u]; }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& g_table() const { return g_; }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& h_table() const { return h_; }

 private:
  Domains domains_;
  std::vector<double> p_z_;
  std::vector<double> p_u_;
  std::vector<std::vector<std::size_t>> g_;
  std::vector<std::vector<std::size_t>> h_;
};

/// Exact P(x, y | z) = sum_u p_u(u) 1{g(z,u) = x} 1{h(x,u) = y}.
/// Strata with p_z(z) = 0 are left undefined.
ConditionalTable induced_conditional(const FiniteScm& scm);

/// n i.i.d. draws of (z, x, y). Deterministic in (scm, n, seed).
SampleCounts sample(const FiniteScm& scm, std::uint64_t n, std::uint64_t seed);

/// The atomic intervention set(X = x): replaces the g-equation by the constant x.
FiniteScm set_x(const FiniteScm& scm, std::size_t x);

/// P(y | do(x)) = sum_u p_u(u) 1{h(x,u) = y}, computed on set_x(scm, x).
std::vector<double> causal_effect(const FiniteScm& scm, std::size_t x);

struct ScmDims {
  std::size_t z = 2;
  std::size_t x = 2;
  std::size_t y = 2;
  std::size_t u = 2;
};

/// Random instrumental process with flat-Dirichlet p_z, p_u and uniformly
/// drawn g, h. With `monotone_g`, every g(., u) is nondecreasing in the
/// declared Z order (drawn uniformly, then sorted).
FiniteScm random_instrumental_scm(const ScmDims& dims, std::uint64_t seed, bool monotone_g);

}  // namespace ivcheck
