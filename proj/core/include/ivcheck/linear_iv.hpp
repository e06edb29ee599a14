#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace ivcheck {

/// Covariance of (Z, X, Y), in that index order.
class CovarianceTriple {
 public:
  using Matrix = std::array<std::array<double, 3>, 3>;

  explicit CovarianceTriple(const Matrix& m);

  /// Builds the symmetric matrix from its six distinct entries.
  static CovarianceTriple from_entries(double zz, double zx, double zy, double xx, double xy,
                                       double yy);

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
  [[nodiscard]] const Matrix& matrix() const { return m_; }
  [[nodiscard]] bool positive_definite() const;

  /// Largest absolute entrywise difference.
  [[nodiscard]] double max_abs_diff(const CovarianceTriple& other) const;

 private:
  Matrix m_;
};

/// Linear instrumental process
///   x = a z + c u + w
///   y = b x + u
/// with z, u, w mutually independent, zero-mean Gaussians. The y-equation
/// noise coefficient is fixed at 1. `w` is the part of the x-disturbance
/// not shared with y; var_w = 0 gives the single-disturbance form.
struct LinearGaussianScm {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double var_z = 1.0;
  double var_u = 1.0;
  double var_w = 0.0;
};

CovarianceTriple implied_covariance(const LinearGaussianScm& model);

/// Unique linear instrumental process reproducing `cov`; b = Cov(Z,Y)/Cov(Z,X).
///
/// Throws Error("not an instrument for identification") when Cov(Z,X) = 0 and
/// Error("inconsistent with instrumental linear model") when the residual
/// covariance would need var_u <= 0 or var_w < 0 (possible only for
/// covariances that are not positive semidefinite).
LinearGaussianScm fit_linear_iv(const CovarianceTriple& cov);

/// n draws of (z, x, y), deterministic in (model, n, seed).
std::vector<std::array<double, 3>> sample_linear(const LinearGaussianScm& model, std::size_t n,
                                                 std::uint64_t seed);

/// Unbiased sample covariance.
CovarianceTriple sample_covariance(const std::vector<std::array<double, 3>>& rows);

}  // namespace ivcheck
