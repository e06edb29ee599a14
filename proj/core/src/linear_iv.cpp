#include "ivcheck/linear_iv.hpp"

#include <algorithm>
#include <cmath>

#include "ivcheck/error.hpp"
#include "ivcheck/rng.hpp"

namespace ivcheck {

CovarianceTriple::CovarianceTriple(const Matrix& m) : m_(m) {
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (!std::isfinite(m_[i][j])) throw Error("covariance entries must be finite");
      const double scale = std::max({1.0, std::abs(m_[i][j]), std::abs(m_[j][i])});
      if (std::abs(m_[i][j] - m_[j][i]) > 1e-12 * scale) {
        throw Error("covariance matrix must be symmetric");
      }
    }
    if (m_[i][i] < 0.0) throw Error("variances must be nonnegative");
  }
}

CovarianceTriple CovarianceTriple::from_entries(double zz, double zx, double zy, double xx,
                                                double xy, double yy) {
  return CovarianceTriple(Matrix{{{zz, zx, zy}, {zx, xx, xy}, {zy, xy, yy}}});
}

bool CovarianceTriple::positive_definite() const {
  // Cholesky on the 3x3.
  Matrix l{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = m_[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0.0) return false;
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return true;
}

double CovarianceTriple::max_abs_diff(const CovarianceTriple& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) worst = std::max(worst, std::abs(m_[i][j] - other.m_[i][j]));
  }
  return worst;
}

CovarianceTriple implied_covariance(const LinearGaussianScm& m) {
  const double zz = m.var_z;
  const double zx = m.a * m.var_z;
  const double zy = m.b * zx;
  const double xx = m.a * m.a * m.var_z + m.c * m.c * m.var_u + m.var_w;
  const double xy = m.b * xx + m.c * m.var_u;
  const double yy = m.b * m.b * xx + 2.0 * m.b * m.c * m.var_u + m.var_u;
  return CovarianceTriple::from_entries(zz, zx, zy, xx, xy, yy);
}

LinearGaussianScm fit_linear_iv(const CovarianceTriple& cov) {
  const double zz = cov(0, 0);
  const double zx = cov(0, 1);
  const double zy = cov(0, 2);
  const double xx = cov(1, 1);
  const double xy = cov(1, 2);
  const double yy = cov(2, 2);
  if (!(zz > 0.0)) throw Error("Var(Z) must be positive");
  if (zx == 0.0) throw Error("not an instrument for identification");

  LinearGaussianScm m;
  m.var_z = zz;
  m.a = zx / zz;
  m.b = zy / zx;
  // Residuals e_x = X - aZ and e_y = Y - bX are uncorrelated with Z; their
  // covariance block determines (c, var_u, var_w).
  const double exx = xx - m.a * zx;
  const double exy = xy - m.b * xx - m.a * zy + m.a * m.b * zx;
  const double eyy = yy - 2.0 * m.b * xy + m.b * m.b * xx;
  const double scale = std::max({1.0, std::abs(xx), std::abs(yy)});
  if (!(eyy > 1e-12 * scale)) throw Error("inconsistent with instrumental linear model");
  m.var_u = eyy;
  m.c = exy / eyy;
  m.var_w = exx - exy * exy / eyy;
  if (m.var_w < -1e-10 * scale) throw Error("inconsistent with instrumental linear model");
  m.var_w = std::max(m.var_w, 0.0);
  return m;
}

std::vector<std::array<double, 3>> sample_linear(const LinearGaussianScm& m, std::size_t n,
                                                 std::uint64_t seed) {
  CounterRng rng(seed);
  const double sz = std::sqrt(m.var_z);
  const double su = std::sqrt(m.var_u);
  const double sw = std::sqrt(m.var_w);
  std::vector<std::array<double, 3>> rows(n);
  for (auto& row : rows) {
    const double z = sz * rng.normal();
    const double u = su * rng.normal();
    const double w = sw * rng.normal();
    const double x = m.a * z + m.c * u + w;
    row = {z, x, m.b * x + u};
  }
  return rows;
}

CovarianceTriple sample_covariance(const std::vector<std::array<double, 3>>& rows) {
  if (rows.size() < 2) throw Error("sample covariance needs at least two rows");
  std::array<double, 3> mean{};
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < 3; ++i) mean[i] += r[i];
  }
  const double n = static_cast<double>(rows.size());
  for (auto& v : mean) v /= n;
  CovarianceTriple::Matrix s{};
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) s[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]);
    }
  }
  for (auto& row : s) {
    for (auto& v : row) v /= n - 1.0;
  }
  return CovarianceTriple(s);
}

}  // namespace ivcheck
