#include "ivcheck/tables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "ivcheck/error.hpp"

namespace ivcheck {

Domain::Domain(std::string name, std::vector<std::string> levels)
    : name_(std::move(name)), levels_(std::move(levels)) {
  if (levels_.size() < 2) {
    throw Error("domain '" + name_ + "' needs at least two levels");
  }
  std::unordered_set<std::string> seen;
  for (const auto& level : levels_) {
    if (level.empty()) throw Error("domain '" + name_ + "' has an empty level label");
    if (!seen.insert(level).second) {
      throw Error("domain '" + name_ + "' repeats level '" + level + "'");
    }
  }
}

Domain Domain::indexed(std::string name, std::size_t n) {
  std::vector<std::string> levels;
  levels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) levels.push_back(std::to_string(i));
  return Domain(std::move(name), std::move(levels));
}

std::size_t Domain::index_of(std::string_view label) const {
  const auto it = std::find(levels_.begin(), levels_.end(), label);
  if (it == levels_.end()) {
    throw Error("unknown level '" + std::string(label) + "' for domain '" + name_ + "'");
  }
  return static_cast<std::size_t>(it - levels_.begin());
}

Domains Domains::indexed(std::size_t nz, std::size_t nx, std::size_t ny) {
  return Domains{Domain::indexed("Z", nz), Domain::indexed("X", nx), Domain::indexed("Y", ny)};
}

namespace {

void check_entries(std::span<const double> values, std::size_t expected) {
  if (values.size() != expected) {
    throw Error("table has " + std::to_string(values.size()) + " entries, expected " +
                std::to_string(expected));
  }
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw Error("table entries must be finite and nonnegative");
  }
}

}  // namespace

JointTable::JointTable(Domains domains, std::vector<double> values)
    : domains_(std::move(domains)), values_(std::move(values)) {
  check_entries(values_, domains_.cells());
  const double total = std::accumulate(values_.begin(), values_.end(), 0.0);
  if (total == 0.0) throw Error("degenerate distribution");
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error("joint table mass " + std::to_string(total) + " is not 1");
  }
  for (auto& v : values_) v /= total;
}

std::vector<double> JointTable::z_marginal() const {
  std::vector<double> p(domains_.z.size(), 0.0);
  const std::size_t block = domains_.stratum_cells();
  for (std::size_t z = 0; z < p.size(); ++z) {
    const auto first = values_.begin() + static_cast<std::ptrdiff_t>(z * block);
    p[z] = std::accumulate(first, first + static_cast<std::ptrdiff_t>(block), 0.0);
  }
  return p;
}

ConditionalTable::ConditionalTable(Domains domains, std::vector<double> values,
                                   std::vector<bool> defined)
    : domains_(std::move(domains)), values_(std::move(values)), defined_(std::move(defined)) {
  check_entries(values_, domains_.cells());
  if (defined_.size() != domains_.z.size()) {
    throw Error("defined-strata mask does not match the Z domain");
  }
  const std::size_t block = domains_.stratum_cells();
  for (std::size_t z = 0; z < defined_.size(); ++z) {
    const auto first = values_.begin() + static_cast<std::ptrdiff_t>(z * block);
    const auto last = first + static_cast<std::ptrdiff_t>(block);
    const double total = std::accumulate(first, last, 0.0);
    if (!defined_[z]) {
      if (total != 0.0) {
        throw Error("undefined stratum '" + domains_.z.label(z) + "' carries probability mass");
      }
      continue;
    }
    if (std::abs(total - 1.0) > kMassTolerance) {
      throw Error("stratum '" + domains_.z.label(z) + "' sums to " + std::to_string(total) +
                  ", not 1");
    }
    std::for_each(first, last, [total](double& v) { v /= total; });
  }
}

ConditionalTable::ConditionalTable(Domains domains, std::vector<double> values)
    : ConditionalTable(domains, std::move(values), std::vector<bool>(domains.z.size(), true)) {}

std::span<const double> ConditionalTable::stratum(std::size_t z) const {
  const std::size_t block = domains_.stratum_cells();
  return std::span<const double>(values_).subspan(z * block, block);
}

std::vector<std::size_t> ConditionalTable::defined_strata() const {
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < defined_.size(); ++z) {
    if (defined_[z]) out.push_back(z);
  }
  return out;
}

bool ConditionalTable::fully_defined() const {
  return std::all_of(defined_.begin(), defined_.end(), [](bool b) { return b; });
}

double ConditionalTable::x_given_z(std::size_t x, std::size_t z) const {
  double p = 0.0;
  for (std::size_t y = 0; y < domains_.y.size(); ++y) p += (*this)(z, x, y);
  return p;
}

SampleCounts::SampleCounts(Domains domains, std::vector<std::uint64_t> counts)
    : domains_(std::move(domains)), counts_(std::move(counts)) {
  if (counts_.size() != domains_.cells()) throw Error("count vector does not match the domains");
  if (total() == 0) throw Error("sample counts are empty");
}

std::uint64_t SampleCounts::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t SampleCounts::stratum_total(std::size_t z) const {
  const std::size_t block = domains_.stratum_cells();
  const auto first = counts_.begin() + static_cast<std::ptrdiff_t>(z * block);
  return std::accumulate(first, first + static_cast<std::ptrdiff_t>(block), std::uint64_t{0});
}

ConditionalTable condition_on_z(const JointTable& joint) {
  const Domains& d = joint.domains();
  const auto p_z = joint.z_marginal();
  std::vector<double> values(d.cells(), 0.0);
  std::vector<bool> defined(d.z.size(), false);
  const std::size_t block = d.stratum_cells();
  for (std::size_t z = 0; z < d.z.size(); ++z) {
    if (p_z[z] <= kStratumCutoff) continue;
    defined[z] = true;
    for (std::size_t i = 0; i < block; ++i) {
      values[z * block + i] = joint.values()[z * block + i] / p_z[z];
    }
  }
  if (std::none_of(defined.begin(), defined.end(), [](bool b) { return b; })) {
    throw Error("degenerate distribution");
  }
  return ConditionalTable(d, std::move(values), std::move(defined));
}

JointTable reweight(const ConditionalTable& table, std::span<const double> p_z) {
  const Domains& d = table.domains();
  if (p_z.size() != d.z.size()) throw Error("z marginal does not match the Z domain");
  std::vector<double> values(d.cells(), 0.0);
  const std::size_t block = d.stratum_cells();
  for (std::size_t z = 0; z < d.z.size(); ++z) {
    if (p_z[z] == 0.0) continue;
    if (!table.defined(z)) throw Error("cannot reweight an undefined stratum");
    for (std::size_t i = 0; i < block; ++i) values[z * block + i] = table.stratum(z)[i] * p_z[z];
  }
  return JointTable(d, std::move(values));
}

ConditionalTable estimate_from_counts(const SampleCounts& counts) {
  const Domains& d = counts.domains();
  std::vector<double> values(d.cells(), 0.0);
  std::vector<bool> defined(d.z.size(), false);
  const std::size_t block = d.stratum_cells();
  for (std::size_t z = 0; z < d.z.size(); ++z) {
    const std::uint64_t n = counts.stratum_total(z);
    if (n == 0) continue;
    defined[z] = true;
    for (std::size_t i = 0; i < block; ++i) {
      values[z * block + i] =
          static_cast<double>(counts.counts()[z * block + i]) / static_cast<double>(n);
    }
  }
  return ConditionalTable(d, std::move(values), std::move(defined));
}

double total_variation(const ConditionalTable& a, const ConditionalTable& b) {
  if (!(a.domains() == b.domains())) throw Error("total variation needs identical domains");
  if (a.defined_strata() != b.defined_strata()) {
    throw Error("total variation needs identical defined strata");
  }
  double worst = 0.0;
  for (std::size_t z : a.defined_strata()) {
    const auto sa = a.stratum(z);
    const auto sb = b.stratum(z);
    double l1 = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) l1 += std::abs(sa[i] - sb[i]);
    worst = std::max(worst, 0.5 * l1);
  }
  return worst;
}

}  // namespace ivcheck
