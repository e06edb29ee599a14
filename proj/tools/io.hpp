#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ivcheck/feasibility.hpp"
#include "ivcheck/graph.hpp"
#include "ivcheck/iv_test.hpp"
#include "ivcheck/linear_iv.hpp"
#include "ivcheck/scm.hpp"
#include "ivcheck/tables.hpp"

namespace ivcheck::io {

using nlohmann::json;

/// {"z": [...], "x": [...], "y": [...]}
Domains domains_from_json(const json& j);
json domains_to_json(const Domains& d);

/// A table file, as read. `z_marginal` is set for joint tables.
struct TableFile {
  ConditionalTable table;
  std::optional<std::vector<double>> z_marginal;
};

/// {"domains": {...}, "kind": "joint"|"conditional",
///  "values": {"<z-level>": [[P per y] per x]}}
/// Conditional strata missing from "values" are undefined; joint strata
/// missing from "values" carry zero mass.
TableFile table_from_json(const json& j);
json table_to_json(const ConditionalTable& t);

/// CSV with header z,x,y and one observation per row. Without declared
/// domains, levels are taken from the data, sorted numerically when every
/// label is a number and lexicographically otherwise.
SampleCounts counts_from_csv(std::istream& in, const std::optional<Domains>& declared);
void counts_to_csv(std::ostream& out, const SampleCounts& counts);

/// {"domains": {...}, "p_z": [...], "p_u": [...], "g": [[x per u] per z],
///  "h": [[y per u] per x]}. Entries of g and h are level labels; integer
/// indices are accepted on input.
FiniteScm scm_from_json(const json& j);
json scm_to_json(const FiniteScm& scm);

/// {"a": _, "b": _, "c": _, "var_z": _, "var_u": _, "var_w": _}; var_w defaults to 0.
LinearGaussianScm linear_from_json(const json& j);
json linear_to_json(const LinearGaussianScm& m);

/// {"nodes": [...], "parents": {"X": ["Z"]}, "dashed": [["X", "Y"]]}
CausalGraph graph_from_json(const json& j);
json restriction_to_json(const Restriction& r);

json iv_report_to_json(const IvReport& r, const Domains& d);
json binary_report_to_json(const BinaryIvReport& r);
json monotonicity_to_json(const std::vector<MonotonicityComparison>& rows);
json margin_to_json(const MarginInterval& m);
/// {"types": [{"g": [...], "h": [...], "q": _}], "residual": _}
json witness_to_json(const FeasibilityWitness& w);

json read_json_file(const std::string& path);
std::string read_file(const std::string& path);
/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string digest(const std::string& bytes);

}  // namespace ivcheck::io
