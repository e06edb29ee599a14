#include "io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "ivcheck/error.hpp"

namespace ivcheck::io {

namespace {

std::string label_of(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return v.dump();
  throw Error("level labels must be strings or numbers");
}

Domain domain_from_json(const json& j, const std::string& name) {
  if (!j.is_array()) throw Error("domain '" + name + "' must be a list of levels");
  std::vector<std::string> levels;
  for (const auto& v : j) levels.push_back(label_of(v));
  return Domain(name, std::move(levels));
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

std::vector<std::string> sorted_levels(std::vector<std::string> seen) {
  std::vector<double> numeric(seen.size());
  bool all_numeric = true;
  for (std::size_t i = 0; i < seen.size(); ++i) all_numeric &= parse_number(seen[i], numeric[i]);
  if (all_numeric) {
    std::vector<std::size_t> order(seen.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return numeric[a] < numeric[b]; });
    std::vector<std::string> out;
    for (std::size_t i : order) out.push_back(seen[i]);
    return out;
  }
  std::sort(seen.begin(), seen.end());
  return seen;
}

std::size_t level_index(const json& v, const Domain& d) {
  if (v.is_number_integer()) {
    const auto i = v.get<long long>();
    if (i < 0 || static_cast<std::size_t>(i) >= d.size()) {
      throw Error("index " + std::to_string(i) + " outside domain '" + d.name() + "'");
    }
    return static_cast<std::size_t>(i);
  }
  return d.index_of(label_of(v));
}

std::vector<std::vector<std::size_t>> function_table(const json& j, const Domain& rows,
                                                     const Domain& codomain, const char* what) {
  if (!j.is_array() || j.size() != rows.size()) {
    throw Error(std::string(what) + " needs one row per level of " + rows.name());
  }
  std::vector<std::vector<std::size_t>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(std::string(what) + " rows must be lists");
    std::vector<std::size_t> r;
    for (const auto& v : row) r.push_back(level_index(v, codomain));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> number_list(const json& j, const char* what) {
  if (!j.is_array()) throw Error(std::string(what) + " must be a list of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(std::string(what) + " must be a list of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Domains domains_from_json(const json& j) {
  return Domains{domain_from_json(require(j, "z"), "Z"), domain_from_json(require(j, "x"), "X"),
                 domain_from_json(require(j, "y"), "Y")};
}

json domains_to_json(const Domains& d) {
  return json{{"z", d.z.levels()}, {"x", d.x.levels()}, {"y", d.y.levels()}};
}

TableFile table_from_json(const json& j) {
  const Domains d = domains_from_json(require(j, "domains"));
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind != "joint" && kind != "conditional") {
    throw Error("table kind must be 'joint' or 'conditional'");
  }
  const json& values = require(j, "values");
  if (!values.is_object()) throw Error("'values' must map z levels to matrices");

  std::vector<double> cells(d.cells(), 0.0);
  std::vector<bool> present(d.z.size(), false);
  for (const auto& [key, matrix] : values.items()) {
    const std::size_t z = d.z.index_of(key);
    present[z] = true;
    if (!matrix.is_array() || matrix.size() != d.x.size()) {
      throw Error("stratum '" + key + "' needs one row per x level");
    }
    for (std::size_t x = 0; x < d.x.size(); ++x) {
      const auto row = number_list(matrix[x], "table row");
      if (row.size() != d.y.size()) {
        throw Error("stratum '" + key + "' needs one column per y level");
      }
      for (std::size_t y = 0; y < d.y.size(); ++y) cells[d.index(z, x, y)] = row[y];
    }
  }
  if (kind == "joint") {
    JointTable joint(d, std::move(cells));
    return TableFile{condition_on_z(joint), joint.z_marginal()};
  }
  return TableFile{ConditionalTable(d, std::move(cells), std::move(present)), std::nullopt};
}

json table_to_json(const ConditionalTable& t) {
  const Domains& d = t.domains();
  json values = json::object();
  for (std::size_t z : t.defined_strata()) {
    json matrix = json::array();
    for (std::size_t x = 0; x < d.x.size(); ++x) {
      json row = json::array();
      for (std::size_t y = 0; y < d.y.size(); ++y) row.push_back(t(z, x, y));
      matrix.push_back(std::move(row));
    }
    values[d.z.label(z)] = std::move(matrix);
  }
  return json{{"domains", domains_to_json(d)}, {"kind", "conditional"}, {"values", values}};
}

SampleCounts counts_from_csv(std::istream& in, const std::optional<Domains>& declared) {
  std::string line;
  if (!std::getline(in, line)) throw Error("CSV input is empty");
  const auto header = split_csv_line(trim(line));
  if (header != std::vector<std::string>{"z", "x", "y"}) {
    throw Error("CSV header must be z,x,y");
  }
  std::vector<std::array<std::string, 3>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw Error("CSV line " + std::to_string(line_no) + " does not have three fields");
    }
    rows.push_back({fields[0], fields[1], fields[2]});
  }
  if (rows.empty()) throw Error("CSV input has no observations");

  Domains d = [&] {
    if (declared) return *declared;
    std::array<std::vector<std::string>, 3> seen;
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < 3; ++k) {
        if (std::find(seen[k].begin(), seen[k].end(), r[k]) == seen[k].end()) {
          seen[k].push_back(r[k]);
        }
      }
    }
    return Domains{Domain("Z", sorted_levels(seen[0])), Domain("X", sorted_levels(seen[1])),
                   Domain("Y", sorted_levels(seen[2]))};
  }();
  std::vector<std::uint64_t> counts(d.cells(), 0);
  for (const auto& r : rows) {
    ++counts[d.index(d.z.index_of(r[0]), d.x.index_of(r[1]), d.y.index_of(r[2]))];
  }
  return SampleCounts(std::move(d), std::move(counts));
}

void counts_to_csv(std::ostream& out, const SampleCounts& counts) {
  const Domains& d = counts.domains();
  out << "z,x,y\n";
  for (std::size_t z = 0; z < d.z.size(); ++z) {
    for (std::size_t x = 0; x < d.x.size(); ++x) {
      for (std::size_t y = 0; y < d.y.size(); ++y) {
        const std::string row = d.z.label(z) + "," + d.x.label(x) + "," + d.y.label(y) + "\n";
        for (std::uint64_t k = 0; k < counts(z, x, y); ++k) out << row;
      }
    }
  }
}

FiniteScm scm_from_json(const json& j) {
  const Domains d = domains_from_json(require(j, "domains"));
  return FiniteScm(d, number_list(require(j, "p_z"), "p_z"), number_list(require(j, "p_u"), "p_u"),
                   function_table(require(j, "g"), d.z, d.x, "g"),
                   function_table(require(j, "h"), d.x, d.y, "h"));
}

json scm_to_json(const FiniteScm& scm) {
  const Domains& d = scm.domains();
  json g = json::array();
  for (const auto& row : scm.g_table()) {
    json r = json::array();
    for (std::size_t x : row) r.push_back(d.x.label(x));
    g.push_back(std::move(r));
  }
  json h = json::array();
  for (const auto& row : scm.h_table()) {
    json r = json::array();
    for (std::size_t y : row) r.push_back(d.y.label(y));
    h.push_back(std::move(r));
  }
  return json{{"domains", domains_to_json(d)}, {"p_z", scm.p_z()}, {"p_u", scm.p_u()},
              {"g", g}, {"h", h}};
}

LinearGaussianScm linear_from_json(const json& j) {
  LinearGaussianScm m;
  m.a = require(j, "a").get<double>();
  m.b = require(j, "b").get<double>();
  m.c = require(j, "c").get<double>();
  m.var_z = require(j, "var_z").get<double>();
  m.var_u = require(j, "var_u").get<double>();
  m.var_w = j.value("var_w", 0.0);
  if (!(m.var_z > 0.0) || !(m.var_u > 0.0) || m.var_w < 0.0) {
    throw Error("linear model variances must be positive (var_w nonnegative)");
  }
  return m;
}

json linear_to_json(const LinearGaussianScm& m) {
  return json{{"a", m.a},         {"b", m.b},         {"c", m.c},
              {"var_z", m.var_z}, {"var_u", m.var_u}, {"var_w", m.var_w}};
}

CausalGraph graph_from_json(const json& j) {
  std::vector<std::string> nodes;
  for (const auto& n : require(j, "nodes")) nodes.push_back(label_of(n));
  std::map<std::string, std::set<std::string>> parents;
  if (j.contains("parents")) {
    for (const auto& [child, list] : j.at("parents").items()) {
      auto& set = parents[child];
      for (const auto& p : list) set.insert(label_of(p));
    }
  }
  std::set<CausalGraph::Arc> dashed;
  if (j.contains("dashed")) {
    for (const auto& arc : j.at("dashed")) {
      if (!arc.is_array() || arc.size() != 2) throw Error("dashed arcs must be node pairs");
      dashed.insert({label_of(arc[0]), label_of(arc[1])});
    }
  }
  return CausalGraph(std::move(nodes), std::move(parents), std::move(dashed));
}

json restriction_to_json(const Restriction& r) {
  return json{{"kind", r.kind == RestrictionKind::exclusion ? "exclusion" : "independence"},
              {"subject", r.subject},
              {"terms", r.terms},
              {"text", r.render()}};
}

json iv_report_to_json(const IvReport& r, const Domains& d) {
  json sums = json::object();
  json argmax = json::object();
  for (std::size_t x = 0; x < d.x.size(); ++x) {
    sums[d.x.label(x)] = r.per_x_sums[x];
    json row = json::object();
    for (std::size_t y = 0; y < d.y.size(); ++y) row[d.y.label(y)] = d.z.label(r.argmax_z[x][y]);
    argmax[d.x.label(x)] = std::move(row);
  }
  return json{{"score", r.score},
              {"per_x_sums", sums},
              {"argmax_z", argmax},
              {"tolerance", r.tolerance},
              {"violated", r.violated}};
}

json binary_report_to_json(const BinaryIvReport& r) {
  return json{{"lhs", r.lhs}, {"violated_indices", r.violated_indices}, {"tolerance", r.tolerance}};
}

json monotonicity_to_json(const std::vector<MonotonicityComparison>& rows) {
  json out = json::array();
  for (const auto& c : rows) {
    out.push_back({{"id", c.id}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
  }
  return out;
}

json margin_to_json(const MarginInterval& m) {
  return json{{"lower", m.lower},           {"upper", m.upper}, {"level", m.level},
              {"replicates", m.replicates}, {"point", m.point}, {"warnings", m.warnings}};
}

json witness_to_json(const FeasibilityWitness& w) {
  const Domains& d = w.domains;
  json types = json::array();
  for (const auto& [type, q] : w.types) {
    json g = json::array();
    for (std::size_t x : type.g) g.push_back(d.x.label(x));
    json h = json::array();
    for (std::size_t y : type.h) h.push_back(d.y.label(y));
    types.push_back({{"g", g}, {"h", h}, {"q", q}});
  }
  return json{{"types", types}, {"residual", w.residual}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ivcheck::io
