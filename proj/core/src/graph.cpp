#include "ivcheck/graph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "ivcheck/error.hpp"

namespace ivcheck {

namespace {

CausalGraph::Arc ordered(const std::string& a, const std::string& b) {
  return a < b ? CausalGraph::Arc{a, b} : CausalGraph::Arc{b, a};
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

CausalGraph::CausalGraph(std::vector<std::string> nodes,
                         std::map<std::string, std::set<std::string>> parents,
                         std::set<Arc> dashed)
    : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw Error("graph repeats a node label");
  }
  const auto known = [this](const std::string& n) {
    return std::binary_search(nodes_.begin(), nodes_.end(), n);
  };
  for (const auto& n : nodes_) {
    if (n.empty()) throw Error("graph node labels must be non-empty");
    parents_[n];
  }
  for (auto& [child, pa] : parents) {
    if (!known(child)) throw Error("parent set for unknown node '" + child + "'");
    for (const auto& p : pa) {
      if (!known(p)) throw Error("unknown parent '" + p + "' of '" + child + "'");
      if (p == child) throw Error("node '" + child + "' is its own parent");
    }
    parents_[child] = std::move(pa);
  }
  for (const auto& [a, b] : dashed) {
    if (!known(a) || !known(b)) throw Error("dashed arc references an unknown node");
    if (a == b) throw Error("dashed arc must join two distinct nodes");
    dashed_.insert(ordered(a, b));
  }

  // 0 = unvisited, 1 = on stack, 2 = done.
  std::map<std::string, int> state;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    state[n] = 1;
    for (const auto& p : parents_.at(n)) {
      if (state[p] == 1) throw Error("graph has a directed cycle through '" + p + "'");
      if (state[p] == 0) visit(p);
    }
    state[n] = 2;
  };
  for (const auto& n : nodes_) {
    if (state[n] == 0) visit(n);
  }
}

const std::set<std::string>& CausalGraph::parents(const std::string& node) const {
  const auto it = parents_.find(node);
  if (it == parents_.end()) throw Error("unknown node '" + node + "'");
  return it->second;
}

bool CausalGraph::dashed_connected(const std::string& a, const std::string& b) const {
  return dashed_.count(ordered(a, b)) > 0;
}

CausalGraph CausalGraph::with_dashed_arc(const std::string& a, const std::string& b) const {
  auto arcs = dashed_;
  arcs.insert(ordered(a, b));
  return CausalGraph(nodes_, parents_, arcs);
}

CausalGraph CausalGraph::with_edge(const std::string& from, const std::string& to) const {
  auto pa = parents_;
  pa[to].insert(from);
  return CausalGraph(nodes_, pa, dashed_);
}

std::string counterfactual_term(const std::string& node, const std::set<std::string>& args) {
  if (args.empty()) return node;
  std::string out = node + "(";
  bool first = true;
  for (const auto& a : args) {
    if (!first) out += ",";
    out += lowercase(a);
    first = false;
  }
  return out + ")";
}

std::string Restriction::render() const {
  std::string out = subject;
  if (kind == RestrictionKind::exclusion) {
    for (const auto& t : terms) out += " = " + t;
    return out;
  }
  out += " _||_ ";
  if (terms.size() == 1) return out + terms.front();
  out += "{";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) out += ", ";
    out += terms[i];
  }
  return out + "}";
}

std::vector<Restriction> exclusion_restrictions(const CausalGraph& graph,
                                                std::size_t max_set_size) {
  std::vector<Restriction> out;
  for (const auto& node : graph.nodes()) {
    const auto& pa = graph.parents(node);
    std::vector<std::string> candidates;
    for (const auto& other : graph.nodes()) {
      if (other != node && pa.count(other) == 0) candidates.push_back(other);
    }
    Restriction r{RestrictionKind::exclusion, counterfactual_term(node, pa), {}};
    const std::size_t cap = std::min(max_set_size, candidates.size());
    for (std::size_t size = 1; size <= cap; ++size) {
      // Lexicographic combinations of `size` candidates (candidates are sorted).
      std::vector<bool> pick(candidates.size(), false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
      do {
        auto args = pa;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
          if (pick[i]) args.insert(candidates[i]);
        }
        r.terms.push_back(counterfactual_term(node, args));
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    if (!r.terms.empty()) out.push_back(std::move(r));
  }
  return out;
}

std::vector<Restriction> independence_restrictions(const CausalGraph& graph) {
  std::map<std::string, std::vector<std::string>> partners;
  for (const auto& node : graph.nodes()) {
    for (const auto& other : graph.nodes()) {
      if (other != node && !graph.dashed_connected(node, other)) partners[node].push_back(other);
    }
  }
  const auto redundant = [&](const std::string& a, const std::vector<std::string>& set) {
    if (set.size() != 1) return false;
    const std::string& b = set.front();
    const auto& theirs = partners[b];
    const bool mentions_a = std::find(theirs.begin(), theirs.end(), a) != theirs.end();
    return mentions_a && (theirs.size() > 1 || b < a);
  };

  std::vector<Restriction> out;
  for (const auto& node : graph.nodes()) {
    const auto& set = partners[node];
    if (set.empty() || redundant(node, set)) continue;
    Restriction r{RestrictionKind::independence, counterfactual_term(node, graph.parents(node)), {}};
    for (const auto& other : set) r.terms.push_back(counterfactual_term(other, graph.parents(other)));
    std::sort(r.terms.begin(), r.terms.end());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ivcheck
