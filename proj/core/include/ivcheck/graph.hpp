#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ivcheck {

/// Acyclic causal graph: a parent set per node plus dashed (latent
/// confounding) arcs between unordered node pairs.
class CausalGraph {
 public:
  using Arc = std::pair<std::string, std::string>;

  CausalGraph() = default;
  /// Nodes missing from `parents` are roots. Throws Error on unknown
  /// references, self-loops, duplicate nodes or a directed cycle.
  CausalGraph(std::vector<std::string> nodes, std::map<std::string, std::set<std::string>> parents,
              std::set<Arc> dashed);

  [[nodiscard]] const std::vector<std::string>& nodes() const { return nodes_; }
  [[nodiscard]] const std::set<std::string>& parents(const std::string& node) const;
  [[nodiscard]] const std::set<Arc>& dashed() const { return dashed_; }
  [[nodiscard]] bool dashed_connected(const std::string& a, const std::string& b) const;

  [[nodiscard]] CausalGraph with_dashed_arc(const std::string& a, const std::string& b) const;
  [[nodiscard]] CausalGraph with_edge(const std::string& from, const std::string& to) const;

 private:
  std::vector<std::string> nodes_;  // sorted
  std::map<std::string, std::set<std::string>> parents_;
  std::set<Arc> dashed_;  // each arc stored with first < second
};

enum class RestrictionKind { exclusion, independence };

/// A counterfactual restriction in canonical form.
///
/// Exclusion: subject = Y(pa_Y), terms = the equal terms Y(pa_Y, s).
/// Independence: subject = Y(pa_Y), terms = the jointly independent set.
/// Terms render as the node label with its lower-cased arguments sorted by
/// node label, e.g. X(y,z); a root renders as its bare label.
struct Restriction {
  RestrictionKind kind = RestrictionKind::exclusion;
  std::string subject;
  std::vector<std::string> terms;

  [[nodiscard]] std::string render() const;
  bool operator==(const Restriction&) const = default;
};

/// Canonical rendering of node(args).
std::string counterfactual_term(const std::string& node, const std::set<std::string>& args);

/// For every node Y and nonempty S (|S| <= max_set_size) disjoint from
/// pa_Y and Y: Y(pa_Y) = Y(pa_Y, s). One restriction per node, chaining all
/// its equalities; nodes in label order, S by size then label.
std::vector<Restriction> exclusion_restrictions(const CausalGraph& graph,
                                                std::size_t max_set_size = 3);

/// For every node Y, Y(pa_Y) is independent of {X(pa_X)} over all X not
/// dashed-connected to Y. A singleton statement A _||_ B is omitted when B's
/// own statement already contains A with another member, or when B sorts
/// before A and states B _||_ A.
std::vector<Restriction> independence_restrictions(const CausalGraph& graph);

}  // namespace ivcheck
