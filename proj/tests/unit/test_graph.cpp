#include <gtest/gtest.h>

#include <algorithm>

#include "ivcheck/error.hpp"
#include "ivcheck/graph.hpp"
#include "ivcheck/rng.hpp"

namespace ivcheck {
namespace {

std::vector<std::string> rendered(const std::vector<Restriction>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(r.render());
  return out;
}

CausalGraph outcome_confounded() { return CausalGraph({"Z", "X", "Y"}, {{"X", {"Z"}}, {"Y", {"X"}}}, {{"Y", "Z"}}); }
CausalGraph treatment_confounded() { return CausalGraph({"Z", "X", "Y"}, {{"X", {"Z"}}, {"Y", {"X"}}}, {{"X", "Y"}}); }

// Independent rendering for the enumeration oracle: single-letter labels.
std::string term(const std::string& node, std::vector<std::string> args) {
  if (args.empty()) return node;
  std::sort(args.begin(), args.end());
  std::string s = node + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) s += ",";
    s += static_cast<char>(std::tolower(static_cast<unsigned char>(args[i][0])));
  }
  return s + ")";
}

TEST(CausalGraph, Validation) {
  EXPECT_THROW(CausalGraph({"A", "B"}, {{"A", {"B"}}, {"B", {"A"}}}, {}), Error);
  EXPECT_THROW(CausalGraph({"A"}, {{"A", {"A"}}}, {}), Error);
  EXPECT_THROW(CausalGraph({"A"}, {{"A", {"Q"}}}, {}), Error);
  EXPECT_THROW(CausalGraph({"A", "B"}, {}, {{"A", "Q"}}), Error);
  EXPECT_THROW(CausalGraph({"A", "A"}, {}, {}), Error);
  EXPECT_THROW(outcome_confounded().with_edge("Y", "Z"), Error);
}

TEST(CounterfactualTerm, Rendering) {
  EXPECT_EQ(counterfactual_term("Z", {}), "Z");
  EXPECT_EQ(counterfactual_term("X", {"Z", "Y"}), "X(y,z)");
}

TEST(ExclusionRestrictions, InstrumentGraphs) {
  const std::vector<std::string> expected{"X(z) = X(y,z)", "Y(x) = Y(x,z)", "Z = Z(x) = Z(y) = Z(x,y)"};
  EXPECT_EQ(rendered(exclusion_restrictions(outcome_confounded())), expected);
  EXPECT_EQ(rendered(exclusion_restrictions(treatment_confounded())), expected);
}

TEST(ExclusionRestrictions, SingleNodeIsEmpty) {
  EXPECT_TRUE(exclusion_restrictions(CausalGraph({"A"}, {}, {})).empty());
  EXPECT_TRUE(independence_restrictions(CausalGraph({"A"}, {}, {})).empty());
}

TEST(ExclusionRestrictions, CapLimitsSetSize) {
  const CausalGraph g({"A", "B", "C", "D"}, {}, {});
  const auto rs = exclusion_restrictions(g, 1);
  ASSERT_EQ(rs.size(), 4u);
  EXPECT_EQ(rs[0].render(), "A = A(b) = A(c) = A(d)");
  EXPECT_EQ(exclusion_restrictions(g, 3)[0].terms.size(), 7u);
}

std::vector<std::string> exclusion_oracle(const std::vector<std::string>& nodes,
                                          const std::map<std::string, std::set<std::string>>& pa,
                                          std::size_t cap) {
  std::vector<std::string> out;
  for (const auto& y : nodes) {
    const std::set<std::string> own = pa.count(y) ? pa.at(y) : std::set<std::string>{};
    std::vector<std::string> free;
    for (const auto& n : nodes) {
      if (n != y && !own.count(n)) free.push_back(n);
    }
    std::vector<std::vector<std::string>> sets;
    for (std::size_t mask = 1; mask < (std::size_t{1} << free.size()); ++mask) {
      std::vector<std::string> s;
      for (std::size_t i = 0; i < free.size(); ++i) {
        if (mask & (std::size_t{1} << i)) s.push_back(free[i]);
      }
      if (s.size() <= cap) sets.push_back(s);
    }
    if (sets.empty()) continue;
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    const std::vector<std::string> base(own.begin(), own.end());
    std::string line = term(y, base);
    for (const auto& s : sets) {
      auto args = base;
      args.insert(args.end(), s.begin(), s.end());
      line += " = " + term(y, args);
    }
    out.push_back(line);
  }
  return out;
}

TEST(ExclusionRestrictions, CompleteDagMatchesEnumeration) {
  const std::vector<std::string> nodes{"A", "B", "C"};
  const std::map<std::string, std::set<std::string>> pa{{"B", {"A"}}, {"C", {"A", "B"}}};
  const auto got = rendered(exclusion_restrictions(CausalGraph(nodes, pa, {})));
  EXPECT_EQ(got, exclusion_oracle(nodes, pa, 3));
  EXPECT_EQ(got, (std::vector<std::string>{"A = A(b) = A(c) = A(b,c)", "B(a) = B(a,c)"}));
}

struct RandomGraph {
  std::vector<std::string> nodes;
  std::map<std::string, std::set<std::string>> parents;
  std::set<CausalGraph::Arc> dashed;
};

RandomGraph random_graph(CounterRng& rng) {
  RandomGraph g;
  const std::size_t n = 2 + rng.below(5);
  for (std::size_t i = 0; i < n; ++i) g.nodes.push_back(std::string(1, static_cast<char>('A' + i)));
  // Edges only from earlier to later in a random order, so the graph is acyclic.
  auto order = g.nodes;
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.below(3) == 0) g.parents[order[j]].insert(order[i]);
      if (rng.below(4) == 0) g.dashed.insert({std::min(order[i], order[j]), std::max(order[i], order[j])});
    }
  }
  return g;
}

TEST(ExclusionRestrictions, RandomGraphsMatchEnumeration) {
  CounterRng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(rng);
    const std::size_t cap = 1 + rng.below(4);
    ASSERT_EQ(rendered(exclusion_restrictions(CausalGraph(g.nodes, g.parents, g.dashed), cap)),
              exclusion_oracle(g.nodes, g.parents, cap));
  }
}

TEST(IndependenceRestrictions, OutcomeConfoundedInstrumentGraph) {
  EXPECT_EQ(rendered(independence_restrictions(outcome_confounded())),
            std::vector<std::string>{"X(z) _||_ {Y(x), Z}"});
}

TEST(IndependenceRestrictions, TreatmentConfoundedGraphDropsXYPair) {
  const auto rs = independence_restrictions(treatment_confounded());
  EXPECT_EQ(rendered(rs), std::vector<std::string>{"Z _||_ {X(z), Y(x)}"});
}

TEST(IndependenceRestrictions, FullyDashedConnectedIsEmpty) {
  const CausalGraph g({"A", "B", "C"}, {{"B", {"A"}}}, {{"A", "B"}, {"A", "C"}, {"B", "C"}});
  EXPECT_TRUE(independence_restrictions(g).empty());
}

TEST(IndependenceRestrictions, SingletonPairsRenderedOnce) {
  const CausalGraph g({"A", "B"}, {{"B", {"A"}}}, {});
  EXPECT_EQ(rendered(independence_restrictions(g)), std::vector<std::string>{"A _||_ B(a)"});
}

// Unordered node pairs asserted independent, read back from the terms.
std::set<std::pair<std::string, std::string>> independent_pairs(const std::vector<Restriction>& rs) {
  std::set<std::pair<std::string, std::string>> out;
  auto node_of = [](const std::string& t) { return t.substr(0, t.find('(')); };
  for (const auto& r : rs) {
    const auto a = node_of(r.subject);
    for (const auto& t : r.terms) {
      const auto b = node_of(t);
      out.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return out;
}

TEST(IndependenceRestrictions, CoverEveryNonDashedPair) {
  CounterRng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(rng);
    const CausalGraph graph(g.nodes, g.parents, g.dashed);
    std::set<std::pair<std::string, std::string>> expected;
    for (const auto& a : g.nodes) {
      for (const auto& b : g.nodes) {
        if (a < b && !g.dashed.count({a, b})) expected.insert({a, b});
      }
    }
    ASSERT_EQ(independent_pairs(independence_restrictions(graph)), expected);
  }
}

TEST(Restrictions, AddingDashedArcNeverAddsIndependence) {
  CounterRng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(rng);
    const CausalGraph graph(g.nodes, g.parents, g.dashed);
    const auto a = g.nodes[rng.below(g.nodes.size())];
    const auto b = g.nodes[rng.below(g.nodes.size())];
    if (a == b) continue;
    const auto before = independent_pairs(independence_restrictions(graph));
    const auto after = independent_pairs(independence_restrictions(graph.with_dashed_arc(a, b)));
    ASSERT_TRUE(std::includes(before.begin(), before.end(), after.begin(), after.end()));
    ASSERT_FALSE(after.count({std::min(a, b), std::max(a, b)}));
  }
}

TEST(Restrictions, AddingEdgeNeverAddsExclusionsForTheChild) {
  CounterRng rng(4);
  auto terms_for = [](const std::vector<Restriction>& rs, const std::string& node) {
    for (const auto& r : rs) {
      if (r.subject.substr(0, r.subject.find('(')) == node) return r.terms.size();
    }
    return std::size_t{0};
  };
  int added = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(rng);
    const CausalGraph graph(g.nodes, g.parents, g.dashed);
    const auto from = g.nodes[rng.below(g.nodes.size())];
    const auto to = g.nodes[rng.below(g.nodes.size())];
    CausalGraph bigger;
    try {
      bigger = graph.with_edge(from, to);
    } catch (const Error&) {
      continue;  // self-loop or cycle
    }
    ++added;
    ASSERT_LE(terms_for(exclusion_restrictions(bigger), to), terms_for(exclusion_restrictions(graph), to));
  }
  EXPECT_GT(added, 100);
}

TEST(Restrictions, DeterministicRendering) {
  CounterRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_graph(rng);
    const CausalGraph a(g.nodes, g.parents, g.dashed);
    std::reverse(g.nodes.begin(), g.nodes.end());
    const CausalGraph b(g.nodes, g.parents, g.dashed);
    ASSERT_EQ(rendered(exclusion_restrictions(a)), rendered(exclusion_restrictions(b)));
    ASSERT_EQ(rendered(independence_restrictions(a)), rendered(independence_restrictions(b)));
  }
}

}  // namespace
}  // namespace ivcheck
