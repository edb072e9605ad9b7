#pragma once

// Brute-force ground truth for desk-scale instances: enumerate the feasible
// set, materialize the graph of strictly improving transitions, and answer
// exact questions (longest improving path, sink set) that the search engine
// and the certification code are tested against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "clo/core.hpp"

namespace clo {

struct EnumerationBudget {
  std::uint64_t max_nodes = 1'000'000;
  std::uint64_t max_edge_checks = 100'000'000;
};

/// Number of syntactically possible configurations, (M+1)^nu * 2^nu_bar,
/// saturating to infinity instead of overflowing.
inline double configuration_space_size(const Dims& d) {
  return std::pow(static_cast<double>(d.m_cap) + 1.0,
                  static_cast<double>(d.nu)) *
         std::pow(2.0, static_cast<double>(d.nu_bar));
}

/// Sorted, deduplicated feasible set.  Requires the instance to carry a
/// finite generator and to fit in the node budget.
inline std::vector<Configuration> enumerate_configurations(
    const Instance& inst, const EnumerationBudget& budget = {}) {
  if (!inst.enumerator)
    throw ScaleError("enumerate: instance has no finite generator");
  if (inst.space_size > static_cast<double>(budget.max_nodes))
    throw ScaleError("enumerate: solution space of about " +
                     std::to_string(inst.space_size) +
                     " configurations exceeds the node budget (" +
                     std::to_string(budget.max_nodes) + ")");
  std::vector<Configuration> nodes = inst.enumerator();
  if (nodes.size() > budget.max_nodes)
    throw ScaleError("enumerate: node budget exceeded (" +
                     std::to_string(nodes.size()) + " configurations)");
  for (const auto& s : nodes) validate(inst.dims, s);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

inline int index_of(const std::vector<Configuration>& sorted_nodes,
                    const Configuration& s) {
  auto it = std::lower_bound(sorted_nodes.begin(), sorted_nodes.end(), s);
  if (it == sorted_nodes.end() || *it != s) return -1;
  return static_cast<int>(it - sorted_nodes.begin());
}

/// Visits every neighborhood edge (s, t) of the enumerated set once,
/// checking that neighbors stay inside the feasible set.
template <class Visitor>
inline void for_each_edge(const Instance& inst,
                          const std::vector<Configuration>& nodes,
                          const EnumerationBudget& budget, Visitor&& visit) {
  std::uint64_t checks = 0;
  for (const auto& s : nodes) {
    const auto nbrs = inst.neighborhood(s);
    checks += nbrs.size();
    if (checks > budget.max_edge_checks)
      throw ScaleError("edges: edge-check budget exceeded");
    for (const auto& t : nbrs) {
      if (index_of(nodes, t) < 0)
        throw std::invalid_argument(
            "edges: neighbor outside the enumerated feasible set");
      visit(s, t);
    }
  }
}

/// Directed graph of strictly improving moves over the enumerated set.
/// Strict improvement makes it acyclic by construction.
struct TransitionGraph {
  std::vector<Configuration> nodes;  // sorted ascending
  std::vector<std::vector<std::pair<int, double>>> edges;  // (target, gain)
  Sense sense = Sense::minimize;

  int index(const Configuration& s) const { return index_of(nodes, s); }
  bool is_sink(int i) const { return edges[i].empty(); }
};

inline TransitionGraph build_transition_graph(
    const Instance& inst, Sense sense, const EnumerationBudget& budget = {}) {
  TransitionGraph g;
  g.sense = sense;
  g.nodes = enumerate_configurations(inst, budget);
  g.edges.assign(g.nodes.size(), {});
  for_each_edge(inst, g.nodes, budget,
                [&](const Configuration& s, const Configuration& t) {
                  const double d = improvement(inst, sense, s, t);
                  if (d > 0.0)
                    g.edges[index_of(g.nodes, s)].emplace_back(
                        index_of(g.nodes, t), d);
                });
  return g;
}

/// Exact longest path length (in edges) via DP over the cost order; nodes
/// of equal cost are never connected, so any cost-sorted order works.
inline std::uint64_t longest_improving_path(const Instance& inst,
                                            const TransitionGraph& g) {
  std::vector<int> order(g.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::vector<double> c(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    c[i] = cost(inst, g.nodes[i]);
  // Process improvement targets first.
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return g.sense == Sense::minimize ? c[a] < c[b] : c[a] > c[b];
  });
  std::vector<std::uint64_t> dp(g.nodes.size(), 0);
  std::uint64_t best = 0;
  for (int v : order) {
    for (const auto& [u, gain] : g.edges[v])
      dp[v] = std::max(dp[v], dp[u] + 1);
    best = std::max(best, dp[v]);
  }
  return best;
}

struct SinkReport {
  bool ok = true;
  std::string mismatch;  // first counterexample if any
};

/// Cross-checks graph sinks against the direct local-optimality predicate.
inline SinkReport verify_sinks(const Instance& inst, const TransitionGraph& g) {
  SinkReport r;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const bool sink = g.is_sink(static_cast<int>(i));
    const bool opt = is_local_optimum(inst, g.sense, g.nodes[i]);
    if (sink != opt) {
      r.ok = false;
      r.mismatch = "node " + std::to_string(i) +
                   (sink ? " is a sink but not a local optimum"
                         : " is a local optimum but not a sink");
      return r;
    }
  }
  return r;
}

}  // namespace clo
