#pragma once

// Congestion games on a directed network: each player routes from an origin
// to a destination, the arcs are the resources.  Best responses are shortest
// paths under marginal arc costs; desk-scale helpers materialize the full
// path strategy sets so the explicit-game machinery applies unchanged.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "clo/core.hpp"
#include "clo/games/congestion.hpp"

namespace clo::games {

struct NetworkCongestionGame {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> arcs;       // directed (from, to)
  std::vector<std::pair<int, int>> terminals;  // per player (origin, destination)
  ResourceCosts costs;                         // per arc
};

/// One arc-index sequence per player.
using PathProfile = std::vector<std::vector<int>>;

inline void validate(const NetworkCongestionGame& g) {
  if (g.num_nodes <= 0 || g.terminals.empty())
    throw std::invalid_argument("network: need nodes and players");
  for (auto [u, v] : g.arcs)
    if (u < 0 || u >= g.num_nodes || v < 0 || v >= g.num_nodes)
      throw std::invalid_argument("network: arc endpoint out of range");
  for (auto [o, d] : g.terminals)
    if (o < 0 || o >= g.num_nodes || d < 0 || d >= g.num_nodes)
      throw std::invalid_argument("network: terminal out of range");
  validate_costs(g.costs, static_cast<int>(g.arcs.size()),
                 static_cast<int>(g.terminals.size()));
}

inline bool is_simple_path(const NetworkCongestionGame& g,
                           const std::vector<int>& path, int origin, int dest) {
  int at = origin;
  std::vector<char> seen(g.num_nodes, 0);
  seen[at] = 1;
  for (int a : path) {
    if (a < 0 || a >= static_cast<int>(g.arcs.size())) return false;
    if (g.arcs[a].first != at) return false;
    at = g.arcs[a].second;
    if (seen[at]) return false;
    seen[at] = 1;
  }
  return at == dest;
}

inline std::vector<int> arc_loads(const NetworkCongestionGame& g,
                                  const PathProfile& p) {
  std::vector<int> out(g.arcs.size(), 0);
  for (const auto& path : p)
    for (int a : path) ++out[a];
  return out;
}

inline double path_player_cost(const NetworkCongestionGame& g,
                               const PathProfile& p, int i) {
  const auto l = arc_loads(g, p);
  double acc = 0.0;
  for (int a : p[i]) acc += resource_cost(g.costs, a, l[a]);
  return acc;
}

inline double network_potential(const NetworkCongestionGame& g,
                                const PathProfile& p) {
  const auto l = arc_loads(g, p);
  double acc = 0.0;
  for (std::size_t a = 0; a < g.arcs.size(); ++a)
    for (int load = 1; load <= l[a]; ++load)
      acc += resource_cost(g.costs, static_cast<int>(a), load);
  return acc;
}

/// Shortest origin-destination path for player i under the marginal costs
/// kappa_a(load_without_i + 1).  Dijkstra; ties are broken toward smaller
/// node and arc indices, so the answer is deterministic.
inline std::vector<int> network_best_response(const NetworkCongestionGame& g,
                                              const PathProfile& p, int i) {
  std::vector<int> load = arc_loads(g, p);
  for (int a : p[i]) --load[a];

  std::vector<double> weight(g.arcs.size());
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    weight[a] = resource_cost(g.costs, static_cast<int>(a), load[a] + 1);
    if (weight[a] < 0.0)
      throw std::invalid_argument("best response: negative arc cost");
  }

  std::vector<std::vector<int>> out_arcs(g.num_nodes);
  for (std::size_t a = 0; a < g.arcs.size(); ++a)
    out_arcs[g.arcs[a].first].push_back(static_cast<int>(a));

  const auto [origin, dest] = g.terminals[i];
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.num_nodes, inf);
  std::vector<int> parent_arc(g.num_nodes, -1);
  std::vector<char> done(g.num_nodes, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[origin] = 0.0;
  pq.push({0.0, origin});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (int a : out_arcs[u]) {
      const int v = g.arcs[a].second;
      if (done[v]) continue;
      if (d + weight[a] < dist[v]) {
        dist[v] = d + weight[a];
        parent_arc[v] = a;
        pq.push({dist[v], v});
      }
    }
  }
  if (dist[dest] == inf)
    throw std::invalid_argument("best response: destination unreachable");
  std::vector<int> path;
  for (int at = dest; at != origin; at = g.arcs[parent_arc[at]].first)
    path.push_back(parent_arc[at]);
  std::reverse(path.begin(), path.end());
  return path;
}

struct PathStep {
  int player = 0;
  std::vector<int> to;
  double cost_delta = 0.0;
  double potential_delta = 0.0;
};

struct PathDynamicsTrace {
  PathProfile terminal;
  std::vector<PathStep> steps;
  bool converged = false;
};

/// Round-robin shortest-path improvements until no player can strictly
/// lower their cost; the potential decreases in lockstep.
inline PathDynamicsTrace shortest_path_dynamics(const NetworkCongestionGame& g,
                                                PathProfile start,
                                                std::uint64_t max_iters) {
  validate(g);
  for (std::size_t i = 0; i < start.size(); ++i)
    if (!is_simple_path(g, start[i], g.terminals[i].first,
                        g.terminals[i].second))
      throw std::invalid_argument("dynamics: start profile is not simple paths");
  PathDynamicsTrace trace;
  trace.terminal = std::move(start);
  const int n = static_cast<int>(g.terminals.size());
  int stable = 0;
  int who = 0;
  while (trace.steps.size() < max_iters && stable < n) {
    const double before = path_player_cost(g, trace.terminal, who);
    auto candidate = network_best_response(g, trace.terminal, who);
    PathProfile next = trace.terminal;
    next[who] = candidate;
    const double after = path_player_cost(g, next, who);
    if (after < before) {
      PathStep step;
      step.player = who;
      step.to = candidate;
      step.cost_delta = after - before;
      step.potential_delta =
          network_potential(g, next) - network_potential(g, trace.terminal);
      if (std::fabs(step.cost_delta - step.potential_delta) > 1e-9)
        throw std::logic_error("dynamics: exact-potential identity violated");
      trace.steps.push_back(std::move(step));
      trace.terminal = std::move(next);
      stable = 0;
    } else {
      ++stable;
    }
    who = (who + 1) % n;
  }
  trace.converged = stable >= n;
  return trace;
}

/// All simple origin-destination paths of one player, in DFS order over
/// ascending arc indices.  Desk scale only.
inline std::vector<std::vector<int>> enumerate_paths(
    const NetworkCongestionGame& g, int player,
    std::uint64_t max_paths = 100000) {
  std::vector<std::vector<int>> out_arcs(g.num_nodes);
  for (std::size_t a = 0; a < g.arcs.size(); ++a)
    out_arcs[g.arcs[a].first].push_back(static_cast<int>(a));

  const auto [origin, dest] = g.terminals[player];
  std::vector<std::vector<int>> result;
  std::vector<int> path;
  std::vector<char> seen(g.num_nodes, 0);
  seen[origin] = 1;
  auto dfs = [&](auto&& self, int at) -> void {
    if (at == dest) {
      result.push_back(path);
      if (result.size() > max_paths)
        throw ScaleError("path enumeration: too many simple paths");
      return;
    }
    for (int a : out_arcs[at]) {
      const int v = g.arcs[a].second;
      if (seen[v]) continue;
      seen[v] = 1;
      path.push_back(a);
      self(self, v);
      path.pop_back();
      seen[v] = 0;
    }
  };
  dfs(dfs, origin);
  return result;
}

struct ExplicitNetworkGame {
  CongestionGame game;  // strategies are the enumerated paths as arc sets
  std::vector<std::vector<std::vector<int>>> paths;  // arc sequences
};

/// Materializes the path strategy sets into an explicit congestion game so
/// that encoding, covering, and bound machinery apply verbatim.
inline ExplicitNetworkGame explicit_game(const NetworkCongestionGame& g,
                                         std::uint64_t max_paths = 100000) {
  validate(g);
  ExplicitNetworkGame out;
  out.game.num_players = static_cast<int>(g.terminals.size());
  out.game.num_resources = static_cast<int>(g.arcs.size());
  out.game.costs = g.costs;
  for (int i = 0; i < out.game.num_players; ++i) {
    auto paths = enumerate_paths(g, i, max_paths);
    if (paths.empty())
      throw std::invalid_argument("explicit game: a player has no path");
    std::vector<std::vector<int>> strategies;
    for (const auto& p : paths) {
      std::vector<int> sorted = p;
      std::sort(sorted.begin(), sorted.end());
      strategies.push_back(std::move(sorted));
    }
    out.paths.push_back(std::move(paths));
    out.game.strategies.push_back(std::move(strategies));
  }
  return out;
}

inline bool is_network_equilibrium(const NetworkCongestionGame& g,
                                   const PathProfile& p) {
  for (std::size_t i = 0; i < g.terminals.size(); ++i) {
    const double current = path_player_cost(g, p, static_cast<int>(i));
    PathProfile q = p;
    q[i] = network_best_response(g, p, static_cast<int>(i));
    if (path_player_cost(g, q, static_cast<int>(i)) < current) return false;
  }
  return true;
}

struct Compactness {
  std::uint64_t strategy_bound = 0;  // largest relevant strategy set
  std::uint64_t length_bound = 0;    // longest path among relevant strategies
};

/// Exact compactness parameters by full enumeration: for each player, the
/// union of best-response sets over every opponent path profile.
inline Compactness compactness_desk(const NetworkCongestionGame& g,
                                    std::uint64_t max_product = 1000000) {
  validate(g);
  const int n = static_cast<int>(g.terminals.size());
  std::vector<std::vector<std::vector<int>>> paths;
  double product_all = 1.0;
  for (int i = 0; i < n; ++i) {
    paths.push_back(enumerate_paths(g, i));
    product_all *= static_cast<double>(paths.back().size());
  }
  Compactness out;
  for (int i = 0; i < n; ++i) {
    const double others = product_all / static_cast<double>(paths[i].size());
    if (others > static_cast<double>(max_product))
      throw ScaleError("compactness: opponent profile space too large");
    std::vector<char> relevant(paths[i].size(), 0);

    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<int> load(g.arcs.size(), 0);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        for (int a : paths[j][idx[j]]) ++load[a];
      }
      double best = std::numeric_limits<double>::infinity();
      std::vector<double> value(paths[i].size());
      for (std::size_t s = 0; s < paths[i].size(); ++s) {
        double acc = 0.0;
        for (int a : paths[i][s]) acc += resource_cost(g.costs, a, load[a] + 1);
        value[s] = acc;
        best = std::min(best, acc);
      }
      for (std::size_t s = 0; s < paths[i].size(); ++s)
        if (value[s] == best) relevant[s] = 1;

      int j = n - 1;
      while (j >= 0 &&
             (j == i || idx[j] + 1 == paths[j].size())) {
        if (j != i) idx[j] = 0;
        --j;
      }
      if (j < 0) break;
      ++idx[j];
    }

    std::uint64_t count = 0;
    for (std::size_t s = 0; s < paths[i].size(); ++s)
      if (relevant[s]) {
        ++count;
        out.length_bound =
            std::max(out.length_bound, static_cast<std::uint64_t>(paths[i][s].size()));
      }
    out.strategy_bound = std::max(out.strategy_bound, count);
  }
  return out;
}

}  // namespace clo::games
