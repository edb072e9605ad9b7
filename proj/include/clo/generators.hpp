#pragma once

// Seeded random instance generators for every supported family.  Weights
// are dyadic rationals (multiples of 1/256) so expected objective values in
// tests are exact; structure parameters are kept at desk scale.  Every
// generator returns a validated instance.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "clo/games/congestion.hpp"
#include "clo/games/coordination.hpp"
#include "clo/games/network.hpp"
#include "clo/problems/cut.hpp"
#include "clo/problems/maxsat.hpp"
#include "clo/problems/mca.hpp"
#include "clo/problems/setsystem.hpp"
#include "clo/problems/tour.hpp"
#include "clo/rng.hpp"

namespace clo::gen {

inline double dyadic(SplitMix64& g) {
  return static_cast<double>(g.next_below(257)) / 256.0;
}

/// Dyadic weight in (0, 1]; avoids ties with zero-weight structures.
inline double dyadic_pos(SplitMix64& g) {
  return static_cast<double>(g.next_below(256) + 1) / 256.0;
}

/// Dyadic weight in [-1, 1].
inline double dyadic_signed(SplitMix64& g) {
  return static_cast<double>(g.next_below(513)) / 256.0 - 1.0;
}

inline std::vector<int> random_subset(SplitMix64& g, int universe) {
  std::vector<int> out;
  for (int r = 0; r < universe; ++r)
    if (g.next_below(2)) out.push_back(r);
  return out;
}

inline std::vector<int> random_permutation(SplitMix64& g, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(p[i], p[static_cast<int>(g.next_below(i + 1))]);
  return p;
}

/// Cost structures of one model for `resources` resources; `players` is the
/// table width of the general model and the breakpoint range of step costs.
inline games::ResourceCosts random_costs(SplitMix64& g, games::CostModel model,
                                         int resources, int players,
                                         int degree = 2) {
  games::ResourceCosts costs;
  costs.model = model;
  switch (model) {
    case games::CostModel::general:
      for (int r = 0; r < resources; ++r) {
        std::vector<double> row(players);
        for (auto& v : row) v = dyadic(g);
        costs.table.push_back(std::move(row));
      }
      break;
    case games::CostModel::polynomial:
      for (int r = 0; r < resources; ++r) {
        const int d = static_cast<int>(g.next_below(degree + 1));
        std::vector<double> row(d + 1);
        for (auto& v : row) v = dyadic(g);
        costs.coeffs.push_back(std::move(row));
      }
      break;
    case games::CostModel::step:
      for (int r = 0; r < resources; ++r) {
        std::vector<int> bp;
        for (int b = 1; b <= players; ++b)
          if (g.next_below(2)) bp.push_back(b);
        std::vector<double> jumps(bp.size());
        for (auto& v : jumps) v = dyadic(g);
        costs.breakpoints.push_back(std::move(bp));
        costs.jumps.push_back(std::move(jumps));
      }
      break;
  }
  return costs;
}

inline games::CongestionGame random_congestion(std::uint64_t seed, int players,
                                               int resources, int k,
                                               games::CostModel model,
                                               int degree = 2) {
  SplitMix64 g(seed);
  games::CongestionGame game;
  game.num_players = players;
  game.num_resources = resources;
  for (int i = 0; i < players; ++i) {
    std::vector<std::vector<int>> per_player;
    for (int a = 0; a < k; ++a) {
      auto s = random_subset(g, resources);
      if (s.empty() && resources > 0)
        s.push_back(static_cast<int>(g.next_below(resources)));
      per_player.push_back(std::move(s));
    }
    game.strategies.push_back(std::move(per_player));
  }
  game.costs = random_costs(g, model, resources, players, degree);
  games::validate(game);
  return game;
}

/// Node-ordered network: the chain 0 -> 1 -> ... -> nodes-1 plus random
/// forward arcs, so every ordered terminal pair is connected and the arc
/// graph is acyclic.
inline games::NetworkCongestionGame random_network(std::uint64_t seed,
                                                   int nodes, int extra_arcs,
                                                   int players,
                                                   games::CostModel model,
                                                   int degree = 2) {
  SplitMix64 g(seed);
  games::NetworkCongestionGame net;
  net.num_nodes = nodes;
  for (int v = 0; v + 1 < nodes; ++v) net.arcs.emplace_back(v, v + 1);
  for (int a = 0; a < extra_arcs; ++a) {
    const int u = static_cast<int>(g.next_below(nodes - 1));
    const int v =
        u + 1 + static_cast<int>(g.next_below(nodes - 1 - u));
    net.arcs.emplace_back(u, v);
  }
  for (int i = 0; i < players; ++i) {
    const int o = static_cast<int>(g.next_below(nodes - 1));
    const int d = o + 1 + static_cast<int>(g.next_below(nodes - 1 - o));
    net.terminals.emplace_back(o, d);
  }
  net.costs =
      random_costs(g, model, static_cast<int>(net.arcs.size()), players, degree);
  games::validate(net);
  return net;
}

inline games::CoordinationGame random_coordination(std::uint64_t seed,
                                                   int players, int actions) {
  SplitMix64 g(seed);
  games::CoordinationGame game;
  game.num_players = players;
  game.num_actions = actions;
  for (int u = 0; u < players; ++u)
    for (int v = u + 1; v < players; ++v)
      if (g.next_below(2)) game.edges.emplace_back(u, v);
  if (game.edges.empty() && players >= 2) game.edges.emplace_back(0, 1);
  for (std::size_t e = 0; e < game.edges.size(); ++e) {
    std::vector<double> m(static_cast<std::size_t>(actions) * actions);
    for (auto& v : m) v = dyadic_signed(g);
    game.payoffs.push_back(std::move(m));
  }
  games::validate(game);
  return game;
}

/// Complete (a)symmetric instance with a uniformly random starting tour.
inline problems::TourProblem random_tour(std::uint64_t seed, int n, int k,
                                         bool directed = false) {
  SplitMix64 g(seed);
  problems::TourProblem t;
  t.num_vertices = n;
  t.directed = directed;
  t.k = k;
  for (int u = 0; u < n; ++u)
    for (int v = directed ? 0 : u + 1; v < n; ++v) {
      if (u == v) continue;
      t.edges.emplace_back(u, v);
      t.weights.push_back(dyadic_pos(g));
    }
  t.tour = random_permutation(g, n);
  problems::validate(t);
  return t;
}

inline problems::CnfProblem random_maxsat(std::uint64_t seed, int variables,
                                          int clauses, int k) {
  SplitMix64 g(seed);
  problems::CnfProblem f;
  f.num_variables = variables;
  f.k = k;
  for (int c = 0; c < clauses; ++c) {
    auto vars = random_permutation(g, variables);
    const int size =
        1 + static_cast<int>(g.next_below(std::min(3, variables)));
    std::vector<int> clause;
    for (int i = 0; i < size; ++i)
      clause.push_back(g.next_below(2) ? vars[i] + 1 : -(vars[i] + 1));
    std::sort(clause.begin(), clause.end());
    f.clauses.push_back(std::move(clause));
    f.weights.push_back(dyadic_pos(g));
  }
  f.assignment.assign(variables, 0);
  for (auto& b : f.assignment) b = static_cast<std::uint8_t>(g.next_below(2));
  problems::validate(f);
  return f;
}

inline problems::CutProblem random_maxcut(std::uint64_t seed, int vertices,
                                          bool signed_weights = true,
                                          int blocks = 2) {
  SplitMix64 g(seed);
  problems::CutProblem cut;
  cut.num_vertices = vertices;
  cut.num_blocks = blocks;
  for (int u = 0; u < vertices; ++u)
    for (int v = u + 1; v < vertices; ++v)
      if (g.next_below(2)) {
        cut.edges.emplace_back(u, v);
        cut.weights.push_back(signed_weights ? dyadic_signed(g)
                                             : dyadic_pos(g));
      }
  cut.assignment.assign(vertices, 0);
  for (auto& b : cut.assignment) b = static_cast<int>(g.next_below(blocks));
  problems::validate(cut);
  return cut;
}

inline problems::MatchingProblem random_matching(std::uint64_t seed, int n,
                                                 int p, int q) {
  SplitMix64 g(seed);
  problems::MatchingProblem m;
  m.n = n;
  m.p = p;
  m.q = q;
  m.weights.resize(static_cast<std::size_t>(n) * n * n);
  for (auto& w : m.weights) w = dyadic(g);
  const auto girls = random_permutation(g, n);
  const auto homes = random_permutation(g, n);
  for (int b = 0; b < n; ++b) m.matching.push_back({b, girls[b], homes[b]});
  problems::validate(m);
  return m;
}

/// Universe of 3q elements; the q partition triples guarantee the starting
/// cover, plus `extra` random 3-sets.
inline problems::ExactCoverProblem random_exact_cover(std::uint64_t seed,
                                                      int q, int extra,
                                                      int k) {
  SplitMix64 g(seed);
  problems::ExactCoverProblem x;
  x.num_elements = 3 * q;
  x.k = k;
  for (int i = 0; i < q; ++i) {
    x.sets.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    x.cover.push_back(i);
  }
  for (int e = 0; e < extra; ++e) {
    const auto perm = random_permutation(g, x.num_elements);
    std::vector<int> s(perm.begin(), perm.begin() + 3);
    std::sort(s.begin(), s.end());
    x.sets.push_back(std::move(s));
  }
  x.weights.resize(x.sets.size());
  for (auto& w : x.weights) w = dyadic(g);
  problems::validate(x);
  return x;
}

inline problems::SetCoverProblem random_set_cover(std::uint64_t seed,
                                                  int elements, int sets,
                                                  int k) {
  SplitMix64 g(seed);
  problems::SetCoverProblem sc;
  sc.num_elements = elements;
  sc.k = k;
  for (int s = 0; s < sets; ++s) {
    auto sub = random_subset(g, elements);
    if (sub.empty())
      sub.push_back(static_cast<int>(g.next_below(elements)));
    sc.sets.push_back(std::move(sub));
  }
  std::vector<char> hit(elements, 0);
  for (const auto& s : sc.sets)
    for (int e : s) hit[e] = 1;
  for (int e = 0; e < elements; ++e)
    if (!hit[e]) {
      sc.sets[0].push_back(e);
      std::sort(sc.sets[0].begin(), sc.sets[0].end());
    }
  sc.weights.resize(sc.sets.size());
  for (auto& w : sc.weights) w = dyadic(g);
  sc.cover.resize(sc.sets.size());
  std::iota(sc.cover.begin(), sc.cover.end(), 0);
  problems::validate(sc);
  return sc;
}

inline problems::HittingSetProblem random_hitting_set(std::uint64_t seed,
                                                      int ground, int sets,
                                                      int max_size, int k) {
  SplitMix64 g(seed);
  problems::HittingSetProblem hs;
  hs.num_ground = ground;
  hs.max_size = max_size;
  hs.k = k;
  for (int s = 0; s < sets; ++s) {
    auto sub = random_subset(g, ground);
    if (sub.empty()) sub.push_back(static_cast<int>(g.next_below(ground)));
    hs.sets.push_back(std::move(sub));
  }
  hs.weights.resize(hs.sets.size());
  for (auto& w : hs.weights) w = dyadic(g);
  problems::validate(hs);
  return hs;
}

inline problems::McaProblem random_mca(std::uint64_t seed, int variables,
                                       int alphabet, int max_arity,
                                       int max_occurrence, int constraints) {
  SplitMix64 g(seed);
  problems::McaProblem m;
  m.num_variables = variables;
  m.alphabet = alphabet;
  m.max_arity = max_arity;
  m.max_occurrence = max_occurrence;
  std::vector<int> left(variables, max_occurrence);
  for (int c = 0; c < constraints; ++c) {
    std::vector<int> open;
    for (int v = 0; v < variables; ++v)
      if (left[v] > 0) open.push_back(v);
    if (open.empty()) break;
    const int arity = 1 + static_cast<int>(g.next_below(
                              std::min<std::uint64_t>(max_arity, open.size())));
    std::vector<int> scope;
    for (int i = 0; i < arity; ++i) {
      const auto at = g.next_below(open.size());
      scope.push_back(open[at]);
      --left[open[at]];
      open.erase(open.begin() + static_cast<std::ptrdiff_t>(at));
    }
    std::size_t cells = 1;
    for (int i = 0; i < arity; ++i) cells *= alphabet;
    std::vector<double> table(cells);
    for (auto& w : table) w = dyadic(g);
    m.scopes.push_back(std::move(scope));
    m.tables.push_back(std::move(table));
  }
  m.assignment.assign(variables, 0);
  for (auto& v : m.assignment) v = static_cast<int>(g.next_below(alphabet));
  problems::validate(m);
  return m;
}

}  // namespace clo::gen
