#pragma once

// Coordination games on a graph: the players are the vertices, every edge
// carries a payoff matrix shared by its two endpoints, and the sum of edge
// payoffs is an exact potential (half the sum of player payoffs).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "clo/covering.hpp"
#include "clo/core.hpp"

namespace clo::games {

struct CoordinationGame {
  int num_players = 0;  // vertices
  int num_actions = 0;  // shared action count k
  std::vector<std::pair<int, int>> edges;  // u < v
  // Per edge, row-major k*k matrix: entry (a_u, a_v), shared by u and v.
  std::vector<std::vector<double>> payoffs;
};

/// Action index per player.
using ActionProfile = std::vector<int>;

inline void validate(const CoordinationGame& g) {
  if (g.num_players <= 0 || g.num_actions < 1)
    throw std::invalid_argument("coordination: need players and actions");
  if (g.payoffs.size() != g.edges.size())
    throw std::invalid_argument("coordination: payoff matrix per edge required");
  const std::size_t kk = static_cast<std::size_t>(g.num_actions) * g.num_actions;
  for (const auto& m : g.payoffs) {
    if (m.size() != kk)
      throw std::invalid_argument("coordination: payoff matrix has wrong shape");
    for (double v : m)
      if (!(v >= -1.0 && v <= 1.0))
        throw std::invalid_argument("coordination: payoff outside [-1, 1]");
  }
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.num_players || v >= g.num_players)
      throw std::invalid_argument("coordination: edge endpoint out of range");
    if (u >= v)
      throw std::invalid_argument("coordination: edges must satisfy u < v");
  }
}

inline double edge_payoff(const CoordinationGame& g, int e,
                          const ActionProfile& p) {
  const auto [u, v] = g.edges[e];
  return g.payoffs[e][p[u] * g.num_actions + p[v]];
}

inline double player_payoff(const CoordinationGame& g, const ActionProfile& p,
                            int who) {
  double acc = 0.0;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (g.edges[e].first == who || g.edges[e].second == who)
      acc += edge_payoff(g, static_cast<int>(e), p);
  return acc;
}

/// Sum of edge payoffs; deviations of one player change it by exactly the
/// player's payoff change, and it equals half the sum of all payoffs.
inline double coordination_potential(const CoordinationGame& g,
                                     const ActionProfile& p) {
  double acc = 0.0;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    acc += edge_payoff(g, static_cast<int>(e), p);
  return acc;
}

inline std::vector<ActionProfile> action_deviations(const CoordinationGame& g,
                                                    const ActionProfile& p) {
  std::vector<ActionProfile> out;
  for (int i = 0; i < g.num_players; ++i)
    for (int a = 0; a < g.num_actions; ++a) {
      if (a == p[i]) continue;
      ActionProfile q = p;
      q[i] = a;
      out.push_back(std::move(q));
    }
  return out;
}

inline bool is_action_equilibrium(const CoordinationGame& g,
                                  const ActionProfile& p) {
  for (int i = 0; i < g.num_players; ++i) {
    const double current = player_payoff(g, p, i);
    for (int a = 0; a < g.num_actions; ++a) {
      if (a == p[i]) continue;
      ActionProfile q = p;
      q[i] = a;
      if (player_payoff(g, q, i) > current) return false;
    }
  }
  return true;
}

struct ActionStep {
  int player = 0;
  int from = 0;
  int to = 0;
  double payoff_delta = 0.0;
  double potential_delta = 0.0;
};

struct ActionDynamicsTrace {
  ActionProfile terminal;
  std::vector<ActionStep> steps;
  bool converged = false;
};

inline ActionDynamicsTrace coordination_dynamics(const CoordinationGame& g,
                                                 ActionProfile start,
                                                 std::uint64_t max_iters) {
  validate(g);
  ActionDynamicsTrace trace;
  trace.terminal = std::move(start);
  while (trace.steps.size() < max_iters) {
    int best_player = -1, best_to = -1;
    double best_gain = 0.0;
    for (int i = 0; i < g.num_players; ++i) {
      const double current = player_payoff(g, trace.terminal, i);
      for (int a = 0; a < g.num_actions; ++a) {
        if (a == trace.terminal[i]) continue;
        ActionProfile q = trace.terminal;
        q[i] = a;
        const double gain = player_payoff(g, q, i) - current;
        if (gain > best_gain) {
          best_player = i;
          best_to = a;
          best_gain = gain;
        }
      }
    }
    if (best_player < 0) {
      trace.converged = true;
      return trace;
    }
    ActionProfile next = trace.terminal;
    next[best_player] = best_to;
    ActionStep step;
    step.player = best_player;
    step.from = trace.terminal[best_player];
    step.to = best_to;
    step.payoff_delta = best_gain;
    step.potential_delta = coordination_potential(g, next) -
                           coordination_potential(g, trace.terminal);
    if (std::fabs(step.payoff_delta - step.potential_delta) > 1e-9)
      throw std::logic_error("coordination: exact-potential identity violated");
    trace.steps.push_back(step);
    trace.terminal = std::move(next);
  }
  return trace;
}

namespace coord_detail {

inline int bits_for(int count) {
  int b = 0;
  while ((1 << b) < count) ++b;
  return b;
}

}  // namespace coord_detail

/// Encoding with one indicator coordinate per (edge, action pair); the
/// linear cost of a configuration is exactly the potential, maximized.
inline EncodedProblem<ActionProfile> encode_clo(const CoordinationGame& game) {
  validate(game);
  auto g = std::make_shared<const CoordinationGame>(game);
  const int k = g->num_actions;
  const int bits = coord_detail::bits_for(k);
  const int kk = k * k;

  EncodedProblem<ActionProfile> enc;
  enc.sense = Sense::maximize;
  enc.instance.dims.nu = static_cast<int>(g->edges.size()) * kk;
  enc.instance.dims.nu_bar = bits * g->num_players;
  enc.instance.dims.m_cap = 1;
  for (const auto& m : g->payoffs)
    for (double v : m) enc.instance.costs.coeffs.push_back(v);

  enc.encode_solution = [g, k, kk, bits](const ActionProfile& p) {
    if (static_cast<int>(p.size()) != g->num_players)
      throw std::invalid_argument("encode: wrong profile size");
    Configuration s;
    s.cost_part.assign(g->edges.size() * kk, 0);
    for (std::size_t e = 0; e < g->edges.size(); ++e) {
      const auto [u, v] = g->edges[e];
      if (p[u] < 0 || p[u] >= k || p[v] < 0 || p[v] >= k)
        throw std::invalid_argument("encode: action out of range");
      s.cost_part[e * kk + p[u] * k + p[v]] = 1;
    }
    s.noncost_part.assign(bits * g->num_players, 0);
    for (int i = 0; i < g->num_players; ++i)
      for (int b = 0; b < bits; ++b)
        s.noncost_part[i * bits + b] =
            static_cast<std::uint8_t>((p[i] >> b) & 1);
    return s;
  };
  enc.decode_solution = [g, k, bits](const Configuration& s) {
    ActionProfile p(g->num_players, 0);
    for (int i = 0; i < g->num_players; ++i) {
      for (int b = 0; b < bits; ++b)
        p[i] |= static_cast<int>(s.noncost_part[i * bits + b]) << b;
      if (p[i] >= k) throw std::invalid_argument("decode: action out of range");
    }
    return p;
  };

  enc.instance.neighborhood = [g, encode = enc.encode_solution,
                               decode = enc.decode_solution](
                                  const Configuration& s) {
    const ActionProfile p = decode(s);
    std::vector<Configuration> out;
    for (const auto& q : action_deviations(*g, p)) out.push_back(encode(q));
    return out;
  };
  enc.instance.enumerator = [g, k, encode = enc.encode_solution] {
    std::vector<Configuration> out;
    ActionProfile p(g->num_players, 0);
    while (true) {
      out.push_back(encode(p));
      int i = 0;
      while (i < g->num_players && p[i] + 1 == k) p[i++] = 0;
      if (i == g->num_players) break;
      ++p[i];
    }
    return out;
  };
  enc.instance.start = enc.encode_solution(ActionProfile(g->num_players, 0));
  enc.instance.space_size =
      std::pow(static_cast<double>(k), static_cast<double>(g->num_players));

  CoveringScheme scheme;
  for (std::size_t e = 0; e < g->edges.size(); ++e) {
    CoordinateCluster cc;
    for (int j = 0; j < kk; ++j)
      cc.indices.push_back(static_cast<int>(e) * kk + j);
    scheme.coordinate_clusters.push_back(std::move(cc));
  }
  scheme.cluster_key = [decode = enc.decode_solution](const Instance&,
                                                      const Transition& tr) {
    const ActionProfile a = decode(tr.first), b = decode(tr.second);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i])
        return "v" + std::to_string(i) + ":" + std::to_string(a[i]) + ">" +
               std::to_string(b[i]);
    return std::string("noop");
  };
  enc.covering = std::move(scheme);
  return enc;
}

}  // namespace clo::games
