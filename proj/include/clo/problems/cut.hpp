#pragma once

// Weighted multiway cuts under the Flip neighborhood: move one vertex to a
// different block.  Party affiliation and additively separable hedonic
// games are expressed as cut instances with signed weights.

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clo/core.hpp"
#include "clo/covering.hpp"
#include "clo/detail.hpp"

namespace clo::problems {

/// Block index per vertex, in 0..num_blocks-1.
using BlockAssignment = std::vector<int>;

struct CutProblem {
  int num_vertices = 0;
  int num_blocks = 2;
  std::vector<std::pair<int, int>> edges;  // u < v
  std::vector<double> weights;             // in [-1, 1]
  BlockAssignment assignment;
};

inline void validate(const CutProblem& g) {
  if (g.num_vertices < 1) throw std::invalid_argument("cut: need a vertex");
  if (g.num_blocks < 2) throw std::invalid_argument("cut: need two blocks");
  if (g.weights.size() != g.edges.size())
    throw std::invalid_argument("cut: weight per edge required");
  for (double w : g.weights)
    if (!(w >= -1.0 && w <= 1.0))
      throw std::invalid_argument("cut: weight outside [-1, 1]");
  for (auto [u, v] : g.edges)
    if (u < 0 || v >= g.num_vertices || u >= v)
      throw std::invalid_argument("cut: edges must have 0 <= u < v < n");
  if (static_cast<int>(g.assignment.size()) != g.num_vertices)
    throw std::invalid_argument("cut: assignment has wrong length");
  for (int b : g.assignment)
    if (b < 0 || b >= g.num_blocks)
      throw std::invalid_argument("cut: block out of range");
}

inline double cut_weight(const CutProblem& g, const BlockAssignment& a) {
  double acc = 0.0;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (a[g.edges[e].first] != a[g.edges[e].second]) acc += g.weights[e];
  return acc;
}

inline int max_degree(const CutProblem& g) {
  std::vector<int> deg(g.num_vertices, 0);
  for (auto [u, v] : g.edges) ++deg[u], ++deg[v];
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

/// The n*(num_blocks-1) single-vertex moves, vertex-major then target block
/// ascending.
inline std::vector<BlockAssignment> flip_neighbors(const CutProblem& g,
                                                   const BlockAssignment& a) {
  std::vector<BlockAssignment> out;
  for (int v = 0; v < g.num_vertices; ++v)
    for (int b = 0; b < g.num_blocks; ++b) {
      if (b == a[v]) continue;
      BlockAssignment nb = a;
      nb[v] = b;
      out.push_back(std::move(nb));
    }
  return out;
}

/// Cut-edge indicator encoding: cost coordinate e flags edge e crossing
/// blocks, auxiliary bits carry the block labels, weight is maximized.
inline EncodedProblem<BlockAssignment> encode_clo(const CutProblem& problem) {
  validate(problem);
  auto g = std::make_shared<const CutProblem>(problem);
  const int m = static_cast<int>(g->edges.size());
  const int n = g->num_vertices;
  const int bits = detail::bits_for(g->num_blocks);

  EncodedProblem<BlockAssignment> enc;
  enc.sense = Sense::maximize;
  enc.instance.dims.nu = m;
  enc.instance.dims.nu_bar = n * bits;
  enc.instance.dims.m_cap = 1;
  enc.instance.costs.coeffs = g->weights;

  enc.encode_solution = [g, m, n, bits](const BlockAssignment& a) {
    Configuration s;
    s.cost_part.assign(m, 0);
    for (int e = 0; e < m; ++e)
      if (a[g->edges[e].first] != a[g->edges[e].second]) s.cost_part[e] = 1;
    s.noncost_part.assign(n * bits, 0);
    for (int v = 0; v < n; ++v)
      for (int b = 0; b < bits; ++b)
        s.noncost_part[v * bits + b] = (a[v] >> b) & 1;
    return s;
  };
  enc.decode_solution = [g, n, bits](const Configuration& s) {
    BlockAssignment a(n, 0);
    for (int v = 0; v < n; ++v) {
      for (int b = 0; b < bits; ++b)
        a[v] |= int(s.noncost_part[v * bits + b]) << b;
      if (a[v] >= g->num_blocks)
        throw std::invalid_argument("decode: block out of range");
    }
    return a;
  };

  enc.instance.neighborhood = [g, encode = enc.encode_solution,
                               decode = enc.decode_solution](
                                  const Configuration& s) {
    std::vector<Configuration> out;
    for (const auto& nb : flip_neighbors(*g, decode(s)))
      out.push_back(encode(nb));
    return out;
  };
  enc.instance.enumerator = [g, n, encode = enc.encode_solution] {
    std::vector<Configuration> out;
    BlockAssignment a(n, 0);
    while (true) {
      out.push_back(encode(a));
      int i = 0;
      while (i < n && a[i] == g->num_blocks - 1) a[i++] = 0;
      if (i == n) break;
      ++a[i];
    }
    return out;
  };
  enc.instance.start = enc.encode_solution(g->assignment);

  CoveringScheme scheme;
  for (int e = 0; e < m; ++e) scheme.coordinate_clusters.push_back({{e}});
  scheme.cluster_key = [n, bits](const Instance&, const Transition& tr) {
    for (int v = 0; v < n; ++v)
      for (int b = 0; b < bits; ++b)
        if (tr.first.noncost_part[v * bits + b] !=
            tr.second.noncost_part[v * bits + b])
          return "v" + std::to_string(v);
    return std::string("v?");
  };
  enc.covering = std::move(scheme);
  return enc;
}

/// Players pick one of two sides; friends pay off when together, enemies
/// when apart.
struct PartyAffiliationGame {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // u < v
  std::vector<double> weights;             // nonnegative, <= 1
  std::vector<std::uint8_t> friendly;      // per edge
  std::vector<int> sides;                  // 0 or 1 per player
};

inline void validate(const PartyAffiliationGame& g) {
  if (g.weights.size() != g.edges.size() ||
      g.friendly.size() != g.edges.size())
    throw std::invalid_argument("party: weight and kind per edge required");
  for (double w : g.weights)
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("party: weight outside [0, 1]");
  CutProblem as_cut{g.num_vertices, 2, g.edges, g.weights, g.sides};
  validate(as_cut);
}

inline double party_payoff(const PartyAffiliationGame& g,
                           const std::vector<int>& sides, int player) {
  double acc = 0.0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = g.edges[e];
    if (u != player && v != player) continue;
    const bool together = sides[u] == sides[v];
    if (together == (g.friendly[e] != 0)) acc += g.weights[e];
  }
  return acc;
}

/// Negating the friendly weights turns rewarded agreement into cut terms:
/// one side move changes a player's payoff exactly as much as the cut
/// weight.
inline CutProblem party_affiliation_to_maxcut(const PartyAffiliationGame& g) {
  validate(g);
  CutProblem cut{g.num_vertices, 2, g.edges, g.weights, g.sides};
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (g.friendly[e]) cut.weights[e] = -cut.weights[e];
  return cut;
}

/// Players join coalitions; utility is the summed signed weight to
/// coalition mates.
struct HedonicGame {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // u < v
  std::vector<double> weights;             // in [-1, 1]
  std::vector<int> coalitions;             // 0..n-1 per player
};

inline void validate(const HedonicGame& g) {
  CutProblem as_cut{g.num_vertices, std::max(g.num_vertices, 2), g.edges,
                    g.weights, g.coalitions};
  validate(as_cut);
}

inline double hedonic_payoff(const HedonicGame& g,
                             const std::vector<int>& coalitions, int player) {
  double acc = 0.0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = g.edges[e];
    if (u != player && v != player) continue;
    if (coalitions[u] == coalitions[v]) acc += g.weights[e];
  }
  return acc;
}

/// Negating all weights makes wanting to be together into wanting to cut;
/// with n blocks any coalition structure is a block assignment.
inline CutProblem hedonic_to_maxkcut(const HedonicGame& g) {
  validate(g);
  CutProblem cut{g.num_vertices, std::max(g.num_vertices, 2), g.edges,
                 g.weights, g.coalitions};
  for (auto& w : cut.weights) w = -w;
  return cut;
}

}  // namespace clo::problems
