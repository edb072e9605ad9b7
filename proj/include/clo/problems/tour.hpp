#pragma once

// Tours under the k-Opt neighborhood: remove r in {2..k} tour edges and
// reconnect the remaining segments into a new Hamiltonian cycle.  Directed
// graphs keep segment orientation, which is why two-edge exchanges never
// produce a valid directed tour.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clo/core.hpp"
#include "clo/covering.hpp"
#include "clo/detail.hpp"

namespace clo::problems {

/// Cyclic vertex sequence.
using Tour = std::vector<int>;

struct TourProblem {
  int num_vertices = 0;
  bool directed = false;
  std::vector<std::pair<int, int>> edges;  // undirected entries have u < v
  std::vector<double> weights;             // in [0, 1]
  Tour tour;                               // initial Hamiltonian cycle
  int k = 2;
};

namespace tour_detail {

using EdgeLookup = std::map<std::pair<int, int>, int>;

inline EdgeLookup edge_lookup(const TourProblem& t) {
  EdgeLookup out;
  for (std::size_t i = 0; i < t.edges.size(); ++i)
    out.emplace(t.edges[i], static_cast<int>(i));
  return out;
}

inline int find_edge(const TourProblem& t, const EdgeLookup& lookup, int u,
                     int v) {
  const auto key = (!t.directed && u > v) ? std::pair{v, u} : std::pair{u, v};
  const auto it = lookup.find(key);
  return it == lookup.end() ? -1 : it->second;
}

}  // namespace tour_detail

/// Rotates the minimum vertex to the front; undirected tours additionally
/// pick the traversal direction with the smaller second vertex.
inline Tour canonical_tour(const TourProblem& t, Tour c) {
  const auto it = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), it, c.end());
  if (!t.directed && c.size() > 2 && c[1] > c.back())
    std::reverse(c.begin() + 1, c.end());
  return c;
}

inline std::vector<int> tour_edge_indices(const TourProblem& t,
                                          const Tour& tour) {
  const auto lookup = tour_detail::edge_lookup(t);
  std::vector<int> out;
  for (std::size_t i = 0; i < tour.size(); ++i) {
    const int e = tour_detail::find_edge(t, lookup, tour[i],
                                         tour[(i + 1) % tour.size()]);
    if (e < 0) throw std::invalid_argument("tour: uses a missing edge");
    out.push_back(e);
  }
  return out;
}

inline void validate(const TourProblem& t) {
  if (t.num_vertices < 3)
    throw std::invalid_argument("tour: need at least three vertices");
  if (t.weights.size() != t.edges.size())
    throw std::invalid_argument("tour: weight per edge required");
  for (double w : t.weights)
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("tour: weight outside [0, 1]");
  for (auto [u, v] : t.edges) {
    if (u < 0 || v < 0 || u >= t.num_vertices || v >= t.num_vertices || u == v)
      throw std::invalid_argument("tour: bad edge endpoints");
    if (!t.directed && u >= v)
      throw std::invalid_argument("tour: undirected edges must have u < v");
  }
  if (tour_detail::edge_lookup(t).size() != t.edges.size())
    throw std::invalid_argument("tour: duplicate edge");
  if (t.k < 2 || t.k > t.num_vertices)
    throw std::invalid_argument("tour: k must be in 2..|V|");
  if (static_cast<int>(t.tour.size()) != t.num_vertices)
    throw std::invalid_argument("tour: initial tour has wrong length");
  std::vector<char> seen(t.num_vertices, 0);
  for (int v : t.tour) {
    if (v < 0 || v >= t.num_vertices || seen[v])
      throw std::invalid_argument("tour: initial tour is not a permutation");
    seen[v] = 1;
  }
  tour_edge_indices(t, t.tour);
}

inline double tour_cost(const TourProblem& t, const Tour& tour) {
  double acc = 0.0;
  for (int e : tour_edge_indices(t, tour)) acc += t.weights[e];
  return acc;
}

/// All distinct tours reachable by removing r in {2..k} tour edges and
/// reconnecting, in lexicographic order of their canonical form.
inline std::vector<Tour> kopt_neighbors(const TourProblem& t, const Tour& tour,
                                        int k) {
  const int n = t.num_vertices;
  if (k < 2 || k > n) throw std::invalid_argument("k-opt: k must be in 2..|V|");
  const auto lookup = tour_detail::edge_lookup(t);
  const Tour origin = canonical_tour(t, tour);
  std::set<Tour> out;

  for (int r = 2; r <= k; ++r) {
    detail::for_each_combination(n, r, [&](const std::vector<int>& slots) {
      // Slot i cuts the edge from tour[i] to tour[i+1]; the segment after
      // it runs up to the next cut.
      std::vector<Tour> segs(r);
      for (int j = 0; j < r; ++j) {
        const int begin = slots[j] + 1;
        const int end = slots[(j + 1) % r] + (j + 1 == r ? n : 0);
        for (int pos = begin; pos <= end; ++pos) segs[j].push_back(tour[pos % n]);
      }

      std::vector<int> order(r - 1);
      for (int j = 0; j < r - 1; ++j) order[j] = j + 1;
      const int masks = t.directed ? 1 : (1 << (r - 1));
      do {
        for (int mask = 0; mask < masks; ++mask) {
          Tour cand = segs[0];
          bool feasible = true;
          for (int j = 0; j < r - 1 && feasible; ++j) {
            Tour piece = segs[order[j]];
            if (mask >> j & 1) std::reverse(piece.begin(), piece.end());
            if (tour_detail::find_edge(t, lookup, cand.back(), piece.front()) <
                0)
              feasible = false;
            else
              cand.insert(cand.end(), piece.begin(), piece.end());
          }
          if (!feasible ||
              tour_detail::find_edge(t, lookup, cand.back(), cand.front()) < 0)
            continue;
          Tour canon = canonical_tour(t, std::move(cand));
          if (canon != origin) out.insert(std::move(canon));
        }
      } while (std::next_permutation(order.begin(), order.end()));
    });
  }
  return {out.begin(), out.end()};
}

/// All Hamiltonian cycles of the graph in canonical form, ascending.
inline std::vector<Tour> all_tours(const TourProblem& t) {
  const int n = t.num_vertices;
  const auto lookup = tour_detail::edge_lookup(t);
  std::vector<int> rest(n - 1);
  for (int i = 0; i < n - 1; ++i) rest[i] = i + 1;
  std::vector<Tour> out;
  do {
    if (!t.directed && rest.front() > rest.back()) continue;
    Tour cand(1, 0);
    cand.insert(cand.end(), rest.begin(), rest.end());
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      ok = tour_detail::find_edge(t, lookup, cand[i], cand[(i + 1) % n]) >= 0;
    if (ok) out.push_back(std::move(cand));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

/// Edge-indicator encoding: one binary cost coordinate per graph edge, so
/// the linear cost of a configuration is the tour weight, minimized.
inline EncodedProblem<Tour> encode_clo(const TourProblem& problem) {
  validate(problem);
  auto t = std::make_shared<const TourProblem>(problem);
  const int m = static_cast<int>(t->edges.size());

  EncodedProblem<Tour> enc;
  enc.sense = Sense::minimize;
  enc.instance.dims.nu = m;
  enc.instance.dims.nu_bar = 0;
  enc.instance.dims.m_cap = 1;
  enc.instance.costs.coeffs = t->weights;

  enc.encode_solution = [t, m](const Tour& tour) {
    Configuration s;
    s.cost_part.assign(m, 0);
    for (int e : tour_edge_indices(*t, tour)) s.cost_part[e] = 1;
    return s;
  };
  enc.decode_solution = [t](const Configuration& s) {
    const int n = t->num_vertices;
    if (std::count(s.cost_part.begin(), s.cost_part.end(), 1) != n)
      throw std::invalid_argument("decode: tour must select exactly n edges");
    std::vector<std::vector<int>> adj(n);
    for (std::size_t e = 0; e < t->edges.size(); ++e) {
      if (s.cost_part[e] == 0) continue;
      const auto [u, v] = t->edges[e];
      adj[u].push_back(v);
      if (!t->directed) adj[v].push_back(u);
    }
    Tour tour = {0};
    int prev = -1;
    for (int step = 1; step < n; ++step) {
      const int at = tour.back();
      int next = -1;
      for (int cand : adj[at])
        if (cand != prev && std::find(tour.begin(), tour.end(), cand) ==
                                tour.end()) {
          next = cand;
          break;
        }
      if (next < 0) throw std::invalid_argument("decode: not a tour");
      prev = at;
      tour.push_back(next);
    }
    if (std::find(adj[tour.back()].begin(), adj[tour.back()].end(), 0) ==
        adj[tour.back()].end())
      throw std::invalid_argument("decode: not a closed tour");
    return canonical_tour(*t, std::move(tour));
  };

  enc.instance.neighborhood = [t, encode = enc.encode_solution,
                               decode = enc.decode_solution](
                                  const Configuration& s) {
    std::vector<Configuration> out;
    for (const auto& nb : kopt_neighbors(*t, decode(s), t->k))
      out.push_back(encode(nb));
    return out;
  };
  enc.instance.enumerator = [t, encode = enc.encode_solution] {
    std::vector<Configuration> out;
    for (const auto& tour : all_tours(*t)) out.push_back(encode(tour));
    return out;
  };
  enc.instance.start = enc.encode_solution(t->tour);

  CoveringScheme scheme;
  for (int e = 0; e < m; ++e) scheme.coordinate_clusters.push_back({{e}});
  scheme.cluster_key = [k = t->k](const Instance&, const Transition& tr) {
    std::string removed, added;
    for (std::size_t e = 0; e < tr.first.cost_part.size(); ++e) {
      if (tr.first.cost_part[e] == 1 && tr.second.cost_part[e] == 0)
        removed += std::to_string(e) + ",";
      if (k == 2 && tr.first.cost_part[e] == 0 && tr.second.cost_part[e] == 1)
        added += std::to_string(e) + ",";
    }
    return "r" + removed + (k == 2 ? "|a" + added : "");
  };
  enc.covering = std::move(scheme);
  return enc;
}

}  // namespace clo::problems
