#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clo/games/congestion.hpp"
#include "clo/games/network.hpp"
#include "clo/problems/cut.hpp"
#include "clo/problems/maxsat.hpp"
#include "clo/problems/setsystem.hpp"

namespace clo::reductions {

namespace detail {

inline void require_two_sided(const problems::CutProblem& g, const char* who) {
  problems::validate(g);
  if (g.num_blocks != 2)
    throw std::invalid_argument(std::string(who) +
                                ": source must be a two-block cut instance");
}

inline void require_nonnegative(const problems::CutProblem& g,
                                const char* who) {
  for (double w : g.weights)
    if (w < 0.0)
      throw std::invalid_argument(std::string(who) +
                                  ": weights must be nonnegative");
}

}  // namespace detail

// --- cut sides as resource choices ----------------------------------------

enum class CongestionVariant { step, affine };

/// One resource pair per edge; strategy 0 routes a vertex over the plain
/// copies of its incident edges, strategy 1 over the barred copies.
struct CongestionReduction {
  problems::CutProblem source;
  games::CongestionGame produced;
  CongestionVariant variant = CongestionVariant::step;
};

inline CongestionReduction maxcut_to_congestion(const problems::CutProblem& g,
                                                CongestionVariant variant) {
  detail::require_two_sided(g, "congestion reduction");
  detail::require_nonnegative(g, "congestion reduction");
  const int n = g.num_vertices;
  const int m = static_cast<int>(g.edges.size());

  games::CongestionGame game;
  game.num_players = n;
  game.num_resources = 2 * m;
  game.strategies.assign(n, {});
  for (int i = 0; i < n; ++i) {
    std::vector<int> plain, barred;
    for (int e = 0; e < m; ++e)
      if (g.edges[e].first == i || g.edges[e].second == i) {
        plain.push_back(e);
        barred.push_back(m + e);
      }
    game.strategies[i] = {plain, barred};
  }
  if (variant == CongestionVariant::step) {
    game.costs.model = games::CostModel::step;
    game.costs.breakpoints.assign(2 * m, {2});
    game.costs.jumps.assign(2 * m, {});
    for (int e = 0; e < m; ++e) {
      game.costs.jumps[e] = {g.weights[e]};
      game.costs.jumps[m + e] = {g.weights[e]};
    }
  } else {
    game.costs.model = games::CostModel::polynomial;
    game.costs.coeffs.assign(2 * m, {});
    for (int e = 0; e < m; ++e) {
      game.costs.coeffs[e] = {0.0, g.weights[e]};
      game.costs.coeffs[m + e] = {0.0, g.weights[e]};
    }
  }
  games::validate(game);
  return {g, std::move(game), variant};
}

inline games::Profile to_profile(const CongestionReduction& red,
                                 const problems::BlockAssignment& sides) {
  if (static_cast<int>(sides.size()) != red.source.num_vertices)
    throw std::invalid_argument("congestion reduction: wrong assignment size");
  games::Profile p(sides.size());
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (sides[i] < 0 || sides[i] > 1)
      throw std::invalid_argument("congestion reduction: side out of range");
    p[i] = sides[i];
  }
  return p;
}

inline problems::BlockAssignment to_cut(const CongestionReduction& red,
                                        const games::Profile& p) {
  if (static_cast<int>(p.size()) != red.source.num_vertices)
    throw std::invalid_argument("congestion reduction: wrong profile size");
  problems::BlockAssignment sides(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] > 1)
      throw std::invalid_argument("congestion reduction: strategy out of range");
    sides[i] = p[i];
  }
  return sides;
}

// --- cut sides as route choices -------------------------------------------

/// Vertices become commuters between a private origin/destination pair; each
/// edge becomes a pair of two-node gadgets (one per side) whose internal arc
/// charges the edge weight once both endpoints route through it.  Gadgets
/// are chained with free arcs along a vertex's higher-numbered neighbors and
/// with constant-cost arcs down a vertex's lower-numbered neighbors, so a
/// route that leaves its own chain pays for the detour.
struct NetworkReduction {
  problems::CutProblem source;
  games::NetworkCongestionGame produced;
  // per player, the prescribed route through each side's gadget chain
  std::vector<std::vector<int>> primary_route;
  std::vector<std::vector<int>> mirror_route;
  double heavy_unit = 0.0;
};

inline NetworkReduction maxcut_to_network_congestion(
    const problems::CutProblem& g) {
  detail::require_two_sided(g, "network reduction");
  detail::require_nonnegative(g, "network reduction");
  const int n = g.num_vertices;
  const int m = static_cast<int>(g.edges.size());

  // rows[i]: incident edges (i, j) ascending by j; cols[j]: incident edges
  // (i, j) ascending by i.  Every vertex needs a route, hence a neighbor.
  std::vector<std::vector<int>> rows(n), cols(n);
  for (int e = 0; e < m; ++e) {
    rows[g.edges[e].first].push_back(e);
    cols[g.edges[e].second].push_back(e);
  }
  for (int i = 0; i < n; ++i) {
    std::sort(rows[i].begin(), rows[i].end(), [&](int a, int b) {
      return g.edges[a].second < g.edges[b].second;
    });
    std::sort(cols[i].begin(), cols[i].end(), [&](int a, int b) {
      return g.edges[a].first < g.edges[b].first;
    });
    if (rows[i].empty() && cols[i].empty())
      throw std::invalid_argument(
          "network reduction: vertex without an incident edge has no route");
  }

  double heavy_unit = 1.0;
  for (double w : g.weights) heavy_unit += w;

  games::NetworkCongestionGame net;
  net.num_nodes = 2 * n + 4 * m;
  net.costs.model = games::CostModel::general;

  const auto origin = [&](int i) { return i; };
  const auto dest = [&](int i) { return n + i; };
  const auto enter = [&](int e, int h) { return 2 * n + 4 * e + 2 * h; };
  const auto leave = [&](int e, int h) { return 2 * n + 4 * e + 2 * h + 1; };

  std::map<std::pair<int, int>, int> arc_at;
  const auto add_arc = [&](int from, int to, std::vector<double> row) {
    const int a = static_cast<int>(net.arcs.size());
    net.arcs.emplace_back(from, to);
    net.costs.table.push_back(std::move(row));
    arc_at.emplace(std::make_pair(from, to), a);
    return a;
  };
  const std::vector<double> free_row(n, 0.0);
  // constant detour charge; counts row progress plus the starting column,
  // in 1-origin vertex numbering
  const auto charge_row = [&](int from_row, int from_col, int to_row) {
    const double c = (to_row - from_row + from_col) * heavy_unit;
    return std::vector<double>(n, c);
  };

  for (int h = 0; h < 2; ++h) {
    for (int e = 0; e < m; ++e) {
      std::vector<double> row(n, g.weights[e]);
      row[0] = 0.0;
      add_arc(enter(e, h), leave(e, h), std::move(row));
    }
    for (int i = 0; i < n; ++i) {
      for (std::size_t t = 0; t + 1 < rows[i].size(); ++t)
        add_arc(leave(rows[i][t], h), enter(rows[i][t + 1], h), free_row);
      for (std::size_t t = 0; t + 1 < cols[i].size(); ++t) {
        const int e1 = cols[i][t], e2 = cols[i][t + 1];
        add_arc(leave(e1, h), enter(e2, h),
                charge_row(g.edges[e1].first, i, g.edges[e2].first));
      }
      if (!cols[i].empty() && !rows[i].empty())
        add_arc(leave(cols[i].back(), h), enter(rows[i].front(), h),
                charge_row(g.edges[cols[i].back()].first, i, i));
    }
    for (int i = 0; i < n; ++i) {
      const int first = cols[i].empty() ? rows[i].front() : cols[i].front();
      const int last = rows[i].empty() ? cols[i].back() : rows[i].back();
      add_arc(origin(i), enter(first, h), free_row);
      add_arc(leave(last, h), dest(i), free_row);
    }
  }
  for (int i = 0; i < n; ++i) net.terminals.emplace_back(origin(i), dest(i));
  games::validate(net);

  NetworkReduction red;
  red.source = g;
  red.produced = std::move(net);
  red.heavy_unit = heavy_unit;
  for (int h = 0; h < 2; ++h) {
    auto& routes = h == 0 ? red.primary_route : red.mirror_route;
    for (int i = 0; i < n; ++i) {
      std::vector<int> chain = cols[i];
      chain.insert(chain.end(), rows[i].begin(), rows[i].end());
      std::vector<int> path;
      path.push_back(arc_at.at({origin(i), enter(chain.front(), h)}));
      for (std::size_t t = 0; t < chain.size(); ++t) {
        path.push_back(arc_at.at({enter(chain[t], h), leave(chain[t], h)}));
        if (t + 1 < chain.size())
          path.push_back(arc_at.at({leave(chain[t], h), enter(chain[t + 1], h)}));
      }
      path.push_back(arc_at.at({leave(chain.back(), h), dest(i)}));
      routes.push_back(std::move(path));
    }
  }
  return red;
}

inline games::PathProfile to_paths(const NetworkReduction& red,
                                   const problems::BlockAssignment& sides) {
  if (sides.size() != red.primary_route.size())
    throw std::invalid_argument("network reduction: wrong assignment size");
  games::PathProfile p(sides.size());
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (sides[i] < 0 || sides[i] > 1)
      throw std::invalid_argument("network reduction: side out of range");
    p[i] = sides[i] == 0 ? red.primary_route[i] : red.mirror_route[i];
  }
  return p;
}

inline problems::BlockAssignment to_cut(const NetworkReduction& red,
                                        const games::PathProfile& p) {
  if (p.size() != red.primary_route.size())
    throw std::invalid_argument("network reduction: wrong profile size");
  problems::BlockAssignment sides(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == red.primary_route[i])
      sides[i] = 0;
    else if (p[i] == red.mirror_route[i])
      sides[i] = 1;
    else
      throw std::invalid_argument(
          "network reduction: path is not one of the prescribed routes");
  }
  return sides;
}

// --- two blocks as many blocks --------------------------------------------

/// Adds per vertex a clique of guard vertices, one per block, whose edges
/// outweigh everything else; blocks are renumbered back by comparing an
/// original vertex against its first two guards.  Weights are divided by the
/// guard weight so the produced instance stays within the family range.
struct MultiwayCutReduction {
  problems::CutProblem source;
  problems::CutProblem produced;
  double scale = 1.0;
};

inline MultiwayCutReduction maxcut_to_maxkcut(const problems::CutProblem& g,
                                              int pieces) {
  detail::require_two_sided(g, "multiway reduction");
  if (pieces < 2)
    throw std::invalid_argument("multiway reduction: need at least two blocks");
  const int n = g.num_vertices;

  double scale = 1.0;
  for (double w : g.weights) scale += std::fabs(w);
  const auto guard = [&](int i, int j) { return n + i * pieces + j; };

  problems::CutProblem out;
  out.num_vertices = n + n * pieces;
  out.num_blocks = pieces;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    out.edges.push_back(g.edges[e]);
    out.weights.push_back(g.weights[e] / scale);
  }
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < pieces; ++a)
      for (int b = a + 1; b < pieces; ++b) {
        out.edges.emplace_back(guard(i, a), guard(i, b));
        out.weights.push_back(1.0);
      }
    for (int j = 2; j < pieces; ++j) {
      out.edges.emplace_back(i, guard(i, j));
      out.weights.push_back(1.0);
    }
  }
  out.assignment.assign(out.num_vertices, 0);
  for (int i = 0; i < n; ++i) {
    out.assignment[i] = g.assignment[i];
    for (int j = 0; j < pieces; ++j) out.assignment[guard(i, j)] = j;
  }
  problems::validate(out);
  return {g, std::move(out), scale};
}

inline problems::BlockAssignment to_blocks(
    const MultiwayCutReduction& red, const problems::BlockAssignment& sides) {
  const int n = red.source.num_vertices;
  const int pieces = red.produced.num_blocks;
  if (static_cast<int>(sides.size()) != n)
    throw std::invalid_argument("multiway reduction: wrong assignment size");
  problems::BlockAssignment out(red.produced.num_vertices, 0);
  for (int i = 0; i < n; ++i) {
    if (sides[i] < 0 || sides[i] > 1)
      throw std::invalid_argument("multiway reduction: side out of range");
    out[i] = sides[i];
    for (int j = 0; j < pieces; ++j) out[n + i * pieces + j] = j;
  }
  return out;
}

/// Exact for two blocks (plain restriction).  For more blocks the side of a
/// vertex is read relative to its own first guard, which recovers the source
/// optimum whenever the guard cliques are aligned.
inline problems::BlockAssignment to_cut(const MultiwayCutReduction& red,
                                        const problems::BlockAssignment& blocks) {
  const int n = red.source.num_vertices;
  const int pieces = red.produced.num_blocks;
  if (static_cast<int>(blocks.size()) != red.produced.num_vertices)
    throw std::invalid_argument("multiway reduction: wrong assignment size");
  problems::BlockAssignment sides(n, 0);
  for (int i = 0; i < n; ++i) {
    if (pieces == 2)
      sides[i] = blocks[i];
    else
      sides[i] = blocks[i] == blocks[n + i * pieces] ? 0 : 1;
  }
  return sides;
}

// --- truth assignments as capped selections -------------------------------

/// Ground set holds a positive and a negative element per variable; a pair
/// set of dominating weight per variable forces one polarity each, and every
/// clause becomes the set of its literal elements.  Weights are divided by
/// the pair weight so the produced instance stays within the family range.
struct HittingSetReduction {
  problems::CnfProblem source;
  problems::HittingSetProblem produced;
  double scale = 1.0;
};

inline problems::GroundSelection to_selection(
    const HittingSetReduction& red, const problems::TruthAssignment& a);

inline HittingSetReduction maxsat_to_hittingset(const problems::CnfProblem& f) {
  problems::validate(f);
  if (f.k != 1)
    throw std::invalid_argument("hitting reduction: single-flip source required");
  if (f.num_variables < 1)
    throw std::invalid_argument("hitting reduction: need at least one variable");
  const int nv = f.num_variables;

  double scale = 1.0;
  for (double w : f.weights) scale += w;

  problems::HittingSetProblem hs;
  hs.num_ground = 2 * nv;
  hs.max_size = nv;
  hs.k = 1;
  for (int i = 0; i < nv; ++i) {
    hs.sets.push_back({2 * i, 2 * i + 1});
    hs.weights.push_back(1.0);
  }
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    std::set<int> elems;
    for (int lit : f.clauses[j])
      elems.insert(2 * (std::abs(lit) - 1) + (lit < 0 ? 1 : 0));
    hs.sets.emplace_back(elems.begin(), elems.end());
    hs.weights.push_back(f.weights[j] / scale);
  }
  for (int i = 0; i < nv; ++i)
    hs.selection.push_back(2 * i + (f.assignment[i] ? 0 : 1));
  problems::validate(hs);

  HittingSetReduction red;
  red.source = f;
  red.produced = std::move(hs);
  red.scale = scale;
  return red;
}

inline problems::GroundSelection to_selection(
    const HittingSetReduction& red, const problems::TruthAssignment& a) {
  if (static_cast<int>(a.size()) != red.source.num_variables)
    throw std::invalid_argument("hitting reduction: wrong assignment size");
  problems::GroundSelection sel;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 1)
      throw std::invalid_argument("hitting reduction: assignment bits must be 0/1");
    sel.push_back(static_cast<int>(2 * i) + (a[i] ? 0 : 1));
  }
  return sel;
}

inline problems::TruthAssignment to_assignment(
    const HittingSetReduction& red, const problems::GroundSelection& sel) {
  const int nv = red.source.num_variables;
  problems::TruthAssignment a(nv, 0);
  for (int e : sel)
    if (e < 0 || e >= 2 * nv)
      throw std::invalid_argument("hitting reduction: element out of range");
  for (int i = 0; i < nv; ++i) {
    const bool pos = std::binary_search(sel.begin(), sel.end(), 2 * i);
    const bool neg = std::binary_search(sel.begin(), sel.end(), 2 * i + 1);
    if (pos == neg)
      throw std::invalid_argument(
          "hitting reduction: selection must pick one polarity per variable");
    a[i] = pos ? 1 : 0;
  }
  return a;
}

}  // namespace clo::reductions
