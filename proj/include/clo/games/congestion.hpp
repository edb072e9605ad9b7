#pragma once

// Congestion games with three resource cost models (explicit tables,
// nonnegative polynomials, nonnegative step functions), their Rosenthal
// potential, better-response dynamics, and the encoding into the core
// cost-model instance whose linear cost is exactly the potential.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "clo/covering.hpp"
#include "clo/core.hpp"

namespace clo::games {

enum class CostModel { general, polynomial, step };

/// Per-resource cost data; which member is used depends on `model`.
struct ResourceCosts {
  CostModel model = CostModel::general;
  std::vector<std::vector<double>> table;      // general: kappa_r(1..n)
  std::vector<std::vector<double>> coeffs;     // polynomial: alpha_{r,0..d_r}
  std::vector<std::vector<int>> breakpoints;   // step: ascending, in 1..n
  std::vector<std::vector<double>> jumps;      // step: aligned with breakpoints
};

struct CongestionGame {
  int num_players = 0;
  int num_resources = 0;
  // strategies[i][a] is a sorted list of resource indices.
  std::vector<std::vector<std::vector<int>>> strategies;
  ResourceCosts costs;
};

/// Strategy index per player.
using Profile = std::vector<int>;

inline double resource_cost(const ResourceCosts& rc, int r, int load) {
  if (load <= 0) return 0.0;
  switch (rc.model) {
    case CostModel::general:
      return rc.table[r][load - 1];
    case CostModel::polynomial: {
      double acc = 0.0, p = 1.0;
      for (double a : rc.coeffs[r]) {
        acc += a * p;
        p *= load;
      }
      return acc;
    }
    case CostModel::step: {
      double acc = 0.0;
      const auto& bp = rc.breakpoints[r];
      for (std::size_t j = 0; j < bp.size() && bp[j] <= load; ++j)
        acc += rc.jumps[r][j];
      return acc;
    }
  }
  return 0.0;
}

inline double resource_cost(const CongestionGame& g, int r, int load) {
  return resource_cost(g.costs, r, load);
}

inline void validate_costs(const ResourceCosts& rc, int num_resources,
                           int num_players) {
  auto check_nonneg = [](const std::vector<std::vector<double>>& rows) {
    for (const auto& row : rows)
      for (double v : row)
        if (!(v >= 0.0) || !std::isfinite(v))
          throw std::invalid_argument("costs: negative or non-finite value");
  };
  switch (rc.model) {
    case CostModel::general:
      if (static_cast<int>(rc.table.size()) != num_resources)
        throw std::invalid_argument("costs: table row per resource required");
      for (const auto& row : rc.table)
        if (static_cast<int>(row.size()) != num_players)
          throw std::invalid_argument("costs: table row needs n entries");
      check_nonneg(rc.table);
      break;
    case CostModel::polynomial:
      if (static_cast<int>(rc.coeffs.size()) != num_resources)
        throw std::invalid_argument("costs: coefficient row per resource");
      check_nonneg(rc.coeffs);
      break;
    case CostModel::step:
      if (static_cast<int>(rc.breakpoints.size()) != num_resources ||
          static_cast<int>(rc.jumps.size()) != num_resources)
        throw std::invalid_argument("costs: step data row per resource");
      for (int r = 0; r < num_resources; ++r) {
        const auto& bp = rc.breakpoints[r];
        if (bp.size() != rc.jumps[r].size())
          throw std::invalid_argument("costs: breakpoints/jumps mismatch");
        for (std::size_t j = 0; j < bp.size(); ++j) {
          if (bp[j] < 1 || bp[j] > num_players)
            throw std::invalid_argument("costs: breakpoint outside 1..n");
          if (j > 0 && bp[j] <= bp[j - 1])
            throw std::invalid_argument("costs: breakpoints not ascending");
        }
      }
      check_nonneg(rc.jumps);
      break;
  }
}

inline void validate(const CongestionGame& g) {
  if (g.num_players <= 0 || g.num_resources < 0)
    throw std::invalid_argument("congestion: need players and resources >= 0");
  if (static_cast<int>(g.strategies.size()) != g.num_players)
    throw std::invalid_argument("congestion: strategy list per player required");
  for (const auto& per_player : g.strategies) {
    if (per_player.empty())
      throw std::invalid_argument("congestion: empty strategy set");
    for (const auto& strat : per_player) {
      if (!std::is_sorted(strat.begin(), strat.end()))
        throw std::invalid_argument("congestion: strategy not sorted");
      if (std::adjacent_find(strat.begin(), strat.end()) != strat.end())
        throw std::invalid_argument("congestion: duplicate resource in strategy");
      for (int r : strat)
        if (r < 0 || r >= g.num_resources)
          throw std::invalid_argument("congestion: resource index out of range");
    }
  }
  validate_costs(g.costs, g.num_resources, g.num_players);
}

inline void validate(const CongestionGame& g, const Profile& p) {
  if (static_cast<int>(p.size()) != g.num_players)
    throw std::invalid_argument("profile: wrong number of players");
  for (int i = 0; i < g.num_players; ++i)
    if (p[i] < 0 || p[i] >= static_cast<int>(g.strategies[i].size()))
      throw std::invalid_argument("profile: strategy index out of range");
}

inline std::vector<int> loads(const CongestionGame& g, const Profile& p) {
  std::vector<int> out(g.num_resources, 0);
  for (int i = 0; i < g.num_players; ++i)
    for (int r : g.strategies[i][p[i]]) ++out[r];
  return out;
}

inline double player_cost(const CongestionGame& g, const Profile& p, int i) {
  const auto l = loads(g, p);
  double acc = 0.0;
  for (int r : g.strategies[i][p[i]]) acc += resource_cost(g, r, l[r]);
  return acc;
}

/// Exact potential: unilateral deviations change it by exactly the
/// deviating player's cost change.
inline double rosenthal_potential(const CongestionGame& g, const Profile& p) {
  const auto l = loads(g, p);
  double acc = 0.0;
  for (int r = 0; r < g.num_resources; ++r)
    for (int load = 1; load <= l[r]; ++load) acc += resource_cost(g, r, load);
  return acc;
}

/// Sum of the first `load` j-th powers, the building block of the
/// polynomial-model encoding.  Guarded against 64-bit overflow.
inline std::int64_t accumulated_monomial(int j, int load) {
  constexpr std::int64_t kCap = std::int64_t{1} << 62;
  std::int64_t acc = 0;
  for (int k = 1; k <= load; ++k) {
    std::int64_t pw = 1;
    for (int t = 0; t < j; ++t) {
      pw *= k;
      if (pw >= kCap) throw ScaleError("accumulated monomial exceeds capacity");
    }
    acc += pw;
    if (acc >= kCap) throw ScaleError("accumulated monomial exceeds capacity");
  }
  return acc;
}

/// Largest symmetric difference between two strategies of one player.
inline int restrained_bound(const CongestionGame& g) {
  int best = 0;
  for (const auto& per_player : g.strategies)
    for (std::size_t a = 0; a < per_player.size(); ++a)
      for (std::size_t b = a + 1; b < per_player.size(); ++b) {
        std::vector<int> diff;
        std::set_symmetric_difference(per_player[a].begin(), per_player[a].end(),
                                      per_player[b].begin(), per_player[b].end(),
                                      std::back_inserter(diff));
        best = std::max(best, static_cast<int>(diff.size()));
      }
  return best;
}

inline int max_strategy_count(const CongestionGame& g) {
  std::size_t k = 0;
  for (const auto& per_player : g.strategies) k = std::max(k, per_player.size());
  return static_cast<int>(k);
}

/// Degree-like size parameter of the cost model: polynomial degree, number
/// of step breakpoints, or the trivial table bound n.
inline int model_degree(const CongestionGame& g) {
  int d = 0;
  switch (g.costs.model) {
    case CostModel::general:
      d = g.num_players;
      break;
    case CostModel::polynomial:
      for (const auto& row : g.costs.coeffs)
        d = std::max(d, static_cast<int>(row.size()) - 1);
      break;
    case CostModel::step:
      for (const auto& row : g.costs.breakpoints)
        d = std::max(d, static_cast<int>(row.size()));
      break;
  }
  return d;
}

// --- dynamics ---------------------------------------------------------

enum class ResponseRule { round_robin_first, best_response };

struct DeviationStep {
  int player = 0;
  int from = 0;
  int to = 0;
  double cost_delta = 0.0;       // deviating player's cost change
  double potential_delta = 0.0;  // equals cost_delta up to rounding
};

struct DynamicsTrace {
  Profile terminal;
  std::vector<DeviationStep> steps;
  bool converged = false;
};

/// Iterated strict better responses until equilibrium or the cap.  Each
/// applied step checks the exact-potential identity.
inline DynamicsTrace better_response_dynamics(const CongestionGame& g,
                                              Profile start, ResponseRule rule,
                                              std::uint64_t max_iters) {
  validate(g, start);
  DynamicsTrace trace;
  trace.terminal = std::move(start);
  while (trace.steps.size() < max_iters) {
    int best_player = -1, best_to = -1;
    double best_gain = 0.0;
    for (int i = 0; i < g.num_players && best_player < 0; ++i) {
      const double current = player_cost(g, trace.terminal, i);
      for (int a = 0; a < static_cast<int>(g.strategies[i].size()); ++a) {
        if (a == trace.terminal[i]) continue;
        Profile q = trace.terminal;
        q[i] = a;
        const double gain = current - player_cost(g, q, i);
        if (gain > best_gain) {
          best_player = i;
          best_to = a;
          best_gain = gain;
          if (rule == ResponseRule::round_robin_first) break;
        }
      }
      if (rule == ResponseRule::best_response) best_player = -1;
    }
    if (rule == ResponseRule::best_response) {
      best_gain = 0.0;
      for (int i = 0; i < g.num_players; ++i) {
        const double current = player_cost(g, trace.terminal, i);
        for (int a = 0; a < static_cast<int>(g.strategies[i].size()); ++a) {
          if (a == trace.terminal[i]) continue;
          Profile q = trace.terminal;
          q[i] = a;
          const double gain = current - player_cost(g, q, i);
          if (gain > best_gain) {
            best_player = i;
            best_to = a;
            best_gain = gain;
          }
        }
      }
    }
    if (best_player < 0) {
      trace.converged = true;
      return trace;
    }
    Profile next = trace.terminal;
    next[best_player] = best_to;
    DeviationStep step;
    step.player = best_player;
    step.from = trace.terminal[best_player];
    step.to = best_to;
    step.cost_delta = player_cost(g, next, best_player) -
                      player_cost(g, trace.terminal, best_player);
    step.potential_delta =
        rosenthal_potential(g, next) - rosenthal_potential(g, trace.terminal);
    if (std::fabs(step.cost_delta - step.potential_delta) > 1e-9)
      throw std::logic_error("dynamics: exact-potential identity violated");
    trace.steps.push_back(step);
    trace.terminal = std::move(next);
  }
  return trace;
}

inline bool is_equilibrium(const CongestionGame& g, const Profile& p) {
  for (int i = 0; i < g.num_players; ++i) {
    const double current = player_cost(g, p, i);
    for (int a = 0; a < static_cast<int>(g.strategies[i].size()); ++a) {
      if (a == p[i]) continue;
      Profile q = p;
      q[i] = a;
      if (player_cost(g, q, i) < current) return false;
    }
  }
  return true;
}

// --- encoding into the core model --------------------------------------

namespace detail {

inline int bits_for(std::size_t count) {
  int b = 0;
  while ((std::size_t{1} << b) < count) ++b;
  return b;
}

struct ProfileCodec {
  std::vector<int> bit_offsets;  // per player
  std::vector<int> bit_widths;
  int total_bits = 0;
};

inline ProfileCodec make_codec(const CongestionGame& g) {
  ProfileCodec c;
  for (const auto& per_player : g.strategies) {
    c.bit_offsets.push_back(c.total_bits);
    const int w = bits_for(per_player.size());
    c.bit_widths.push_back(w);
    c.total_bits += w;
  }
  return c;
}

inline void write_index(const ProfileCodec& c, int player, int index,
                        std::vector<std::uint8_t>& bits) {
  for (int b = 0; b < c.bit_widths[player]; ++b)
    bits[c.bit_offsets[player] + b] =
        static_cast<std::uint8_t>((index >> b) & 1);
}

inline int read_index(const ProfileCodec& c, int player,
                      const std::vector<std::uint8_t>& bits) {
  int v = 0;
  for (int b = 0; b < c.bit_widths[player]; ++b)
    v |= static_cast<int>(bits[c.bit_offsets[player] + b]) << b;
  return v;
}

}  // namespace detail

/// Cost part of the encoded configuration for given resource loads.
inline std::vector<std::int64_t> encoded_cost_part(const CongestionGame& g,
                                                   const std::vector<int>& l) {
  std::vector<std::int64_t> out;
  switch (g.costs.model) {
    case CostModel::general:
      for (int r = 0; r < g.num_resources; ++r)
        for (int j = 1; j <= g.num_players; ++j)
          out.push_back(j <= l[r] ? 1 : 0);
      break;
    case CostModel::polynomial:
      for (int r = 0; r < g.num_resources; ++r)
        for (std::size_t j = 0; j < g.costs.coeffs[r].size(); ++j)
          out.push_back(accumulated_monomial(static_cast<int>(j), l[r]));
      break;
    case CostModel::step:
      for (int r = 0; r < g.num_resources; ++r)
        for (int b : g.costs.breakpoints[r])
          out.push_back(std::max(0, l[r] - b + 1));
      break;
  }
  return out;
}

/// Encodes the game so that the linear cost of a configuration equals the
/// Rosenthal potential of its profile; minimizing local search is exactly
/// better-response play.
inline EncodedProblem<Profile> encode_clo(const CongestionGame& game) {
  validate(game);
  auto g = std::make_shared<const CongestionGame>(game);
  const auto codec = detail::make_codec(*g);

  EncodedProblem<Profile> enc;
  enc.sense = Sense::minimize;

  std::int64_t m_cap = 1;
  double scale = 1.0;
  switch (g->costs.model) {
    case CostModel::general:
      enc.instance.dims.nu = g->num_resources * g->num_players;
      m_cap = 1;
      for (const auto& row : g->costs.table)
        for (double v : row) enc.instance.costs.coeffs.push_back(v);
      break;
    case CostModel::polynomial: {
      int nu = 0;
      for (const auto& row : g->costs.coeffs) {
        nu += static_cast<int>(row.size());
        for (double v : row) enc.instance.costs.coeffs.push_back(v);
      }
      enc.instance.dims.nu = nu;
      const double cap =
          std::pow(static_cast<double>(g->num_players), model_degree(*g) + 1);
      if (cap >= std::pow(2.0, 62))
        throw ScaleError("polynomial encoding: n^(d+1) exceeds 2^62");
      m_cap = 1;
      for (int t = 0; t < model_degree(*g) + 1; ++t) m_cap *= g->num_players;
      m_cap = std::max<std::int64_t>(m_cap, 1);
      break;
    }
    case CostModel::step: {
      int nu = 0;
      for (int r = 0; r < g->num_resources; ++r) {
        nu += static_cast<int>(g->costs.breakpoints[r].size());
        for (double v : g->costs.jumps[r]) enc.instance.costs.coeffs.push_back(v);
      }
      enc.instance.dims.nu = nu;
      m_cap = std::max(g->num_players, 1);
      break;
    }
  }
  enc.instance.dims.m_cap = m_cap;
  enc.instance.dims.nu_bar = codec.total_bits;
  for (double v : enc.instance.costs.coeffs)
    scale = std::max(scale, std::fabs(v));
  enc.instance.cost_scale = scale;

  enc.encode_solution = [g, codec](const Profile& p) {
    validate(*g, p);
    Configuration s;
    s.cost_part = encoded_cost_part(*g, loads(*g, p));
    s.noncost_part.assign(codec.total_bits, 0);
    for (int i = 0; i < g->num_players; ++i)
      detail::write_index(codec, i, p[i], s.noncost_part);
    return s;
  };
  enc.decode_solution = [g, codec](const Configuration& s) {
    Profile p(g->num_players, 0);
    for (int i = 0; i < g->num_players; ++i) {
      p[i] = detail::read_index(codec, i, s.noncost_part);
      if (p[i] >= static_cast<int>(g->strategies[i].size()))
        throw std::invalid_argument("decode: strategy index out of range");
    }
    return p;
  };

  auto encode = enc.encode_solution;
  enc.instance.neighborhood = [g, encode,
                               decode = enc.decode_solution](
                                  const Configuration& s) {
    const Profile p = decode(s);
    std::vector<Configuration> out;
    for (int i = 0; i < g->num_players; ++i)
      for (int a = 0; a < static_cast<int>(g->strategies[i].size()); ++a) {
        if (a == p[i]) continue;
        Profile q = p;
        q[i] = a;
        out.push_back(encode(q));
      }
    return out;
  };
  enc.instance.enumerator = [g, encode] {
    std::vector<Configuration> out;
    Profile p(g->num_players, 0);
    while (true) {
      out.push_back(encode(p));
      int i = 0;
      while (i < g->num_players &&
             p[i] + 1 == static_cast<int>(g->strategies[i].size()))
        p[i++] = 0;
      if (i == g->num_players) break;
      ++p[i];
    }
    return out;
  };
  enc.instance.start = enc.encode_solution(Profile(g->num_players, 0));
  enc.instance.space_size = 1.0;
  for (const auto& options : g->strategies)
    enc.instance.space_size *= static_cast<double>(options.size());

  // Prescribed covering: one coordinate cluster per resource, one
  // transition cluster per (player, from, to) deviation.
  CoveringScheme scheme;
  int offset = 0;
  for (int r = 0; r < g->num_resources; ++r) {
    int width = 0;
    switch (g->costs.model) {
      case CostModel::general: width = g->num_players; break;
      case CostModel::polynomial:
        width = static_cast<int>(g->costs.coeffs[r].size());
        break;
      case CostModel::step:
        width = static_cast<int>(g->costs.breakpoints[r].size());
        break;
    }
    CoordinateCluster cc;
    for (int j = 0; j < width; ++j) cc.indices.push_back(offset + j);
    offset += width;
    scheme.coordinate_clusters.push_back(std::move(cc));
  }
  scheme.cluster_key = [decode = enc.decode_solution](const Instance&,
                                                      const Transition& tr) {
    const Profile a = decode(tr.first), b = decode(tr.second);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i])
        return "p" + std::to_string(i) + ":" + std::to_string(a[i]) + ">" +
               std::to_string(b[i]);
    return std::string("noop");
  };
  enc.covering = std::move(scheme);
  return enc;
}

/// The three closed-form expected-steps bounds for B-restrained games,
/// evaluated with this game's size parameters (n, m, k, B, d).
struct RestrainedBounds {
  double general = 0.0;
  double polynomial = 0.0;
  double step = 0.0;
};

inline RestrainedBounds restrained_step_bounds(const CongestionGame& g,
                                               double phi) {
  const double n = g.num_players;
  const double m = std::max(g.num_resources, 1);
  const double k = max_strategy_count(g);
  const double B = restrained_bound(g);
  const int d = std::max(model_degree(g), 1);
  const double lambda = n * k * (k - 1.0);

  RestrainedBounds out;
  out.general =
      3.0 * std::pow(n, B) * lambda * (m * n) * (m * n) * 1.0 * 1.0 * phi;
  double nu_poly = 0.0;
  if (g.costs.model == CostModel::polynomial)
    for (const auto& row : g.costs.coeffs) nu_poly += row.size();
  else
    nu_poly = m * (d + 1.0);
  const double cap = std::pow(n, d + 1.0);
  out.polynomial = 3.0 * std::pow(n, B) * lambda * nu_poly * nu_poly * cap *
                   std::log2(cap + 1.0) * phi;
  double nu_step = 0.0;
  if (g.costs.model == CostModel::step)
    for (const auto& row : g.costs.breakpoints) nu_step += row.size();
  else
    nu_step = m * d;
  out.step = 3.0 * std::pow(d + 1.0, B) * lambda * nu_step * nu_step * n *
             std::log2(n + 1.0) * phi;
  return out;
}

}  // namespace clo::games
