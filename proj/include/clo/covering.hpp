#pragma once

// Separability structure of a neighborhood: transitions are grouped into
// clusters, coordinates into clusters, and each transition cluster names the
// coordinate clusters that cover every coordinate it can change.  The
// certified parameters (lambda, beta, mu) feed the smoothed bound
//   3 * mu^beta * lambda * nu^2 * M * log2(M+1) * phi.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "clo/core.hpp"
#include "clo/oracle.hpp"

namespace clo {

struct CoordinateCluster {
  std::vector<int> indices;  // sorted, within 0..nu-1
};

struct TransitionCluster {
  std::string key;  // generator tag, unique within a covering
  std::vector<Transition> transitions;
  std::vector<int> witness;  // coordinate clusters covering the core
};

struct Covering {
  std::vector<TransitionCluster> transition_clusters;
  std::vector<CoordinateCluster> coordinate_clusters;
};

/// Lazy description shipped by problem encoders: explicit coordinate
/// clusters plus a keying rule that names, for any neighborhood edge, the
/// transition cluster it belongs to.
struct CoveringScheme {
  std::vector<CoordinateCluster> coordinate_clusters;
  std::function<std::string(const Instance&, const Transition&)> cluster_key;
};

/// Coordinates whose cost entry differs across some transition of the set.
inline std::vector<int> core(const std::vector<Transition>& transitions) {
  std::set<int> changed;
  for (const auto& [s, t] : transitions)
    for (std::size_t i = 0; i < s.cost_part.size(); ++i)
      if (s.cost_part[i] != t.cost_part[i]) changed.insert(static_cast<int>(i));
  return {changed.begin(), changed.end()};
}

/// Number of distinct difference vectors of the transitions, projected onto
/// the coordinates of `cluster`.
inline std::uint64_t diversity(const std::vector<Transition>& transitions,
                               const CoordinateCluster& cluster) {
  std::set<std::vector<std::int64_t>> seen;
  for (const auto& [s, t] : transitions) {
    std::vector<std::int64_t> diff;
    diff.reserve(cluster.indices.size());
    for (int i : cluster.indices) diff.push_back(s.cost_part[i] - t.cost_part[i]);
    seen.insert(std::move(diff));
  }
  return seen.size();
}

/// Submultiplicativity check: diversity on I never exceeds the product of
/// diversities over any family of clusters covering I.
inline bool diversity_product_holds(const std::vector<Transition>& transitions,
                                    const CoordinateCluster& whole,
                                    const std::vector<CoordinateCluster>& parts) {
  std::set<int> covered;
  for (const auto& p : parts) covered.insert(p.indices.begin(), p.indices.end());
  for (int i : whole.indices)
    if (!covered.count(i))
      throw std::invalid_argument("diversity product: parts do not cover I");
  double prod = 1.0;
  for (const auto& p : parts) {
    prod *= static_cast<double>(diversity(transitions, p));
    if (prod > 1e18) return true;  // product saturated, bound holds trivially
  }
  return static_cast<double>(diversity(transitions, whole)) <= prod;
}

struct SeparabilityParams {
  std::uint64_t lambda = 0;
  std::uint64_t beta = 0;
  std::uint64_t mu = 0;
};

struct CertifyResult {
  bool ok = false;
  SeparabilityParams params;
  std::string violation;  // names the offending cluster / transition / coordinate
};

namespace detail {

inline std::string describe(const Configuration& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.cost_part.size(); ++i)
    out += (i ? "," : "") + std::to_string(s.cost_part[i]);
  out += "|";
  for (std::size_t i = 0; i < s.noncost_part.size(); ++i)
    out += std::to_string(static_cast<int>(s.noncost_part[i]));
  return out + ")";
}

}  // namespace detail

/// Materializes a scheme into an explicit covering by enumerating all
/// neighborhood edges and grouping them by cluster key.  Witnesses default
/// to one covering coordinate cluster per core coordinate (first match).
inline Covering expand_covering(const Instance& inst,
                                const CoveringScheme& scheme,
                                const EnumerationBudget& budget = {}) {
  Covering cov;
  cov.coordinate_clusters = scheme.coordinate_clusters;
  const auto nodes = enumerate_configurations(inst, budget);
  std::map<std::string, std::vector<Transition>> buckets;
  for_each_edge(inst, nodes, budget,
                [&](const Configuration& s, const Configuration& t) {
                  buckets[scheme.cluster_key(inst, {s, t})].push_back({s, t});
                });
  for (auto& [key, transitions] : buckets) {
    TransitionCluster c;
    c.key = key;
    c.transitions = std::move(transitions);
    std::set<int> wit;
    for (int coord : core(c.transitions)) {
      for (std::size_t j = 0; j < cov.coordinate_clusters.size(); ++j) {
        const auto& idx = cov.coordinate_clusters[j].indices;
        if (std::binary_search(idx.begin(), idx.end(), coord)) {
          wit.insert(static_cast<int>(j));
          break;
        }
      }
    }
    c.witness.assign(wit.begin(), wit.end());
    cov.transition_clusters.push_back(std::move(c));
  }
  return cov;
}

/// Full check of the separability definition against the instance:
/// coordinate clusters cover all coordinates, transition clusters cover all
/// neighborhood edges, every witness covers its cluster's core.  Returns
/// the exact certified parameters on success.
inline CertifyResult certify(const Instance& inst, const Covering& cov,
                             const EnumerationBudget& budget = {}) {
  CertifyResult res;

  std::set<int> covered_coords;
  for (const auto& cc : cov.coordinate_clusters)
    for (int i : cc.indices) {
      if (i < 0 || i >= inst.dims.nu) {
        res.violation = "coordinate cluster mentions invalid coordinate " +
                        std::to_string(i);
        return res;
      }
      covered_coords.insert(i);
    }
  for (int i = 0; i < inst.dims.nu; ++i)
    if (!covered_coords.count(i)) {
      res.violation = "coordinate " + std::to_string(i) +
                      " not covered by any coordinate cluster";
      return res;
    }

  std::set<Transition> known;
  for (const auto& tc : cov.transition_clusters)
    for (const auto& tr : tc.transitions) known.insert(tr);

  const auto nodes = enumerate_configurations(inst, budget);
  std::string missing;
  for_each_edge(inst, nodes, budget,
                [&](const Configuration& s, const Configuration& t) {
                  if (missing.empty() && !known.count({s, t}))
                    missing = "transition " + detail::describe(s) + " -> " +
                              detail::describe(t) +
                              " not covered by any transition cluster";
                });
  if (!missing.empty()) {
    res.violation = missing;
    return res;
  }

  SeparabilityParams p;
  p.lambda = cov.transition_clusters.size();
  for (const auto& tc : cov.transition_clusters) {
    for (const auto& [s, t] : tc.transitions) {
      validate(inst.dims, s);
      validate(inst.dims, t);
      const auto nbrs = inst.neighborhood(s);
      if (std::find(nbrs.begin(), nbrs.end(), t) == nbrs.end()) {
        res.violation = "cluster " + tc.key + " lists non-transition " +
                        detail::describe(s) + " -> " + detail::describe(t);
        return res;
      }
    }
    std::set<int> wit_coords;
    for (int w : tc.witness) {
      if (w < 0 || w >= static_cast<int>(cov.coordinate_clusters.size())) {
        res.violation = "cluster " + tc.key + " names invalid witness " +
                        std::to_string(w);
        return res;
      }
      const auto& idx = cov.coordinate_clusters[w].indices;
      wit_coords.insert(idx.begin(), idx.end());
    }
    for (int coord : core(tc.transitions))
      if (!wit_coords.count(coord)) {
        res.violation = "cluster " + tc.key + ": core coordinate " +
                        std::to_string(coord) + " missed by witness";
        return res;
      }
    p.beta = std::max<std::uint64_t>(p.beta, tc.witness.size());
    for (const auto& cc : cov.coordinate_clusters)
      p.mu = std::max(p.mu, diversity(tc.transitions, cc));
  }

  res.ok = true;
  res.params = p;
  return res;
}

/// Single cluster of all edges plus one coordinate cluster of everything.
inline Covering trivial_covering(const Instance& inst,
                                 const EnumerationBudget& budget = {}) {
  CoveringScheme scheme;
  CoordinateCluster all;
  for (int i = 0; i < inst.dims.nu; ++i) all.indices.push_back(i);
  scheme.coordinate_clusters = {all};
  scheme.cluster_key = [](const Instance&, const Transition&) {
    return std::string("all");
  };
  return expand_covering(inst, scheme, budget);
}

/// Expected-steps bound from the separability parameters; saturates to
/// infinity instead of overflowing.
inline double expected_steps_bound(const SeparabilityParams& p, int nu,
                            std::int64_t m_cap, double phi) {
  const double mu_pow = std::pow(static_cast<double>(p.mu),
                                 static_cast<double>(p.beta));
  return 3.0 * mu_pow * static_cast<double>(p.lambda) *
         static_cast<double>(nu) * static_cast<double>(nu) *
         static_cast<double>(m_cap) *
         std::log2(static_cast<double>(m_cap) + 1.0) * phi;
}

/// Carrier for a problem encoded into the core model: the instance itself,
/// objective orientation, the prescribed covering, and the bijection with
/// the problem's native solutions.
template <class Sol>
struct EncodedProblem {
  Instance instance;
  Sense sense = Sense::minimize;
  CoveringScheme covering;
  std::function<Configuration(const Sol&)> encode_solution;
  std::function<Sol(const Configuration&)> decode_solution;
};

}  // namespace clo
