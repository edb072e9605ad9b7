#pragma once

// Standard local search over a cost-model instance: repeatedly move to a
// strictly improving neighbor under a pivot rule until a local optimum or
// the iteration cap is reached.  Traces are fully deterministic given the
// instance and the pivot rule's seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "clo/core.hpp"
#include "clo/covering.hpp"
#include "clo/oracle.hpp"
#include "clo/rng.hpp"

namespace clo {

enum class PivotKind { first_improvement, best_improvement, random_improvement };

struct PivotRule {
  PivotKind kind = PivotKind::best_improvement;
  std::uint64_t seed = 0;  // consumed by random_improvement only
};

enum class SearchStatus { converged, iteration_capped };

struct SearchStep {
  Configuration to;
  double delta = 0.0;
};

struct SearchTrace {
  Configuration terminal;
  std::vector<SearchStep> steps;
  SearchStatus status = SearchStatus::converged;

  std::uint64_t iterations() const { return steps.size(); }
};

/// Iteration cap: the certified expected-steps bound when a covering has
/// been certified, otherwise the configuration-space size, clamped to 1e7.
inline std::uint64_t default_max_iters(
    const Instance& inst, std::optional<SeparabilityParams> params = {},
    double phi = 1.0) {
  double cap;
  if (params) {
    cap = std::ceil(expected_steps_bound(*params, inst.dims.nu, inst.dims.m_cap, phi));
  } else {
    cap = configuration_space_size(inst.dims);
  }
  cap = std::min(cap, 1e7);
  return cap < 1.0 ? 1 : static_cast<std::uint64_t>(cap);
}

inline SearchTrace run_search(const Instance& inst, Sense sense,
                              const Configuration& start, PivotRule rule,
                              std::uint64_t max_iters) {
  validate(inst.dims, start);
  SplitMix64 gen(rule.seed);
  SearchTrace trace;
  trace.terminal = start;
  while (trace.steps.size() < max_iters) {
    auto moves = improving_neighbors(inst, sense, trace.terminal);
    if (moves.empty()) {
      trace.status = SearchStatus::converged;
      return trace;
    }
    std::size_t pick = 0;
    switch (rule.kind) {
      case PivotKind::first_improvement:
        break;
      case PivotKind::best_improvement:
        for (std::size_t i = 1; i < moves.size(); ++i) {
          if (moves[i].delta > moves[pick].delta ||
              (moves[i].delta == moves[pick].delta &&
               moves[i].to < moves[pick].to))
            pick = i;
        }
        break;
      case PivotKind::random_improvement:
        pick = static_cast<std::size_t>(gen.next_below(moves.size()));
        break;
    }
    trace.steps.push_back({moves[pick].to, moves[pick].delta});
    trace.terminal = std::move(moves[pick].to);
  }
  trace.status = SearchStatus::iteration_capped;
  return trace;
}

/// Runs the engine from every feasible configuration; keyed by start.
inline std::map<Configuration, SearchTrace> run_from_all_starts(
    const Instance& inst, Sense sense, PivotRule rule, std::uint64_t max_iters,
    const EnumerationBudget& budget = {}) {
  std::map<Configuration, SearchTrace> out;
  for (const auto& s : enumerate_configurations(inst, budget))
    out.emplace(s, run_search(inst, sense, s, rule, max_iters));
  return out;
}

}  // namespace clo
