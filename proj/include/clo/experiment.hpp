#pragma once

// Monte Carlo driver: draws a smoothed coefficient vector per replica, then
// either runs the search engine or asks the exact oracle for the longest
// improving path.  Replicas run on a small work pool; every row depends only
// on (spec, replica index), so outputs are deterministic regardless of the
// scheduling order.  Wall-clock columns are informational, not reproducible.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "clo/core.hpp"
#include "clo/covering.hpp"
#include "clo/engine.hpp"
#include "clo/oracle.hpp"
#include "clo/smoothing.hpp"

namespace clo {

enum class MeasureMode { engine_iterations, oracle_longest_path };

struct ExperimentSpec {
  Instance instance;
  Sense sense = Sense::minimize;
  SmoothedCostModel smoothing;  // its seed is the experiment master seed
  PivotRule pivot;              // engine mode; per-replica seeds are derived
  MeasureMode mode = MeasureMode::engine_iterations;
  int replicas = 1;
  std::uint64_t max_iters = 0;  // 0 picks the default cap
  std::optional<Covering> covering;  // attaches the certified bound
  int threads = 0;                   // 0 picks hardware concurrency
};

struct ReplicaOutcome {
  int replica = 0;
  std::uint64_t seed = 0;  // substream key of this replica's cost draw
  std::uint64_t iterations = 0;
  double terminal_cost = 0.0;
  double wall_ms = 0.0;
};

struct ExperimentResult {
  std::vector<ReplicaOutcome> rows;  // in replica order
  double mean = 0.0;
  double stderr_ = 0.0;
  std::optional<SeparabilityParams> params;
  std::optional<double> bound;  // expected-steps bound, when certified
  bool pass = true;             // mean <= bound whenever a bound is present
};

namespace detail {

// Disjoint from the cost-draw substream indices, which are replica numbers.
inline std::uint64_t pivot_stream(std::uint64_t seed, int replica) {
  return substream(seed, 0x8000000000000000ull + static_cast<std::uint64_t>(replica));
}

}  // namespace detail

inline ReplicaOutcome run_replica(const ExperimentSpec& spec, int replica) {
  const auto t0 = std::chrono::steady_clock::now();
  ReplicaOutcome out;
  out.replica = replica;
  out.seed = substream(spec.smoothing.seed, static_cast<std::uint64_t>(replica));

  Instance inst = spec.instance;
  inst.costs = sample_costs(spec.smoothing, static_cast<std::uint64_t>(replica));

  if (spec.mode == MeasureMode::engine_iterations) {
    PivotRule rule = spec.pivot;
    rule.seed = detail::pivot_stream(spec.smoothing.seed, replica);
    const std::uint64_t cap =
        spec.max_iters ? spec.max_iters : default_max_iters(inst);
    const SearchTrace trace =
        run_search(inst, spec.sense, inst.start, rule, cap);
    out.iterations = trace.iterations();
    out.terminal_cost = cost(inst, trace.terminal);
  } else {
    const TransitionGraph graph = build_transition_graph(inst, spec.sense);
    out.iterations = longest_improving_path(inst, graph);
    bool seen = false;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
      if (!graph.is_sink(static_cast<int>(i))) continue;
      const double c = cost(inst, graph.nodes[i]);
      if (!seen ||
          (spec.sense == Sense::minimize ? c < out.terminal_cost
                                         : c > out.terminal_cost)) {
        out.terminal_cost = c;
        seen = true;
      }
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  out.wall_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return out;
}

inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  validate(spec.instance);
  validate(spec.smoothing);
  if (spec.replicas < 1)
    throw std::invalid_argument("experiment: need at least one replica");
  if (static_cast<int>(spec.smoothing.densities.size()) != spec.instance.dims.nu)
    throw std::invalid_argument(
        "experiment: need one density per cost coordinate");
  if (spec.mode == MeasureMode::oracle_longest_path && !spec.instance.enumerator)
    throw std::invalid_argument(
        "experiment: oracle mode needs an enumerable instance");

  ExperimentResult res;
  if (spec.covering) {
    const CertifyResult cert = certify(spec.instance, *spec.covering);
    if (!cert.ok)
      throw std::invalid_argument("experiment: covering rejected: " +
                                  cert.violation);
    res.params = cert.params;
    res.bound = expected_steps_bound(cert.params, spec.instance.dims.nu,
                                     spec.instance.dims.m_cap,
                                     spec.smoothing.max_phi());
  }

  res.rows.resize(spec.replicas);
  int workers = spec.threads > 0
                    ? spec.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, spec.replicas);

  std::atomic<int> next{0};
  std::mutex fail_mutex;
  std::exception_ptr failure;
  const auto worker = [&] {
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= spec.replicas) return;
      try {
        res.rows[r] = run_replica(spec, r);
      } catch (...) {
        std::lock_guard lock(fail_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  double sum = 0.0;
  for (const auto& row : res.rows) sum += static_cast<double>(row.iterations);
  res.mean = sum / spec.replicas;
  double sq = 0.0;
  for (const auto& row : res.rows) {
    const double d = static_cast<double>(row.iterations) - res.mean;
    sq += d * d;
  }
  res.stderr_ = spec.replicas > 1
                    ? std::sqrt(sq / (spec.replicas - 1.0) / spec.replicas)
                    : 0.0;
  res.pass = !res.bound || res.mean <= *res.bound;
  return res;
}

}  // namespace clo
