#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "clo/experiment.hpp"
#include "clo/generators.hpp"
#include "clo/io.hpp"

using namespace clo;

namespace {

ExperimentSpec cut_spec(int replicas, double phi, std::uint64_t seed) {
  const auto cut = gen::random_maxcut(101, 4, true, 2);
  const auto handle = io::encode_any(io::FamilyInstance{cut});
  ExperimentSpec spec;
  spec.instance = handle.instance;
  spec.sense = handle.sense;
  spec.smoothing =
      io::resolve_smoothing(io::SmoothingSpec{seed, phi, {}}, handle.instance);
  spec.pivot = {PivotKind::best_improvement, 0};
  spec.replicas = replicas;
  return spec;
}

}  // namespace

TEST_CASE("experiments are deterministic and order-independent") {
  ExperimentSpec spec = cut_spec(16, 2.0, 7);
  spec.threads = 1;
  const auto serial = run_experiment(spec);
  spec.threads = 4;
  const auto pooled = run_experiment(spec);
  REQUIRE(serial.rows.size() == 16);
  for (int r = 0; r < 16; ++r) {
    REQUIRE(serial.rows[r].replica == r);
    REQUIRE(pooled.rows[r].seed == serial.rows[r].seed);
    REQUIRE(pooled.rows[r].iterations == serial.rows[r].iterations);
    REQUIRE(pooled.rows[r].terminal_cost == serial.rows[r].terminal_cost);
  }
  REQUIRE(pooled.mean == serial.mean);
  REQUIRE(pooled.stderr_ == serial.stderr_);

  const auto reseeded = run_experiment(cut_spec(16, 2.0, 8));
  bool any_differs = false;
  for (int r = 0; r < 16; ++r)
    any_differs = any_differs ||
                  reseeded.rows[r].terminal_cost != serial.rows[r].terminal_cost;
  REQUIRE(any_differs);
}

TEST_CASE("engine iterations never exceed the oracle longest path") {
  ExperimentSpec engine = cut_spec(12, 2.0, 3);
  ExperimentSpec oracle = engine;
  oracle.mode = MeasureMode::oracle_longest_path;
  const auto er = run_experiment(engine);
  const auto orr = run_experiment(oracle);
  for (int r = 0; r < 12; ++r)
    REQUIRE(er.rows[r].iterations <= orr.rows[r].iterations);
}

TEST_CASE("attached coverings certify and bound the sample mean") {
  const auto cut = gen::random_maxcut(55, 4, true, 2);
  const auto handle = io::encode_any(io::FamilyInstance{cut});
  ExperimentSpec spec;
  spec.instance = handle.instance;
  spec.sense = handle.sense;
  spec.smoothing =
      io::resolve_smoothing(io::SmoothingSpec{9, 2.0, {}}, handle.instance);
  spec.mode = MeasureMode::oracle_longest_path;
  spec.replicas = 24;
  spec.covering = expand_covering(handle.instance, handle.covering);
  const auto res = run_experiment(spec);
  REQUIRE(res.params.has_value());
  REQUIRE(res.bound.has_value());
  REQUIRE(res.pass);
  REQUIRE(res.mean <= *res.bound);

  Covering broken = *spec.covering;
  broken.transition_clusters.clear();
  spec.covering = broken;
  REQUIRE_THROWS_AS(run_experiment(spec), std::invalid_argument);
}

TEST_CASE("experiment validation rejects bad setups") {
  ExperimentSpec spec = cut_spec(0, 1.0, 1);
  REQUIRE_THROWS_AS(run_experiment(spec), std::invalid_argument);
  spec = cut_spec(2, 1.0, 1);
  spec.smoothing.densities.pop_back();
  REQUIRE_THROWS_AS(run_experiment(spec), std::invalid_argument);
  spec = cut_spec(2, 1.0, 1);
  spec.mode = MeasureMode::oracle_longest_path;
  spec.instance.enumerator = nullptr;
  REQUIRE_THROWS_AS(run_experiment(spec), std::invalid_argument);
}
