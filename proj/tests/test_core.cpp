#include <catch2/catch_amalgamated.hpp>

#include "clo/core.hpp"
#include "clo/rng.hpp"
#include "helpers.hpp"

using namespace clo;

TEST_CASE("linear cost evaluates the dot product exactly") {
  Instance inst = testutil::lattice_instance({0.5, -0.25, 1.0}, 2);
  Configuration s;
  s.cost_part = {1, 2, 0};
  REQUIRE(cost(inst, s) == 0.0);
}

TEST_CASE("cost rejects dimension mismatches") {
  Instance inst = testutil::lattice_instance({0.5, -0.25}, 1);
  Configuration s;
  s.cost_part = {1};
  REQUIRE_THROWS_AS(cost(inst, s), std::invalid_argument);
}

TEST_CASE("validation enforces ranges and scale") {
  Instance inst = testutil::lattice_instance({0.5, 0.5}, 1);
  REQUIRE_NOTHROW(validate(inst));

  Instance bad = inst;
  bad.costs.coeffs[0] = 1.5;  // outside [-1, 1] at scale 1
  REQUIRE_THROWS_AS(validate(bad), std::invalid_argument);
  bad.cost_scale = 2.0;
  REQUIRE_NOTHROW(validate(bad));

  Configuration s;
  s.cost_part = {0, 2};
  REQUIRE_THROWS_AS(validate(inst.dims, s), std::invalid_argument);
}

TEST_CASE("configurations order lexicographically, cost part first") {
  Configuration a, b, c;
  a.cost_part = {0, 1};
  b.cost_part = {1, 0};
  c.cost_part = {0, 1};
  c.noncost_part = {};
  REQUIRE(a < b);
  REQUIRE(a == c);

  Configuration d = a, e = a;
  d.noncost_part = {0};
  e.noncost_part = {1};
  REQUIRE(d < e);
}

TEST_CASE("improving neighbors are strict and sense-aware") {
  Instance inst = testutil::lattice_instance({0.5, 0.0}, 1);
  Configuration origin;
  origin.cost_part = {0, 0};

  // Minimizing: the zero-coefficient coordinate never yields a strict move.
  REQUIRE(improving_neighbors(inst, Sense::minimize, origin).empty());
  REQUIRE(is_local_optimum(inst, Sense::minimize, origin));

  auto up = improving_neighbors(inst, Sense::maximize, origin);
  REQUIRE(up.size() == 1);
  REQUIRE(up[0].to.cost_part == std::vector<std::int64_t>{1, 0});
  REQUIRE(up[0].delta == 0.5);
}

TEST_CASE("splitmix streams are deterministic and substreams differ") {
  SplitMix64 a(42), b(42), c(43);
  for (int i = 0; i < 16; ++i) {
    const auto va = a.next_u64();
    REQUIRE(va == b.next_u64());
  }
  REQUIRE(SplitMix64(substream(42, 0)).next_u64() !=
          SplitMix64(substream(42, 1)).next_u64());
  REQUIRE(c.next_u64() != SplitMix64(42).next_u64());
}

TEST_CASE("bounded draws stay in range without bias artifacts") {
  SplitMix64 g(7);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 50000; ++i) ++counts[g.next_below(5)];
  for (int c : counts) {
    REQUIRE(c > 9500);
    REQUIRE(c < 10500);
  }
}
