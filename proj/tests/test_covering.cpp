#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "clo/covering.hpp"
#include "clo/rng.hpp"
#include "helpers.hpp"

using namespace clo;

namespace {

Instance unit_square() { return testutil::lattice_instance({0.5, 0.25}, 1); }

}  // namespace

TEST_CASE("core and diversity of explicit transition sets") {
  Configuration a, b, c;
  a.cost_part = {0, 0, 1};
  b.cost_part = {1, 0, 1};
  c.cost_part = {0, 0, 0};
  std::vector<Transition> ts = {{a, b}, {a, c}};

  REQUIRE(core(ts) == std::vector<int>{0, 2});

  CoordinateCluster first{{0}}, last{{2}}, both{{0, 2}}, middle{{1}};
  REQUIRE(diversity(ts, first) == 2);   // differences -1 and 0
  REQUIRE(diversity(ts, last) == 2);    // differences 0 and 1
  REQUIRE(diversity(ts, both) == 2);    // (-1,0) and (0,1)
  REQUIRE(diversity(ts, middle) == 1);  // always 0
}

TEST_CASE("diversity is monotone and submultiplicative over covers") {
  SplitMix64 g(2718);
  for (int trial = 0; trial < 100; ++trial) {
    const int nu = 2 + static_cast<int>(g.next_below(5));   // up to 6
    const int m_cap = 1 + static_cast<int>(g.next_below(2));  // up to 2
    std::vector<Transition> ts;
    const int count = 1 + static_cast<int>(g.next_below(20));
    for (int t = 0; t < count; ++t) {
      Configuration s, u;
      for (int i = 0; i < nu; ++i) {
        s.cost_part.push_back(static_cast<int>(g.next_below(m_cap + 1)));
        u.cost_part.push_back(static_cast<int>(g.next_below(m_cap + 1)));
      }
      ts.push_back({s, u});
    }

    // Random target cluster I and a random cover of it.
    CoordinateCluster whole;
    for (int i = 0; i < nu; ++i)
      if (g.next_below(2)) whole.indices.push_back(i);
    if (whole.indices.empty()) whole.indices.push_back(0);

    std::vector<CoordinateCluster> parts;
    for (int i : whole.indices) {
      if (!parts.empty() && g.next_below(2))
        parts.back().indices.push_back(i);
      else
        parts.push_back({{i}});
    }
    if (g.next_below(2)) parts.push_back({{0}});  // overlap is allowed

    REQUIRE(diversity_product_holds(ts, whole, parts));

    // Monotonicity: a subset of I never has more diversity.
    CoordinateCluster sub{{whole.indices.front()}};
    REQUIRE(diversity(ts, sub) <= diversity(ts, whole));
  }
}

TEST_CASE("diversity product rejects non-covering part families") {
  Configuration a, b;
  a.cost_part = {0, 0};
  b.cost_part = {1, 1};
  std::vector<Transition> ts = {{a, b}};
  REQUIRE_THROWS_AS(diversity_product_holds(ts, {{0, 1}}, {{{0}}}),
                    std::invalid_argument);
}

TEST_CASE("trivial covering certifies with lambda = beta = 1") {
  Instance inst = unit_square();
  Covering cov = trivial_covering(inst);
  auto res = certify(inst, cov);
  REQUIRE(res.ok);
  REQUIRE(res.params.lambda == 1);
  REQUIRE(res.params.beta == 1);
  // Differences of one-step lattice moves: four distinct vectors.
  REQUIRE(res.params.mu == 4);
}

TEST_CASE("per-coordinate covering of the lattice certifies tightly") {
  Instance inst = unit_square();
  CoveringScheme scheme;
  scheme.coordinate_clusters = {{{0}}, {{1}}};
  scheme.cluster_key = [](const Instance&, const Transition& tr) {
    for (std::size_t i = 0; i < tr.first.cost_part.size(); ++i)
      if (tr.first.cost_part[i] != tr.second.cost_part[i])
        return "coord" + std::to_string(i);
    return std::string("none");
  };
  Covering cov = expand_covering(inst, scheme);
  auto res = certify(inst, cov);
  REQUIRE(res.ok);
  REQUIRE(res.params.lambda == 2);
  REQUIRE(res.params.beta == 1);
  REQUIRE(res.params.mu == 2);  // each cluster moves one coordinate by +-1
}

TEST_CASE("certification names missing transitions and coordinates") {
  Instance inst = unit_square();

  SECTION("uncovered coordinate") {
    Covering cov = trivial_covering(inst);
    cov.coordinate_clusters = {{{0}}};
    for (auto& tc : cov.transition_clusters) tc.witness = {0};
    auto res = certify(inst, cov);
    REQUIRE_FALSE(res.ok);
    REQUIRE(res.violation.find("coordinate 1") != std::string::npos);
  }

  SECTION("uncovered transition") {
    Covering cov = trivial_covering(inst);
    cov.transition_clusters[0].transitions.pop_back();
    auto res = certify(inst, cov);
    REQUIRE_FALSE(res.ok);
    REQUIRE(res.violation.find("not covered") != std::string::npos);
  }

  SECTION("witness missing a core coordinate") {
    Instance inst2 = unit_square();
    CoveringScheme scheme;
    scheme.coordinate_clusters = {{{0}}, {{1}}};
    scheme.cluster_key = [](const Instance&, const Transition&) {
      return std::string("all");
    };
    Covering cov = expand_covering(inst2, scheme);
    cov.transition_clusters[0].witness = {0};  // drop the cluster for coord 1
    auto res = certify(inst2, cov);
    REQUIRE_FALSE(res.ok);
    REQUIRE(res.violation.find("core coordinate 1") != std::string::npos);
  }

  SECTION("cluster listing a fake transition") {
    Covering cov = trivial_covering(inst);
    Configuration a, b;
    a.cost_part = {0, 0};
    b.cost_part = {1, 1};  // two coordinates away, not a neighbor
    cov.transition_clusters[0].transitions.push_back({a, b});
    auto res = certify(inst, cov);
    REQUIRE_FALSE(res.ok);
    REQUIRE(res.violation.find("non-transition") != std::string::npos);
  }
}

TEST_CASE("expected-steps bound composes the certified parameters") {
  SeparabilityParams p{2, 1, 2};
  REQUIRE(expected_steps_bound(p, 3, 1, 1.0) == 108.0);

  // Monotone in each parameter.
  REQUIRE(expected_steps_bound({4, 1, 2}, 3, 1, 1.0) > 108.0);
  REQUIRE(expected_steps_bound({2, 2, 2}, 3, 1, 1.0) > 108.0);
  REQUIRE(expected_steps_bound({2, 1, 3}, 3, 1, 1.0) > 108.0);
  REQUIRE(expected_steps_bound(p, 4, 1, 1.0) > 108.0);
  REQUIRE(expected_steps_bound(p, 3, 2, 1.0) > 108.0);
  REQUIRE(expected_steps_bound(p, 3, 1, 2.0) == 216.0);

  // Saturates instead of overflowing.
  REQUIRE(std::isinf(expected_steps_bound({1, 10000, 10000}, 3, 1, 1.0)));
}
