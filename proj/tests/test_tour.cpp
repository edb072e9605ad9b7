#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <map>
#include <set>

#include "clo/problems/tour.hpp"
#include "helpers.hpp"

using namespace clo;
using namespace clo::problems;

namespace {

TourProblem complete_graph(int n, bool directed = false) {
  TourProblem t;
  t.num_vertices = n;
  t.directed = directed;
  for (int u = 0; u < n; ++u)
    for (int v = directed ? 0 : u + 1; v < n; ++v) {
      if (u == v) continue;
      t.edges.push_back({u, v});
      t.weights.push_back(1.0 / (2.0 + u + v));
    }
  t.tour.resize(n);
  for (int i = 0; i < n; ++i) t.tour[i] = i;
  return t;
}

std::set<int> edge_set(const TourProblem& t, const Tour& tour) {
  const auto idx = tour_edge_indices(t, tour);
  return {idx.begin(), idx.end()};
}

// Independent check: every other tour of the graph missing at most k of the
// current edges, found by raw permutation scan.
std::vector<Tour> filtered_neighbors(const TourProblem& t, const Tour& tour,
                                     int k) {
  const Tour origin = canonical_tour(t, tour);
  const auto mine = edge_set(t, tour);
  std::vector<Tour> out;
  for (const auto& other : all_tours(t)) {
    if (other == origin) continue;
    const auto theirs = edge_set(t, other);
    int missing = 0;
    for (int e : mine)
      if (!theirs.count(e)) ++missing;
    if (missing <= k) out.push_back(other);
  }
  return out;
}

std::uint64_t factorial(int n) {
  std::uint64_t acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

std::uint64_t binomial(int n, int r) {
  std::uint64_t acc = 1;
  for (int i = 0; i < r; ++i) acc = acc * (n - i) / (i + 1);
  return acc;
}

}  // namespace

TEST_CASE("tour validation rejects malformed inputs") {
  TourProblem t = complete_graph(4);
  REQUIRE_NOTHROW(validate(t));

  SECTION("k above the vertex count") {
    t.k = 5;
    REQUIRE_THROWS_AS(validate(t), std::invalid_argument);
  }
  SECTION("k below two") {
    t.k = 1;
    REQUIRE_THROWS_AS(validate(t), std::invalid_argument);
  }
  SECTION("weight outside the unit interval") {
    t.weights[0] = 1.5;
    REQUIRE_THROWS_AS(validate(t), std::invalid_argument);
  }
  SECTION("initial tour using a missing edge") {
    t.edges.erase(t.edges.begin());
    t.weights.erase(t.weights.begin());
    REQUIRE_THROWS_AS(validate(t), std::invalid_argument);
  }
  SECTION("initial tour repeating a vertex") {
    t.tour = {0, 1, 2, 1};
    REQUIRE_THROWS_AS(validate(t), std::invalid_argument);
  }
}

TEST_CASE("tour cost sums the cyclic edge weights") {
  TourProblem t = complete_graph(4);
  t.weights = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};  // 01 02 03 12 13 23
  REQUIRE(tour_cost(t, {0, 1, 2, 3}) == Catch::Approx(0.1 + 0.4 + 0.6 + 0.3));
  REQUIRE(tour_cost(t, {0, 2, 1, 3}) == Catch::Approx(0.2 + 0.4 + 0.5 + 0.3));
}

TEST_CASE("canonical form fixes rotation and direction") {
  TourProblem t = complete_graph(5);
  REQUIRE(canonical_tour(t, {2, 3, 4, 0, 1}) == Tour{0, 1, 2, 3, 4});
  REQUIRE(canonical_tour(t, {0, 4, 3, 2, 1}) == Tour{0, 1, 2, 3, 4});
  t.directed = true;
  REQUIRE(canonical_tour(t, {0, 4, 3, 2, 1}) == Tour{0, 4, 3, 2, 1});
}

TEST_CASE("two-exchange moves on small complete graphs") {
  SECTION("the triangle has a single tour and no moves") {
    TourProblem t = complete_graph(3);
    REQUIRE(all_tours(t).size() == 1);
    REQUIRE(kopt_neighbors(t, t.tour, 2).empty());
  }
  SECTION("five vertices give exactly five two-exchange neighbors") {
    TourProblem t = complete_graph(5);
    const auto nbs = kopt_neighbors(t, t.tour, 2);
    REQUIRE(nbs.size() == 5);
    for (const auto& nb : nbs) {
      std::set<int> diff;
      const auto mine = edge_set(t, t.tour);
      for (int e : mine)
        if (!edge_set(t, nb).count(e)) diff.insert(e);
      REQUIRE(diff.size() == 2);
    }
  }
  SECTION("a directed graph admits no two-exchange moves") {
    TourProblem t = complete_graph(4, true);
    REQUIRE(kopt_neighbors(t, t.tour, 2).empty());
  }
}

TEST_CASE("a five-cycle with one chord has a unique, immovable tour") {
  TourProblem t;
  t.num_vertices = 5;
  t.edges = {{0, 1}, {0, 2}, {0, 4}, {1, 2}, {2, 3}, {3, 4}};
  t.weights = {0.5, 0.25, 0.5, 0.5, 0.5, 0.5};
  t.tour = {0, 1, 2, 3, 4};
  validate(t);
  REQUIRE(all_tours(t) == std::vector<Tour>{{0, 1, 2, 3, 4}});
  REQUIRE(kopt_neighbors(t, t.tour, 2).empty());
  REQUIRE(kopt_neighbors(t, t.tour, 4).empty());
}

TEST_CASE("constructive exchange enumeration matches the raw edge filter") {
  SECTION("undirected, six vertices, up to three exchanged edges") {
    TourProblem t = complete_graph(6);
    for (const auto& tour : all_tours(t))
      REQUIRE(kopt_neighbors(t, tour, 3) == filtered_neighbors(t, tour, 3));
  }
  SECTION("directed, four and five vertices") {
    for (int n : {4, 5}) {
      TourProblem t = complete_graph(n, true);
      for (const auto& tour : all_tours(t))
        REQUIRE(kopt_neighbors(t, tour, 3) == filtered_neighbors(t, tour, 3));
    }
  }
}

TEST_CASE("exchange neighborhood sizes respect the closed-form cap") {
  for (int n : {5, 6}) {
    TourProblem t = complete_graph(n);
    for (int k : {2, 3}) {
      const std::uint64_t cap =
          (k - 1) * binomial(n, k) * factorial(2 * k);
      REQUIRE(kopt_neighbors(t, t.tour, k).size() <= cap);
    }
  }
}

TEST_CASE("each removed edge set admits few reconnecting edges") {
  TourProblem t = complete_graph(6);
  const int k = 3;
  for (const auto& tour : all_tours(t)) {
    const auto mine = edge_set(t, tour);
    std::map<std::set<int>, std::set<int>> added_by_removed;
    for (const auto& nb : kopt_neighbors(t, tour, k)) {
      const auto theirs = edge_set(t, nb);
      std::set<int> removed, added;
      for (int e : mine)
        if (!theirs.count(e)) removed.insert(e);
      for (int e : theirs)
        if (!mine.count(e)) added.insert(e);
      REQUIRE(removed.size() <= static_cast<std::size_t>(k));
      added_by_removed[removed].insert(added.begin(), added.end());
    }
    for (const auto& [removed, added] : added_by_removed)
      REQUIRE(added.size() <= static_cast<std::size_t>(2 * k * k - k));
  }
}

TEST_CASE("tour encoding is a faithful image of the native problem") {
  for (bool directed : {false, true}) {
    TourProblem t = complete_graph(5, directed);
    t.k = 3;
    const auto enc = encode_clo(t);
    REQUIRE(enc.sense == Sense::minimize);
    REQUIRE(enc.instance.dims.nu == static_cast<int>(t.edges.size()));
    REQUIRE(enc.instance.dims.nu_bar == 0);
    REQUIRE(enc.instance.dims.m_cap == 1);
    const auto err = testutil::check_encoding<Tour>(
        enc, all_tours(t),
        [&](const Tour& s) { return tour_cost(t, s); },
        [&](const Tour& s) { return kopt_neighbors(t, s, t.k); });
    REQUIRE(err.empty());
  }
}

TEST_CASE("tour decode rejects configurations that are not tours") {
  TourProblem t = complete_graph(4);
  const auto enc = encode_clo(t);
  Configuration s;
  s.cost_part.assign(t.edges.size(), 1);
  REQUIRE_THROWS_AS(enc.decode_solution(s), std::invalid_argument);
  s.cost_part.assign(t.edges.size(), 0);
  REQUIRE_THROWS_AS(enc.decode_solution(s), std::invalid_argument);
}

TEST_CASE("prescribed tour covering certifies with unit diversity") {
  TourProblem t = complete_graph(5);
  t.k = 2;
  const auto enc = encode_clo(t);
  const auto cert = testutil::certify_prescribed(enc);
  REQUIRE(cert.ok);
  REQUIRE(cert.params.mu == 1);
  REQUIRE(cert.params.beta <= 8);
  REQUIRE(cert.params.lambda <= 100);
  const double bound = expected_steps_bound(cert.params, enc.instance.dims.nu,
                                            enc.instance.dims.m_cap, 1.0);
  REQUIRE(std::isfinite(bound));
  REQUIRE(bound > 0.0);
}

TEST_CASE("prescribed covering stays certified for three-exchange moves") {
  TourProblem t = complete_graph(5);
  t.k = 3;
  const auto enc = encode_clo(t);
  const auto cert = testutil::certify_prescribed(enc);
  REQUIRE(cert.ok);
  REQUIRE(cert.params.mu <= 2);
  REQUIRE(cert.params.beta <= 2 * 3 * 3);
  const std::uint64_t m = t.edges.size();
  REQUIRE(cert.params.lambda <= m * m * m);
}
