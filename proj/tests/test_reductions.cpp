#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "clo/reductions.hpp"

using namespace clo;
using namespace clo::problems;
using namespace clo::reductions;

namespace {

CutProblem labeled_graph(int n, unsigned mask, bool signed_weights) {
  static const double pos[] = {0.5,  0.25,  1.0,   0.75,  0.125,
                               0.375, 0.625, 0.875, 0.0625, 1.0};
  static const double alt[] = {0.5,   -0.25, 1.0,    -0.75, 0.125,
                               -1.0,  0.625, -0.875, 0.375, 0.0625};
  CutProblem g;
  g.num_vertices = n;
  g.assignment.assign(n, 0);
  int slot = 0, idx = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++slot)
      if (mask >> slot & 1u) {
        g.edges.emplace_back(u, v);
        g.weights.push_back((signed_weights ? alt : pos)[idx++ % 10]);
      }
  return g;
}

bool cut_local_opt(const CutProblem& g, const BlockAssignment& a) {
  const double base = cut_weight(g, a);
  for (const auto& nb : flip_neighbors(g, a))
    if (cut_weight(g, nb) > base + 1e-9) return false;
  return true;
}

std::vector<BlockAssignment> all_assignments(int n, int blocks) {
  std::vector<BlockAssignment> out;
  BlockAssignment a(n, 0);
  while (true) {
    out.push_back(a);
    int at = 0;
    while (at < n && ++a[at] == blocks) a[at++] = 0;
    if (at == n) break;
  }
  return out;
}

std::vector<games::PathProfile> network_equilibria(
    const games::NetworkCongestionGame& net) {
  const int n = static_cast<int>(net.terminals.size());
  std::vector<std::vector<std::vector<int>>> paths;
  for (int i = 0; i < n; ++i) paths.push_back(games::enumerate_paths(net, i));
  std::vector<games::PathProfile> found;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    games::PathProfile p(n);
    for (int i = 0; i < n; ++i) p[i] = paths[i][idx[i]];
    if (games::is_network_equilibrium(net, p)) found.push_back(p);
    int at = 0;
    while (at < n && ++idx[at] == paths[at].size()) idx[at++] = 0;
    if (at == n) break;
  }
  return found;
}

CutProblem paw_feeders_first() {
  CutProblem g;
  g.num_vertices = 4;
  g.edges = {{0, 2}, {1, 2}, {0, 3}, {2, 3}};
  g.weights = {0.25, 0.25, 0.25, 0.25};
  g.assignment = {0, 0, 0, 0};
  return g;
}

CutProblem paw_feeder_last() {
  CutProblem g;
  g.num_vertices = 4;
  g.edges = {{0, 1}, {0, 3}, {1, 3}, {2, 3}};
  g.weights = {0.25, 0.25, 0.25, 0.25};
  g.assignment = {0, 0, 0, 0};
  return g;
}

}  // namespace

TEST_CASE("cut to congestion rejects bad sources") {
  CutProblem g = labeled_graph(3, 0b111, false);
  g.weights[1] = -0.5;
  REQUIRE_THROWS_AS(maxcut_to_congestion(g, CongestionVariant::step),
                    std::invalid_argument);
  CutProblem h = labeled_graph(3, 0b111, false);
  h.num_blocks = 3;
  h.assignment = {0, 1, 2};
  REQUIRE_THROWS_AS(maxcut_to_congestion(h, CongestionVariant::affine),
                    std::invalid_argument);
}

TEST_CASE("cut to congestion produces paired resources and incident strategies") {
  const CutProblem g = labeled_graph(4, 0b111111, false);
  const auto red = maxcut_to_congestion(g, CongestionVariant::step);
  REQUIRE(red.produced.num_players == 4);
  REQUIRE(red.produced.num_resources == 12);
  for (int i = 0; i < 4; ++i) {
    REQUIRE(red.produced.strategies[i].size() == 2);
    REQUIRE(red.produced.strategies[i][0].size() == 3);
    for (std::size_t t = 0; t < 3; ++t)
      REQUIRE(red.produced.strategies[i][1][t] ==
              red.produced.strategies[i][0][t] + 6);
  }
}

TEST_CASE("single edge congestion game has the two anti-coordinated equilibria") {
  CutProblem g;
  g.num_vertices = 2;
  g.edges = {{0, 1}};
  g.weights = {1.0};
  g.assignment = {0, 0};
  for (auto variant : {CongestionVariant::step, CongestionVariant::affine}) {
    const auto red = maxcut_to_congestion(g, variant);
    std::set<std::vector<int>> eq;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const games::Profile p = {a, b};
        if (games::is_equilibrium(red.produced, p)) eq.insert(p);
      }
    REQUIRE(eq == std::set<std::vector<int>>{{0, 1}, {1, 0}});
    for (const auto& p : eq) {
      const auto sides = to_cut(red, p);
      REQUIRE(cut_weight(g, sides) == 1.0);
      REQUIRE(cut_local_opt(g, sides));
    }
  }
}

TEST_CASE("edgeless congestion game makes every profile an equilibrium") {
  CutProblem g;
  g.num_vertices = 2;
  g.assignment = {0, 0};
  const auto red = maxcut_to_congestion(g, CongestionVariant::affine);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const games::Profile p = {a, b};
      REQUIRE(games::is_equilibrium(red.produced, p));
      REQUIRE(cut_local_opt(g, to_cut(red, p)));
    }
}

TEST_CASE("congestion equilibria coincide with local cuts on small graphs") {
  for (int n = 2; n <= 4; ++n) {
    const unsigned slots = static_cast<unsigned>(n * (n - 1) / 2);
    for (unsigned mask = 0; mask < (1u << slots); ++mask) {
      const CutProblem g = labeled_graph(n, mask, false);
      for (auto variant : {CongestionVariant::step, CongestionVariant::affine}) {
        const auto red = maxcut_to_congestion(g, variant);
        for (const auto& sides : all_assignments(n, 2)) {
          const auto p = to_profile(red, sides);
          REQUIRE(games::is_equilibrium(red.produced, p) ==
                  cut_local_opt(g, sides));
        }
      }
    }
  }
}

TEST_CASE("congestion strategy spread is twice the degree") {
  CutProblem star;
  star.num_vertices = 6;
  star.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}};
  star.weights = {0.5, 0.5, 0.5, 0.5, 0.5};
  star.assignment = {0, 0, 0, 0, 0, 0};
  const auto red = maxcut_to_congestion(star, CongestionVariant::step);
  REQUIRE(games::restrained_bound(red.produced) == 10);
  REQUIRE(games::restrained_bound(red.produced) == 2 * max_degree(star));
}

TEST_CASE("cut to network rejects bad sources") {
  CutProblem g = labeled_graph(3, 0b111, false);
  g.weights[0] = -0.25;
  REQUIRE_THROWS_AS(maxcut_to_network_congestion(g), std::invalid_argument);
  CutProblem h = labeled_graph(3, 0b001, false);
  REQUIRE_THROWS_AS(maxcut_to_network_congestion(h), std::invalid_argument);
}

TEST_CASE("single edge network has one gadget pair and two routes per player") {
  CutProblem g;
  g.num_vertices = 2;
  g.edges = {{0, 1}};
  g.weights = {0.5};
  g.assignment = {0, 0};
  const auto red = maxcut_to_network_congestion(g);
  REQUIRE(red.produced.num_nodes == 8);
  REQUIRE(red.produced.arcs.size() == 10);
  REQUIRE(red.heavy_unit == 1.5);
  for (int i = 0; i < 2; ++i) {
    const auto paths = games::enumerate_paths(red.produced, i);
    REQUIRE(paths.size() == 2);
    for (const auto& p : paths) {
      REQUIRE(p.size() == 3);
      const bool prescribed =
          p == red.primary_route[i] || p == red.mirror_route[i];
      REQUIRE(prescribed);
    }
  }
  const auto pne = network_equilibria(red.produced);
  REQUIRE(pne.size() == 2);
  for (const auto& p : pne) {
    const auto sides = to_cut(red, p);
    REQUIRE(cut_weight(g, sides) == 0.5);
  }
}

TEST_CASE("triangle network matches the expected gadget shape") {
  CutProblem g = labeled_graph(3, 0b111, false);
  REQUIRE(g.weights == std::vector<double>{0.5, 0.25, 1.0});
  const auto red = maxcut_to_network_congestion(g);
  REQUIRE(red.heavy_unit == 2.75);
  REQUIRE(red.produced.num_nodes == 2 * 3 + 4 * 3);
  REQUIRE(red.produced.arcs.size() == 24);

  int regular = 0, free_arcs = 0;
  std::multiset<double> constants;
  for (std::size_t a = 0; a < red.produced.arcs.size(); ++a) {
    const auto& row = red.produced.costs.table[a];
    if (row[0] == 0.0 && row[1] > 0.0) ++regular;
    if (row[0] == 0.0 && row[1] == 0.0) ++free_arcs;
    if (row[0] > 0.0) constants.insert(row[0]);
  }
  REQUIRE(regular == 6);
  REQUIRE(free_arcs == 14);
  REQUIRE(constants == std::multiset<double>{5.5, 5.5, 8.25, 8.25});
}

TEST_CASE("network equilibria stay on prescribed routes for chain-free columns") {
  std::vector<CutProblem> sources;
  sources.push_back(labeled_graph(3, 0b111, false));           // triangle
  sources.push_back(labeled_graph(4, 0b101001, false));        // path 0-1-2-3
  sources.push_back(paw_feeder_last());
  {
    CutProblem star;
    star.num_vertices = 4;
    star.edges = {{0, 1}, {0, 2}, {0, 3}};
    star.weights = {0.5, 0.25, 0.75};
    star.assignment = {0, 0, 0, 0};
    sources.push_back(star);
  }
  {
    CutProblem cycle;
    cycle.num_vertices = 4;
    cycle.edges = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    cycle.weights = {0.5, 0.25, 0.75, 1.0};
    cycle.assignment = {0, 0, 0, 0};
    sources.push_back(cycle);
  }
  for (const auto& g : sources) {
    const auto red = maxcut_to_network_congestion(g);
    const auto pne = network_equilibria(red.produced);
    REQUIRE(!pne.empty());
    for (const auto& p : pne) {
      const auto sides = to_cut(red, p);  // throws if any path is off-route
      REQUIRE(cut_local_opt(g, sides));
    }
  }
}

TEST_CASE("a column with two feeders admits a detour cheaper than its route") {
  const CutProblem g = paw_feeders_first();
  const auto red = maxcut_to_network_congestion(g);

  const auto start = to_paths(red, {0, 0, 0, 0});
  const auto best = games::network_best_response(red.produced, start, 2);
  REQUIRE(best != red.primary_route[2]);
  REQUIRE(best != red.mirror_route[2]);

  games::PathProfile detour = start;
  detour[2] = best;
  REQUIRE(games::path_player_cost(red.produced, detour, 2) <
          games::path_player_cost(red.produced, start, 2) - red.heavy_unit / 2);

  const auto trace = games::shortest_path_dynamics(red.produced, start, 1000);
  REQUIRE(trace.converged);
  REQUIRE_THROWS_AS(to_cut(red, trace.terminal), std::invalid_argument);

  // the same graph with the triangle labeled first keeps every
  // equilibrium on the prescribed routes
  const auto safe = maxcut_to_network_congestion(paw_feeder_last());
  for (const auto& p : network_equilibria(safe.produced))
    REQUIRE_NOTHROW(to_cut(safe, p));
}

TEST_CASE("network routes visit each incident gadget once") {
  CutProblem star;
  star.num_vertices = 6;
  star.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}};
  star.weights = {0.5, 0.25, 0.75, 0.125, 1.0};
  star.assignment = {0, 0, 0, 0, 0, 0};
  const auto red = maxcut_to_network_congestion(star);
  REQUIRE(red.primary_route[0].size() == 11);
  REQUIRE(red.mirror_route[0].size() == 11);
  for (int i = 1; i < 6; ++i) REQUIRE(red.primary_route[i].size() == 3);

  for (const auto& sides : all_assignments(6, 2)) {
    const auto p = to_paths(red, sides);
    REQUIRE(to_cut(red, p) == sides);
  }
}

TEST_CASE("cut to many blocks keeps originals and adds guard cliques") {
  CutProblem g;
  g.num_vertices = 2;
  g.edges = {{0, 1}};
  g.weights = {1.0};
  g.assignment = {0, 0};

  const auto two = maxcut_to_maxkcut(g, 2);
  REQUIRE(two.produced.num_vertices == 6);
  REQUIRE(two.produced.num_blocks == 2);
  REQUIRE(two.produced.edges.size() == 3);
  REQUIRE(two.scale == 2.0);
  REQUIRE(two.produced.weights[0] == 0.5);

  const auto three = maxcut_to_maxkcut(g, 3);
  REQUIRE(three.produced.num_vertices == 8);
  REQUIRE(three.produced.edges.size() == 1 + 2 * 3 + 2);

  REQUIRE_THROWS_AS(maxcut_to_maxkcut(g, 1), std::invalid_argument);
  CutProblem h = g;
  h.num_blocks = 3;
  h.assignment = {0, 2};
  REQUIRE_THROWS_AS(maxcut_to_maxkcut(h, 2), std::invalid_argument);
}

TEST_CASE("two-block guard outputs stay tight on small graphs") {
  for (int n = 1; n <= 4; ++n) {
    const unsigned slots = static_cast<unsigned>(n * (n - 1) / 2);
    const unsigned limit = 1u << slots;
    for (unsigned mask = 0; mask < limit; ++mask) {
      const CutProblem g = labeled_graph(n, mask, true);
      const auto red = maxcut_to_maxkcut(g, 2);
      for (const auto& blocks :
           all_assignments(red.produced.num_vertices, 2)) {
        if (!cut_local_opt(red.produced, blocks)) continue;
        REQUIRE(cut_local_opt(g, to_cut(red, blocks)));
      }
      for (const auto& sides : all_assignments(n, 2)) {
        REQUIRE(to_cut(red, to_blocks(red, sides)) == sides);
        if (!cut_local_opt(g, sides)) continue;
        REQUIRE(cut_local_opt(red.produced, to_blocks(red, sides)));
      }
    }
  }
}

TEST_CASE("three-block optima separate every guard clique") {
  CutProblem g;
  g.num_vertices = 2;
  g.edges = {{0, 1}};
  g.weights = {1.0};
  g.assignment = {0, 0};
  const auto red = maxcut_to_maxkcut(g, 3);
  const int n = 2, pieces = 3;

  bool saw_folded_nonoptimum = false;
  int optima = 0;
  for (const auto& blocks : all_assignments(red.produced.num_vertices, 3)) {
    if (!cut_local_opt(red.produced, blocks)) continue;
    ++optima;
    for (int i = 0; i < n; ++i) {
      std::set<int> guard_blocks;
      for (int j = 0; j < pieces; ++j)
        guard_blocks.insert(blocks[n + i * pieces + j]);
      REQUIRE(guard_blocks.size() == 3);
      REQUIRE(blocks[i] != blocks[n + i * pieces + 2]);
    }
    if (!cut_local_opt(g, to_cut(red, blocks))) saw_folded_nonoptimum = true;
  }
  REQUIRE(optima > 0);
  // guard cliques of different vertices need not agree on block names, so
  // folding back through each vertex's own guards can land off an optimum;
  // only the two-block output carries the round-trip guarantee
  REQUIRE(saw_folded_nonoptimum);
}

TEST_CASE("guard construction degree bound") {
  CutProblem star;
  star.num_vertices = 6;
  star.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}};
  star.weights = {0.5, 0.25, 0.75, 0.125, 1.0};
  star.assignment = {0, 0, 0, 0, 0, 0};
  const auto red = maxcut_to_maxkcut(star, 4);
  REQUIRE(max_degree(star) == 5);
  REQUIRE(max_degree(red.produced) == 5 + 4 - 2);
  REQUIRE(red.produced.num_vertices == 6 * 5);
  REQUIRE(red.produced.edges.size() == 5 + 6 * 6 + 6 * 2);
}

TEST_CASE("sat to hitting set rejects bad sources") {
  CnfProblem f;
  f.num_variables = 2;
  f.clauses = {{1, -2}};
  f.weights = {0.5};
  f.assignment = {0, 0};
  f.k = 2;
  REQUIRE_THROWS_AS(maxsat_to_hittingset(f), std::invalid_argument);
  CnfProblem empty;
  REQUIRE_THROWS_AS(maxsat_to_hittingset(empty), std::invalid_argument);
}

TEST_CASE("single unit clause yields the expected capped system") {
  CnfProblem f;
  f.num_variables = 1;
  f.clauses = {{1}};
  f.weights = {0.5};
  f.assignment = {0};
  const auto red = maxsat_to_hittingset(f);
  REQUIRE(red.scale == 1.5);
  REQUIRE(red.produced.num_ground == 2);
  REQUIRE(red.produced.max_size == 1);
  REQUIRE(red.produced.sets ==
          std::vector<std::vector<int>>{{0, 1}, {0}});
  REQUIRE(red.produced.weights[0] == 1.0);
  REQUIRE_THAT(red.produced.weights[1],
               Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-12));
  REQUIRE(red.produced.selection == GroundSelection{1});

  std::vector<GroundSelection> optima;
  for (const auto& sel : all_selections(red.produced))
    if ([&] {
          const double base = hitting_weight(red.produced, sel);
          for (const auto& nb : hitting_neighbors(red.produced, sel))
            if (hitting_weight(red.produced, nb) > base + 1e-9) return false;
          return true;
        }())
      optima.push_back(sel);
  REQUIRE(optima == std::vector<GroundSelection>{{0}});
  REQUIRE(to_assignment(red, optima[0]) == TruthAssignment{1});
}

TEST_CASE("clauseless formulas make every polarity choice optimal") {
  CnfProblem f;
  f.num_variables = 2;
  f.assignment = {1, 0};
  const auto red = maxsat_to_hittingset(f);
  REQUIRE(red.produced.selection == GroundSelection{0, 3});
  int optima = 0;
  for (const auto& sel : all_selections(red.produced)) {
    const double base = hitting_weight(red.produced, sel);
    bool opt = true;
    for (const auto& nb : hitting_neighbors(red.produced, sel))
      if (hitting_weight(red.produced, nb) > base + 1e-9) opt = false;
    if (!opt) continue;
    ++optima;
    REQUIRE_NOTHROW(to_assignment(red, sel));
  }
  REQUIRE(optima == 4);
}

TEST_CASE("hitting set outputs stay tight on random formulas") {
  std::mt19937 rng(20240817u);
  for (int trial = 0; trial < 60; ++trial) {
    CnfProblem f;
    f.num_variables = 1 + static_cast<int>(rng() % 4);
    const int clauses = static_cast<int>(rng() % 6);
    for (int c = 0; c < clauses; ++c) {
      std::vector<int> vars(f.num_variables);
      for (int v = 0; v < f.num_variables; ++v) vars[v] = v + 1;
      std::shuffle(vars.begin(), vars.end(), rng);
      const int size = 1 + static_cast<int>(rng() % std::min(3, f.num_variables));
      std::vector<int> clause(vars.begin(), vars.begin() + size);
      for (int& lit : clause)
        if (rng() & 1u) lit = -lit;
      std::sort(clause.begin(), clause.end());
      f.clauses.push_back(clause);
      f.weights.push_back(static_cast<double>(1 + rng() % 16) / 16.0);
    }
    f.assignment.assign(f.num_variables, 0);
    for (auto& b : f.assignment) b = rng() & 1u;

    const auto red = maxsat_to_hittingset(f);
    REQUIRE(element_occurrence_bound(red.produced) <=
            occurrence_bound(f) + 1);

    const auto assignments = [&] {
      std::vector<TruthAssignment> out;
      TruthAssignment a(f.num_variables, 0);
      while (true) {
        out.push_back(a);
        int at = 0;
        while (at < f.num_variables && ++a[at] == 2) a[at++] = 0;
        if (at == f.num_variables) break;
      }
      return out;
    }();
    const auto flip_opt = [&](const TruthAssignment& a) {
      const double base = maxsat_weight(f, a);
      for (const auto& nb : kflip_neighbors(f, a, f.k))
        if (maxsat_weight(f, nb) > base + 1e-9) return false;
      return true;
    };
    const auto hit_opt = [&](const GroundSelection& sel) {
      const double base = hitting_weight(red.produced, sel);
      for (const auto& nb : hitting_neighbors(red.produced, sel))
        if (hitting_weight(red.produced, nb) > base + 1e-9) return false;
      return true;
    };

    for (const auto& sel : all_selections(red.produced)) {
      if (!hit_opt(sel)) continue;
      TruthAssignment a;
      REQUIRE_NOTHROW(a = to_assignment(red, sel));
      REQUIRE(flip_opt(a));
    }
    for (const auto& a : assignments) {
      REQUIRE(to_assignment(red, to_selection(red, a)) == a);
      if (flip_opt(a)) REQUIRE(hit_opt(to_selection(red, a)));
    }
  }
}
