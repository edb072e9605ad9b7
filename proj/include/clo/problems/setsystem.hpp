#pragma once

// Set-system problems: three-dimensional matchings under bounded triple
// replacement, exact covers by 3-sets and plain set covers under bounded
// exchange, and capped hitting sets under add/remove/swap moves.

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "clo/core.hpp"
#include "clo/covering.hpp"
#include "clo/detail.hpp"

namespace clo::problems {

// --- three-dimensional matching ---------------------------------------

/// Triples (boy, girl, home), kept sorted by boy.
using Matching = std::vector<std::array<int, 3>>;

struct MatchingProblem {
  int n = 0;
  std::vector<double> weights;  // n^3 entries, triple (b,g,h) at (b*n+g)*n+h
  int p = 1;                    // max replaced triples per move
  int q = 0;                    // max doubly-reassigned triples per move
  Matching matching;
};

inline int triple_index(const MatchingProblem& m, int b, int g, int h) {
  return (b * m.n + g) * m.n + h;
}

inline void validate(const MatchingProblem& m) {
  if (m.n < 1) throw std::invalid_argument("matching: need n >= 1");
  if (static_cast<int>(m.weights.size()) != m.n * m.n * m.n)
    throw std::invalid_argument("matching: need n^3 weights");
  for (double w : m.weights)
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("matching: weight outside [0, 1]");
  if (m.p < 1 || m.p > m.n || m.q < 0)
    throw std::invalid_argument("matching: need 1 <= p <= n and q >= 0");
  if (static_cast<int>(m.matching.size()) != m.n)
    throw std::invalid_argument("matching: need n triples");
  std::vector<char> gs(m.n, 0), hs(m.n, 0);
  for (int b = 0; b < m.n; ++b) {
    const auto [tb, tg, th] = m.matching[b];
    if (tb != b) throw std::invalid_argument("matching: sort triples by boy");
    if (tg < 0 || tg >= m.n || th < 0 || th >= m.n || gs[tg] || hs[th])
      throw std::invalid_argument("matching: girls and homes must be matched once");
    gs[tg] = hs[th] = 1;
  }
}

inline double matching_weight(const MatchingProblem& m, const Matching& s) {
  double acc = 0.0;
  for (const auto& [b, g, h] : s) acc += m.weights[triple_index(m, b, g, h)];
  return acc;
}

/// Replacing at most p triples, of which at most q give both their girl and
/// their boy a different home than before.
inline bool matching_move_allowed(const MatchingProblem& m,
                                  const Matching& from, const Matching& to) {
  std::vector<int> boy_home(m.n), girl_home(m.n);
  for (const auto& [b, g, h] : to) boy_home[b] = h, girl_home[g] = h;
  const std::set<std::array<int, 3>> target(to.begin(), to.end());
  int replaced = 0, doubly = 0;
  for (const auto& t : from) {
    if (target.count(t)) continue;
    ++replaced;
    if (boy_home[t[0]] != t[2] && girl_home[t[1]] != t[2]) ++doubly;
  }
  return replaced >= 1 && replaced <= m.p && doubly <= m.q;
}

/// Matchings reached by re-pairing the girls and homes of up to p triples,
/// ascending.
inline std::vector<Matching> matching_neighbors(const MatchingProblem& m,
                                                const Matching& s) {
  std::set<Matching> out;
  for (int r = 1; r <= m.p; ++r) {
    detail::for_each_combination(m.n, r, [&](const std::vector<int>& boys) {
      std::vector<int> girls, homes;
      for (int b : boys) girls.push_back(s[b][1]), homes.push_back(s[b][2]);
      std::sort(girls.begin(), girls.end());
      std::sort(homes.begin(), homes.end());
      std::vector<int> gp = girls;
      do {
        std::vector<int> hp = homes;
        do {
          Matching cand = s;
          for (int i = 0; i < r; ++i) cand[boys[i]] = {boys[i], gp[i], hp[i]};
          if (cand != s && matching_move_allowed(m, s, cand))
            out.insert(std::move(cand));
        } while (std::next_permutation(hp.begin(), hp.end()));
      } while (std::next_permutation(gp.begin(), gp.end()));
    });
  }
  return {out.begin(), out.end()};
}

/// All n!^2 perfect matchings, ascending.
inline std::vector<Matching> all_matchings(const MatchingProblem& m) {
  std::vector<int> girls(m.n), homes(m.n);
  for (int i = 0; i < m.n; ++i) girls[i] = homes[i] = i;
  std::vector<Matching> out;
  std::vector<int> gp = girls;
  do {
    std::vector<int> hp = homes;
    do {
      Matching cand(m.n);
      for (int b = 0; b < m.n; ++b) cand[b] = {b, gp[b], hp[b]};
      out.push_back(std::move(cand));
    } while (std::next_permutation(hp.begin(), hp.end()));
  } while (std::next_permutation(gp.begin(), gp.end()));
  std::sort(out.begin(), out.end());
  return out;
}

/// Triple-indicator encoding over all n^3 triples, weight maximized.
inline EncodedProblem<Matching> encode_clo(const MatchingProblem& problem) {
  validate(problem);
  auto m = std::make_shared<const MatchingProblem>(problem);
  const int cube = m->n * m->n * m->n;

  EncodedProblem<Matching> enc;
  enc.sense = Sense::maximize;
  enc.instance.dims.nu = cube;
  enc.instance.dims.nu_bar = 0;
  enc.instance.dims.m_cap = 1;
  enc.instance.costs.coeffs = m->weights;

  enc.encode_solution = [m, cube](const Matching& s) {
    Configuration c;
    c.cost_part.assign(cube, 0);
    for (const auto& [b, g, h] : s) c.cost_part[triple_index(*m, b, g, h)] = 1;
    return c;
  };
  enc.decode_solution = [m](const Configuration& c) {
    Matching s;
    for (int b = 0; b < m->n; ++b)
      for (int g = 0; g < m->n; ++g)
        for (int h = 0; h < m->n; ++h)
          if (c.cost_part[triple_index(*m, b, g, h)] == 1)
            s.push_back({b, g, h});
    MatchingProblem probe = *m;
    probe.matching = s;
    validate(probe);
    return s;
  };

  enc.instance.neighborhood = [m, encode = enc.encode_solution,
                               decode = enc.decode_solution](
                                  const Configuration& c) {
    std::vector<Configuration> out;
    for (const auto& nb : matching_neighbors(*m, decode(c)))
      out.push_back(encode(nb));
    return out;
  };
  enc.instance.enumerator = [m, encode = enc.encode_solution] {
    std::vector<Configuration> out;
    for (const auto& s : all_matchings(*m)) out.push_back(encode(s));
    return out;
  };
  enc.instance.start = enc.encode_solution(m->matching);

  CoveringScheme scheme;
  for (int i = 0; i < cube; ++i) scheme.coordinate_clusters.push_back({{i}});
  scheme.cluster_key = [](const Instance&, const Transition& tr) {
    std::string removed, added;
    for (std::size_t i = 0; i < tr.first.cost_part.size(); ++i) {
      if (tr.first.cost_part[i] == 1 && tr.second.cost_part[i] == 0)
        removed += std::to_string(i) + ",";
      if (tr.first.cost_part[i] == 0 && tr.second.cost_part[i] == 1)
        added += std::to_string(i) + ",";
    }
    return "r" + removed + "|a" + added;
  };
  enc.covering = std::move(scheme);
  return enc;
}

// --- exact cover by 3-sets ---------------------------------------------

/// Sorted indices of chosen sets.
using SetSelection = std::vector<int>;

struct ExactCoverProblem {
  int num_elements = 0;                 // a multiple of 3
  std::vector<std::vector<int>> sets;   // 3-sets, each sorted
  std::vector<double> weights;          // in [0, 1]
  int k = 2;                            // move replaces up to k/2 sets
  SetSelection cover;
};

inline bool is_exact_cover(const ExactCoverProblem& x, const SetSelection& sel) {
  std::vector<int> hits(x.num_elements, 0);
  for (int i : sel)
    for (int e : x.sets[i]) ++hits[e];
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

inline void validate(const ExactCoverProblem& x) {
  if (x.num_elements < 3 || x.num_elements % 3 != 0)
    throw std::invalid_argument("exact cover: universe size must be 3q");
  if (x.weights.size() != x.sets.size())
    throw std::invalid_argument("exact cover: weight per set required");
  for (double w : x.weights)
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("exact cover: weight outside [0, 1]");
  for (const auto& s : x.sets) {
    if (s.size() != 3 || !std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("exact cover: sets must be sorted 3-sets");
    for (int e : s)
      if (e < 0 || e >= x.num_elements)
        throw std::invalid_argument("exact cover: element out of range");
  }
  if (x.k < 2) throw std::invalid_argument("exact cover: k must be >= 2");
  if (!std::is_sorted(x.cover.begin(), x.cover.end()) ||
      std::adjacent_find(x.cover.begin(), x.cover.end()) != x.cover.end())
    throw std::invalid_argument("exact cover: selection must be sorted unique");
  for (int i : x.cover)
    if (i < 0 || i >= static_cast<int>(x.sets.size()))
      throw std::invalid_argument("exact cover: set index out of range");
  if (!is_exact_cover(x, x.cover))
    throw std::invalid_argument("exact cover: selection is not an exact cover");
}

inline double selection_weight(const std::vector<double>& weights,
                               const SetSelection& sel) {
  double acc = 0.0;
  for (int i : sel) acc += weights[i];
  return acc;
}

namespace setsystem_detail {

/// Appends every way to partition `free_elems` into sets drawn from
/// `candidates` (ascending indices) to `out`, prefixed by `chosen`.
inline void exact_partitions(const std::vector<std::vector<int>>& sets,
                             const std::vector<int>& candidates,
                             std::set<int>& free_elems, SetSelection& chosen,
                             std::vector<SetSelection>& out) {
  if (free_elems.empty()) {
    out.push_back(chosen);
    return;
  }
  const int target = *free_elems.begin();
  for (int i : candidates) {
    if (!chosen.empty() && i <= chosen.back()) continue;
    const auto& s = sets[i];
    if (std::find(s.begin(), s.end(), target) == s.end()) continue;
    if (!std::all_of(s.begin(), s.end(),
                     [&](int e) { return free_elems.count(e) > 0; }))
      continue;
    for (int e : s) free_elems.erase(e);
    chosen.push_back(i);
    exact_partitions(sets, candidates, free_elems, chosen, out);
    chosen.pop_back();
    for (int e : s) free_elems.insert(e);
  }
}

}  // namespace setsystem_detail

/// Exact covers reached by swapping out up to k/2 chosen sets for an exact
/// re-partition of the freed elements, ascending.
inline std::vector<SetSelection> exact_cover_neighbors(
    const ExactCoverProblem& x, const SetSelection& sel) {
  const int q = static_cast<int>(sel.size());
  std::vector<int> all_indices(x.sets.size());
  for (std::size_t i = 0; i < x.sets.size(); ++i)
    all_indices[i] = static_cast<int>(i);
  std::set<SetSelection> out;
  for (int r = 1; r <= x.k / 2; ++r) {
    if (r > q) break;
    detail::for_each_combination(q, r, [&](const std::vector<int>& pos) {
      SetSelection kept;
      std::set<int> freed;
      std::size_t at = 0;
      for (int i = 0; i < q; ++i) {
        if (at < pos.size() && pos[at] == i) {
          for (int e : x.sets[sel[i]]) freed.insert(e);
          ++at;
        } else {
          kept.push_back(sel[i]);
        }
      }
      std::vector<int> candidates;
      for (int i : all_indices)
        if (std::find(kept.begin(), kept.end(), i) == kept.end() &&
            std::all_of(x.sets[i].begin(), x.sets[i].end(),
                        [&](int e) { return freed.count(e) > 0; }))
          candidates.push_back(i);
      SetSelection chosen;
      std::vector<SetSelection> parts;
      setsystem_detail::exact_partitions(x.sets, candidates, freed, chosen,
                                         parts);
      for (auto& part : parts) {
        SetSelection cand = kept;
        cand.insert(cand.end(), part.begin(), part.end());
        std::sort(cand.begin(), cand.end());
        if (cand != sel) out.insert(std::move(cand));
      }
    });
  }
  return {out.begin(), out.end()};
}

/// All exact covers of the universe, ascending.
inline std::vector<SetSelection> all_exact_covers(const ExactCoverProblem& x) {
  std::vector<int> all_indices(x.sets.size());
  for (std::size_t i = 0; i < x.sets.size(); ++i)
    all_indices[i] = static_cast<int>(i);
  std::set<int> universe;
  for (int e = 0; e < x.num_elements; ++e) universe.insert(e);
  SetSelection chosen;
  std::vector<SetSelection> out;
  setsystem_detail::exact_partitions(x.sets, all_indices, universe, chosen,
                                     out);
  std::sort(out.begin(), out.end());
  return out;
}

// --- plain set cover ----------------------------------------------------

struct SetCoverProblem {
  int num_elements = 0;
  std::vector<std::vector<int>> sets;  // each sorted
  std::vector<double> weights;         // in [0, 1]
  int k = 1;                           // move toggles up to k sets
  SetSelection cover;
};

inline bool is_cover(const SetCoverProblem& sc, const SetSelection& sel) {
  std::vector<char> hit(sc.num_elements, 0);
  for (int i : sel)
    for (int e : sc.sets[i]) hit[e] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

inline void validate(const SetCoverProblem& sc) {
  if (sc.num_elements < 1)
    throw std::invalid_argument("set cover: empty universe");
  if (sc.weights.size() != sc.sets.size())
    throw std::invalid_argument("set cover: weight per set required");
  for (double w : sc.weights)
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("set cover: weight outside [0, 1]");
  for (const auto& s : sc.sets) {
    if (s.empty() || !std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("set cover: sets must be sorted and unique");
    for (int e : s)
      if (e < 0 || e >= sc.num_elements)
        throw std::invalid_argument("set cover: element out of range");
  }
  if (sc.k < 1) throw std::invalid_argument("set cover: k must be >= 1");
  if (!std::is_sorted(sc.cover.begin(), sc.cover.end()) ||
      std::adjacent_find(sc.cover.begin(), sc.cover.end()) != sc.cover.end())
    throw std::invalid_argument("set cover: selection must be sorted unique");
  for (int i : sc.cover)
    if (i < 0 || i >= static_cast<int>(sc.sets.size()))
      throw std::invalid_argument("set cover: set index out of range");
  if (!is_cover(sc, sc.cover))
    throw std::invalid_argument("set cover: selection does not cover");
}

/// Covers reached by toggling up to k set memberships, ascending.
inline std::vector<SetSelection> set_cover_neighbors(const SetCoverProblem& sc,
                                                     const SetSelection& sel) {
  const int n = static_cast<int>(sc.sets.size());
  std::set<SetSelection> out;
  for (int r = 1; r <= sc.k; ++r) {
    detail::for_each_combination(n, r, [&](const std::vector<int>& toggles) {
      SetSelection cand;
      std::size_t at = 0;
      std::set<int> flip(toggles.begin(), toggles.end());
      for (int i = 0; i < n; ++i) {
        const bool had = at < sel.size() && sel[at] == i;
        if (had) ++at;
        if (had != (flip.count(i) > 0)) cand.push_back(i);
      }
      if (is_cover(sc, cand)) out.insert(std::move(cand));
    });
  }
  return {out.begin(), out.end()};
}

/// All covering subsets, ascending.
inline std::vector<SetSelection> all_covers(const SetCoverProblem& sc) {
  const int n = static_cast<int>(sc.sets.size());
  if (n > 24) throw ScaleError("set cover: too many sets to enumerate");
  std::vector<SetSelection> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    SetSelection sel;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) sel.push_back(i);
    if (is_cover(sc, sel)) out.push_back(std::move(sel));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- capped hitting set ---------------------------------------------------

/// Sorted ground-element indices.
using GroundSelection = std::vector<int>;

struct HittingSetProblem {
  int num_ground = 0;
  std::vector<std::vector<int>> sets;  // subsets of the ground set, sorted
  std::vector<double> weights;         // in [0, 1]
  int max_size = 1;                    // cap on the selection size
  int k = 1;                           // max adds and max removals per move
  GroundSelection selection;
};

inline void validate(const HittingSetProblem& hs) {
  if (hs.num_ground < 1)
    throw std::invalid_argument("hitting set: empty ground set");
  if (hs.weights.size() != hs.sets.size())
    throw std::invalid_argument("hitting set: weight per set required");
  for (double w : hs.weights)
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("hitting set: weight outside [0, 1]");
  for (const auto& s : hs.sets) {
    if (s.empty() || !std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("hitting set: sets must be sorted and unique");
    for (int e : s)
      if (e < 0 || e >= hs.num_ground)
        throw std::invalid_argument("hitting set: element out of range");
  }
  if (hs.max_size < 1 || hs.max_size > hs.num_ground)
    throw std::invalid_argument("hitting set: cap must be in 1..ground size");
  if (hs.k < 1) throw std::invalid_argument("hitting set: k must be >= 1");
  if (!std::is_sorted(hs.selection.begin(), hs.selection.end()) ||
      std::adjacent_find(hs.selection.begin(), hs.selection.end()) !=
          hs.selection.end())
    throw std::invalid_argument("hitting set: selection must be sorted unique");
  if (static_cast<int>(hs.selection.size()) > hs.max_size)
    throw std::invalid_argument("hitting set: selection exceeds cap");
  for (int e : hs.selection)
    if (e < 0 || e >= hs.num_ground)
      throw std::invalid_argument("hitting set: selected element out of range");
}

inline double hitting_weight(const HittingSetProblem& hs,
                             const GroundSelection& sel) {
  double acc = 0.0;
  for (std::size_t i = 0; i < hs.sets.size(); ++i) {
    for (int e : hs.sets[i])
      if (std::binary_search(sel.begin(), sel.end(), e)) {
        acc += hs.weights[i];
        break;
      }
  }
  return acc;
}

/// Max over ground elements of the number of sets containing it.
inline int element_occurrence_bound(const HittingSetProblem& hs) {
  std::vector<int> count(hs.num_ground, 0);
  for (const auto& s : hs.sets)
    for (int e : s) ++count[e];
  return *std::max_element(count.begin(), count.end());
}

/// Selections reached by adding up to k outside elements and removing up to
/// k chosen ones (at least one change, cap respected), ascending.
inline std::vector<GroundSelection> hitting_neighbors(
    const HittingSetProblem& hs, const GroundSelection& sel) {
  std::vector<int> outside;
  for (int e = 0; e < hs.num_ground; ++e)
    if (!std::binary_search(sel.begin(), sel.end(), e)) outside.push_back(e);
  const int inside = static_cast<int>(sel.size());
  std::set<GroundSelection> out;
  for (int adds = 0; adds <= hs.k; ++adds) {
    for (int removes = 0; removes <= hs.k; ++removes) {
      if (adds + removes == 0) continue;
      if (inside - removes + adds > hs.max_size || removes > inside ||
          adds > static_cast<int>(outside.size()))
        continue;
      detail::for_each_combination(
          static_cast<int>(outside.size()), adds,
          [&](const std::vector<int>& add_pos) {
            detail::for_each_combination(
                inside, removes, [&](const std::vector<int>& rm_pos) {
                  GroundSelection cand;
                  std::size_t at = 0;
                  for (int i = 0; i < inside; ++i) {
                    if (at < rm_pos.size() && rm_pos[at] == i)
                      ++at;
                    else
                      cand.push_back(sel[i]);
                  }
                  for (int j : add_pos) cand.push_back(outside[j]);
                  std::sort(cand.begin(), cand.end());
                  out.insert(std::move(cand));
                });
          });
    }
  }
  return {out.begin(), out.end()};
}

/// All selections within the size cap, ascending.
inline std::vector<GroundSelection> all_selections(
    const HittingSetProblem& hs) {
  std::vector<GroundSelection> out;
  for (int r = 0; r <= hs.max_size; ++r)
    detail::for_each_combination(hs.num_ground, r,
                                 [&](const std::vector<int>& sel) {
                                   out.push_back(sel);
                                 });
  std::sort(out.begin(), out.end());
  return out;
}

// --- shared encoders ------------------------------------------------------

namespace setsystem_detail {

/// Indicator encoding over set indices shared by both cover variants.
template <class Problem>
EncodedProblem<SetSelection> encode_selection(
    std::shared_ptr<const Problem> prob, Sense sense,
    std::vector<SetSelection> (*neighbors)(const Problem&,
                                           const SetSelection&),
    std::vector<SetSelection> (*enumerate)(const Problem&),
    const SetSelection& start) {
  const int n = static_cast<int>(prob->sets.size());

  EncodedProblem<SetSelection> enc;
  enc.sense = sense;
  enc.instance.dims.nu = n;
  enc.instance.dims.nu_bar = 0;
  enc.instance.dims.m_cap = 1;
  enc.instance.costs.coeffs = prob->weights;

  enc.encode_solution = [n](const SetSelection& sel) {
    Configuration c;
    c.cost_part.assign(n, 0);
    for (int i : sel) c.cost_part[i] = 1;
    return c;
  };
  enc.decode_solution = [](const Configuration& c) {
    SetSelection sel;
    for (std::size_t i = 0; i < c.cost_part.size(); ++i)
      if (c.cost_part[i] == 1) sel.push_back(static_cast<int>(i));
    return sel;
  };

  enc.instance.neighborhood = [prob, neighbors, encode = enc.encode_solution,
                               decode = enc.decode_solution](
                                  const Configuration& c) {
    std::vector<Configuration> out;
    for (const auto& nb : neighbors(*prob, decode(c)))
      out.push_back(encode(nb));
    return out;
  };
  enc.instance.enumerator = [prob, enumerate, encode = enc.encode_solution] {
    std::vector<Configuration> out;
    for (const auto& sel : enumerate(*prob)) out.push_back(encode(sel));
    return out;
  };
  enc.instance.start = enc.encode_solution(start);

  CoveringScheme scheme;
  for (int i = 0; i < n; ++i) scheme.coordinate_clusters.push_back({{i}});
  scheme.cluster_key = [](const Instance&, const Transition& tr) {
    std::string out = "d";
    for (std::size_t i = 0; i < tr.first.cost_part.size(); ++i)
      if (tr.first.cost_part[i] != tr.second.cost_part[i])
        out += std::to_string(i) + ",";
    return out;
  };
  enc.covering = std::move(scheme);
  return enc;
}

}  // namespace setsystem_detail

inline EncodedProblem<SetSelection> encode_clo(const ExactCoverProblem& problem) {
  validate(problem);
  auto x = std::make_shared<const ExactCoverProblem>(problem);
  return setsystem_detail::encode_selection<ExactCoverProblem>(
      x, Sense::maximize, &exact_cover_neighbors, &all_exact_covers, x->cover);
}

inline EncodedProblem<SetSelection> encode_clo(const SetCoverProblem& problem) {
  validate(problem);
  auto sc = std::make_shared<const SetCoverProblem>(problem);
  return setsystem_detail::encode_selection<SetCoverProblem>(
      sc, Sense::minimize, &set_cover_neighbors, &all_covers, sc->cover);
}

/// Hit-set indicator encoding: cost coordinate i flags set i intersected,
/// auxiliary bits carry the selection, weight maximized.
inline EncodedProblem<GroundSelection> encode_clo(
    const HittingSetProblem& problem) {
  validate(problem);
  auto hs = std::make_shared<const HittingSetProblem>(problem);
  const int m = static_cast<int>(hs->sets.size());
  const int n = hs->num_ground;

  EncodedProblem<GroundSelection> enc;
  enc.sense = Sense::maximize;
  enc.instance.dims.nu = m;
  enc.instance.dims.nu_bar = n;
  enc.instance.dims.m_cap = 1;
  enc.instance.costs.coeffs = hs->weights;

  enc.encode_solution = [hs, m, n](const GroundSelection& sel) {
    Configuration c;
    c.cost_part.assign(m, 0);
    for (int i = 0; i < m; ++i) {
      for (int e : hs->sets[i])
        if (std::binary_search(sel.begin(), sel.end(), e)) {
          c.cost_part[i] = 1;
          break;
        }
    }
    c.noncost_part.assign(n, 0);
    for (int e : sel) c.noncost_part[e] = 1;
    return c;
  };
  enc.decode_solution = [](const Configuration& c) {
    GroundSelection sel;
    for (std::size_t e = 0; e < c.noncost_part.size(); ++e)
      if (c.noncost_part[e]) sel.push_back(static_cast<int>(e));
    return sel;
  };

  enc.instance.neighborhood = [hs, encode = enc.encode_solution,
                               decode = enc.decode_solution](
                                  const Configuration& c) {
    std::vector<Configuration> out;
    for (const auto& nb : hitting_neighbors(*hs, decode(c)))
      out.push_back(encode(nb));
    return out;
  };
  enc.instance.enumerator = [hs, encode = enc.encode_solution] {
    std::vector<Configuration> out;
    for (const auto& sel : all_selections(*hs)) out.push_back(encode(sel));
    return out;
  };
  enc.instance.start = enc.encode_solution(hs->selection);

  CoveringScheme scheme;
  for (int i = 0; i < m; ++i) scheme.coordinate_clusters.push_back({{i}});
  scheme.cluster_key = [](const Instance&, const Transition& tr) {
    std::string out = "e";
    for (std::size_t e = 0; e < tr.first.noncost_part.size(); ++e)
      if (tr.first.noncost_part[e] != tr.second.noncost_part[e])
        out += std::to_string(e) + ",";
    return out;
  };
  enc.covering = std::move(scheme);
  return enc;
}

}  // namespace clo::problems
