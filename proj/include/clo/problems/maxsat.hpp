#pragma once

// Weighted CNF formulas under the k-Flip neighborhood: flip up to k
// variables of the assignment at once.

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "clo/core.hpp"
#include "clo/covering.hpp"
#include "clo/detail.hpp"

namespace clo::problems {

/// One bit per variable.
using TruthAssignment = std::vector<std::uint8_t>;

struct CnfProblem {
  int num_variables = 0;
  std::vector<std::vector<int>> clauses;  // literals: +v or -v, 1-based
  std::vector<double> weights;            // in [0, 1]
  TruthAssignment assignment;
  int k = 1;
};

inline void validate(const CnfProblem& f) {
  if (f.num_variables < 0) throw std::invalid_argument("cnf: negative n");
  if (f.weights.size() != f.clauses.size())
    throw std::invalid_argument("cnf: weight per clause required");
  for (double w : f.weights)
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("cnf: weight outside [0, 1]");
  for (const auto& clause : f.clauses) {
    if (clause.empty()) throw std::invalid_argument("cnf: empty clause");
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > f.num_variables)
        throw std::invalid_argument("cnf: literal out of range");
  }
  if (f.k < 1 || f.k > std::max(f.num_variables, 1))
    throw std::invalid_argument("cnf: k must be in 1..n");
  if (static_cast<int>(f.assignment.size()) != f.num_variables)
    throw std::invalid_argument("cnf: assignment has wrong length");
  for (auto b : f.assignment)
    if (b > 1) throw std::invalid_argument("cnf: assignment bits must be 0/1");
}

/// Max over variables of the number of distinct clauses mentioning it in
/// either polarity.
inline int occurrence_bound(const CnfProblem& f) {
  std::vector<std::set<int>> holds(f.num_variables);
  for (std::size_t c = 0; c < f.clauses.size(); ++c)
    for (int lit : f.clauses[c])
      holds[std::abs(lit) - 1].insert(static_cast<int>(c));
  int best = 0;
  for (const auto& s : holds) best = std::max(best, static_cast<int>(s.size()));
  return best;
}

inline bool clause_satisfied(const std::vector<int>& clause,
                             const TruthAssignment& a) {
  for (int lit : clause) {
    const bool value = a[std::abs(lit) - 1] != 0;
    if (value == (lit > 0)) return true;
  }
  return false;
}

inline double maxsat_weight(const CnfProblem& f, const TruthAssignment& a) {
  double acc = 0.0;
  for (std::size_t c = 0; c < f.clauses.size(); ++c)
    if (clause_satisfied(f.clauses[c], a)) acc += f.weights[c];
  return acc;
}

/// Assignments at Hamming distance 1..k, distance-major then flipping the
/// lexicographically smallest variable sets first.
inline std::vector<TruthAssignment> kflip_neighbors(const CnfProblem& f,
                                                    const TruthAssignment& a,
                                                    int k) {
  std::vector<TruthAssignment> out;
  for (int r = 1; r <= k; ++r)
    detail::for_each_combination(f.num_variables, r,
                                 [&](const std::vector<int>& vars) {
                                   TruthAssignment b = a;
                                   for (int v : vars) b[v] ^= 1;
                                   out.push_back(std::move(b));
                                 });
  return out;
}

/// Clause-satisfaction encoding: cost coordinate i indicates clause i is
/// satisfied, auxiliary bits carry the assignment, weight is maximized.
inline EncodedProblem<TruthAssignment> encode_clo(const CnfProblem& problem) {
  validate(problem);
  auto f = std::make_shared<const CnfProblem>(problem);
  const int m = static_cast<int>(f->clauses.size());
  const int n = f->num_variables;

  EncodedProblem<TruthAssignment> enc;
  enc.sense = Sense::maximize;
  enc.instance.dims.nu = m;
  enc.instance.dims.nu_bar = n;
  enc.instance.dims.m_cap = 1;
  enc.instance.costs.coeffs = f->weights;

  enc.encode_solution = [f, m](const TruthAssignment& a) {
    Configuration s;
    s.cost_part.assign(m, 0);
    for (int c = 0; c < m; ++c)
      if (clause_satisfied(f->clauses[c], a)) s.cost_part[c] = 1;
    s.noncost_part = a;
    return s;
  };
  enc.decode_solution = [](const Configuration& s) { return s.noncost_part; };

  enc.instance.neighborhood = [f, encode = enc.encode_solution](
                                  const Configuration& s) {
    std::vector<Configuration> out;
    for (const auto& nb : kflip_neighbors(*f, s.noncost_part, f->k))
      out.push_back(encode(nb));
    return out;
  };
  enc.instance.enumerator = [f, n, encode = enc.encode_solution] {
    std::vector<Configuration> out;
    TruthAssignment a(n, 0);
    while (true) {
      out.push_back(encode(a));
      int i = 0;
      while (i < n && a[i] == 1) a[i++] = 0;
      if (i == n) break;
      a[i] = 1;
    }
    return out;
  };
  enc.instance.start = enc.encode_solution(f->assignment);

  CoveringScheme scheme;
  for (int c = 0; c < m; ++c) scheme.coordinate_clusters.push_back({{c}});
  scheme.cluster_key = [k = f->k](const Instance&, const Transition& tr) {
    std::string out = "x";
    for (std::size_t v = 0; v < tr.first.noncost_part.size(); ++v)
      if (tr.first.noncost_part[v] != tr.second.noncost_part[v]) {
        out += std::to_string(v);
        if (k == 1) out += ">" + std::to_string(int(tr.second.noncost_part[v]));
        out += ",";
      }
    return out;
  };
  enc.covering = std::move(scheme);
  return enc;
}

}  // namespace clo::problems
