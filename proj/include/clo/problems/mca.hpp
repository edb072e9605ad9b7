#pragma once

// Bounded-arity constraint maximization: variables over a finite alphabet,
// weighted tables over small scopes, one-variable revaluation moves.

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "clo/core.hpp"
#include "clo/covering.hpp"
#include "clo/detail.hpp"

namespace clo::problems {

/// One alphabet value per variable.
using IntAssignment = std::vector<int>;

struct McaProblem {
  int num_variables = 0;
  int alphabet = 2;        // values 0..alphabet-1
  int max_arity = 1;       // scope size bound
  int max_occurrence = 1;  // constraints per variable bound
  std::vector<std::vector<int>> scopes;
  std::vector<std::vector<double>> tables;  // row-major, first scope
                                            // variable most significant
  IntAssignment assignment;
};

namespace mca_detail {

inline std::int64_t checked_power(int base, int exp, std::int64_t cap) {
  std::int64_t acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > cap) return cap + 1;
  }
  return acc;
}

}  // namespace mca_detail

inline void validate(const McaProblem& p) {
  if (p.num_variables < 1) throw std::invalid_argument("mca: need a variable");
  if (p.alphabet < 2) throw std::invalid_argument("mca: alphabet too small");
  if (p.max_arity < 1 || p.max_occurrence < 1)
    throw std::invalid_argument("mca: arity and occurrence bounds must be >= 1");
  if (mca_detail::checked_power(p.alphabet, p.max_arity, 10000) > 10000)
    throw ScaleError("mca: table size r^p exceeds 10^4");
  if (p.tables.size() != p.scopes.size())
    throw std::invalid_argument("mca: table per scope required");
  std::vector<int> occurrence(p.num_variables, 0);
  for (std::size_t i = 0; i < p.scopes.size(); ++i) {
    const auto& scope = p.scopes[i];
    if (scope.empty() || static_cast<int>(scope.size()) > p.max_arity)
      throw std::invalid_argument("mca: scope size outside 1..max arity");
    std::vector<int> sorted = scope;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("mca: repeated variable in scope");
    for (int v : scope) {
      if (v < 0 || v >= p.num_variables)
        throw std::invalid_argument("mca: scope variable out of range");
      if (++occurrence[v] > p.max_occurrence)
        throw std::invalid_argument("mca: variable occurs too often");
    }
    std::size_t want = 1;
    for (std::size_t j = 0; j < scope.size(); ++j) want *= p.alphabet;
    if (p.tables[i].size() != want)
      throw std::invalid_argument("mca: table size must be r^arity");
    for (double w : p.tables[i])
      if (!(w >= 0.0 && w <= 1.0))
        throw std::invalid_argument("mca: table entry outside [0, 1]");
  }
  if (static_cast<int>(p.assignment.size()) != p.num_variables)
    throw std::invalid_argument("mca: assignment has wrong length");
  for (int v : p.assignment)
    if (v < 0 || v >= p.alphabet)
      throw std::invalid_argument("mca: assignment value out of range");
}

/// Row-major index of the assignment restricted to the scope of constraint i.
inline int table_offset(const McaProblem& p, int i, const IntAssignment& a) {
  int at = 0;
  for (int v : p.scopes[i]) at = at * p.alphabet + a[v];
  return at;
}

inline double mca_weight(const McaProblem& p, const IntAssignment& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.scopes.size(); ++i)
    acc += p.tables[i][table_offset(p, static_cast<int>(i), a)];
  return acc;
}

/// The n*(alphabet-1) single-variable revaluations, variable-major then new
/// value ascending.
inline std::vector<IntAssignment> mca_neighbors(const McaProblem& p,
                                                const IntAssignment& a) {
  std::vector<IntAssignment> out;
  for (int j = 0; j < p.num_variables; ++j)
    for (int v = 0; v < p.alphabet; ++v) {
      if (v == a[j]) continue;
      IntAssignment nb = a;
      nb[j] = v;
      out.push_back(std::move(nb));
    }
  return out;
}

/// Table-cell indicator encoding: one block of r^arity coordinates per
/// constraint with exactly one coordinate set, weight maximized.
inline EncodedProblem<IntAssignment> encode_clo(const McaProblem& problem) {
  validate(problem);
  auto p = std::make_shared<const McaProblem>(problem);
  const int n = p->num_variables;
  const int bits = detail::bits_for(p->alphabet);

  std::vector<int> block_base(p->scopes.size() + 1, 0);
  for (std::size_t i = 0; i < p->scopes.size(); ++i)
    block_base[i + 1] =
        block_base[i] + static_cast<int>(p->tables[i].size());
  const int nu = block_base.back();

  EncodedProblem<IntAssignment> enc;
  enc.sense = Sense::maximize;
  enc.instance.dims.nu = nu;
  enc.instance.dims.nu_bar = n * bits;
  enc.instance.dims.m_cap = 1;
  enc.instance.costs.coeffs.reserve(nu);
  for (const auto& table : p->tables)
    enc.instance.costs.coeffs.insert(enc.instance.costs.coeffs.end(),
                                     table.begin(), table.end());

  enc.encode_solution = [p, n, bits, block_base, nu](const IntAssignment& a) {
    Configuration c;
    c.cost_part.assign(nu, 0);
    for (std::size_t i = 0; i < p->scopes.size(); ++i)
      c.cost_part[block_base[i] +
                  table_offset(*p, static_cast<int>(i), a)] = 1;
    c.noncost_part.assign(n * bits, 0);
    for (int j = 0; j < n; ++j)
      for (int b = 0; b < bits; ++b)
        c.noncost_part[j * bits + b] = (a[j] >> b) & 1;
    return c;
  };
  enc.decode_solution = [p, n, bits](const Configuration& c) {
    IntAssignment a(n, 0);
    for (int j = 0; j < n; ++j) {
      for (int b = 0; b < bits; ++b)
        a[j] |= int(c.noncost_part[j * bits + b]) << b;
      if (a[j] >= p->alphabet)
        throw std::invalid_argument("decode: value out of range");
    }
    return a;
  };

  enc.instance.neighborhood = [p, encode = enc.encode_solution,
                               decode = enc.decode_solution](
                                  const Configuration& c) {
    std::vector<Configuration> out;
    for (const auto& nb : mca_neighbors(*p, decode(c)))
      out.push_back(encode(nb));
    return out;
  };
  enc.instance.enumerator = [p, n, encode = enc.encode_solution] {
    std::vector<Configuration> out;
    IntAssignment a(n, 0);
    while (true) {
      out.push_back(encode(a));
      int i = 0;
      while (i < n && a[i] == p->alphabet - 1) a[i++] = 0;
      if (i == n) break;
      ++a[i];
    }
    return out;
  };
  enc.instance.start = enc.encode_solution(p->assignment);

  CoveringScheme scheme;
  for (std::size_t i = 0; i < p->scopes.size(); ++i) {
    CoordinateCluster block;
    for (int at = block_base[i]; at < block_base[i + 1]; ++at)
      block.indices.push_back(at);
    scheme.coordinate_clusters.push_back(std::move(block));
  }
  scheme.cluster_key = [p, decode = enc.decode_solution](
                           const Instance&, const Transition& tr) {
    const IntAssignment from = decode(tr.first), to = decode(tr.second);
    for (int j = 0; j < p->num_variables; ++j)
      if (from[j] != to[j])
        return "x" + std::to_string(j) + ":" + std::to_string(from[j]) + ">" +
               std::to_string(to[j]);
    return std::string("x?");
  };
  enc.covering = std::move(scheme);
  return enc;
}

}  // namespace clo::problems
