#pragma once

// Core model of combinatorial local optimization: configurations with an
// integer cost part and a binary non-cost part, a linear cost functional,
// and a neighborhood oracle.  Everything downstream (search engine,
// enumeration oracle, covering certification) works on these types.

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clo {

/// Raised when an operation only defined for desk-scale inputs is asked to
/// process something too large (enumeration budgets, path products, ...).
struct ScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Sense { minimize, maximize };

struct Dims {
  int nu = 0;                 // cost-relevant coordinates
  int nu_bar = 0;             // auxiliary binary coordinates
  std::int64_t m_cap = 1;     // cost coordinates range over 0..m_cap
};

/// One point of the search space.  Ordering is lexicographic, cost part
/// first, and doubles as the deterministic tie-breaker everywhere.
struct Configuration {
  std::vector<std::int64_t> cost_part;
  std::vector<std::uint8_t> noncost_part;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

using Transition = std::pair<Configuration, Configuration>;

struct CostVector {
  std::vector<double> coeffs;
};

using NeighborhoodFn =
    std::function<std::vector<Configuration>(const Configuration&)>;
using EnumeratorFn = std::function<std::vector<Configuration>()>;

struct Instance {
  Dims dims;
  CostVector costs;
  // Coefficients are nominally in [-1, 1]; encoders that need a larger
  // range record the blow-up here instead of renormalizing.
  double cost_scale = 1.0;
  NeighborhoodFn neighborhood;
  Configuration start;
  // Optional finite generator of the whole feasible set; required by the
  // enumeration oracle, absent for instances that are too large to list.
  EnumeratorFn enumerator;
  // Closed-form count of what the enumerator would return, checked against
  // the node budget before anything is materialized.  Zero means unknown.
  double space_size = 0.0;
};

inline void validate(const Dims& d) {
  if (d.nu < 0 || d.nu_bar < 0 || d.m_cap < 1)
    throw std::invalid_argument("dims: nu, nu_bar must be >= 0 and m_cap >= 1");
}

inline void validate(const Dims& d, const Configuration& s) {
  if (static_cast<int>(s.cost_part.size()) != d.nu)
    throw std::invalid_argument("configuration: cost part has wrong dimension");
  if (static_cast<int>(s.noncost_part.size()) != d.nu_bar)
    throw std::invalid_argument("configuration: non-cost part has wrong dimension");
  for (std::int64_t v : s.cost_part)
    if (v < 0 || v > d.m_cap)
      throw std::invalid_argument("configuration: cost entry outside 0..M");
  for (int b : s.noncost_part)
    if (b != 0 && b != 1)
      throw std::invalid_argument("configuration: non-cost entry not a bit");
}

inline void validate(const Instance& inst) {
  validate(inst.dims);
  if (static_cast<int>(inst.costs.coeffs.size()) != inst.dims.nu)
    throw std::invalid_argument("instance: cost vector has wrong dimension");
  if (!(inst.cost_scale >= 1.0))
    throw std::invalid_argument("instance: cost scale must be >= 1");
  for (double c : inst.costs.coeffs)
    if (!(c >= -inst.cost_scale && c <= inst.cost_scale))
      throw std::invalid_argument("instance: coefficient outside scaled range");
  if (!inst.neighborhood)
    throw std::invalid_argument("instance: missing neighborhood oracle");
  validate(inst.dims, inst.start);
}

inline double cost(const Instance& inst, const Configuration& s) {
  if (s.cost_part.size() != inst.costs.coeffs.size())
    throw std::invalid_argument("cost: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < s.cost_part.size(); ++i)
    acc += inst.costs.coeffs[i] * static_cast<double>(s.cost_part[i]);
  return acc;
}

/// Signed gain of moving from `s` to `t`; positive means strictly better.
inline double improvement(const Instance& inst, Sense sense,
                          const Configuration& s, const Configuration& t) {
  const double cs = cost(inst, s), ct = cost(inst, t);
  return sense == Sense::minimize ? cs - ct : ct - cs;
}

struct ImprovingMove {
  Configuration to;
  double delta = 0.0;  // > 0, magnitude of the improvement
};

inline std::vector<ImprovingMove> improving_neighbors(const Instance& inst,
                                                      Sense sense,
                                                      const Configuration& s) {
  std::vector<ImprovingMove> out;
  for (auto& t : inst.neighborhood(s)) {
    const double d = improvement(inst, sense, s, t);
    if (d > 0.0) out.push_back({std::move(t), d});
  }
  return out;
}

inline bool is_local_optimum(const Instance& inst, Sense sense,
                             const Configuration& s) {
  for (const auto& t : inst.neighborhood(s))
    if (improvement(inst, sense, s, t) > 0.0) return false;
  return true;
}

}  // namespace clo
