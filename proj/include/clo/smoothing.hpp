#pragma once

// Perturbation model for cost coefficients: every coefficient gets its own
// density with bounded height phi, so an adversary can concentrate mass near
// a nominal value but never into a point.  Uniform windows of width 1/phi
// are the canonical worst case and the only densities implemented.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "clo/core.hpp"
#include "clo/rng.hpp"

namespace clo {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
};

enum class DensityKind { uniform_window, uniform_full };

/// Places a window of width 1/phi centered on `nominal`, shifted just enough
/// to stay inside the support.
inline Interval fit_window(double nominal, double phi, Interval support) {
  if (support.width() <= 0.0)
    throw std::invalid_argument("fit_window: empty support");
  if (!(phi * support.width() >= 1.0))
    throw std::invalid_argument("fit_window: phi below 1/|support|");
  if (nominal < support.lo || nominal > support.hi)
    throw std::invalid_argument("fit_window: nominal outside support");
  const double w = 1.0 / phi;
  double lo = nominal - w / 2.0;
  if (lo < support.lo) lo = support.lo;
  if (lo + w > support.hi) lo = support.hi - w;
  return {lo, lo + w};
}

struct PhiDensity {
  DensityKind kind = DensityKind::uniform_window;
  Interval support;
  double nominal = 0.0;
  double phi = 1.0;

  Interval window() const {
    return kind == DensityKind::uniform_full ? support
                                             : fit_window(nominal, phi, support);
  }
  double max_density() const {
    return kind == DensityKind::uniform_full ? 1.0 / support.width() : phi;
  }
  double mean() const {
    const Interval w = window();
    return (w.lo + w.hi) / 2.0;
  }
  double sample(SplitMix64& g) const {
    const Interval w = window();
    return w.lo + w.width() * g.next_double();
  }
};

inline void validate(const PhiDensity& d) {
  if (d.support.width() <= 0.0)
    throw std::invalid_argument("density: empty support");
  if (!(d.phi * d.support.width() >= 1.0))
    throw std::invalid_argument("density: phi below 1/|support|");
  if (d.nominal < d.support.lo || d.nominal > d.support.hi)
    throw std::invalid_argument("density: nominal outside support");
}

/// Independent per-coordinate densities plus the seed of the whole draw.
struct SmoothedCostModel {
  std::vector<PhiDensity> densities;
  std::uint64_t seed = 0;

  double max_phi() const {
    double p = 0.0;
    for (const auto& d : densities) p = std::max(p, d.phi);
    return p;
  }
};

inline void validate(const SmoothedCostModel& m) {
  if (m.densities.empty())
    throw std::invalid_argument("smoothing: no densities");
  for (const auto& d : m.densities) validate(d);
}

/// Draws one full coefficient vector.  Coordinate i of replica r only
/// depends on (seed, r, i), so draws commute and replicas are independent.
inline CostVector sample_costs(const SmoothedCostModel& m,
                               std::uint64_t replica = 0) {
  CostVector out;
  out.coeffs.reserve(m.densities.size());
  const std::uint64_t rkey = substream(m.seed, replica);
  for (std::size_t i = 0; i < m.densities.size(); ++i) {
    SplitMix64 g(substream(rkey, i));
    out.coeffs.push_back(m.densities[i].sample(g));
  }
  return out;
}

struct IntervalHitCheck {
  double p_hat = 0.0;
  double bound = 0.0;
  double stderr_ = 0.0;
  bool pass = false;
};

/// Monte Carlo estimate of P(0 <= xi . X <= eps) against the analytic
/// bound min(1/max|xi|, sqrt(2)/||xi||_2) * eps * phi.
inline IntervalHitCheck interval_hit_estimate(const std::vector<long long>& xi,
                                           double eps,
                                           const SmoothedCostModel& model,
                                           std::uint64_t trials) {
  if (xi.size() != model.densities.size())
    throw std::invalid_argument("interval hit: dimension mismatch");
  if (trials == 0) throw std::invalid_argument("interval hit: no trials");
  double linf = 0.0, l2sq = 0.0;
  for (long long v : xi) {
    linf = std::max(linf, std::fabs(static_cast<double>(v)));
    l2sq += static_cast<double>(v) * static_cast<double>(v);
  }
  if (linf == 0.0) throw std::invalid_argument("interval hit: xi is zero");

  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const CostVector x = sample_costs(model, t);
    double dot = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i)
      dot += static_cast<double>(xi[i]) * x.coeffs[i];
    if (dot >= 0.0 && dot <= eps) ++hits;
  }

  IntervalHitCheck r;
  r.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  r.bound = std::min(1.0 / linf, std::sqrt(2.0) / std::sqrt(l2sq)) * eps *
            model.max_phi();
  r.stderr_ = std::sqrt(r.p_hat * (1.0 - r.p_hat) /
                        static_cast<double>(trials));
  r.pass = r.p_hat <= r.bound + 3.0 * r.stderr_;
  return r;
}

}  // namespace clo
