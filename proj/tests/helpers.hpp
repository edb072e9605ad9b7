#pragma once

// Shared fixtures for the unit suite: tiny hand-built instances whose ground
// truth is computable by inspection, plus the faithfulness harness run
// against every problem encoder.

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "clo/core.hpp"
#include "clo/covering.hpp"
#include "clo/oracle.hpp"

namespace testutil {

// All configurations with cost entries in 0..m_cap and no auxiliary part.
inline std::vector<clo::Configuration> all_cost_tuples(int nu, int m_cap) {
  std::vector<clo::Configuration> out;
  clo::Configuration cur;
  cur.cost_part.assign(nu, 0);
  while (true) {
    out.push_back(cur);
    int i = 0;
    while (i < nu && cur.cost_part[i] == m_cap) cur.cost_part[i++] = 0;
    if (i == nu) break;
    ++cur.cost_part[i];
  }
  return out;
}

// Full integer lattice {0..M}^nu with one-coordinate +-1 steps.
inline clo::Instance lattice_instance(std::vector<double> coeffs, int m_cap) {
  clo::Instance inst;
  inst.dims = {static_cast<int>(coeffs.size()), 0, m_cap};
  inst.costs.coeffs = std::move(coeffs);
  inst.neighborhood = [m_cap](const clo::Configuration& s) {
    std::vector<clo::Configuration> nbrs;
    for (std::size_t i = 0; i < s.cost_part.size(); ++i) {
      for (int d : {-1, +1}) {
        const int v = s.cost_part[i] + d;
        if (v < 0 || v > m_cap) continue;
        clo::Configuration t = s;
        t.cost_part[i] = v;
        nbrs.push_back(std::move(t));
      }
    }
    return nbrs;
  };
  const int nu = inst.dims.nu;
  inst.enumerator = [nu, m_cap] { return all_cost_tuples(nu, m_cap); };
  inst.start.cost_part.assign(nu, m_cap);
  return inst;
}

// Checks that an encoder is a faithful image of its native problem: the
// solution set maps bijectively onto the enumerated configurations, linear
// cost reproduces the native objective, and neighborhoods correspond
// one-to-one.  Returns an empty string on success, a diagnostic otherwise.
template <class Sol>
std::string check_encoding(
    const clo::EncodedProblem<Sol>& enc, const std::vector<Sol>& solutions,
    const std::function<double(const Sol&)>& objective,
    const std::function<std::vector<Sol>(const Sol&)>& neighbors,
    double tol = 1e-9) {
  std::set<clo::Configuration> image;
  for (const auto& sol : solutions) {
    const clo::Configuration s = enc.encode_solution(sol);
    clo::validate(enc.instance.dims, s);
    if (!image.insert(s).second) return "two solutions share an encoding";
    if (!(enc.decode_solution(s) == sol)) return "decode(encode) changed a solution";
    if (std::fabs(clo::cost(enc.instance, s) - objective(sol)) > tol)
      return "cost disagrees with the native objective";

    auto got = enc.instance.neighborhood(s);
    std::vector<clo::Configuration> want;
    for (const auto& t : neighbors(sol)) want.push_back(enc.encode_solution(t));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) return "neighborhood does not mirror the native moves";
  }
  auto enumerated = clo::enumerate_configurations(enc.instance);
  if (enumerated.size() != image.size() ||
      !std::equal(enumerated.begin(), enumerated.end(), image.begin()))
    return "enumerator does not produce exactly the encoded solutions";
  return {};
}

// Expands and certifies the encoder's prescribed covering.
template <class Sol>
clo::CertifyResult certify_prescribed(const clo::EncodedProblem<Sol>& enc) {
  const clo::Covering cov = clo::expand_covering(enc.instance, enc.covering);
  return clo::certify(enc.instance, cov);
}

}  // namespace testutil
