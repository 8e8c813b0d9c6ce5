#pragma once

// Random instances shared by the unit tests and the acceptance run.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qgs/spectral.hpp"
#include "qgs/subspace.hpp"
#include "qgs/verify.hpp"

namespace fixture {

using namespace qgs;

// small connected graphs with random lengths, fluxes and vertex conditions
struct Instance {
  MetricGraph g;
  BoundarySubspace y;
};

inline Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv_dist(1, 4);
  std::uniform_real_distribution<double> len(0.5, 1.8), u(0.0, 1.0);
  const int nv = nv_dist(rng);
  GraphSpec spec;
  for (int v = 0; v < nv; ++v) spec.vertices.push_back("v" + std::to_string(v));
  auto add = [&](int a, int b) {
    spec.edges.push_back({"e" + std::to_string(spec.edges.size()), spec.vertices[a], spec.vertices[b], len(rng),
                          u(rng) < 0.5 ? 2 * std::numbers::pi * u(rng) : 0.0});
  };
  for (int v = 1; v < nv; ++v) add(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  std::uniform_int_distribution<int> any(0, nv - 1);
  while (spec.edges.size() < 4 && u(rng) < 0.6) add(any(rng), any(rng));
  if (spec.edges.empty()) add(0, 0);
  auto g = MetricGraph::build(spec);
  VertexConditions c;
  for (const auto& v : spec.vertices) {
    const double r = u(rng);
    if (r < 0.25) c.overrides[v] = VertexCondition::dirichlet;
    else if (r < 0.35) c.overrides[v] = VertexCondition::anti_kirchhoff;
  }
  auto y = compile_conditions(g, c);
  return {std::move(g), std::move(y)};
}

inline GraphFunction random_combination(const std::vector<EigenPair>& pairs, std::mt19937_64& rng, double& lambda) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  std::vector<EigenPair> chosen;
  std::vector<Complex> c;
  lambda = 0.0;
  for (int i = 0; i < 4; ++i) {
    chosen.push_back(pairs[pick(rng)]);
    c.emplace_back(n(rng), n(rng));
    lambda = std::max(lambda, chosen.back().lambda);
  }
  return spectral_sample(chosen, c);
}

// ||f^(m)||^2 lambda^-m by quadrature of the termwise derivative; f must be
// a sum of exponentials
inline double derivative_norm_oracle(const EdgeFunction& f, double length, int m, double lambda) {
  const double s = 1.0 / std::sqrt(lambda);
  auto fm = [&](double x) {
    Complex v = 0.0;
    for (const auto& t : f.terms()) v += t.c * std::pow(Complex(0.0, t.omega * s), m) * std::exp(Complex(0, t.omega * x));
    return Complex(std::norm(v));
  };
  return oracle::simpson(fm, 0.0, length, 1e-12, 64).real();
}

struct ClassifyAgreement {
  int instances = 0;
  int compared = 0;
  int mismatches = 0;
  int mass_errors = 0;
  int dominance_failures = 0;
};

// classify_edges against per-order quadrature on random eigenfunction
// combinations; verdicts within 1e-6 of the threshold are not compared
inline ClassifyAgreement classify_agreement(std::uint64_t seed, int instances, int max_order = 12) {
  std::mt19937_64 rng(seed);
  ClassifyAgreement out;
  while (out.instances < instances) {
    const auto inst = random_instance(rng);
    const auto pairs = eigenvalues_up_to(inst.g, inst.y, 60.0);
    if (pairs.empty()) continue;
    double lambda = 0.0;
    const auto f = random_combination(pairs, rng, lambda);
    if (f.is_zero() || !(lambda > 0.0)) continue;
    ++out.instances;
    const auto cls = classify_edges(f, BernsteinProfile::power_law(lambda), max_order);
    for (std::size_t e = 0; e < f.edge_count(); ++e) {
      const auto& fe = f.edge(e);
      if (fe.is_zero()) continue;
      const double mass =
          oracle::simpson([&](double x) { return Complex(std::norm(fe(x))); }, 0.0, f.length(e)).real();
      if (std::abs(cls.mass[e] - mass) > 1e-9 * mass) ++out.mass_errors;
      bool good = true, close = false;
      for (int m = 1; m <= cls.checked_order[e]; ++m) {
        const double v = derivative_norm_oracle(fe, f.length(e), m, lambda);
        const double allowed = std::ldexp(1.0, m + 1) * mass;
        if (std::abs(v - allowed) < 1e-6 * allowed) close = true;
        if (v > allowed) good = false;
      }
      if (close) continue;
      ++out.compared;
      if (cls.good[e] != good) ++out.mismatches;
    }
    if (!cls.bad_mass_below_half || !cls.good_mass_dominates) ++out.dominance_failures;
  }
  return out;
}

}  // namespace fixture
