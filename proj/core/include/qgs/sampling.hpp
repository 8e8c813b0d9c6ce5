#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qgs/graph.hpp"
#include "qgs/interval_union.hpp"
#include "qgs/polytrig.hpp"

namespace qgs {

/// omega on a half-line: `head` inside [0, start], then `body` repeated with
/// the given period from `start` on.
struct PeriodicTail {
  double start = 0.0;
  double period = 1.0;
  IntervalUnion body;

  double density() const { return body.measure() / period; }
  /// |omega_tail ∩ [start + t, start + s]| for 0 <= t <= s.
  double measure_in(double t, double s) const;
};

struct EdgeSampling {
  /// The whole set on a finite edge; the head on an infinite one.
  IntervalUnion set;
  std::optional<PeriodicTail> tail;
};

struct SamplingSet {
  std::vector<EdgeSampling> edges;

  /// Throws DomainError on edge-count mismatch, sets leaving [0, l_e], tails
  /// on finite edges, or missing tails on infinite ones.
  void validate(const MetricGraph& g) const;
  /// Per-edge sets of the finite edges, usable as a quadrature region.
  Region region(const MetricGraph& g) const;
};

SamplingSet empty_sampling(const MetricGraph& g);

struct EdgeCover {
  /// 0 = t_0 < ... < t_n = l_e (= tail start on infinite edges).
  std::vector<double> breakpoints;
  /// Infinite edges: the tail is covered by adjacent intervals of this length.
  std::optional<double> tail_length;
};

struct Cover {
  std::vector<EdgeCover> edges;
};

struct CoverViolation {
  std::size_t edge = 0;
  /// Offending interval, or the worst tail window.
  double t = 0.0;
  double s = 0.0;
  std::string reason;
};

struct CoverCheck {
  bool ok = false;
  /// Minimal density and maximal interval length over the cover.
  double gamma = 0.0;
  double rho = 0.0;
  std::vector<double> edge_gamma;
  std::vector<double> edge_rho;
  std::vector<CoverViolation> violations;
};

/// Checks the cover is a valid adjacent partition and every interval J has
/// |J| <= rho and |omega ∩ J| >= gamma |J| (relative slack 1e-12).
CoverCheck verify_cover(const MetricGraph& g, const SamplingSet& omega, const Cover& cover,
                        double gamma, double rho);

struct EdgeGaps {
  double left = 0.0;
  /// Gap at l_e; 0 on infinite edges.
  double right = 0.0;
  double interior = 0.0;
  bool empty = false;
};

std::vector<EdgeGaps> gap_analysis(const MetricGraph& g, const SamplingSet& omega);
/// False proves that omega is not (gamma, rho)-sampling.
bool necessary_check(const std::vector<EdgeGaps>& gaps, double gamma, double rho);

struct EdgeOptimum {
  double value = 0.0;
  std::vector<double> breakpoints;
  bool feasible = false;
  /// Largest gap when infeasible.
  double witness = 0.0;
};

/// Largest gamma for which a cover with intervals of length <= rho and
/// breakpoints from a finite candidate set exists (exact bottleneck DP).
EdgeOptimum optimal_gamma(const IntervalUnion& omega, double length, double rho, int grid = 200);
/// Smallest rho (within 1e-9 l) for which the gamma optimizer certifies
/// density gamma.
EdgeOptimum optimal_rho(const IntervalUnion& omega, double length, double gamma, int grid = 200);

struct GraphOptimum {
  double gamma = 0.0;
  double rho = 0.0;
  Cover cover;
  bool feasible = false;
};

GraphOptimum optimal_gamma(const MetricGraph& g, const SamplingSet& omega, double rho, int grid = 200);
GraphOptimum optimal_rho(const MetricGraph& g, const SamplingSet& omega, double gamma, int grid = 200);

struct PeriodicParams {
  double gamma = 0.0;
  /// gamma0 / (2 - gamma0) when rho >= 1, else NaN.
  double uniform = 0.0;
};

/// Guaranteed density of a unit-periodic set of density gamma0 on every
/// interval of length rho.
PeriodicParams periodic_params(double gamma0, double rho);

/// min over offsets of |tail ∩ J| / |J| for windows J of the given length.
double tail_min_density(const PeriodicTail& tail, double window);

struct SvcApproximant {
  IntervalUnion set;
  double measure = 0.0;
};

/// Depth-n approximant of the Smith-Volterra-Cantor set in [0, 1].
SvcApproximant svc_set(int depth);

}  // namespace qgs
