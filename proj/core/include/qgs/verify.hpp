#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qgs/bounds.hpp"
#include "qgs/graph.hpp"
#include "qgs/polytrig.hpp"
#include "qgs/sampling.hpp"
#include "qgs/spectral.hpp"
#include "qgs/subspace.hpp"

namespace qgs {

/// Strict inequality observed > bound, relaxed to
/// observed - bound > -1e-12 observed.
bool strictly_above(double observed, double bound);

struct RatioReport {
  double observed = 0.0;
  LogValue bound;
  double margin = 0.0;
  bool pass = false;
  /// The inequality carries no information (e.g. f' = 0).
  bool vacuous = false;
};

RatioReport compare_ratio(double observed, const LogValue& bound);

/// ||chi_omega f||^2 / ||f||^2. Throws DomainError when f = 0.
double mass_ratio(const GraphFunction& f, const Region& omega);

RatioReport ratio_thm21(const GraphFunction& f, const Region& omega, double gamma, double rho,
                        double lambda);
RatioReport ratio_thm26(const GraphFunction& f, const Region& omega, double gamma, double h);

struct DerivativeReport {
  RatioReport derivative;
  /// (||chi f||^2 + ||chi f'||^2) / (||f||^2 + ||f'||^2) against the same bound.
  RatioReport combined;
};

DerivativeReport derivative_ratio(const GraphFunction& f, const Region& omega, double gamma,
                                  double rho, double lambda);

struct EdgeClassification {
  std::vector<bool> good;
  /// Whether the good/bad verdict covers every order m >= 1 (closure
  /// argument) rather than only m <= checked_order.
  std::vector<bool> complete;
  std::vector<double> mass;
  /// Largest order examined per edge.
  std::vector<int> checked_order;
  double total = 0.0;
  double good_mass = 0.0;
  double bad_mass = 0.0;
  /// bad mass < total / 2.
  bool bad_mass_below_half = false;
  /// total < 2 * good mass.
  bool good_mass_dominates = false;
};

/// Edge e is good if ||f_e^(m)||^2 <= 2^(m+1) C_B(m) ||f_e||^2 for all m >= 1.
/// Throws DomainError if the profile itself fails for some m <= max_order.
EdgeClassification classify_edges(const GraphFunction& f, const BernsteinProfile& profile,
                                  int max_order = 40);

struct KovrijkineReport {
  double sup_interval = 0.0;
  double sup_set = 0.0;
  double m_phi = 0.0;
  double measure = 0.0;
  double rhs = 0.0;
  int samples = 0;
  bool pass = false;
};

/// phi(t) = sum_j coefficients[j] t^j; E inside [0, 1]. Checks
///   sup_[0,1] |phi| <= (12/|E|)^(2 ln M / ln 2) sup_E |phi|,  M = sup_{|z|<=4} |phi|
/// with the left side bounded above and the right side below.
KovrijkineReport kovrijkine_check(const std::vector<Complex>& coefficients, const IntervalUnion& set,
                                  int samples = 2000);

struct LocalEstimateReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double m = 0.0;
  double norm_sq = 0.0;
  bool pass = false;
};

/// ||g||^2_{L2(S)} >= 24 (|S|/(48 l))^(4 ln M / ln 2 + 1) ||g||^2_{L2(0,l)} with
/// M = sqrt(l) / ||g|| * sup_{(0,l)+D_{4l}} |g|.
LocalEstimateReport local_estimate_check(const EdgeFunction& g, double length, const IntervalUnion& set);

struct OptimalityReport {
  int alpha = 0;
  double ratio = 0.0;
  double upper = 0.0;
  LogValue lower;
  double numerator = 0.0;
  double denominator = 0.0;
  bool pass = false;
};

/// cos^alpha(2 pi x / l) on a Neumann interval against the two-sided window.
OptimalityReport optimality_example(double length, double lambda, double gamma);

/// Integral of sin^(2 alpha)(y) over [0, a] for |a| <= 1 via a power series.
double sin_power_integral(int alpha, double a);

struct ObservabilityNumeric {
  double c_squared = 0.0;
  bool rank_deficient = false;
  /// Smallest / largest eigenvalue of the right-hand Gram matrix.
  double conditioning = 0.0;
  std::size_t modes = 0;
};

/// Best constant C^2 in ||e^{T Delta} g||^2 <= C^2 int_0^T ||chi e^{t Delta} g||^2
/// over g in the span of the given eigenpairs.
ObservabilityNumeric observability_numeric(const std::vector<EigenPair>& pairs, const Region& omega,
                                           double T);
/// Convenience form: the first `modes` eigenpairs of (g, Y).
ObservabilityNumeric observability_numeric(const MetricGraph& g, const BoundarySubspace& y,
                                           const Region& omega, double T, std::size_t modes);

struct TraceInequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// ||Psi+(f)||^2 <= 2 coth(l_min) (||f||^2 + ||f'||^2).
TraceInequalityReport boundary_trace_check(const GraphFunction& f, const MetricGraph& g);

struct LassoReport {
  double k = 0.0;
  double secular_sigma = 0.0;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  double ratio_pendant = 0.0;
  double ratio_loop = 0.0;
  double pendant_fraction = 0.0;
  double ratio_sampling = 0.0;
  double sampling_gamma = 0.0;
  double sampling_rho = 0.0;
  LogValue sampling_bound;
};

LassoReport lasso_counterexample();

struct AuditOptions {
  std::size_t graphs = 100;
  std::size_t trials_per_graph = 100;
  std::uint64_t seed = 20240917;
  double lambda_max = 200.0;
  std::size_t max_edges = 6;
  std::size_t max_terms = 10;
  int grid = 100;
  bool classify = true;
};

struct AuditTrial {
  std::size_t graph = 0;
  std::size_t trial = 0;
  double gamma = 0.0;
  double rho = 0.0;
  double lambda = 0.0;
  RatioReport mass;
  RatioReport derivative;
  bool classified = false;
  bool bad_mass_below_half = true;
  bool good_mass_dominates = true;
};

struct AuditReport {
  std::uint64_t seed = 0;
  std::vector<AuditTrial> trials;
  std::size_t violations = 0;
  std::size_t derivative_violations = 0;
  std::size_t classification_failures = 0;
  std::size_t graphs = 0;
};

/// Randomized campaign over small compact graphs: random vertex conditions
/// and fluxes, random sampling sets certified by the optimizer, random
/// combinations of eigenfunctions.
AuditReport run_audit(const AuditOptions& options);

}  // namespace qgs
