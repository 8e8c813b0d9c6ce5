#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qgs/graph.hpp"
#include "qgs/spectral.hpp"

namespace qgs {

/// A positive constant carried in log space. `value` is 0 with `underflow`
/// set when log < -700.
struct LogValue {
  double log = 0.0;
  double value = 0.0;
  bool underflow = false;

  static LogValue from_log(double log_value);
};

class BernsteinProfile {
 public:
  enum class Kind { power_law, finite_support };

  /// C_B(m) = lambda^m.
  static BernsteinProfile power_law(double lambda);
  /// C_B(m) = values[m], zero beyond.
  static BernsteinProfile finite_support(std::vector<double> values);

  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  const std::vector<double>& values() const { return values_; }
  double at(int m) const;

 private:
  Kind kind_ = Kind::power_law;
  double lambda_ = 0.0;
  std::vector<double> values_;
};

/// log h with h = sum_m C_B(m)^(1/2) (10 rho)^m / m!.
double log_bernstein_h(const BernsteinProfile& profile, double rho);
double bernstein_h(const BernsteinProfile& profile, double rho);

/// 12 (gamma/48)^(4 ln h / ln 2 + 5).
LogValue thm26_bound(double gamma, double h);
LogValue thm26_bound_log_h(double gamma, double log_h);
/// 12 (gamma/48)^(40 rho sqrt(lambda) / ln 2 + 5).
LogValue thm21_bound(double gamma, double rho, double lambda);

struct Cor72Range {
  LogValue lower_length;
  LogValue upper;
  LogValue lower_diameter;
  double betti = 0.0;
  double degree1 = 0.0;
  double total_length = 0.0;
  double diameter = 0.0;
};

/// Constants for the k-th eigenvalue window of the standard Laplacian on a
/// compact connected graph, k >= 2.
Cor72Range cor72_range(const MetricGraph& g, int k, double gamma, double rho);

/// (1/12)(48/gamma)^5.
double trace_d0(double gamma);
/// (40 rho / ln 2) ln(48/gamma).
double trace_d1(double gamma, double rho);

struct TraceInput {
  double lambda = 0.0;
  /// ||chi_omega f_k||^2 for the normalized eigenfunction.
  double mass = 1.0;
};

struct TraceBound {
  LogValue bound;
  double exact_partial = 0.0;
  /// Rigorous bound on the omitted part of the right-hand side.
  LogValue tail_bound;
  /// Rigorous bound on the omitted part of the trace itself.
  double exact_tail = 0.0;
  std::size_t terms = 0;
};

struct TraceContext {
  double total_length = 0.0;
  std::size_t edge_count = 0;
  /// Standard conditions on a connected graph allow the sharper lower
  /// estimate k^2 pi^2 / (4 |G|^2).
  bool standard = false;
  /// All eigenvalues <= lambda_max must be among the inputs.
  double lambda_max = 0.0;
};

/// Upper bound for the heat trace at time t:
///   d0 sum_k exp(-t lambda_k + d1 sqrt(lambda_k)) ||chi_omega f_k||^2.
TraceBound trace_bound(const std::vector<TraceInput>& pairs, const TraceContext& context,
                       double gamma, double rho, double t);

/// Universal constants that are not available in closed form. Defaults are
/// placeholders (flagged as such in reports), not known values.
struct ObservabilityConstants {
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;
  double k3 = 1.0;
  double k4 = 1.0;
  bool placeholder = true;
};

struct ObservabilityBound {
  LogValue c_squared;
  LogValue envelope;
  double d0 = 0.0;
  double d1 = 0.0;
};

ObservabilityBound observability_constant(double gamma, double rho, double T,
                                          const ObservabilityConstants& constants = {});

struct TorsionProfile {
  BernsteinProfile profile;
  double h = 0.0;
  double h_prime = 0.0;
  /// |G|^2 / T^2, the Cauchy-Schwarz cap on C_B(2).
  double cb2_cap = 0.0;
  LogValue bound;
};

TorsionProfile torsion_profile(const MetricGraph& g, const TorsionSolution& torsion, double gamma,
                               double rho);

}  // namespace qgs
