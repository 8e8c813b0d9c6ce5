#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qgs/graph.hpp"
#include "qgs/polytrig.hpp"
#include "qgs/subspace.hpp"

namespace qgs {

struct EigenPair {
  double k = 0.0;
  double lambda = 0.0;
  /// Gauge-reduced eigenfunction (free derivative), L2-normalized.
  GraphFunction f;
  /// Smallest singular value of the secular matrix at k.
  double residual = 0.0;
  /// Coefficients (a_e, b_e) of f_e = a_e u1 + b_e u2, see secular_matrix.
  Eigen::VectorXcd coefficients;
};

struct SpectrumOptions {
  /// Grid step in k; 0 selects pi / (8 |G|).
  double step = 0.0;
  double accept_factor = 1e-8;
  double null_factor = 1e-6;
  double merge_gap = 1e-7;
  double refine_tolerance = 1e-11;
  /// Cross-check the count against the two-sided eigenvalue estimate when
  /// the conditions are standard and the graph is flux-free and connected.
  bool count_check = true;
};

/// Edge ansatz used by the secular matrix: with kappa = sqrt(k^2 + 1/l0^2)
/// and l0 the mean edge length,
///   u1(x) = cos(k x),  u2(x) = kappa sin(k x) / k   (= kappa x at k = 0).
/// Rows: Y^perp-basis^* Psi+(f), then Y-basis^* Psi-(i f') / kappa, where Y
/// is first gauge-transformed by the edge fluxes. Unknowns ordered
/// (a_0, b_0, a_1, b_1, ...).
Eigen::MatrixXcd secular_matrix(const MetricGraph& g, const BoundarySubspace& y, double k);

double smallest_singular_value(const MetricGraph& g, const BoundarySubspace& y, double k);

/// All eigenvalues of the (magnetic) Laplacian with conditions Y in
/// [0, lambda_max], with multiplicity, sorted.
std::vector<EigenPair> eigenvalues_up_to(const MetricGraph& g, const BoundarySubspace& y,
                                         double lambda_max, const SpectrumOptions& options = {});

/// GraphFunction for the ansatz coefficients at wavenumber k.
GraphFunction ansatz_function(const MetricGraph& g, double k, const Eigen::VectorXcd& coefficients);

/// Psi+(f) = (f_e(0)) + (f_e(l_e)) and Psi-(f) = (-f_e(0)) + (f_e(l_e)).
Eigen::VectorXcd psi_plus(const GraphFunction& f, const MetricGraph& g);
Eigen::VectorXcd psi_minus(const GraphFunction& f, const MetricGraph& g);

/// (||P_{Y^perp} Psi+ f||, ||P_Y Psi-(i f')||) for a free function f and an
/// already gauge-reduced subspace Y.
std::pair<double, double> boundary_residual(const GraphFunction& f, const MetricGraph& g,
                                            const BoundarySubspace& y);

GraphFunction spectral_sample(const std::vector<EigenPair>& pairs,
                              const std::vector<Complex>& coefficients);

struct TorsionSolution {
  /// u_e(x) = -x^2/2 + alpha_e x + beta_e.
  GraphFunction u;
  double rigidity = 0.0;
  std::vector<std::string> dirichlet;
};

/// -u'' = 1 with u = 0 on `dirichlet` vertices and standard conditions
/// elsewhere. Fluxes are ignored.
TorsionSolution solve_torsion(const MetricGraph& g, const std::vector<std::string>& dirichlet);

/// Lower bound on the number of eigenvalues <= lambda (with multiplicity)
/// for standard conditions on a connected compact graph.
std::size_t standard_count_lower_bound(const MetricGraph& g, double lambda);

}  // namespace qgs
