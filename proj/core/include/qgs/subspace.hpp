#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgs/graph.hpp"

namespace qgs {

using Complex = std::complex<double>;

/// Closed subspace Y of the boundary space l2(E) + l2(E_int), stored as an
/// orthonormal basis (columns). The first `edge_count` coordinates are the
/// (e,0) block; the remaining ones the (e,l_e) block.
class BoundarySubspace {
 public:
  static constexpr double kRankTolerance = 1e-10;

  BoundarySubspace() = default;
  /// The zero subspace.
  BoundarySubspace(std::size_t edge_count, std::size_t internal_count);

  /// Orthonormalizes `columns` by modified Gram-Schmidt; columns whose
  /// residual falls below `rank_tolerance` (relative to their norm) are dropped.
  static BoundarySubspace from_vectors(std::size_t edge_count, std::size_t internal_count,
                                       const Eigen::MatrixXcd& columns,
                                       double rank_tolerance = kRankTolerance);
  static BoundarySubspace full(std::size_t edge_count, std::size_t internal_count);

  std::size_t edge_count() const { return edge_count_; }
  std::size_t internal_count() const { return internal_count_; }
  std::size_t ambient_dimension() const { return edge_count_ + internal_count_; }
  std::size_t dimension() const { return static_cast<std::size_t>(basis_.cols()); }
  const Eigen::MatrixXcd& basis() const { return basis_; }
  /// Number of input vectors discarded as linearly dependent.
  std::size_t dropped() const { return dropped_; }

  /// Orthonormal basis of the orthogonal complement.
  Eigen::MatrixXcd complement_basis() const;
  Eigen::VectorXcd project(const Eigen::VectorXcd& v) const;
  Eigen::VectorXcd project_complement(const Eigen::VectorXcd& v) const;

 private:
  std::size_t edge_count_ = 0;
  std::size_t internal_count_ = 0;
  Eigen::MatrixXcd basis_;
  std::size_t dropped_ = 0;
};

/// max(||(I - P_a) B||, ||(I - P_b) A||) over the orthonormal bases; zero iff
/// the spans agree (given equal dimensions).
double span_distance(const BoundarySubspace& a, const BoundarySubspace& b);
bool same_span(const BoundarySubspace& a, const BoundarySubspace& b, double tol = 1e-10);

enum class VertexCondition { standard, dirichlet, neumann, anti_kirchhoff };

std::string to_string(VertexCondition c);
VertexCondition parse_vertex_condition(const std::string& name);

struct VertexConditions {
  VertexCondition fallback = VertexCondition::standard;
  std::map<std::string, VertexCondition> overrides;

  VertexCondition at(const std::string& vertex) const;
};

/// Continuity + Kirchhoff at every vertex: Y = span{y_v}.
BoundarySubspace standard_subspace(const MetricGraph& g);

/// Compiles symbolic per-vertex conditions to a basis of Y. Conditions are
/// local, so Y is the orthogonal sum of per-vertex pieces:
///   standard        span{1 on every incident endpoint}
///   dirichlet       {0}
///   neumann         every incident endpoint independently (decoupled)
///   anti-kirchhoff  span{(-iota+) + iota-}^perp inside the vertex block
BoundarySubspace compile_conditions(const MetricGraph& g, const VertexConditions& conditions);

/// S Y^perp, where S negates the (e,0) block. Involutive on subspaces.
BoundarySubspace dual_subspace(const BoundarySubspace& y);

/// V_A Y: the (e,l_e) coordinate is multiplied by exp(-i theta_e).
BoundarySubspace gauge_transform(const BoundarySubspace& y, const MetricGraph& g);

/// Transports Y to a subdivision of its graph; inserted vertices get
/// standard conditions.
BoundarySubspace map_subspace(const BoundarySubspace& y, const MetricGraph& original,
                              const Subdivision& sub);

}  // namespace qgs
