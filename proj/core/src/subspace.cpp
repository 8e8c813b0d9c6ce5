#include "qgs/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "qgs/error.hpp"

namespace qgs {

namespace {

// Appends `v` to the orthonormal set `q` (first `rank` columns valid) if it is
// not in their span. Two passes of MGS keep the result orthonormal to
// machine precision.
bool append_orthonormal(Eigen::MatrixXcd& q, Eigen::Index& rank, Eigen::VectorXcd v,
                        double rank_tolerance) {
  const double original = v.norm();
  if (original == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < rank; ++j) {
      v -= q.col(j).dot(v) * q.col(j);
    }
  }
  const double residual = v.norm();
  if (residual <= rank_tolerance * original) return false;
  q.col(rank) = v / residual;
  ++rank;
  return true;
}

}  // namespace

BoundarySubspace::BoundarySubspace(std::size_t edge_count, std::size_t internal_count)
    : edge_count_(edge_count),
      internal_count_(internal_count),
      basis_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(edge_count + internal_count), 0)) {}

BoundarySubspace BoundarySubspace::from_vectors(std::size_t edge_count, std::size_t internal_count,
                                                const Eigen::MatrixXcd& columns,
                                                double rank_tolerance) {
  BoundarySubspace y(edge_count, internal_count);
  const auto n = static_cast<Eigen::Index>(y.ambient_dimension());
  if (columns.cols() > 0 && columns.rows() != n) {
    throw DomainError("boundary vectors have length " + std::to_string(columns.rows()) +
                      ", expected " + std::to_string(n));
  }
  Eigen::MatrixXcd q(n, std::min<Eigen::Index>(n, columns.cols()));
  Eigen::Index rank = 0;
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    if (rank == q.cols() || !append_orthonormal(q, rank, columns.col(c), rank_tolerance)) {
      ++y.dropped_;
    }
  }
  y.basis_ = q.leftCols(rank);
  return y;
}

BoundarySubspace BoundarySubspace::full(std::size_t edge_count, std::size_t internal_count) {
  const auto n = static_cast<Eigen::Index>(edge_count + internal_count);
  BoundarySubspace y(edge_count, internal_count);
  y.basis_ = Eigen::MatrixXcd::Identity(n, n);
  return y;
}

Eigen::MatrixXcd BoundarySubspace::complement_basis() const {
  const auto n = static_cast<Eigen::Index>(ambient_dimension());
  Eigen::MatrixXcd q(n, n);
  q.leftCols(basis_.cols()) = basis_;
  Eigen::Index rank = basis_.cols();
  for (Eigen::Index i = 0; i < n && rank < n; ++i) {
    append_orthonormal(q, rank, Eigen::VectorXcd::Unit(n, i), 1e-8);
  }
  return q.block(0, basis_.cols(), n, rank - basis_.cols());
}

Eigen::VectorXcd BoundarySubspace::project(const Eigen::VectorXcd& v) const {
  return basis_ * (basis_.adjoint() * v);
}

Eigen::VectorXcd BoundarySubspace::project_complement(const Eigen::VectorXcd& v) const {
  return v - project(v);
}

double span_distance(const BoundarySubspace& a, const BoundarySubspace& b) {
  if (a.ambient_dimension() != b.ambient_dimension()) return INFINITY;
  if (a.dimension() != b.dimension()) return 1.0;
  if (a.dimension() == 0) return 0.0;
  const Eigen::MatrixXcd ra = b.basis() - a.basis() * (a.basis().adjoint() * b.basis());
  const Eigen::MatrixXcd rb = a.basis() - b.basis() * (b.basis().adjoint() * a.basis());
  return std::max(ra.norm(), rb.norm());
}

bool same_span(const BoundarySubspace& a, const BoundarySubspace& b, double tol) {
  return span_distance(a, b) < tol;
}

std::string to_string(VertexCondition c) {
  switch (c) {
    case VertexCondition::standard: return "standard";
    case VertexCondition::dirichlet: return "dirichlet";
    case VertexCondition::neumann: return "neumann";
    case VertexCondition::anti_kirchhoff: return "anti-kirchhoff";
  }
  return "standard";
}

VertexCondition parse_vertex_condition(const std::string& name) {
  if (name == "standard" || name == "kirchhoff") return VertexCondition::standard;
  if (name == "dirichlet") return VertexCondition::dirichlet;
  if (name == "neumann") return VertexCondition::neumann;
  if (name == "anti-kirchhoff" || name == "anti_kirchhoff") return VertexCondition::anti_kirchhoff;
  throw ParseError("unknown vertex condition '" + name + "'");
}

VertexCondition VertexConditions::at(const std::string& vertex) const {
  const auto it = overrides.find(vertex);
  return it == overrides.end() ? fallback : it->second;
}

BoundarySubspace compile_conditions(const MetricGraph& g, const VertexConditions& conditions) {
  for (const auto& [vertex, _] : conditions.overrides) {
    if (!g.has_vertex(vertex)) throw DomainError("condition for unknown vertex '" + vertex + "'");
  }
  const auto n = static_cast<Eigen::Index>(g.boundary_dimension());
  std::vector<Eigen::VectorXcd> vectors;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& ends = g.endpoints(v);
    if (ends.empty()) continue;
    switch (conditions.at(g.vertices()[v])) {
      case VertexCondition::standard: {
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
        for (const auto& p : ends) y[static_cast<Eigen::Index>(p.coordinate)] = 1.0;
        vectors.push_back(y);
        break;
      }
      case VertexCondition::dirichlet:
        break;
      case VertexCondition::neumann:
        for (const auto& p : ends) {
          vectors.push_back(Eigen::VectorXcd::Unit(n, static_cast<Eigen::Index>(p.coordinate)));
        }
        break;
      case VertexCondition::anti_kirchhoff: {
        // Complement of w = (-iota+) + iota- inside the span of this vertex's
        // coordinates.
        const auto d = static_cast<Eigen::Index>(ends.size());
        Eigen::MatrixXcd local(d, d);
        Eigen::VectorXcd w(d);
        for (Eigen::Index i = 0; i < d; ++i) w[i] = ends[static_cast<std::size_t>(i)].at_start ? -1.0 : 1.0;
        local.col(0) = w.normalized();
        Eigen::Index rank = 1;
        for (Eigen::Index i = 0; i < d && rank < d; ++i) {
          append_orthonormal(local, rank, Eigen::VectorXcd::Unit(d, i), 1e-8);
        }
        for (Eigen::Index c = 1; c < rank; ++c) {
          Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
          for (Eigen::Index i = 0; i < d; ++i) {
            y[static_cast<Eigen::Index>(ends[static_cast<std::size_t>(i)].coordinate)] = local(i, c);
          }
          vectors.push_back(y);
        }
        break;
      }
    }
  }
  Eigen::MatrixXcd columns(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) columns.col(static_cast<Eigen::Index>(i)) = vectors[i];
  return BoundarySubspace::from_vectors(g.edge_count(), g.internal_edge_count(), columns);
}

BoundarySubspace standard_subspace(const MetricGraph& g) {
  return compile_conditions(g, VertexConditions{});
}

BoundarySubspace dual_subspace(const BoundarySubspace& y) {
  Eigen::MatrixXcd c = y.complement_basis();
  c.topRows(static_cast<Eigen::Index>(y.edge_count())) *= -1.0;
  return BoundarySubspace::from_vectors(y.edge_count(), y.internal_count(), c);
}

BoundarySubspace gauge_transform(const BoundarySubspace& y, const MetricGraph& g) {
  if (y.ambient_dimension() != g.boundary_dimension()) {
    throw DomainError("gauge_transform: subspace does not match graph");
  }
  Eigen::MatrixXcd b = y.basis();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto end = g.end_coordinate(e);
    if (!end) continue;
    const double theta = g.edge(e).flux;
    if (theta == 0.0) continue;
    b.row(static_cast<Eigen::Index>(*end)) *= std::polar(1.0, -theta);
  }
  return BoundarySubspace::from_vectors(y.edge_count(), y.internal_count(), b, 0.0);
}

BoundarySubspace map_subspace(const BoundarySubspace& y, const MetricGraph& original,
                              const Subdivision& sub) {
  if (y.ambient_dimension() != original.boundary_dimension()) {
    throw DomainError("map_subspace: subspace does not match graph");
  }
  const auto& g = sub.graph;
  const auto n = static_cast<Eigen::Index>(g.boundary_dimension());
  std::vector<Eigen::Index> old_to_new(original.boundary_dimension());
  for (std::size_t e = 0; e < original.edge_count(); ++e) {
    const auto& pieces = sub.pieces_of[e];
    old_to_new[original.start_coordinate(e)] =
        static_cast<Eigen::Index>(g.start_coordinate(pieces.front()));
    old_to_new[*original.end_coordinate(e)] =
        static_cast<Eigen::Index>(*g.end_coordinate(pieces.back()));
  }
  Eigen::MatrixXcd columns = Eigen::MatrixXcd::Zero(
      n, static_cast<Eigen::Index>(y.dimension() + sub.inserted_vertices.size()));
  for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(y.dimension()); ++c) {
    for (std::size_t i = 0; i < old_to_new.size(); ++i) {
      columns(old_to_new[i], c) = y.basis()(static_cast<Eigen::Index>(i), c);
    }
  }
  Eigen::Index c = static_cast<Eigen::Index>(y.dimension());
  for (const auto& id : sub.inserted_vertices) {
    for (const auto& p : g.endpoints(g.vertex_index(id))) {
      columns(static_cast<Eigen::Index>(p.coordinate), c) = 1.0;
    }
    ++c;
  }
  return BoundarySubspace::from_vectors(g.edge_count(), g.internal_edge_count(), columns);
}

}  // namespace qgs
