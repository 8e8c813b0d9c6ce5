#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qgs {

inline constexpr double kInfiniteLength = std::numeric_limits<double>::infinity();

struct EdgeSpec {
  std::string id;
  std::string from;
  std::string to;
  double length = 1.0;
  double flux = 0.0;
};

struct GraphSpec {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
};

struct Edge {
  std::string id;
  std::size_t source = 0;
  std::size_t target = 0;
  double length = 1.0;
  /// Integral of the magnetic potential along the edge (radians).
  double flux = 0.0;

  bool internal() const { return std::isfinite(length); }
  bool loop() const { return source == target; }
};

/// One end of an edge, seen from the vertex it is glued to.
struct Endpoint {
  std::size_t edge = 0;
  bool at_start = true;
  /// Index into the boundary space l2(E) + l2(E_int).
  std::size_t coordinate = 0;
};

/// Vertices plus oriented edges with lengths in (0, inf]. Immutable once built.
///
/// Boundary coordinates follow declaration order: the (e,0) endpoints of all
/// edges first, then the (e,l_e) endpoints of internal edges.
class MetricGraph {
 public:
  static MetricGraph build(const GraphSpec& spec);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t internal_edge_count() const { return internal_count_; }

  std::size_t boundary_dimension() const { return edges_.size() + internal_count_; }
  std::size_t start_coordinate(std::size_t e) const { return e; }
  std::optional<std::size_t> end_coordinate(std::size_t e) const;

  std::size_t vertex_index(std::string_view id) const;
  std::size_t edge_index(std::string_view id) const;
  bool has_vertex(std::string_view id) const;

  const std::vector<Endpoint>& endpoints(std::size_t v) const { return endpoints_.at(v); }
  std::size_t degree(std::size_t v) const { return endpoints_.at(v).size(); }

  bool compact() const { return internal_count_ == edges_.size(); }
  std::size_t component_count() const { return components_; }
  bool connected() const { return components_ == 1; }
  /// Component label per vertex.
  const std::vector<std::size_t>& component_of() const { return component_of_; }

  std::vector<double> lengths() const;
  double min_length() const;
  double total_length() const;
  GraphSpec spec() const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Endpoint>> endpoints_;
  std::vector<std::size_t> end_coordinate_;
  std::unordered_map<std::string, std::size_t> vertex_lookup_;
  std::unordered_map<std::string, std::size_t> edge_lookup_;
  std::vector<std::size_t> component_of_;
  std::size_t internal_count_ = 0;
  std::size_t components_ = 0;
};

struct GraphMetrics {
  double total_length = 0.0;
  long betti = 0;
  std::optional<double> diameter;
  double min_edge = 0.0;
  std::size_t degree1_count = 0;
  bool connected = false;
  std::size_t components = 0;
};

/// Diameter is filled in only for connected compact graphs.
GraphMetrics metrics(const MetricGraph& g);

/// Exact diameter (sup of point-to-point distances). Throws DomainError on
/// disconnected or non-compact graphs.
double diameter(const MetricGraph& g);

/// All-pairs vertex distances (Dijkstra from every vertex).
std::vector<std::vector<double>> vertex_distances(const MetricGraph& g);

/// Result of splitting long edges. Piece i of the new graph covers
/// [offset, offset + length] of original edge `source_edge`.
struct Subdivision {
  struct Piece {
    std::size_t source_edge = 0;
    double offset = 0.0;
  };

  MetricGraph graph;
  std::vector<Piece> pieces;
  /// Original edge -> new edge indices, in order along the edge.
  std::vector<std::vector<std::size_t>> pieces_of;
  /// Vertex ids created by the subdivision (carry standard conditions).
  std::vector<std::string> inserted_vertices;
};

Subdivision subdivide(const MetricGraph& g, double max_length);

}  // namespace qgs
