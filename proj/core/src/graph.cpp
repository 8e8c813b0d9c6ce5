#include "qgs/graph.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "qgs/error.hpp"

namespace qgs {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

MetricGraph MetricGraph::build(const GraphSpec& spec) {
  MetricGraph g;
  g.vertices_ = spec.vertices;
  for (std::size_t v = 0; v < g.vertices_.size(); ++v) {
    if (!g.vertex_lookup_.emplace(g.vertices_[v], v).second) {
      throw DomainError("duplicate vertex id '" + g.vertices_[v] + "'");
    }
  }

  g.edges_.reserve(spec.edges.size());
  for (const auto& es : spec.edges) {
    const auto src = g.vertex_lookup_.find(es.from);
    const auto dst = g.vertex_lookup_.find(es.to);
    if (src == g.vertex_lookup_.end()) {
      throw DomainError("edge '" + es.id + "' references unknown vertex '" + es.from + "'");
    }
    if (dst == g.vertex_lookup_.end()) {
      throw DomainError("edge '" + es.id + "' references unknown vertex '" + es.to + "'");
    }
    if (std::isnan(es.length) || !(es.length > 0.0)) {
      std::ostringstream os;
      os << "edge '" << es.id << "' has non-positive length " << es.length;
      throw DomainError(os.str());
    }
    if (!std::isfinite(es.flux)) {
      throw DomainError("edge '" + es.id + "' has non-finite flux");
    }
    if (!std::isfinite(es.length) && es.flux != 0.0) {
      throw DomainError("edge '" + es.id + "' is infinite and cannot carry flux");
    }
    if (!std::isfinite(es.length) && src->second != dst->second) {
      // The far end of an external edge is not glued anywhere; `to` must
      // repeat `from` so the edge has a single attachment vertex.
      throw DomainError("external edge '" + es.id + "' must have from == to");
    }
    if (!g.edge_lookup_.emplace(es.id, g.edges_.size()).second) {
      throw DomainError("duplicate edge id '" + es.id + "'");
    }
    g.edges_.push_back(Edge{es.id, src->second, dst->second, es.length, es.flux});
  }

  g.end_coordinate_.assign(g.edges_.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    if (g.edges_[e].internal()) {
      g.end_coordinate_[e] = g.edges_.size() + g.internal_count_;
      ++g.internal_count_;
    }
  }

  g.endpoints_.assign(g.vertices_.size(), {});
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    const auto& edge = g.edges_[e];
    g.endpoints_[edge.source].push_back(Endpoint{e, true, e});
    if (edge.internal()) {
      g.endpoints_[edge.target].push_back(Endpoint{e, false, g.end_coordinate_[e]});
    }
  }

  std::vector<std::size_t> parent(g.vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& edge : g.edges_) {
    const auto a = find_root(parent, edge.source);
    const auto b = find_root(parent, edge.target);
    if (a != b) parent[a] = b;
  }
  std::unordered_map<std::size_t, std::size_t> label;
  g.component_of_.resize(g.vertices_.size());
  for (std::size_t v = 0; v < g.vertices_.size(); ++v) {
    const auto root = find_root(parent, v);
    const auto [it, inserted] = label.emplace(root, label.size());
    g.component_of_[v] = it->second;
  }
  g.components_ = label.size();
  return g;
}

std::optional<std::size_t> MetricGraph::end_coordinate(std::size_t e) const {
  if (!edges_.at(e).internal()) return std::nullopt;
  return end_coordinate_[e];
}

std::size_t MetricGraph::vertex_index(std::string_view id) const {
  const auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) throw DomainError("unknown vertex '" + std::string(id) + "'");
  return it->second;
}

std::size_t MetricGraph::edge_index(std::string_view id) const {
  const auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) throw DomainError("unknown edge '" + std::string(id) + "'");
  return it->second;
}

bool MetricGraph::has_vertex(std::string_view id) const {
  return vertex_lookup_.count(std::string(id)) > 0;
}

std::vector<double> MetricGraph::lengths() const {
  std::vector<double> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.length);
  return out;
}

double MetricGraph::min_length() const {
  double m = kInfiniteLength;
  for (const auto& e : edges_) m = std::min(m, e.length);
  return m;
}

double MetricGraph::total_length() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.length;
  return s;
}

GraphSpec MetricGraph::spec() const {
  GraphSpec s;
  s.vertices = vertices_;
  for (const auto& e : edges_) {
    s.edges.push_back(EdgeSpec{e.id, vertices_[e.source], vertices_[e.target], e.length, e.flux});
  }
  return s;
}

GraphMetrics metrics(const MetricGraph& g) {
  GraphMetrics m;
  m.total_length = g.total_length();
  m.components = g.component_count();
  m.connected = g.connected();
  m.betti = static_cast<long>(g.edge_count()) - static_cast<long>(g.vertex_count()) +
            static_cast<long>(g.component_count());
  m.min_edge = g.min_length();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 1) ++m.degree1_count;
  }
  if (m.connected && g.compact() && g.edge_count() > 0) m.diameter = diameter(g);
  return m;
}

std::vector<std::vector<double>> vertex_distances(const MetricGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : g.edges()) {
    if (!e.internal() || e.loop()) continue;
    adj[e.source].emplace_back(e.target, e.length);
    adj[e.target].emplace_back(e.source, e.length);
  }
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInfiniteLength));
  using Item = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    auto& d = dist[s];
    d[s] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    queue.emplace(0.0, s);
    while (!queue.empty()) {
      const auto [du, u] = queue.top();
      queue.pop();
      if (du > d[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (du + w < d[v]) {
          d[v] = du + w;
          queue.emplace(d[v], v);
        }
      }
    }
  }
  return dist;
}

namespace {

// c + a*s + b*t
struct Affine {
  double c = 0, a = 0, b = 0;
  double operator()(double s, double t) const { return c + a * s + b * t; }
};

// a*s + b*t <= c
struct HalfPlane {
  double a = 0, b = 0, c = 0;
};

// Maximum over the convex polygon {halfplanes} of the minimum of `pieces`.
// The minimum is concave and piecewise linear, so the maximum sits on a
// vertex of the arrangement formed by the polygon sides and the pairwise
// equality lines of the pieces.
double max_of_min(const std::vector<Affine>& pieces, const std::vector<HalfPlane>& region,
                  double scale) {
  struct Line {
    double a, b, c;
  };
  std::vector<Line> lines;
  for (const auto& h : region) lines.push_back({h.a, h.b, h.c});
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      const double a = pieces[i].a - pieces[j].a;
      const double b = pieces[i].b - pieces[j].b;
      if (a == 0.0 && b == 0.0) continue;
      lines.push_back({a, b, pieces[j].c - pieces[i].c});
    }
  }
  const double tol = 1e-12 * scale;
  double best = -kInfiniteLength;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double det = lines[i].a * lines[j].b - lines[i].b * lines[j].a;
      if (std::abs(det) < 1e-14) continue;
      const double s = (lines[i].c * lines[j].b - lines[i].b * lines[j].c) / det;
      const double t = (lines[i].a * lines[j].c - lines[i].c * lines[j].a) / det;
      bool inside = true;
      for (const auto& h : region) {
        if (h.a * s + h.b * t > h.c + tol) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      double value = kInfiniteLength;
      for (const auto& p : pieces) value = std::min(value, p(s, t));
      best = std::max(best, value);
    }
  }
  return best;
}

}  // namespace

double diameter(const MetricGraph& g) {
  if (!g.compact()) throw DomainError("diameter requested on a non-compact graph");
  if (!g.connected()) throw DomainError("diameter requested on a disconnected graph");
  if (g.edge_count() == 0) return 0.0;

  const auto dist = vertex_distances(g);
  const double scale = g.total_length();
  double best = 0.0;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const double l = e.length;
    const std::size_t a = e.source, b = e.target;
    {
      // Both points on edge i, restricted to s <= t by symmetry.
      std::vector<Affine> pieces{
          {0.0, -1.0, 1.0},                    // t - s along the edge
          {0.0, 1.0, 1.0},                     // out through a and back
          {2.0 * l, -1.0, -1.0},               // out through b and back
          {l + dist[a][b], 1.0, -1.0},         // s -> a ~> b -> t
          {l + dist[b][a], -1.0, 1.0},         // s -> b ~> a -> t
      };
      std::vector<HalfPlane> region{{-1, 0, 0}, {1, 0, l}, {0, -1, 0}, {0, 1, l}, {1, -1, 0}};
      best = std::max(best, max_of_min(pieces, region, scale));
    }
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto& f = edges[j];
      const double m = f.length;
      const std::size_t c = f.source, d = f.target;
      std::vector<Affine> pieces{
          {dist[a][c], 1.0, 1.0},
          {dist[a][d] + m, 1.0, -1.0},
          {l + dist[b][c], -1.0, 1.0},
          {l + dist[b][d] + m, -1.0, -1.0},
      };
      std::vector<HalfPlane> region{{-1, 0, 0}, {1, 0, l}, {0, -1, 0}, {0, 1, m}};
      best = std::max(best, max_of_min(pieces, region, scale));
    }
  }
  return best;
}

Subdivision subdivide(const MetricGraph& g, double max_length) {
  if (!(max_length > 0.0)) throw DomainError("subdivide: max_length must be positive");
  if (!g.compact()) throw DomainError("subdivide: graph must be compact");

  Subdivision out;
  GraphSpec spec;
  spec.vertices = g.vertices();
  auto fresh_id = [&](const std::string& base, const auto& taken) {
    std::string id = base;
    while (taken(id)) id += "'";
    return id;
  };
  std::unordered_map<std::string, bool> vertex_ids, edge_ids;
  for (const auto& v : g.vertices()) vertex_ids[v] = true;
  for (const auto& e : g.edges()) edge_ids[e.id] = true;

  out.pieces_of.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const auto count = static_cast<std::size_t>(
        std::max(1.0, std::ceil(edge.length / max_length - 1e-12)));
    const double piece = edge.length / static_cast<double>(count);
    std::string prev = g.vertices()[edge.source];
    for (std::size_t k = 0; k < count; ++k) {
      std::string next;
      if (k + 1 == count) {
        next = g.vertices()[edge.target];
      } else {
        next = fresh_id(edge.id + "#" + std::to_string(k + 1),
                        [&](const std::string& s) { return vertex_ids.count(s) > 0; });
        vertex_ids[next] = true;
        spec.vertices.push_back(next);
        out.inserted_vertices.push_back(next);
      }
      std::string id = edge.id;
      if (count > 1) {
        id = fresh_id(edge.id + "/" + std::to_string(k),
                      [&](const std::string& s) { return edge_ids.count(s) > 0; });
        edge_ids[id] = true;
      }
      out.pieces_of[e].push_back(spec.edges.size());
      out.pieces.push_back({e, piece * static_cast<double>(k)});
      spec.edges.push_back(
          EdgeSpec{id, prev, next, piece, edge.flux / static_cast<double>(count)});
      prev = next;
    }
  }
  out.graph = MetricGraph::build(spec);
  return out;
}

}  // namespace qgs
