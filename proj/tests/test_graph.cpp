#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qgs/error.hpp"
#include "qgs/graph.hpp"
#include "qgs/interval_union.hpp"
#include "qgs/polytrig.hpp"
#include "qgs/spectral.hpp"
#include "qgs/subspace.hpp"

using namespace qgs;

namespace {

MetricGraph make(std::vector<std::string> v, std::vector<EdgeSpec> e) {
  return MetricGraph::build(GraphSpec{std::move(v), std::move(e)});
}

MetricGraph interval(double l) { return make({"a", "b"}, {{"e", "a", "b", l, 0.0}}); }

MetricGraph star3(double l = 1.0) {
  return make({"c", "x", "y", "z"}, {{"e1", "c", "x", l, 0.0}, {"e2", "c", "y", l, 0.0}, {"e3", "c", "z", l, 0.0}});
}

MetricGraph lasso() { return make({"v", "w"}, {{"loop", "v", "v", 1.0, 0.0}, {"p", "v", "w", 1.0, 0.0}}); }

Eigen::VectorXcd unit(std::size_t n, std::size_t i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
  v[static_cast<Eigen::Index>(i)] = 1.0;
  return v;
}

}  // namespace

TEST(Graph, SingleEdge) {
  const auto g = interval(1.0);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.boundary_dimension(), 2u);
}

TEST(Graph, LassoIsValid) {
  const auto g = lasso();
  EXPECT_TRUE(g.edge(0).loop());
  EXPECT_EQ(g.degree(g.vertex_index("v")), 3u);
}

TEST(Graph, RejectsBadInput) {
  EXPECT_THROW(interval(0.0), DomainError);
  EXPECT_THROW(interval(-1.0), DomainError);
  EXPECT_THROW(make({"a"}, {{"e", "a", "b", 1.0, 0.0}}), DomainError);
  EXPECT_THROW(make({"a", "a"}, {}), DomainError);
  EXPECT_THROW(make({"a", "b"}, {{"e", "a", "b", 1.0, 0.0}, {"e", "a", "b", 1.0, 0.0}}), DomainError);
  // an infinite edge must hang off a single vertex
  EXPECT_THROW(make({"a", "b"}, {{"e", "a", "b", kInfiniteLength, 0.0}}), DomainError);
}

TEST(Graph, CoordinatesStartsThenEnds) {
  const auto g = make({"a", "b"}, {{"e", "a", "b", 1.0, 0.0}, {"t", "b", "b", kInfiniteLength, 0.0}, {"f", "b", "a", 2.0, 0.0}});
  EXPECT_EQ(g.boundary_dimension(), 5u);
  EXPECT_EQ(g.start_coordinate(1), 1u);
  EXPECT_FALSE(g.end_coordinate(1).has_value());
  EXPECT_EQ(*g.end_coordinate(0), 3u);
  EXPECT_EQ(*g.end_coordinate(2), 4u);
  EXPECT_FALSE(g.compact());
}

TEST(Metrics, IntervalPi) {
  const auto m = metrics(interval(std::numbers::pi));
  EXPECT_DOUBLE_EQ(m.total_length, std::numbers::pi);
  EXPECT_EQ(m.betti, 0);
  EXPECT_EQ(m.degree1_count, 2u);
  EXPECT_NEAR(*m.diameter, std::numbers::pi, 1e-14);
}

TEST(Metrics, Star) {
  const auto m = metrics(star3());
  EXPECT_DOUBLE_EQ(m.total_length, 3.0);
  EXPECT_EQ(m.betti, 0);
  EXPECT_EQ(m.degree1_count, 3u);
  EXPECT_NEAR(*m.diameter, 2.0, 1e-14);
}

TEST(Metrics, LassoAgainstPointDiscretization) {
  const auto g = lasso();
  const auto m = metrics(g);
  EXPECT_EQ(m.betti, 1);
  EXPECT_EQ(m.degree1_count, 1u);
  // farthest pair: the loop midpoint and the pendant tip, 1/2 + 1
  EXPECT_NEAR(*m.diameter, 1.5, 1e-12);
  EXPECT_NEAR(*m.diameter, oracle::brute_diameter(g, 1000), 2e-3);
}

TEST(Metrics, DiameterOracleOnIrregularGraphs) {
  const auto theta = make({"a", "b"}, {{"p", "a", "b", 1.0, 0.0}, {"q", "a", "b", 2.0, 0.0}, {"r", "b", "a", 0.7, 0.0}});
  // the longest shortest path sits inside the cycle formed by p and q
  EXPECT_NEAR(diameter(theta), oracle::brute_diameter(theta, 600), 5e-3);
  const auto tree = make({"a", "b", "c", "d"}, {{"x", "a", "b", 0.3, 0.0}, {"y", "b", "c", 1.1, 0.0}, {"z", "b", "d", 0.9, 0.0}});
  EXPECT_NEAR(diameter(tree), 2.0, 1e-12);
  EXPECT_NEAR(diameter(tree), oracle::brute_diameter(tree, 400), 5e-3);
}

TEST(Metrics, DisconnectedOrInfiniteHasNoDiameter) {
  const auto two = make({"a", "b", "c", "d"}, {{"x", "a", "b", 1.0, 0.0}, {"y", "c", "d", 1.0, 0.0}});
  EXPECT_FALSE(metrics(two).diameter.has_value());
  EXPECT_THROW(diameter(two), DomainError);
  const auto half = make({"a"}, {{"t", "a", "a", kInfiniteLength, 0.0}});
  EXPECT_THROW(diameter(half), DomainError);
}

TEST(Subspace, StandardOnIntervalIsEverything) {
  const auto g = interval(1.0);
  EXPECT_TRUE(same_span(standard_subspace(g), BoundarySubspace::full(1, 1)));
}

TEST(Subspace, DirichletIsZero) {
  const auto g = interval(1.0);
  const auto y = compile_conditions(g, {VertexCondition::dirichlet, {}});
  EXPECT_EQ(y.dimension(), 0u);
}

TEST(Subspace, StarCentreVector) {
  const auto g = star3();
  const auto y = standard_subspace(g);
  EXPECT_EQ(y.dimension(), 4u);
  Eigen::VectorXcd centre = Eigen::VectorXcd::Zero(6);
  centre.head(3).setOnes();
  EXPECT_LT(y.project_complement(centre).norm(), 1e-14);
  // leaves are decoupled Neumann ends
  for (std::size_t i = 3; i < 6; ++i) EXPECT_LT(y.project_complement(unit(6, i)).norm(), 1e-14);
}

TEST(Subspace, FromVectorsDropsDependentColumns) {
  Eigen::MatrixXcd cols(3, 3);
  cols << 1, 0, 1, 0, 1, 1, 0, 0, 0;
  const auto y = BoundarySubspace::from_vectors(2, 1, cols);
  EXPECT_EQ(y.dimension(), 2u);
  EXPECT_EQ(y.dropped(), 1u);
  const Eigen::MatrixXcd gram = y.basis().adjoint() * y.basis();
  EXPECT_LT((gram - Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-14);
}

TEST(Dual, ExtremesSwap) {
  EXPECT_EQ(dual_subspace(BoundarySubspace::full(2, 2)).dimension(), 0u);
  EXPECT_EQ(dual_subspace(BoundarySubspace(2, 2)).dimension(), 4u);
}

TEST(Dual, StandardStarGivesAntiKirchhoff) {
  const auto g = star3();
  const auto dual = dual_subspace(standard_subspace(g));
  VertexConditions anti{VertexCondition::standard, {{"c", VertexCondition::anti_kirchhoff}}};
  // leaves: standard on a degree-1 vertex is Neumann, whose dual is Dirichlet
  anti.overrides["x"] = anti.overrides["y"] = anti.overrides["z"] = VertexCondition::dirichlet;
  EXPECT_TRUE(same_span(dual, compile_conditions(g, anti)));

  // direct construction: span{(-iota+) + iota-}^perp within the centre block
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(6);
  w.head(3).setConstant(-1.0);
  const auto centre_block = BoundarySubspace::from_vectors(3, 3, [&] {
    Eigen::MatrixXcd c(6, 3);
    c.col(0) = unit(6, 0);
    c.col(1) = unit(6, 1);
    c.col(2) = unit(6, 2);
    return c;
  }());
  const Eigen::MatrixXcd basis = centre_block.basis();
  Eigen::MatrixXcd perp(6, 2);
  perp.col(0) = unit(6, 0) - unit(6, 1);
  perp.col(1) = unit(6, 0) + unit(6, 1) - 2.0 * unit(6, 2);
  EXPECT_LT(std::abs(w.dot(perp.col(0))) + std::abs(w.dot(perp.col(1))), 1e-15);
  EXPECT_TRUE(same_span(dual, BoundarySubspace::from_vectors(3, 3, perp)));
  (void)basis;
}

TEST(Dual, Involution) {
  const auto g = make({"a", "b", "c"}, {{"x", "a", "b", 1.0, 0.0}, {"y", "b", "c", 2.0, 0.0}, {"z", "c", "a", 0.5, 0.0}});
  VertexConditions c{VertexCondition::standard, {{"a", VertexCondition::anti_kirchhoff}, {"c", VertexCondition::dirichlet}}};
  const auto y = compile_conditions(g, c);
  EXPECT_LT(span_distance(dual_subspace(dual_subspace(y)), y), 1e-12);
  // dim Y + dim dual = ambient
  EXPECT_EQ(y.dimension() + dual_subspace(y).dimension(), g.boundary_dimension());
}

TEST(Gauge, TrivialFluxes) {
  auto zero = star3();
  const auto y = standard_subspace(zero);
  EXPECT_TRUE(same_span(gauge_transform(y, zero), y));
  const auto full_turn = make({"c", "x", "y"}, {{"e1", "c", "x", 1.0, 2 * std::numbers::pi}, {"e2", "c", "y", 1.0, 2 * std::numbers::pi}});
  const auto y2 = standard_subspace(full_turn);
  EXPECT_LT(span_distance(gauge_transform(y2, full_turn), y2), 1e-12);
}

TEST(Gauge, Unitary) {
  const auto g = make({"a", "b"}, {{"x", "a", "b", 1.0, 0.3}, {"y", "b", "a", 1.0, 2.1}, {"z", "a", "a", 0.4, -1.0}});
  const auto y = standard_subspace(g);
  const auto t = gauge_transform(y, g);
  EXPECT_EQ(t.dimension(), y.dimension());
  const Eigen::MatrixXcd gram = t.basis().adjoint() * t.basis();
  EXPECT_LT((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).norm(), 1e-12);
}

TEST(Subdivide, SplitsLongEdges) {
  const auto sub = subdivide(interval(1.0), 0.4);
  EXPECT_EQ(sub.graph.edge_count(), 3u);
  double total = 0.0;
  for (const auto& e : sub.graph.edges()) {
    EXPECT_LE(e.length, 0.4 + 1e-15);
    total += e.length;
  }
  EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(Subdivide, ShortEdgesUnchanged) {
  const auto g = star3(0.3);
  const auto sub = subdivide(g, 0.4);
  EXPECT_EQ(sub.graph.edge_count(), 3u);
  EXPECT_TRUE(sub.inserted_vertices.empty());
}

TEST(Subdivide, MetricsPreserved) {
  const auto g = lasso();
  const auto sub = subdivide(g, 0.3);
  EXPECT_NEAR(metrics(sub.graph).total_length, metrics(g).total_length, 1e-12);
  EXPECT_EQ(metrics(sub.graph).betti, metrics(g).betti);
  EXPECT_NEAR(*metrics(sub.graph).diameter, *metrics(g).diameter, 1e-12);
}

TEST(Subdivide, NormsRoundTrip) {
  const auto g = make({"a", "b"}, {{"x", "a", "b", 1.3, 0.0}, {"y", "b", "a", 0.7, 0.0}});
  GraphFunction f(g.lengths());
  f.edge(0) = EdgeFunction::cosine(3.0, {1.0, 0.5}) + EdgeFunction::monomial(2, 0.2);
  f.edge(1) = EdgeFunction::exponential(-5.0, 2.0);
  const auto sub = subdivide(g, 0.25);
  GraphFunction h(sub.graph.lengths());
  for (std::size_t p = 0; p < sub.pieces.size(); ++p) {
    h.edge(p) = f.edge(sub.pieces[p].source_edge).shifted(sub.pieces[p].offset);
  }
  EXPECT_NEAR(norm_sq(h), norm_sq(f), 1e-12 * norm_sq(f));
}

TEST(Subdivide, SpectrumInvariant) {
  const auto g = star3();
  VertexConditions c{VertexCondition::standard, {{"x", VertexCondition::dirichlet}}};
  const auto y = compile_conditions(g, c);
  const auto sub = subdivide(g, 0.45);
  const auto ys = map_subspace(y, g, sub);
  const auto a = eigenvalues_up_to(g, y, 60.0);
  const auto b = eigenvalues_up_to(sub.graph, ys, 60.0);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i].lambda, b[i].lambda, 1e-8);
}

TEST(IntervalUnion, MergesAndMeasures) {
  const auto u = IntervalUnion::from({{0.5, 0.7}, {0.0, 0.2}, {0.1, 0.3}, {0.7, 0.8}, {0.9, 0.9}});
  ASSERT_EQ(u.size(), 2u);
  EXPECT_NEAR(u.measure(), 0.6, 1e-15);
  EXPECT_NEAR(u.measure_in(0.25, 0.6), 0.15, 1e-15);
  EXPECT_NEAR(u.measure_in(-1.0, 2.0), 0.6, 1e-15);
  EXPECT_THROW(IntervalUnion::from({{0.3, 0.1}}), DomainError);
  EXPECT_TRUE(u.within(0.0, 1.0));
  EXPECT_FALSE(u.within(0.1, 1.0));
  EXPECT_NEAR(u.complement(0.0, 1.0).measure(), 0.4, 1e-15);
  EXPECT_EQ(u.unite(u.complement(0.0, 1.0)), IntervalUnion::whole(0.0, 1.0));
}

TEST(IntervalUnion, MeasureInMatchesClip) {
  const auto u = IntervalUnion::from({{0.05, 0.11}, {0.2, 0.4}, {0.43, 0.44}, {0.8, 0.95}});
  for (int i = 0; i <= 20; ++i) {
    for (int j = i; j <= 20; ++j) {
      const double t = i / 20.0, s = j / 20.0;
      EXPECT_NEAR(u.measure_in(t, s), u.clip(t, s).measure(), 1e-15);
    }
  }
}
