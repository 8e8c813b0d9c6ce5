#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qgs/error.hpp"
#include "qgs/spectral.hpp"

using namespace qgs;
using std::numbers::pi;

namespace {

MetricGraph make(std::vector<std::string> v, std::vector<EdgeSpec> e) {
  return MetricGraph::build(GraphSpec{std::move(v), std::move(e)});
}

MetricGraph interval(double l) { return make({"a", "b"}, {{"e", "a", "b", l, 0.0}}); }

MetricGraph loop(double l, double flux) { return make({"v"}, {{"o", "v", "v", l, flux}}); }

MetricGraph star3() {
  return make({"c", "x", "y", "z"}, {{"e1", "c", "x", 1.0, 0.0}, {"e2", "c", "y", 1.0, 0.0}, {"e3", "c", "z", 1.0, 0.0}});
}

std::vector<double> lambdas(const std::vector<EigenPair>& p) {
  std::vector<double> out;
  for (const auto& q : p) out.push_back(q.lambda);
  return out;
}

// ((2 pi n + theta) / L)^2 over n in Z, sorted, up to lambda_max
std::vector<double> loop_spectrum(double l, double theta, double lambda_max) {
  std::vector<double> out;
  for (int n = -100; n <= 100; ++n) {
    const double v = std::pow((2 * pi * n + theta) / l, 2);
    if (v <= lambda_max) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void expect_lists(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

}  // namespace

TEST(Spectrum, NeumannIntervalPi) {
  const auto g = interval(pi);
  const auto y = compile_conditions(g, {VertexCondition::neumann, {}});
  std::vector<double> want;
  for (int n = 0; n <= 10; ++n) want.push_back(n * n);
  expect_lists(lambdas(eigenvalues_up_to(g, y, 100.0)), want, 1e-8);
}

TEST(Spectrum, DirichletIntervalPi) {
  const auto g = interval(pi);
  const auto y = compile_conditions(g, {VertexCondition::dirichlet, {}});
  std::vector<double> want;
  for (int n = 1; n <= 10; ++n) want.push_back(n * n);
  expect_lists(lambdas(eigenvalues_up_to(g, y, 100.0)), want, 1e-8);
}

TEST(Spectrum, CycleDoubles) {
  const auto g = loop(2 * pi, 0.0);
  expect_lists(lambdas(eigenvalues_up_to(g, standard_subspace(g), 10.0)), {0, 1, 1, 4, 4, 9, 9}, 1e-8);
}

TEST(Spectrum, TwoEdgeCycleDoubles) {
  const auto g = make({"a", "b"}, {{"x", "a", "b", pi, 0.0}, {"y", "b", "a", pi, 0.0}});
  expect_lists(lambdas(eigenvalues_up_to(g, standard_subspace(g), 10.0)), {0, 1, 1, 4, 4, 9, 9}, 1e-8);
}

TEST(Spectrum, StarMatchesDeterminantScan) {
  const auto g = star3();
  const auto pairs = eigenvalues_up_to(g, standard_subspace(g), 150.0);
  std::vector<oracle::Kind> kinds(4, oracle::Kind::standard);
  const auto roots = oracle::determinant_scan(g, kinds, std::sqrt(150.0), 1e-5);
  std::vector<double> want{0.0};
  for (double k : roots) want.push_back(k * k);
  expect_lists(lambdas(pairs), want, 1e-8);
}

TEST(Spectrum, MixedConditionsMatchDeterminantScan) {
  const auto g = make({"a", "b", "c", "d"},
                      {{"p", "a", "b", 0.7, 0.0}, {"q", "b", "c", 1.3, 0.0}, {"r", "c", "a", 0.9, 0.0}, {"s", "c", "d", 0.55, 0.0}});
  VertexConditions c{VertexCondition::standard, {{"a", VertexCondition::dirichlet}, {"d", VertexCondition::dirichlet}}};
  const auto pairs = eigenvalues_up_to(g, compile_conditions(g, c), 120.0);
  std::vector<oracle::Kind> kinds{oracle::Kind::dirichlet, oracle::Kind::standard, oracle::Kind::standard,
                                  oracle::Kind::dirichlet};
  const auto roots = oracle::determinant_scan(g, kinds, std::sqrt(120.0), 1e-4);
  std::vector<double> want;
  for (double k : roots) want.push_back(k * k);
  expect_lists(lambdas(pairs), want, 1e-8);
}

TEST(Spectrum, FluxLoop) {
  for (double theta : {0.0, pi / 3, pi}) {
    const double l = 1.3;
    const auto g = loop(l, theta);
    expect_lists(lambdas(eigenvalues_up_to(g, standard_subspace(g), 400.0)), loop_spectrum(l, theta, 400.0), 1e-8);
  }
}

TEST(Spectrum, FluxIsPeriodic) {
  for (double theta : {0.4, 2.0}) {
    const auto a = eigenvalues_up_to(loop(1.0, theta), standard_subspace(loop(1.0, theta)), 300.0);
    const auto b = eigenvalues_up_to(loop(1.0, theta + 2 * pi), standard_subspace(loop(1.0, theta + 2 * pi)), 300.0);
    expect_lists(lambdas(a), lambdas(b), 1e-9);
  }
}

TEST(Spectrum, OnlyTotalCycleFluxMatters) {
  const auto split = make({"a", "b"}, {{"x", "a", "b", 0.8, 0.5}, {"y", "b", "a", 0.6, 0.7}});
  const auto lumped = make({"a", "b"}, {{"x", "a", "b", 0.8, 1.2}, {"y", "b", "a", 0.6, 0.0}});
  const auto a = eigenvalues_up_to(split, standard_subspace(split), 200.0);
  const auto b = eigenvalues_up_to(lumped, standard_subspace(lumped), 200.0);
  expect_lists(lambdas(a), lambdas(b), 1e-9);
  expect_lists(lambdas(a), loop_spectrum(1.4, 1.2, 200.0), 1e-8);
}

TEST(Spectrum, EigenfunctionsOrthonormal) {
  const auto g = star3();
  const auto pairs = eigenvalues_up_to(g, standard_subspace(g), 120.0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const Complex ip = inner_product(pairs[i].f, pairs[j].f);
      EXPECT_NEAR(std::abs(ip - Complex(i == j ? 1.0 : 0.0)), 0.0, 1e-8);
    }
  }
}

TEST(Spectrum, EigenfunctionsSolveTheEquation) {
  const auto g = make({"a", "b", "c"}, {{"x", "a", "b", 1.0, 0.9}, {"y", "b", "c", 0.6, 0.0}, {"z", "c", "a", 1.4, -0.3}});
  VertexConditions c{VertexCondition::standard, {{"b", VertexCondition::anti_kirchhoff}}};
  const auto y = compile_conditions(g, c);
  const auto gauged = gauge_transform(y, g);
  for (const auto& p : eigenvalues_up_to(g, y, 150.0)) {
    const auto [plus, minus] = boundary_residual(p.f, g, gauged);
    EXPECT_LT(plus, 1e-7);
    EXPECT_LT(minus, 1e-7 * std::max(1.0, p.k));
    // -f'' = lambda f on every edge
    const auto lhs = p.f.derivative(2);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto diff = lhs.edge(e) + p.lambda * p.f.edge(e);
      EXPECT_LT(edge_norm_sq(diff, g.edge(e).length), 1e-16 * (1 + p.lambda * p.lambda));
    }
  }
}

TEST(Spectrum, WeylCountHolds) {
  const auto g = make({"a", "b", "c"}, {{"x", "a", "b", 1.1, 0.0}, {"y", "b", "c", 0.45, 0.0}, {"z", "b", "b", 0.8, 0.0}});
  for (double lm : {20.0, 100.0, 300.0}) {
    EXPECT_GE(eigenvalues_up_to(g, standard_subspace(g), lm).size(), standard_count_lower_bound(g, lm));
  }
}

TEST(Spectrum, RejectsBadInput) {
  const auto g = interval(1.0);
  EXPECT_THROW(eigenvalues_up_to(g, standard_subspace(g), -1.0), DomainError);
  const auto half = make({"a"}, {{"t", "a", "a", kInfiniteLength, 0.0}});
  EXPECT_THROW(eigenvalues_up_to(half, BoundarySubspace::full(1, 0), 10.0), DomainError);
  EXPECT_THROW(eigenvalues_up_to(g, BoundarySubspace::full(2, 2), 10.0), DomainError);
}

TEST(Torsion, IntervalBothEnds) {
  for (double l : {0.5, 1.0, 2.3}) {
    const auto t = solve_torsion(interval(l), {"a", "b"});
    EXPECT_NEAR(t.rigidity, l * l * l / 12, 1e-12 * l * l * l);
    for (double x : {0.1 * l, 0.5 * l, 0.8 * l}) EXPECT_NEAR(t.u.edge(0)(x).real(), x * (l - x) / 2, 1e-13);
  }
}

TEST(Torsion, IntervalOneEnd) {
  for (double l : {0.5, 1.0, 2.3}) {
    const auto t = solve_torsion(interval(l), {"a"});
    EXPECT_NEAR(t.rigidity, l * l * l / 3, 1e-12 * l * l * l);
    for (double x : {0.1 * l, 0.5 * l, l}) EXPECT_NEAR(t.u.edge(0)(x).real(), l * x - x * x / 2, 1e-13);
  }
}

TEST(Torsion, StarAgainstFiniteDifferences) {
  const std::vector<double> lengths{1.0, 0.6, 1.7};
  const auto g = make({"c", "x", "y", "z"}, {{"e1", "c", "x", lengths[0], 0.0}, {"e2", "c", "y", lengths[1], 0.0},
                                             {"e3", "c", "z", lengths[2], 0.0}});
  const auto t = solve_torsion(g, {"x", "y", "z"});
  const double fd = oracle::fd_star_torsion(lengths, 1e-4);
  EXPECT_NEAR(t.rigidity, fd, 1e-6 * fd);
}

TEST(Torsion, NeedsADirichletVertex) {
  EXPECT_THROW(solve_torsion(interval(1.0), {}), DomainError);
  EXPECT_THROW(solve_torsion(interval(1.0), {"nope"}), DomainError);
}

TEST(SpectralSample, Basics) {
  const auto g = interval(pi);
  const auto y = compile_conditions(g, {VertexCondition::neumann, {}});
  const auto pairs = eigenvalues_up_to(g, y, 30.0);
  const auto one = spectral_sample({pairs[2]}, {1.0});
  EXPECT_NEAR(norm_sq(one + Complex(-1.0) * pairs[2].f), 0.0, 1e-20);
  EXPECT_TRUE(spectral_sample({pairs[0], pairs[1]}, {0.0, 0.0}).is_zero());

  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> c;
  double want = 0.0;
  for (int i = 0; i < 5; ++i) {
    c.emplace_back(n(rng), n(rng));
    want += std::norm(c.back());
  }
  const auto f = spectral_sample({pairs.begin(), pairs.begin() + 5}, c);
  EXPECT_NEAR(norm_sq(f), want, 1e-10 * want);
  EXPECT_THROW(spectral_sample({pairs[0]}, {1.0, 2.0}), DomainError);
}
