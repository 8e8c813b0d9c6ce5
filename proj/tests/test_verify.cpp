#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qgs/error.hpp"
#include "qgs/verify.hpp"

using namespace qgs;
using std::numbers::pi;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

MetricGraph make(std::vector<std::string> v, std::vector<EdgeSpec> e) {
  return MetricGraph::build(GraphSpec{std::move(v), std::move(e)});
}

MetricGraph interval(double l) { return make({"a", "b"}, {{"e", "a", "b", l, 0.0}}); }

MetricGraph lasso() { return make({"v", "w"}, {{"loop", "v", "v", 1.0, 0.0}, {"pendant", "v", "w", 1.0, 0.0}}); }

// int_0^a sin^n y dy by the reduction formula, in 50 digits
Big big_sin_power(int n, const Big& a) {
  using boost::multiprecision::cos;
  using boost::multiprecision::pow;
  using boost::multiprecision::sin;
  if (n == 0) return a;
  if (n == 1) return 1 - cos(a);
  return -pow(sin(a), n - 1) * cos(a) / n + Big(n - 1) / n * big_sin_power(n - 2, a);
}

}  // namespace

TEST(Ratio, TrivialCases) {
  GraphFunction f({1.0, 2.0});
  f.edge(0) = EdgeFunction::constant(1.0);
  f.edge(1) = EdgeFunction::constant(1.0);
  EXPECT_DOUBLE_EQ(mass_ratio(f, whole_region({1.0, 2.0})), 1.0);
  EXPECT_DOUBLE_EQ(mass_ratio(f, {IntervalUnion{}, IntervalUnion{}}), 0.0);
  EXPECT_NEAR(mass_ratio(f, {IntervalUnion::whole(0.0, 1.0), IntervalUnion{}}), 1.0 / 3, 1e-15);
  EXPECT_THROW(mass_ratio(GraphFunction({1.0}), {IntervalUnion{}}), DomainError);
  const auto r = ratio_thm21(f, whole_region({1.0, 2.0}), 1.0, 1.0, 50.0);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.margin, 0.0);
  EXPECT_FALSE(ratio_thm26(f, {IntervalUnion{}, IntervalUnion{}}, 0.5, 2.0).pass);
}

TEST(Ratio, ToleranceIsRelative) {
  EXPECT_TRUE(strictly_above(1.0, 1.0));
  EXPECT_TRUE(strictly_above(1.0, 1.0 + 5e-13));
  EXPECT_FALSE(strictly_above(1.0, 1.0 + 2e-12));
}

TEST(Derivative, ConstantIsVacuous) {
  GraphFunction f({1.0});
  f.edge(0) = EdgeFunction::constant(2.0);
  const auto d = derivative_ratio(f, {IntervalUnion::whole(0.0, 0.5)}, 0.5, 1.0, 0.0);
  EXPECT_TRUE(d.derivative.vacuous);
  EXPECT_TRUE(d.derivative.pass);
  EXPECT_NEAR(d.combined.observed, 0.5, 1e-15);
}

TEST(Derivative, CosineOnNeumannInterval) {
  // f = cos x on (0, pi): f' = -sin x, half of whose mass sits in (pi/4, 3 pi/4)
  GraphFunction f({pi});
  f.edge(0) = EdgeFunction::cosine(1.0);
  const Region omega{IntervalUnion::whole(pi / 4, 3 * pi / 4)};
  const auto d = derivative_ratio(f, omega, 0.5, pi / 2, 1.0);
  EXPECT_NEAR(d.derivative.observed, 0.5 + 1 / pi, 1e-13);
  EXPECT_TRUE(d.derivative.pass);
  EXPECT_NEAR(d.combined.observed, 0.5, 1e-13);
}

TEST(Classify, MatchesPerOrderQuadrature) {
  const auto r = fixture::classify_agreement(404, 100);
  EXPECT_EQ(r.instances, 100);
  EXPECT_GT(r.compared, 100);
  EXPECT_EQ(r.mismatches, 0);
  EXPECT_EQ(r.mass_errors, 0);
  EXPECT_EQ(r.dominance_failures, 0);
}

TEST(Classify, ProfileViolationThrows) {
  GraphFunction f({pi});
  f.edge(0) = EdgeFunction::cosine(3.0);
  EXPECT_THROW(classify_edges(f, BernsteinProfile::power_law(4.0)), DomainError);
  EXPECT_NO_THROW(classify_edges(f, BernsteinProfile::power_law(9.0)));
}

TEST(Kovrijkine, RandomPolynomials) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> c(-2.0, 2.0), u(0.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 6), pieces(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> coeff{std::polar(1.0 + u(rng), 2 * pi * u(rng))};
    const int d = deg(rng);
    for (int j = 0; j < d; ++j) coeff.emplace_back(c(rng), c(rng));
    std::vector<Interval> parts;
    for (int i = 0, n = pieces(rng); i < n; ++i) {
      const double a = u(rng), w = 0.01 + 0.2 * u(rng);
      parts.push_back({a * (1 - w), a * (1 - w) + w});
    }
    const auto r = kovrijkine_check(coeff, IntervalUnion::from(parts), 400);
    EXPECT_TRUE(r.pass) << "trial " << trial << " lhs " << r.sup_interval << " rhs " << r.rhs;
  }
  EXPECT_THROW(kovrijkine_check({0.5}, IntervalUnion::whole(0.0, 1.0)), DomainError);
}

TEST(LocalEstimate, RandomEdgeFunctions) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> c(-1.0, 1.0), u(0.0, 1.0), w(-15.0, 15.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double l = 0.3 + 2.0 * u(rng);
    std::vector<Term> terms;
    for (int i = 0; i < 3; ++i) terms.push_back({{c(rng), c(rng)}, i == 2 ? 1 : 0, w(rng)});
    const double a = u(rng) * l * 0.8;
    const auto set = IntervalUnion::whole(a, a + (0.02 + 0.18 * u(rng)) * l);
    const auto r = local_estimate_check(EdgeFunction(terms), l, set);
    EXPECT_TRUE(r.pass) << "trial " << trial;
    EXPECT_GE(r.m, 1.0);
  }
}

TEST(Optimality, SinPowerAgainstReduction) {
  for (int alpha : {0, 1, 2, 5, 8}) {
    for (double a : {0.05, 0.4, 1.0}) {
      const double ref = static_cast<double>(big_sin_power(2 * alpha, Big(a)));
      EXPECT_NEAR(sin_power_integral(alpha, a), ref, 1e-13 * std::max(ref, 1e-300)) << alpha << " " << a;
    }
  }
}

TEST(Optimality, Sandwich) {
  const double gmax = 4 / (pi * pi);
  for (double l : {1.0, 2.0, pi}) {
    for (int alpha = 2; alpha <= 8; ++alpha) {
      const double lambda = std::pow((alpha + 0.5) * 2 * pi / l, 2);
      for (double gamma : {0.05, 0.1, 0.2, 0.3, gmax}) {
        const auto r = optimality_example(l, lambda, gamma);
        ASSERT_EQ(r.alpha, alpha);
        EXPECT_TRUE(r.pass) << l << " " << alpha << " " << gamma;
        // numerator by quadrature over the two windows
        const double h = gamma * l / 4;
        auto c = [&](double x) { return Complex(std::pow(std::cos(2 * pi * x / l), 2 * alpha)); };
        const double num = (oracle::simpson(c, l / 4 - h, l / 4 + h) + oracle::simpson(c, 3 * l / 4 - h, 3 * l / 4 + h)).real();
        EXPECT_NEAR(r.numerator, num, 1e-9 * num);
      }
    }
  }
  EXPECT_THROW(optimality_example(1.0, 1.0, 0.1), DomainError);
  EXPECT_THROW(optimality_example(1.0, 400.0, 0.5), DomainError);
}

TEST(ObservabilityNumericTest, GrowsAsTimeShrinks) {
  const auto g = interval(1.0);
  const auto y = compile_conditions(g, {VertexCondition::neumann, {}});
  const Region omega{IntervalUnion::whole(0.25, 0.75)};
  double prev = 0.0;
  for (double T : {1.0, 0.5, 0.25, 0.125}) {
    const auto r = observability_numeric(g, y, omega, T, 6);
    EXPECT_FALSE(r.rank_deficient);
    EXPECT_TRUE(std::isfinite(r.c_squared));
    EXPECT_GT(r.c_squared, prev);
    prev = r.c_squared;
  }
}

TEST(ObservabilityNumericTest, LassoPendantIsRankDeficient) {
  const auto g = lasso();
  const Region pendant{IntervalUnion{}, IntervalUnion::whole(0.0, 1.0)};
  EXPECT_TRUE(observability_numeric(g, standard_subspace(g), pendant, 1.0, 12).rank_deficient);
  const Region both{IntervalUnion::whole(0.25, 0.75), IntervalUnion::whole(0.25, 0.75)};
  EXPECT_FALSE(observability_numeric(g, standard_subspace(g), both, 1.0, 12).rank_deficient);
}

TEST(TraceInequality, RandomFunctions) {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> c(-1.0, 1.0), w(-20.0, 20.0);
  std::uniform_int_distribution<int> p(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = fixture::random_instance(rng);
    GraphFunction f(inst.g.lengths());
    for (std::size_t e = 0; e < f.edge_count(); ++e) {
      std::vector<Term> terms;
      for (int i = 0; i < 3; ++i) terms.push_back({{c(rng), c(rng)}, p(rng), w(rng)});
      f.edge(e) = EdgeFunction(terms);
    }
    const auto r = boundary_trace_check(f, inst.g);
    EXPECT_TRUE(r.pass) << "trial " << trial << " " << r.lhs << " " << r.rhs;
  }
}

TEST(Lasso, PendantMassVanishes) {
  const auto r = lasso_counterexample();
  EXPECT_NEAR(r.k, 2 * pi, 1e-15);
  EXPECT_LT(r.secular_sigma, 1e-10);
  EXPECT_LT(r.residual_plus, 1e-12);
  EXPECT_LT(r.residual_minus, 1e-10);
  EXPECT_EQ(r.ratio_pendant, 0.0);
  EXPECT_NEAR(r.ratio_loop, 1.0, 1e-14);
  EXPECT_NEAR(r.pendant_fraction, 0.5, 1e-15);
  EXPECT_GT(r.ratio_sampling, r.sampling_bound.value);
}

TEST(Gauge, RatiosOnlySeeTotalFlux) {
  const auto split = make({"a", "b"}, {{"x", "a", "b", 0.8, 0.5}, {"y", "b", "a", 0.6, 0.7}});
  const auto lumped = make({"a", "b"}, {{"x", "a", "b", 0.8, 1.2}, {"y", "b", "a", 0.6, 0.0}});
  const auto a = eigenvalues_up_to(split, standard_subspace(split), 200.0);
  const auto b = eigenvalues_up_to(lumped, standard_subspace(lumped), 200.0);
  ASSERT_EQ(a.size(), b.size());
  const Region omega{IntervalUnion::from({{0.1, 0.3}, {0.5, 0.7}}), IntervalUnion::whole(0.2, 0.5)};
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(mass_ratio(a[i].f, omega), mass_ratio(b[i].f, omega), 1e-9) << "mode " << i;
  }
}

TEST(Dual, InvolutionAndDerivativeConditions) {
  std::mt19937_64 rng(8);
  double worst_plus = 0.0, worst_minus = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = fixture::random_instance(rng);
    const auto dual = dual_subspace(inst.y);
    EXPECT_LT(span_distance(dual_subspace(dual), inst.y), 1e-7);
    const auto gauged = gauge_transform(inst.y, inst.g);
    const auto gauged_dual = dual_subspace(gauged);
    for (const auto& p : eigenvalues_up_to(inst.g, inst.y, 100.0)) {
      // f' obeys the dual conditions
      const auto [plus, minus] = boundary_residual(p.f.derivative(1), inst.g, gauged_dual);
      worst_plus = std::max(worst_plus, plus);
      worst_minus = std::max(worst_minus, minus);
    }
  }
  EXPECT_LT(worst_plus, 1e-7);
  EXPECT_LT(worst_minus, 1e-7);
}
