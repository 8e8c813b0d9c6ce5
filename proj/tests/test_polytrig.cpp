#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qgs/error.hpp"
#include "qgs/polytrig.hpp"

using namespace qgs;
using std::numbers::pi;

namespace {

// plain evaluation of a term list, independent of EdgeFunction
Complex eval_terms(const std::vector<Term>& terms, double x) {
  Complex s = 0.0;
  for (const auto& t : terms) s += t.c * std::pow(x, t.p) * std::exp(Complex(0.0, t.omega * x));
  return s;
}

std::vector<Term> random_terms(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 5), deg(0, 4);
  std::uniform_real_distribution<double> c(-1.0, 1.0), w(-25.0, 25.0), tiny(-1e-6, 1e-6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Term> out;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    // mix ordinary, tiny and zero frequencies
    const double r = u(rng);
    const double omega = r < 0.2 ? 0.0 : (r < 0.35 ? tiny(rng) : w(rng));
    out.push_back({{c(rng), c(rng)}, deg(rng), omega});
  }
  return out;
}

}  // namespace

TEST(EdgeFunction, CanonicalForm) {
  const EdgeFunction f({{1.0, 0, 2.0}, {2.0, 0, 2.0}, {-3.0, 0, 2.0}});
  EXPECT_TRUE(f.is_zero());
  // negligible next to the largest coefficient
  const EdgeFunction h({{1.0, 0, 0.0}, {1e-18, 1, 0.0}});
  EXPECT_EQ(h.terms().size(), 1u);
  const EdgeFunction g({{1.0, 1, 0.0}, {2.0, 0, 1.0}});
  EXPECT_EQ(g.terms().size(), 2u);
}

TEST(EdgeFunction, CosineSecondDerivative) {
  const double k = 2.7;
  const auto d2 = EdgeFunction::cosine(k).derivative(2);
  const auto want = EdgeFunction::cosine(k, -k * k);
  EXPECT_TRUE((d2 - want).is_zero());
}

TEST(EdgeFunction, QuadraticThirdDerivativeVanishes) {
  EXPECT_TRUE(EdgeFunction::monomial(2, 3.0).derivative(3).is_zero());
}

TEST(EdgeFunction, TorsionSecondDerivative) {
  const double l = 1.7;
  const auto u = EdgeFunction::monomial(1, l) + EdgeFunction::monomial(2, -0.5);
  const auto d2 = u.derivative(2);
  ASSERT_EQ(d2.terms().size(), 1u);
  EXPECT_NEAR(std::abs(d2.terms()[0].c - Complex(-1.0)), 0.0, 1e-15);
  EXPECT_NEAR(edge_norm_sq(d2, l), l, 1e-14);
}

TEST(EdgeFunction, DerivativeMatchesFiniteDifferences) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto terms = random_terms(rng);
    const EdgeFunction f(terms);
    const auto df = f.derivative();
    for (double x : {0.1, 0.45, 0.9}) {
      const double h = 1e-5;
      const Complex fd = (eval_terms(terms, x + h) - eval_terms(terms, x - h)) / (2 * h);
      EXPECT_NEAR(std::abs(df(x) - fd), 0.0, 1e-5 * (1.0 + std::abs(fd)));
    }
  }
}

TEST(EdgeFunction, ShiftIsTranslation) {
  const EdgeFunction f({{1.0, 2, 3.0}, {Complex(0, 1), 1, -1.0}, {0.5, 0, 0.0}});
  const auto s = f.shifted(0.3);
  for (double x : {0.0, 0.2, 0.7}) EXPECT_NEAR(std::abs(s(x) - f(x + 0.3)), 0.0, 1e-13);
}

TEST(Integrate, OverlapOfConstant) {
  const auto one = EdgeFunction::constant(1.0);
  const auto omega = IntervalUnion::from({{0.1, 0.3}, {0.5, 0.6}});
  EXPECT_NEAR(inner_product(one, one, omega).real(), 0.3, 1e-15);
}

TEST(Integrate, CosSquaredWindowAgainstSimpson) {
  const auto c2 = EdgeFunction::cosine(2 * pi);
  for (double gamma : {0.1, 0.5, 0.9}) {
    const double a = 0.25 * (1 - gamma), b = 0.25 * (1 + gamma);
    const Complex exact = inner_product(c2, c2, a, b);
    const Complex ref = oracle::simpson([](double x) { return Complex(std::pow(std::cos(2 * pi * x), 2)); }, a, b);
    EXPECT_NEAR(std::abs(exact - ref), 0.0, 1e-10);
  }
}

TEST(Integrate, SineNormOnPi) {
  EXPECT_NEAR(edge_norm_sq(EdgeFunction(), pi), 0.0, 0.0);
  for (int k = 1; k <= 6; ++k) EXPECT_NEAR(edge_norm_sq(EdgeFunction::sine(k), pi), pi / 2, 1e-13);
}

TEST(Integrate, RandomTermListsAgainstSimpson) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> len(0.3, 2.5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_terms(rng);
    const auto b = random_terms(rng);
    const double l = len(rng);
    const Complex exact = inner_product(EdgeFunction(a), EdgeFunction(b), 0.0, l);
    const Complex ref = oracle::simpson(
        [&](double x) { return std::conj(eval_terms(a, x)) * eval_terms(b, x); }, 0.0, l, 1e-14, 256);
    // scale by the L2 norms so near-cancelling products are judged fairly
    const double scale = std::sqrt(edge_norm_sq(EdgeFunction(a), l) * edge_norm_sq(EdgeFunction(b), l));
    EXPECT_LE(std::abs(exact - ref), 1e-9 * std::max(std::abs(ref), scale)) << "trial " << trial;
  }
}

TEST(Integrate, SmallFrequencyContinuity) {
  // the closed form and the Taylor branch must agree across the switch
  for (int q = 0; q <= 6; ++q) {
    for (double nu : {1.999, 2.0, 2.001}) {
      const Complex v = integrate_monomial_exp(q, nu, 0.0, 1.0);
      const Complex ref = oracle::simpson([&](double x) { return std::pow(x, q) * std::exp(Complex(0, nu * x)); }, 0.0, 1.0);
      EXPECT_NEAR(std::abs(v - ref), 0.0, 1e-13) << q << " " << nu;
    }
  }
}

TEST(Integrate, NormsAreAdditive) {
  const EdgeFunction f({{1.0, 1, 4.0}, {0.3, 0, -2.0}});
  const auto u = IntervalUnion::from({{0.0, 0.2}, {0.35, 0.5}, {0.8, 1.0}});
  double parts = 0.0;
  for (const auto& p : u.intervals()) parts += edge_norm_sq(f, IntervalUnion::whole(p.a, p.b));
  EXPECT_NEAR(edge_norm_sq(f, u), parts, 1e-12 * parts);
  const double whole = edge_norm_sq(f, 1.0);
  EXPECT_NEAR(edge_norm_sq(f, u) + edge_norm_sq(f, u.complement(0.0, 1.0)), whole, 1e-12 * whole);
}

TEST(GraphFunctionTest, RegionMustFit) {
  GraphFunction f({1.0, 2.0});
  f.edge(0) = EdgeFunction::constant(1.0);
  Region r{IntervalUnion::whole(0.0, 1.5), IntervalUnion{}};
  EXPECT_THROW(norm_sq(f, r), DomainError);
  EXPECT_NEAR(norm_sq(f), 1.0, 1e-15);
}

TEST(Sup, ConstantIsOne) {
  const auto one = EdgeFunction::constant(1.0);
  EXPECT_NEAR(sup_on_disk_neighborhood(one, 1.0, 4.0), 1.0, 1e-12);
  const auto s = sup_on_interval(one, 0.0, 1.0, 50);
  EXPECT_NEAR(s.lower, 1.0, 1e-15);
  EXPECT_NEAR(s.upper, 1.0, 1e-12);
}

TEST(Sup, ExponentialOnStadium) {
  for (double k : {0.5, 1.0, 2.0}) {
    const double l = 1.0;
    const double bound = sup_on_disk_neighborhood(EdgeFunction::exponential(k), l, 4.0);
    const double exact = std::exp(4.0 * k * l);
    EXPECT_GE(bound, exact * (1 - 1e-12));
    EXPECT_LE(bound, 1.01 * exact);
  }
}

TEST(Sup, IdentityOnStadium) {
  const double bound = sup_on_disk_neighborhood(EdgeFunction::monomial(1), 1.0, 4.0);
  EXPECT_GE(bound, 5.0 - 1e-12);
  EXPECT_LE(bound, 5.0 * 1.01);
}

TEST(Sup, IntervalBracketsTrueMax) {
  const EdgeFunction f({{1.0, 0, 7.0}, {0.5, 1, -3.0}});
  double truth = 0.0;
  for (int i = 0; i <= 200000; ++i) truth = std::max(truth, std::abs(f(i / 200000.0)));
  const auto s = sup_on_interval(f, 0.0, 1.0, 400);
  EXPECT_LE(s.lower, truth + 1e-12);
  EXPECT_GE(s.upper, truth - 1e-12);
  EXPECT_LE(s.upper - s.lower, 0.01 * truth);
}

TEST(CosinePower, MatchesDirectPower) {
  for (int alpha : {1, 2, 5, 8}) {
    const auto f = cosine_power(alpha, 2.0);
    for (double x : {0.0, 0.3, 1.1, 1.9}) {
      EXPECT_NEAR(std::abs(f(x) - std::pow(std::cos(pi * x), alpha)), 0.0, 1e-13);
    }
  }
  EXPECT_EQ(binomial(10, 3), 120u);
  EXPECT_EQ(binomial(60, 30), 118264581564861424ull);
}
