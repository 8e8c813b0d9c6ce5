#include "qgs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qgs/error.hpp"
#include "qgs/parallel.hpp"

namespace qgs {

bool strictly_above(double observed, double bound) { return observed - bound > -1e-12 * observed; }

RatioReport compare_ratio(double observed, const LogValue& bound) {
  RatioReport r;
  r.observed = observed;
  r.bound = bound;
  r.margin = observed - bound.value;
  r.pass = strictly_above(observed, bound.value);
  return r;
}

double mass_ratio(const GraphFunction& f, const Region& omega) {
  const double total = norm_sq(f);
  if (!(total > 0.0)) throw DomainError("mass ratio of the zero function");
  return std::clamp(norm_sq(f, omega) / total, 0.0, 1.0);
}

RatioReport ratio_thm21(const GraphFunction& f, const Region& omega, double gamma, double rho,
                        double lambda) {
  return compare_ratio(mass_ratio(f, omega), thm21_bound(gamma, rho, lambda));
}

RatioReport ratio_thm26(const GraphFunction& f, const Region& omega, double gamma, double h) {
  return compare_ratio(mass_ratio(f, omega), thm26_bound(gamma, h));
}

DerivativeReport derivative_ratio(const GraphFunction& f, const Region& omega, double gamma,
                                  double rho, double lambda) {
  const LogValue bound = thm21_bound(gamma, rho, lambda);
  const GraphFunction df = f.derivative(1);
  const double f_all = norm_sq(f);
  const double f_in = norm_sq(f, omega);
  DerivativeReport out;
  const double d_all = df.is_zero() ? 0.0 : norm_sq(df);
  // A derivative that is tiny relative to f is rounding residue of a constant.
  if (d_all <= 1e-24 * f_all) {
    out.derivative.vacuous = true;
    out.derivative.pass = true;
    out.derivative.bound = bound;
    out.combined = compare_ratio(f_all > 0.0 ? std::clamp(f_in / f_all, 0.0, 1.0) : 0.0, bound);
    return out;
  }
  const double d_in = norm_sq(df, omega);
  out.derivative = compare_ratio(std::clamp(d_in / d_all, 0.0, 1.0), bound);
  out.combined = compare_ratio(std::clamp((f_in + d_in) / (f_all + d_all), 0.0, 1.0), bound);
  return out;
}

namespace {

bool pure_exponential(const EdgeFunction& f) {
  return std::all_of(f.terms().begin(), f.terms().end(), [](const Term& t) { return t.p == 0; });
}

bool pure_polynomial(const EdgeFunction& f) {
  return std::all_of(f.terms().begin(), f.terms().end(), [](const Term& t) { return t.omega == 0.0; });
}

// Per-edge sequence of ||f_e^(m)||^2 * scale^m for m = 1, 2, ...
class DerivativeNorms {
 public:
  DerivativeNorms(const EdgeFunction& f, double length, double scale)
      : length_(length), scale_(scale), fast_(pure_exponential(f)), current_(f) {
    if (fast_) {
      const auto n = static_cast<Eigen::Index>(f.terms().size());
      gram_.resize(n, n);
      coeff_.resize(n);
      step_.resize(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto& ti = f.terms()[static_cast<std::size_t>(i)];
        coeff_[i] = ti.c;
        step_[i] = Complex(0.0, ti.omega * std::sqrt(scale));
        for (Eigen::Index j = 0; j < n; ++j) {
          const auto& tj = f.terms()[static_cast<std::size_t>(j)];
          gram_(i, j) = integrate_monomial_exp(0, tj.omega - ti.omega, 0.0, length);
        }
      }
    }
  }

  double next() {
    if (fast_) {
      coeff_ = coeff_.cwiseProduct(step_);
      return std::max(0.0, (coeff_.adjoint() * gram_ * coeff_)(0, 0).real());
    }
    current_ = current_.derivative(1);
    current_ *= std::sqrt(scale_);
    return current_.is_zero() ? 0.0 : edge_norm_sq(current_, length_);
  }

  bool fast() const { return fast_; }
  const Eigen::MatrixXcd& gram() const { return gram_; }
  double coefficient_norm_sq() const { return coeff_.squaredNorm(); }

 private:
  double length_;
  double scale_;
  bool fast_;
  EdgeFunction current_;
  Eigen::MatrixXcd gram_;
  Eigen::VectorXcd coeff_;
  Eigen::VectorXcd step_;
};

}  // namespace

EdgeClassification classify_edges(const GraphFunction& f, const BernsteinProfile& profile, int max_order) {
  if (max_order < 1) throw DomainError("max_order must be >= 1");
  const std::size_t ne = f.edge_count();
  EdgeClassification out;
  out.good.assign(ne, true);
  out.complete.assign(ne, false);
  out.mass.assign(ne, 0.0);
  out.checked_order.assign(ne, 0);
  for (std::size_t e = 0; e < ne; ++e) {
    out.mass[e] = f.edge(e).is_zero() ? 0.0 : edge_norm_sq(f.edge(e), f.length(e));
  }
  for (double m : out.mass) out.total += m;
  if (!(out.total > 0.0)) throw DomainError("classification of the zero function");

  // Power laws are handled in units of lambda^m so high orders stay finite.
  const bool power = profile.kind() == BernsteinProfile::Kind::power_law && profile.lambda() > 0.0;
  const double scale = power ? 1.0 / profile.lambda() : 1.0;
  auto cb = [&](int m) { return power ? 1.0 : profile.at(m); };

  // Orders needed per edge so the verdict holds for every m.
  std::vector<int> needed(ne, max_order);
  std::vector<DerivativeNorms> norms;
  norms.reserve(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& fe = f.edge(e);
    norms.emplace_back(fe, f.length(e), scale);
    if (fe.is_zero()) {
      out.complete[e] = true;
      needed[e] = 0;
      continue;
    }
    if (pure_polynomial(fe)) {
      out.complete[e] = true;
      needed[e] = std::min(max_order, fe.max_degree());
      if (fe.max_degree() > max_order) out.complete[e] = false;
      continue;
    }
    if (power && norms[e].fast() && fe.max_frequency() <= std::sqrt(profile.lambda()) * (1.0 + 1e-12)) {
      // ||f_e^(m)||^2 lambda^-m <= lmax(G) |c|^2 for every m, so the
      // inequality closes once 2^(m+1) ||f_e||^2 exceeds that.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(norms[e].gram(), Eigen::EigenvaluesOnly);
      const double cap = eig.eigenvalues().maxCoeff() * norms[e].coefficient_norm_sq() / out.mass[e];
      const int m0 = static_cast<int>(std::ceil(std::log2(std::max(cap, 1.0)))) - 1;
      if (m0 <= 4000) {
        needed[e] = std::max(max_order, m0);
        out.complete[e] = true;
      }
    }
  }

  const int top = *std::max_element(needed.begin(), needed.end());
  const double fnorm = out.total;
  for (int m = 1; m <= top; ++m) {
    double global = 0.0;
    for (std::size_t e = 0; e < ne; ++e) {
      if (f.edge(e).is_zero()) continue;
      if (m > needed[e] && m > max_order) continue;
      const double v = norms[e].next();
      out.checked_order[e] = m;
      global += v;
      const double allowed = std::ldexp(cb(m), m + 1) * out.mass[e];
      if (v > allowed * (1.0 + 1e-12) + 1e-18 * fnorm) out.good[e] = false;
    }
    if (m <= max_order && global > cb(m) * fnorm * (1.0 + 1e-9) + 1e-18 * fnorm) {
      throw DomainError("Bernstein profile violated at order " + std::to_string(m));
    }
  }
  for (std::size_t e = 0; e < ne; ++e) {
    if (out.good[e]) {
      out.good_mass += out.mass[e];
    } else {
      out.bad_mass += out.mass[e];
    }
  }
  out.bad_mass_below_half = out.bad_mass < 0.5 * out.total;
  out.good_mass_dominates = out.total < 2.0 * out.good_mass;
  return out;
}

KovrijkineReport kovrijkine_check(const std::vector<Complex>& coefficients, const IntervalUnion& set,
                                  int samples) {
  if (coefficients.empty() || std::abs(coefficients[0]) < 1.0) {
    throw DomainError("kovrijkine_check needs |phi(0)| >= 1");
  }
  set.require_within(0.0, 1.0);
  if (!(set.measure() > 0.0)) throw DomainError("kovrijkine_check needs |E| > 0");
  std::vector<Term> terms;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    terms.push_back({coefficients[j], static_cast<int>(j), 0.0});
  }
  const EdgeFunction phi(terms);
  KovrijkineReport out;
  out.measure = set.measure();
  const double m_lower = std::max(std::abs(coefficients[0]), sup_on_disk(phi, 4.0).lower);
  out.m_phi = m_lower;
  for (int n = std::max(samples, 16), round = 0; round < 4; ++round, n *= 4) {
    out.samples = n;
    out.sup_interval = sup_on_interval(phi, 0.0, 1.0, n).upper;
    out.sup_set = sup_on_union(phi, set, n).lower;
    const double exponent = 2.0 * std::log(m_lower) / std::numbers::ln2;
    out.rhs = std::pow(12.0 / out.measure, exponent) * out.sup_set;
    out.pass = out.sup_interval <= out.rhs * (1.0 + 1e-12);
    if (out.pass) break;
  }
  return out;
}

LocalEstimateReport local_estimate_check(const EdgeFunction& g, double length, const IntervalUnion& set) {
  if (g.is_zero()) throw DomainError("local_estimate_check needs g != 0");
  if (!(length > 0.0)) throw DomainError("length must be positive");
  set.require_within(0.0, length);
  LocalEstimateReport out;
  out.norm_sq = edge_norm_sq(g, length);
  out.lhs = edge_norm_sq(g, set);
  const double sup = sup_on_disk_neighborhood(g, length, 4.0);
  out.m = std::max(1.0, std::sqrt(length / out.norm_sq) * sup);
  const double base = set.measure() / (48.0 * length);
  const double exponent = 4.0 * std::log(out.m) / std::numbers::ln2 + 1.0;
  out.rhs = base > 0.0 ? 24.0 * std::exp(exponent * std::log(base)) * out.norm_sq : 0.0;
  out.pass = out.lhs >= out.rhs * (1.0 - 1e-12);
  return out;
}

double sin_power_integral(int alpha, double a) {
  if (alpha < 0) throw DomainError("negative exponent");
  if (std::abs(a) > 1.0) throw DomainError("sin_power_integral: |a| must be <= 1");
  // sin(y)/y = sum_j (-1)^j u^j / (2j+1)!, u = y^2.
  constexpr int kDegree = 90;
  std::vector<double> base(kDegree + 1);
  double fact = 1.0;
  for (int j = 0; j <= kDegree; ++j) {
    if (j > 0) fact *= (2.0 * j) * (2.0 * j + 1.0);
    base[static_cast<std::size_t>(j)] = ((j % 2 == 0) ? 1.0 : -1.0) / fact;
  }
  std::vector<double> power(kDegree + 1, 0.0);
  power[0] = 1.0;
  for (int r = 0; r < 2 * alpha; ++r) {
    std::vector<double> next(kDegree + 1, 0.0);
    for (int i = 0; i <= kDegree; ++i) {
      if (power[static_cast<std::size_t>(i)] == 0.0) continue;
      for (int j = 0; i + j <= kDegree; ++j) {
        next[static_cast<std::size_t>(i + j)] += power[static_cast<std::size_t>(i)] * base[static_cast<std::size_t>(j)];
      }
    }
    power = std::move(next);
  }
  // sin^(2 alpha) y = y^(2 alpha) sum_d q_d y^(2d).
  double sum = 0.0;
  const double a2 = a * a;
  double ap = std::pow(a, 2 * alpha + 1);
  for (int d = 0; d <= kDegree; ++d) {
    sum += power[static_cast<std::size_t>(d)] * ap / (2.0 * alpha + 2.0 * d + 1.0);
    ap *= a2;
  }
  return sum;
}

OptimalityReport optimality_example(double length, double lambda, double gamma) {
  const double pi = std::numbers::pi;
  if (!(length > 0.0) || !(lambda > 0.0)) throw DomainError("length and lambda must be positive");
  const double gamma_max = 4.0 / (pi * pi);
  if (!(gamma > 0.0) || gamma > gamma_max * (1.0 + 1e-12)) {
    throw DomainError("gamma must lie in (0, 4/pi^2]");
  }
  OptimalityReport out;
  out.alpha = static_cast<int>(std::floor(length * std::sqrt(lambda) / (2.0 * pi)));
  if (out.alpha < 2) throw DomainError("lambda too small: alpha = floor(l sqrt(lambda) / (2 pi)) must be >= 2");
  // Both windows sit around zeros of the cosine; with y = 2 pi x / l - pi/2
  // the integrand becomes sin^(2 alpha) y on [-pi gamma/2, pi gamma/2].
  out.numerator = 2.0 * length / pi * sin_power_integral(out.alpha, pi * gamma / 2.0);
  out.denominator = length * static_cast<double>(binomial(2 * out.alpha, out.alpha)) /
                    std::ldexp(1.0, 2 * out.alpha);
  out.ratio = out.numerator / out.denominator;
  out.upper = 0.2 * std::pow(pi * pi * gamma / 4.0, length * std::sqrt(lambda) / pi - 1.0);
  out.lower = thm21_bound(std::min(gamma, 1.0), length / 2.0, lambda);
  out.pass = strictly_above(out.ratio, out.lower.value) && out.ratio <= out.upper * (1.0 + 1e-12);
  return out;
}

ObservabilityNumeric observability_numeric(const std::vector<EigenPair>& pairs, const Region& omega,
                                           double T) {
  if (!(T > 0.0)) throw DomainError("T must be positive");
  if (pairs.empty()) throw DomainError("observability_numeric needs at least one mode");
  const auto k = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Zero(k, k);
  Eigen::MatrixXcd rhs(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& pi = pairs[static_cast<std::size_t>(i)];
    lhs(i, i) = std::exp(-2.0 * pi.lambda * T);
    for (Eigen::Index j = i; j < k; ++j) {
      const auto& pj = pairs[static_cast<std::size_t>(j)];
      const double s = pi.lambda + pj.lambda;
      const double w = s > 0.0 ? -std::expm1(-s * T) / s : T;
      const Complex v = inner_product(pi.f, pj.f, omega) * w;
      rhs(i, j) = v;
      rhs(j, i) = std::conj(v);
    }
  }
  ObservabilityNumeric out;
  out.modes = pairs.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> g(rhs, Eigen::EigenvaluesOnly);
  const double top = g.eigenvalues().maxCoeff();
  const double bottom = g.eigenvalues().minCoeff();
  out.conditioning = top > 0.0 ? bottom / top : 0.0;
  if (!(out.conditioning >= 1e-12)) {
    out.rank_deficient = true;
    out.c_squared = std::numeric_limits<double>::infinity();
    return out;
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> gen(lhs, rhs, Eigen::EigenvaluesOnly);
  out.c_squared = gen.eigenvalues().maxCoeff();
  return out;
}

ObservabilityNumeric observability_numeric(const MetricGraph& g, const BoundarySubspace& y,
                                           const Region& omega, double T, std::size_t modes) {
  if (modes == 0) throw DomainError("need at least one mode");
  const double pi = std::numbers::pi;
  double lmax = std::pow((static_cast<double>(modes) + 1.0) * pi / g.total_length(), 2) + 1.0;
  for (int attempt = 0; attempt < 30; ++attempt, lmax *= 2.0) {
    auto pairs = eigenvalues_up_to(g, y, lmax);
    if (pairs.size() >= modes) {
      pairs.resize(modes);
      return observability_numeric(pairs, omega, T);
    }
  }
  throw DomainError("could not find enough eigenpairs");
}

TraceInequalityReport boundary_trace_check(const GraphFunction& f, const MetricGraph& g) {
  if (!g.compact()) throw DomainError("boundary trace check needs a compact graph");
  TraceInequalityReport out;
  out.lhs = psi_plus(f, g).squaredNorm();
  const GraphFunction df = f.derivative(1);
  const double w12 = norm_sq(f) + (df.is_zero() ? 0.0 : norm_sq(df));
  out.rhs = 2.0 / std::tanh(g.min_length()) * w12;
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-300;
  return out;
}

LassoReport lasso_counterexample() {
  const double pi = std::numbers::pi;
  GraphSpec spec;
  spec.vertices = {"v", "w"};
  spec.edges = {{"loop", "v", "v", 1.0, 0.0}, {"pendant", "v", "w", 1.0, 0.0}};
  const auto g = MetricGraph::build(spec);
  const auto y = standard_subspace(g);

  LassoReport out;
  out.k = 2.0 * pi;
  out.secular_sigma = smallest_singular_value(g, y, out.k);
  GraphFunction phi(g.lengths());
  phi.edge(0) = EdgeFunction::sine(out.k, std::sqrt(2.0));
  const auto [plus, minus] = boundary_residual(phi, g, gauge_transform(y, g));
  out.residual_plus = plus;
  out.residual_minus = minus;
  out.ratio_pendant = mass_ratio(phi, {IntervalUnion{}, IntervalUnion::whole(0.0, 1.0)});
  out.ratio_loop = mass_ratio(phi, {IntervalUnion::whole(0.0, 1.0), IntervalUnion{}});
  out.pendant_fraction = 1.0 / g.total_length();

  SamplingSet omega = empty_sampling(g);
  omega.edges[0].set = IntervalUnion::whole(0.25, 0.75);
  omega.edges[1].set = IntervalUnion::whole(0.25, 0.75);
  const auto opt = optimal_gamma(g, omega, 0.5);
  out.sampling_gamma = opt.gamma;
  out.sampling_rho = opt.rho;
  out.ratio_sampling = mass_ratio(phi, omega.region(g));
  out.sampling_bound = thm21_bound(opt.gamma, opt.rho, out.k * out.k);
  return out;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct RandomGraph {
  MetricGraph graph;
  BoundarySubspace y;
};

RandomGraph random_graph(std::mt19937_64& rng, std::size_t max_edges) {
  std::uniform_int_distribution<std::size_t> nv_dist(1, 5);
  const std::size_t nv = nv_dist(rng);
  const std::size_t min_edges = std::max<std::size_t>(1, nv - 1);
  std::uniform_int_distribution<std::size_t> ne_dist(min_edges, std::max(min_edges, max_edges));
  const std::size_t ne = ne_dist(rng);
  std::uniform_real_distribution<double> len(0.5, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  GraphSpec spec;
  for (std::size_t v = 0; v < nv; ++v) spec.vertices.push_back("v" + std::to_string(v));
  const bool magnetic = unit(rng) < 0.5;
  auto add = [&](std::size_t a, std::size_t b) {
    if (unit(rng) < 0.5) std::swap(a, b);
    EdgeSpec e;
    e.id = "e" + std::to_string(spec.edges.size());
    e.from = spec.vertices[a];
    e.to = spec.vertices[b];
    e.length = len(rng);
    e.flux = magnetic ? angle(rng) : 0.0;
    spec.edges.push_back(e);
  };
  for (std::size_t v = 1; v < nv; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    add(parent(rng), v);
  }
  std::uniform_int_distribution<std::size_t> any(0, nv - 1);
  while (spec.edges.size() < ne) add(any(rng), any(rng));
  auto g = MetricGraph::build(spec);

  VertexConditions conditions;
  for (const auto& v : spec.vertices) {
    const double u = unit(rng);
    if (u < 0.2) {
      conditions.overrides[v] = VertexCondition::dirichlet;
    } else if (u < 0.3) {
      conditions.overrides[v] = VertexCondition::neumann;
    } else if (u < 0.4) {
      conditions.overrides[v] = VertexCondition::anti_kirchhoff;
    }
  }
  auto y = compile_conditions(g, conditions);
  return {std::move(g), std::move(y)};
}

SamplingSet random_sampling(std::mt19937_64& rng, const MetricGraph& g) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 3);
  SamplingSet s = empty_sampling(g);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const double l = g.edge(e).length;
    std::vector<Interval> pieces;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      const double c = unit(rng) * l;
      const double half = (0.02 + 0.28 * unit(rng)) * l;
      pieces.push_back({std::max(0.0, c - half), std::min(l, c + half)});
    }
    s.edges[e].set = IntervalUnion::from(pieces);
  }
  return s;
}

void audit_graph(const AuditOptions& options, std::size_t index, std::vector<AuditTrial>& trials) {
  std::mt19937_64 rng(mix_seed(options.seed, index));
  const auto rg = random_graph(rng, options.max_edges);
  std::vector<EigenPair> pairs;
  try {
    pairs = eigenvalues_up_to(rg.graph, rg.y, options.lambda_max);
  } catch (const DomainError& e) {
    throw DomainError("audit graph " + std::to_string(index) + ": " + e.what());
  }
  if (pairs.empty()) return;
  std::uniform_real_distribution<double> rho_dist(0.15, 2.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t t = 0; t < options.trials_per_graph; ++t) {
    GraphOptimum opt;
    SamplingSet omega;
    for (int attempt = 0; attempt < 20 && !opt.feasible; ++attempt) {
      omega = random_sampling(rng, rg.graph);
      opt = optimal_gamma(rg.graph, omega, rho_dist(rng), options.grid);
    }
    if (!opt.feasible) continue;
    const auto check = verify_cover(rg.graph, omega, opt.cover, opt.gamma, opt.rho);
    if (!check.ok) throw DomainError("optimizer produced a cover that fails verification");

    const std::size_t m_max = std::min(options.max_terms, pairs.size());
    std::uniform_int_distribution<std::size_t> m_dist(1, m_max);
    std::vector<std::size_t> idx(pairs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(m_dist(rng));
    std::vector<EigenPair> chosen;
    std::vector<Complex> coeffs;
    double lambda = 0.0;
    for (std::size_t i : idx) {
      chosen.push_back(pairs[i]);
      coeffs.emplace_back(normal(rng), normal(rng));
      lambda = std::max(lambda, pairs[i].lambda);
    }
    const GraphFunction f = spectral_sample(chosen, coeffs);
    const Region region = omega.region(rg.graph);

    AuditTrial trial;
    trial.graph = index;
    trial.trial = t;
    trial.gamma = check.gamma;
    trial.rho = check.rho;
    trial.lambda = lambda;
    trial.mass = ratio_thm21(f, region, check.gamma, check.rho, lambda);
    trial.derivative = derivative_ratio(f, region, check.gamma, check.rho, lambda).derivative;
    if (options.classify) {
      trial.classified = true;
      try {
        const auto cls = classify_edges(f, BernsteinProfile::power_law(lambda), 40);
        trial.bad_mass_below_half = cls.bad_mass_below_half;
        trial.good_mass_dominates = cls.good_mass_dominates;
      } catch (const DomainError&) {
        trial.bad_mass_below_half = false;
        trial.good_mass_dominates = false;
      }
    }
    trials.push_back(trial);
  }
}

}  // namespace

AuditReport run_audit(const AuditOptions& options) {
  AuditReport report;
  report.seed = options.seed;
  std::vector<std::vector<AuditTrial>> per_graph(options.graphs);
  parallel_for(options.graphs, [&](std::size_t i) { audit_graph(options, i, per_graph[i]); });
  for (auto& trials : per_graph) {
    if (!trials.empty()) ++report.graphs;
    for (auto& t : trials) {
      if (!t.mass.pass) ++report.violations;
      if (!t.derivative.pass && !t.derivative.vacuous) ++report.derivative_violations;
      if (t.classified && !(t.bad_mass_below_half && t.good_mass_dominates)) ++report.classification_failures;
      report.trials.push_back(std::move(t));
    }
  }
  return report;
}

}  // namespace qgs
