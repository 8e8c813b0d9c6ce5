#include "qgs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgs/error.hpp"
#include "qgs/parallel.hpp"

namespace qgs {

namespace {

constexpr Complex kI{0.0, 1.0};

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

void require_compact(const MetricGraph& g) {
  if (!g.compact()) throw DomainError("spectral computations need a compact graph");
  if (g.edge_count() == 0) throw DomainError("graph has no edges");
}

class SecularSystem {
 public:
  SecularSystem(const MetricGraph& g, const BoundarySubspace& y) : g_(g) {
    require_compact(g);
    if (y.ambient_dimension() != g.boundary_dimension()) {
      throw DomainError("boundary subspace dimension does not match the graph");
    }
    const BoundarySubspace gauged = gauge_transform(y, g);
    ystar_ = gauged.basis().adjoint();
    qstar_ = gauged.complement_basis().adjoint();
    inv_l0_ = static_cast<double>(g.edge_count()) / g.total_length();
  }

  double kappa(double k) const { return std::sqrt(k * k + inv_l0_ * inv_l0_); }

  Eigen::MatrixXcd at(double k) const {
    Eigen::MatrixXcd plus, minus;
    maps(k, plus, minus);
    const auto n = static_cast<Eigen::Index>(g_.boundary_dimension());
    Eigen::MatrixXcd m(n, n);
    m.topRows(qstar_.rows()) = qstar_ * plus;
    m.bottomRows(ystar_.rows()) = ystar_ * minus;
    return m;
  }

  // Psi+ and Psi-(i d/dx) / kappa applied to the ansatz, before projection.
  void maps(double k, Eigen::MatrixXcd& plus, Eigen::MatrixXcd& minus) const {
    const auto n = static_cast<Eigen::Index>(g_.boundary_dimension());
    plus = Eigen::MatrixXcd::Zero(n, n);
    minus = Eigen::MatrixXcd::Zero(n, n);
    const double kap = kappa(k);
    for (std::size_t e = 0; e < g_.edge_count(); ++e) {
      const auto s = static_cast<Eigen::Index>(g_.start_coordinate(e));
      const auto t = static_cast<Eigen::Index>(*g_.end_coordinate(e));
      const auto a = static_cast<Eigen::Index>(2 * e);
      const double l = g_.edge(e).length;
      const double c = std::cos(k * l);
      const double sn = std::sin(k * l);
      plus(s, a) = 1.0;
      plus(t, a) = c;
      plus(t, a + 1) = kap * l * sinc(k * l);
      minus(s, a + 1) = -kI;
      minus(t, a) = kI * (-(k / kap) * sn);
      minus(t, a + 1) = kI * c;
    }
  }

  double sigma_min(double k) const {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(at(k));
    return svd.singularValues().minCoeff();
  }

  // Typical row size of the unprojected boundary maps. The projected matrix
  // can vanish identically (a standard loop at a double eigenvalue), so it
  // cannot serve as its own yardstick.
  double accept_scale(double k) const {
    Eigen::MatrixXcd plus, minus;
    maps(k, plus, minus);
    return std::sqrt((plus.squaredNorm() + minus.squaredNorm()) / (2.0 * static_cast<double>(plus.rows())));
  }

 private:
  const MetricGraph& g_;
  Eigen::MatrixXcd ystar_;
  Eigen::MatrixXcd qstar_;
  double inv_l0_ = 1.0;
};

double golden_minimize(const SecularSystem& sys, double lo, double hi, double tol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - r * (hi - lo);
  double x2 = lo + r * (hi - lo);
  double f1 = sys.sigma_min(x1);
  double f2 = sys.sigma_min(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = sys.sigma_min(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = sys.sigma_min(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

bool is_flux_free(const MetricGraph& g) {
  return std::all_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.flux == 0.0; });
}

void fix_phase(GraphFunction& f, Eigen::VectorXcd& coefficients) {
  Complex best = 0.0;
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    for (const auto& t : f.edge(e).terms()) {
      if (std::abs(t.c) > std::abs(best) * (1.0 + 1e-9)) best = t.c;
    }
  }
  if (best == 0.0) return;
  const Complex rot = std::conj(best) / std::abs(best);
  f *= rot;
  coefficients *= rot;
}

struct Root {
  double k;
  double sigma;
};

std::vector<EigenPair> solve_once(const MetricGraph& g, const SecularSystem& sys, double lambda_max,
                                  const SpectrumOptions& options, double step) {
  const double kmax = std::sqrt(lambda_max) + 2.0 * step;
  const auto n = static_cast<std::size_t>(std::ceil(kmax / step)) + 1;
  std::vector<double> sigma(n);
  parallel_for(n, [&](std::size_t i) { sigma[i] = sys.sigma_min(static_cast<double>(i) * step); });

  std::vector<double> candidates;
  std::vector<Root> roots;
  if (sigma[0] < options.accept_factor * sys.accept_scale(0.0)) roots.push_back({0.0, sigma[0]});
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const bool left_ok = (i == 0) || sigma[i] <= sigma[i - 1];
    if (left_ok && sigma[i] <= sigma[i + 1]) candidates.push_back(static_cast<double>(i) * step);
  }
  std::vector<Root> refined(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t j) {
    const double lo = std::max(0.0, candidates[j] - step);
    const double hi = candidates[j] + step;
    const double k = golden_minimize(sys, lo, hi, options.refine_tolerance);
    refined[j] = {k, sys.sigma_min(k)};
  });
  for (const auto& r : refined) {
    if (r.sigma < options.accept_factor * sys.accept_scale(r.k)) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.k < b.k; });

  const double kcap = std::sqrt(lambda_max) + 1e-9;
  std::vector<EigenPair> out;
  std::size_t i = 0;
  while (i < roots.size()) {
    std::size_t j = i + 1;
    Root rep = roots[i];
    while (j < roots.size() && roots[j].k - roots[i].k < options.merge_gap) {
      if (rep.k != 0.0 && (roots[j].sigma < rep.sigma)) rep = roots[j];
      ++j;
    }
    i = j;
    if (rep.k > kcap) continue;

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.at(rep.k), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Eigen::Index dim = sv.size();
    const double scale = sys.accept_scale(rep.k);
    Eigen::Index mult = 0;
    while (mult < dim && sv[dim - 1 - mult] < options.null_factor * scale) ++mult;
    mult = std::max<Eigen::Index>(mult, 1);

    // Gram-Schmidt on the null functions with exact inner products.
    std::vector<GraphFunction> basis;
    std::vector<Eigen::VectorXcd> coeffs;
    for (Eigen::Index c = 0; c < mult; ++c) {
      Eigen::VectorXcd v = svd.matrixV().col(dim - 1 - c);
      GraphFunction f = ansatz_function(g, rep.k, v);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const Complex proj = inner_product(basis[b], f);
        f += (-proj) * basis[b];
        v -= proj * coeffs[b];
      }
      const double nrm = std::sqrt(norm_sq(f));
      f *= 1.0 / nrm;
      v /= nrm;
      basis.push_back(f);
      coeffs.push_back(v);
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      EigenPair p;
      p.k = rep.k;
      p.lambda = rep.k * rep.k;
      p.f = basis[b];
      p.coefficients = coeffs[b];
      p.residual = sv[dim - 1];
      fix_phase(p.f, p.coefficients);
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd secular_matrix(const MetricGraph& g, const BoundarySubspace& y, double k) {
  if (k < 0.0) throw DomainError("wavenumber must be non-negative");
  return SecularSystem(g, y).at(k);
}

double smallest_singular_value(const MetricGraph& g, const BoundarySubspace& y, double k) {
  if (k < 0.0) throw DomainError("wavenumber must be non-negative");
  return SecularSystem(g, y).sigma_min(k);
}

GraphFunction ansatz_function(const MetricGraph& g, double k, const Eigen::VectorXcd& coefficients) {
  require_compact(g);
  if (coefficients.size() != static_cast<Eigen::Index>(2 * g.edge_count())) {
    throw DomainError("ansatz coefficient vector has the wrong length");
  }
  const double inv_l0 = static_cast<double>(g.edge_count()) / g.total_length();
  const double kap = std::sqrt(k * k + inv_l0 * inv_l0);
  GraphFunction f(g.lengths());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Complex a = coefficients[static_cast<Eigen::Index>(2 * e)];
    const Complex b = coefficients[static_cast<Eigen::Index>(2 * e + 1)];
    if (k == 0.0) {
      f.edge(e) = EdgeFunction({{a, 0, 0.0}, {b * kap, 1, 0.0}});
    } else {
      f.edge(e) = EdgeFunction::cosine(k, a) + EdgeFunction::sine(k, b * kap / k);
    }
  }
  return f;
}

Eigen::VectorXcd psi_plus(const GraphFunction& f, const MetricGraph& g) {
  require_compact(g);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(g.boundary_dimension()));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    v[static_cast<Eigen::Index>(g.start_coordinate(e))] = f.edge(e)(0.0);
    v[static_cast<Eigen::Index>(*g.end_coordinate(e))] = f.edge(e)(g.edge(e).length);
  }
  return v;
}

Eigen::VectorXcd psi_minus(const GraphFunction& f, const MetricGraph& g) {
  Eigen::VectorXcd v = psi_plus(f, g);
  v.head(static_cast<Eigen::Index>(g.edge_count())) *= -1.0;
  return v;
}

std::pair<double, double> boundary_residual(const GraphFunction& f, const MetricGraph& g,
                                            const BoundarySubspace& y) {
  const Eigen::VectorXcd plus = psi_plus(f, g);
  const Eigen::VectorXcd minus = kI * psi_minus(f.derivative(1), g);
  return {y.project_complement(plus).norm(), y.project(minus).norm()};
}

std::size_t standard_count_lower_bound(const MetricGraph& g, double lambda) {
  if (lambda < 0.0) return 0;
  const auto m = metrics(g);
  const double shift = 1.5 * static_cast<double>(m.betti) + 0.5 * static_cast<double>(m.degree1_count);
  const double top = m.total_length * std::sqrt(lambda) / std::numbers::pi * (1.0 - 1e-12) + 1.0 - shift;
  const double kmax = std::floor(top);
  return 1 + (kmax >= 2.0 ? static_cast<std::size_t>(kmax) - 1 : 0);
}

std::vector<EigenPair> eigenvalues_up_to(const MetricGraph& g, const BoundarySubspace& y,
                                         double lambda_max, const SpectrumOptions& options) {
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw DomainError("lambda_max must be positive and finite");
  }
  const SecularSystem sys(g, y);
  double step = options.step > 0.0 ? options.step : std::numbers::pi / (8.0 * g.total_length());
  const bool check = options.count_check && g.connected() && is_flux_free(g) &&
                     same_span(y, standard_subspace(g));
  const std::size_t need = check ? standard_count_lower_bound(g, lambda_max) : 0;
  for (int attempt = 0; attempt < 5; ++attempt) {
    auto pairs = solve_once(g, sys, lambda_max, options, step);
    if (pairs.size() >= need) return pairs;
    step /= 2.0;
  }
  throw DomainError("eigenvalue scan too coarse: count stays below the Weyl-type lower bound");
}

GraphFunction spectral_sample(const std::vector<EigenPair>& pairs,
                              const std::vector<Complex>& coefficients) {
  if (pairs.size() != coefficients.size()) {
    throw DomainError("spectral_sample: coefficient count does not match pair count");
  }
  if (pairs.empty()) throw DomainError("spectral_sample: no eigenpairs");
  GraphFunction f(pairs.front().f.lengths());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (coefficients[i] != 0.0) f += coefficients[i] * pairs[i].f;
  }
  return f;
}

TorsionSolution solve_torsion(const MetricGraph& g, const std::vector<std::string>& dirichlet) {
  require_compact(g);
  if (dirichlet.empty()) throw DomainError("torsion needs at least one Dirichlet vertex");
  VertexConditions conditions;
  for (const auto& v : dirichlet) {
    if (!g.has_vertex(v)) throw DomainError("unknown Dirichlet vertex '" + v + "'");
    conditions.overrides[v] = VertexCondition::dirichlet;
  }
  const BoundarySubspace y = compile_conditions(g, conditions);
  const Eigen::MatrixXcd qstar = y.complement_basis().adjoint();
  const Eigen::MatrixXcd ystar = y.basis().adjoint();

  // Unknowns (alpha_e, beta_e). Psi+(u) = P z + p0, Psi-(u') = D z + d0.
  const auto n = static_cast<Eigen::Index>(g.boundary_dimension());
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd p0 = Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd d0 = Eigen::VectorXcd::Zero(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto s = static_cast<Eigen::Index>(g.start_coordinate(e));
    const auto t = static_cast<Eigen::Index>(*g.end_coordinate(e));
    const auto a = static_cast<Eigen::Index>(2 * e);
    const double l = g.edge(e).length;
    p(s, a + 1) = 1.0;
    p(t, a) = l;
    p(t, a + 1) = 1.0;
    p0[t] = -l * l / 2.0;
    d(s, a) = -1.0;
    d(t, a) = 1.0;
    d0[t] = -l;
  }
  Eigen::MatrixXcd m(n, n);
  Eigen::VectorXcd rhs(n);
  m.topRows(qstar.rows()) = qstar * p;
  m.bottomRows(ystar.rows()) = ystar * d;
  rhs.head(qstar.rows()) = -(qstar * p0);
  rhs.tail(ystar.rows()) = -(ystar * d0);

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw DomainError("torsion system is singular: some component has no Dirichlet vertex");
  }
  const Eigen::VectorXcd z = lu.solve(rhs);

  TorsionSolution out;
  out.dirichlet = dirichlet;
  out.u = GraphFunction(g.lengths());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const double alpha = z[static_cast<Eigen::Index>(2 * e)].real();
    const double beta = z[static_cast<Eigen::Index>(2 * e + 1)].real();
    const double l = g.edge(e).length;
    out.u.edge(e) = EdgeFunction({{-0.5, 2, 0.0}, {alpha, 1, 0.0}, {beta, 0, 0.0}});
    out.rigidity += -l * l * l / 6.0 + alpha * l * l / 2.0 + beta * l;
  }
  return out;
}

}  // namespace qgs
