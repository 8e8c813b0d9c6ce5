#include "qgs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgs/error.hpp"

namespace qgs {

namespace {

const double kLn2 = std::numbers::ln2;
const double kLn12 = std::log(12.0);
const double kLn48 = std::log(48.0);

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0, 1]");
}

void require_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("rho must be positive and finite");
}

double log_sum_exp(const std::vector<double>& logs) {
  if (logs.empty()) return -INFINITY;
  const double top = *std::max_element(logs.begin(), logs.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double x : logs) sum += std::exp(x - top);
  return top + std::log(sum);
}

}  // namespace

LogValue LogValue::from_log(double log_value) {
  LogValue v;
  v.log = log_value;
  if (log_value < -700.0) {
    v.value = 0.0;
    v.underflow = true;
  } else {
    v.value = std::exp(log_value);
  }
  return v;
}

BernsteinProfile BernsteinProfile::power_law(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("power-law profile needs lambda >= 0");
  BernsteinProfile p;
  p.kind_ = Kind::power_law;
  p.lambda_ = lambda;
  return p;
}

BernsteinProfile BernsteinProfile::finite_support(std::vector<double> values) {
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("Bernstein profile values must be finite and >= 0");
  }
  BernsteinProfile p;
  p.kind_ = Kind::finite_support;
  p.values_ = std::move(values);
  return p;
}

double BernsteinProfile::at(int m) const {
  if (m < 0) throw DomainError("negative derivative order");
  if (kind_ == Kind::power_law) return m == 0 ? 1.0 : std::pow(lambda_, m);
  return static_cast<std::size_t>(m) < values_.size() ? values_[static_cast<std::size_t>(m)] : 0.0;
}

double log_bernstein_h(const BernsteinProfile& profile, double rho) {
  require_rho(rho);
  if (profile.kind() == BernsteinProfile::Kind::power_law) return 10.0 * rho * std::sqrt(profile.lambda());
  double sum = 0.0;
  double factor = 1.0;
  for (std::size_t m = 0; m < profile.values().size(); ++m) {
    if (m > 0) factor *= 10.0 * rho / static_cast<double>(m);
    sum += std::sqrt(profile.values()[m]) * factor;
  }
  if (!(sum >= 1.0)) throw DomainError("Bernstein series below 1: profile must have C_B(0) >= 1");
  return std::log(sum);
}

double bernstein_h(const BernsteinProfile& profile, double rho) {
  return std::exp(log_bernstein_h(profile, rho));
}

LogValue thm26_bound_log_h(double gamma, double log_h) {
  require_gamma(gamma);
  if (!(log_h >= 0.0)) throw DomainError("h must be >= 1");
  const double exponent = 4.0 * log_h / kLn2 + 5.0;
  return LogValue::from_log(kLn12 + exponent * (std::log(gamma) - kLn48));
}

LogValue thm26_bound(double gamma, double h) {
  if (!(h >= 1.0)) throw DomainError("h must be >= 1");
  return thm26_bound_log_h(gamma, std::log(h));
}

LogValue thm21_bound(double gamma, double rho, double lambda) {
  require_gamma(gamma);
  require_rho(rho);
  if (!(lambda >= 0.0)) throw DomainError("lambda must be non-negative");
  const double exponent = 40.0 * rho * std::sqrt(lambda) / kLn2 + 5.0;
  return LogValue::from_log(kLn12 + exponent * (std::log(gamma) - kLn48));
}

Cor72Range cor72_range(const MetricGraph& g, int k, double gamma, double rho) {
  require_gamma(gamma);
  require_rho(rho);
  if (k < 2) throw DomainError("the eigenvalue window is stated for k >= 2");
  if (!g.compact() || !g.connected()) throw DomainError("cor72 needs a compact connected graph");
  const auto m = metrics(g);
  Cor72Range out;
  out.betti = static_cast<double>(m.betti);
  out.degree1 = static_cast<double>(m.degree1_count);
  out.total_length = m.total_length;
  out.diameter = *m.diameter;
  const double pi = std::numbers::pi;
  const double lg = std::log(gamma) - kLn48;
  const double kk = k;
  const double a_len = (40.0 * rho / kLn2) * (kk - 1.0 + 1.5 * out.betti + 0.5 * out.degree1) * pi / out.total_length + 5.0;
  const double a_up = 20.0 * rho * kk * pi / (out.total_length * kLn2) + 5.0;
  const double a_diam = 40.0 * rho * (kk + out.betti - 1.0) * pi / (out.diameter * kLn2) + 5.0;
  out.lower_length = LogValue::from_log(kLn12 + a_len * lg);
  out.upper = LogValue::from_log(kLn12 + a_up * lg);
  out.lower_diameter = LogValue::from_log(kLn12 + a_diam * lg);
  const double slack = 1e-12 * std::max(1.0, std::abs(out.upper.log));
  if (out.lower_length.log > out.upper.log + slack || out.lower_diameter.log > out.upper.log + slack) {
    throw DomainError("cor72: lower constant exceeds upper constant");
  }
  return out;
}

double trace_d0(double gamma) {
  require_gamma(gamma);
  return std::exp(5.0 * (kLn48 - std::log(gamma)) - kLn12);
}

double trace_d1(double gamma, double rho) {
  require_gamma(gamma);
  require_rho(rho);
  return (40.0 * rho / kLn2) * (kLn48 - std::log(gamma));
}

TraceBound trace_bound(const std::vector<TraceInput>& pairs, const TraceContext& context,
                       double gamma, double rho, double t) {
  if (!(t > 0.0)) throw DomainError("trace time must be positive");
  if (!(context.total_length > 0.0) || context.edge_count == 0) throw DomainError("trace needs a compact graph");
  const double log_d0 = 5.0 * (kLn48 - std::log(gamma)) - kLn12;
  const double d1 = trace_d1(gamma, rho);
  const double lmax = context.lambda_max;
  // exp(-t l + d1 sqrt(l)) decreases for sqrt(l) >= d1 / (2 t).
  const double turn = d1 / (2.0 * t);
  if (lmax < turn * turn) {
    throw DomainError("lambda_max too small: the tail exponent is not yet decreasing (need lambda_max >= " +
                      std::to_string(turn * turn) + ")");
  }

  TraceBound out;
  std::vector<double> logs;
  for (const auto& p : pairs) {
    if (p.lambda > lmax * (1.0 + 1e-12)) continue;
    out.exact_partial += std::exp(-t * p.lambda);
    if (p.mass > 0.0) logs.push_back(-t * p.lambda + d1 * std::sqrt(p.lambda) + std::log(p.mass));
    ++out.terms;
  }

  const double pi = std::numbers::pi;
  const double len = context.total_length;
  const auto edges = static_cast<double>(context.edge_count);
  auto lower = [&](double k) {
    double lb = k > edges ? std::pow((k - edges) * pi / len, 2) : 0.0;
    if (context.standard && k >= 2.0) lb = std::max(lb, k * k * pi * pi / (4.0 * len * len));
    return std::max(lmax, lb);
  };
  // Terms k > N, with lambda_k >= lower(k); masses are at most 1.
  std::vector<double> tail_logs;
  double running = -INFINITY;
  double exact_tail = 0.0;
  const double first = static_cast<double>(out.terms) + 1.0;
  for (double k = first;; k += 1.0) {
    const double l = lower(k);
    const double term = -t * l + d1 * std::sqrt(l);
    tail_logs.push_back(term);
    running = std::max(running, term) + std::log1p(std::exp(-std::abs(running - term)));
    exact_tail += std::exp(-t * l);
    const double l_next = lower(k + 1.0);
    const double next = -t * l_next + d1 * std::sqrt(l_next);
    const double ratio = std::exp(next - term);
    if (l > lmax && ratio < 0.5 && term < running - 50.0) {
      // Ratios keep shrinking beyond this point (concave exponent), so the
      // rest is below a geometric series.
      tail_logs.push_back(next - std::log1p(-ratio));
      exact_tail += std::exp(-t * l_next) / (1.0 - std::exp(-t * (l_next - l)));
      break;
    }
    if (k - first > 1e7) throw DomainError("trace tail does not converge fast enough");
  }
  out.exact_tail = exact_tail;
  if (exact_tail >= 1e-10) {
    throw DomainError("lambda_max too small: omitted trace terms exceed 1e-10");
  }
  out.tail_bound = LogValue::from_log(log_d0 + log_sum_exp(tail_logs));
  std::vector<double> all = logs;
  all.insert(all.end(), tail_logs.begin(), tail_logs.end());
  out.bound = LogValue::from_log(log_d0 + log_sum_exp(all));
  return out;
}

ObservabilityBound observability_constant(double gamma, double rho, double T,
                                          const ObservabilityConstants& c) {
  require_gamma(gamma);
  require_rho(rho);
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("T must be positive");
  for (double v : {c.c1, c.c2, c.c3, c.k1, c.k2, c.k3, c.k4}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("observability constants must be positive");
  }
  ObservabilityBound out;
  out.d0 = trace_d0(gamma);
  out.d1 = trace_d1(gamma, rho);
  const double log_d0 = 5.0 * (kLn48 - std::log(gamma)) - kLn12;
  const double log_c2 = std::log(c.c1) + log_d0 - std::log(T) + c.c2 * std::log(2.0 * out.d0 + 1.0) +
                        c.c3 * out.d1 * out.d1 / T;
  out.c_squared = LogValue::from_log(log_c2);
  const double lk = std::log(c.k4 / gamma);
  const double log_env = std::log(c.k1) - c.k2 * std::log(gamma) - std::log(T) + c.k3 * rho * rho * lk * lk / T;
  out.envelope = LogValue::from_log(log_env);
  return out;
}

TorsionProfile torsion_profile(const MetricGraph& g, const TorsionSolution& torsion, double gamma,
                               double rho) {
  require_gamma(gamma);
  require_rho(rho);
  const double len = g.total_length();
  const double T = torsion.rigidity;
  if (!(T > 0.0)) throw DomainError("torsional rigidity must be positive");
  const double u2 = norm_sq(torsion.u);
  TorsionProfile out;
  out.profile = BernsteinProfile::finite_support({1.0, len / T, len / u2});
  out.cb2_cap = len * len / (T * T);
  if (!(out.profile.at(2) < out.cb2_cap)) throw DomainError("torsion profile violates C_B(2) < |G|^2/T^2");
  out.h = 1.0 + std::sqrt(out.profile.at(1)) * 10.0 * rho + std::sqrt(out.profile.at(2)) * 50.0 * rho * rho;
  out.h_prime = 1.0 + 10.0 * rho * std::sqrt(len / T) + 50.0 * rho * rho * len / T;
  if (!(out.h <= out.h_prime)) throw DomainError("torsion h exceeds its majorant h'");
  out.bound = thm26_bound(gamma, out.h_prime);
  return out;
}

}  // namespace qgs
