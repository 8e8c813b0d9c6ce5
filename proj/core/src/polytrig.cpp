#include "qgs/polytrig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgs/error.hpp"

namespace qgs {

namespace {

constexpr Complex kI{0.0, 1.0};

double falling(int n, int j) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= n - i;
  return r;
}

// Integral of y^j exp(i nu y) over [0, h].
Complex integrate_from_zero(int j, double nu, double h) {
  if (h == 0.0) return 0.0;
  if (std::abs(nu) * h >= 2.0) {
    // Antiderivative exp(i nu y) sum_m (-1)^m j!/(j-m)! y^(j-m) / (i nu)^(m+1).
    const Complex inu = kI * nu;
    Complex at_h = 0.0;
    Complex inv = 1.0 / inu;
    for (int m = 0; m <= j; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      at_h += sign * falling(j, m) * std::pow(h, j - m) * inv;
      inv /= inu;
    }
    at_h *= std::polar(1.0, nu * h);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const Complex at_zero = sign * falling(j, j) / std::pow(inu, j + 1);
    return at_h - at_zero;
  }
  // Power series: sum_k (i nu)^k / k! * h^(j+k+1) / (j+k+1). |nu h| < 2, so
  // the terms decay factorially.
  Complex sum = 0.0;
  Complex factor = 1.0;
  double hp = std::pow(h, j + 1);
  for (int k = 0; k < 80; ++k) {
    const Complex term = factor * hp / static_cast<double>(j + k + 1);
    sum += term;
    if (k > 2 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    factor *= kI * nu / static_cast<double>(k + 1);
    hp *= h;
  }
  return sum;
}

double binomial_real(int n, int k) { return static_cast<double>(binomial(n, k)); }

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n > 62) throw DomainError("binomial: n too large for exact arithmetic");
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

Complex integrate_monomial_exp(int q, double nu, double a, double b) {
  if (q < 0) throw DomainError("negative polynomial degree");
  if (a == b) return 0.0;
  if (b < a) return -integrate_monomial_exp(q, nu, b, a);
  // Substituting x = a + y keeps the polynomial part well conditioned even
  // when the interval is short relative to its distance from 0.
  const double h = b - a;
  Complex sum = 0.0;
  for (int j = 0; j <= q; ++j) {
    const double w = binomial_real(q, j) * std::pow(a, q - j);
    if (w == 0.0) continue;
    sum += w * integrate_from_zero(j, nu, h);
  }
  return std::polar(1.0, nu * a) * sum;
}

EdgeFunction::EdgeFunction(std::vector<Term> terms) : terms_(std::move(terms)) { canonicalize(); }

EdgeFunction EdgeFunction::constant(Complex c) { return EdgeFunction({{c, 0, 0.0}}); }

EdgeFunction EdgeFunction::cosine(double k, Complex scale) {
  return EdgeFunction({{scale * 0.5, 0, k}, {scale * 0.5, 0, -k}});
}

EdgeFunction EdgeFunction::sine(double k, Complex scale) {
  return EdgeFunction({{scale / (2.0 * kI), 0, k}, {-scale / (2.0 * kI), 0, -k}});
}

EdgeFunction EdgeFunction::exponential(double omega, Complex scale) {
  return EdgeFunction({{scale, 0, omega}});
}

EdgeFunction EdgeFunction::monomial(int p, Complex scale) { return EdgeFunction({{scale, p, 0.0}}); }

void EdgeFunction::canonicalize() {
  for (const auto& t : terms_) {
    if (t.p < 0) throw DomainError("negative polynomial degree");
    if (!std::isfinite(t.omega)) throw DomainError("non-finite frequency");
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) {
    return x.p < y.p || (x.p == y.p && x.omega < y.omega);
  });
  std::vector<Term> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().p == t.p && merged.back().omega == t.omega) {
      merged.back().c += t.c;
    } else {
      merged.push_back(t);
    }
  }
  double largest = 0.0;
  for (const auto& t : merged) largest = std::max(largest, std::abs(t.c));
  terms_.clear();
  for (const auto& t : merged) {
    if (std::abs(t.c) > 1e-15 * largest) terms_.push_back(t);
  }
}

int EdgeFunction::max_degree() const {
  int p = 0;
  for (const auto& t : terms_) p = std::max(p, t.p);
  return p;
}

double EdgeFunction::max_frequency() const {
  double w = 0.0;
  for (const auto& t : terms_) w = std::max(w, std::abs(t.omega));
  return w;
}

Complex EdgeFunction::operator()(Complex z) const {
  Complex sum = 0.0;
  for (const auto& t : terms_) {
    sum += t.c * std::pow(z, t.p) * std::exp(kI * t.omega * z);
  }
  return sum;
}

double EdgeFunction::derivative_bound(double radius, double height) const {
  double bound = 0.0;
  for (const auto& t : terms_) {
    const double poly = (t.p > 0 ? t.p * std::pow(radius, t.p - 1) : 0.0) +
                        std::abs(t.omega) * std::pow(radius, t.p);
    bound += std::abs(t.c) * poly * std::exp(std::abs(t.omega) * height);
  }
  return bound;
}

EdgeFunction EdgeFunction::derivative(int order) const {
  if (order < 0) throw DomainError("negative derivative order");
  std::vector<Term> current = terms_;
  for (int m = 0; m < order; ++m) {
    std::vector<Term> next;
    next.reserve(current.size() * 2);
    for (const auto& t : current) {
      if (t.omega != 0.0) next.push_back({t.c * kI * t.omega, t.p, t.omega});
      if (t.p > 0) next.push_back({t.c * static_cast<double>(t.p), t.p - 1, t.omega});
    }
    current = EdgeFunction(std::move(next)).terms_;
    if (current.empty()) break;
  }
  EdgeFunction out;
  out.terms_ = std::move(current);
  return out;
}

EdgeFunction EdgeFunction::shifted(double a) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const Complex phase = t.c * std::polar(1.0, t.omega * a);
    for (int j = 0; j <= t.p; ++j) {
      out.push_back({phase * binomial_real(t.p, j) * std::pow(a, t.p - j), j, t.omega});
    }
  }
  return EdgeFunction(std::move(out));
}

EdgeFunction& EdgeFunction::operator+=(const EdgeFunction& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

EdgeFunction& EdgeFunction::operator*=(Complex s) {
  for (auto& t : terms_) t.c *= s;
  canonicalize();
  return *this;
}

Complex inner_product(const EdgeFunction& f, const EdgeFunction& g, double a, double b) {
  Complex sum = 0.0;
  for (const auto& s : f.terms()) {
    for (const auto& t : g.terms()) {
      sum += std::conj(s.c) * t.c * integrate_monomial_exp(s.p + t.p, t.omega - s.omega, a, b);
    }
  }
  return sum;
}

Complex inner_product(const EdgeFunction& f, const EdgeFunction& g, const IntervalUnion& region) {
  Complex sum = 0.0;
  for (const auto& piece : region.intervals()) sum += inner_product(f, g, piece.a, piece.b);
  return sum;
}

Complex integral(const EdgeFunction& f, double a, double b) {
  Complex sum = 0.0;
  for (const auto& t : f.terms()) sum += t.c * integrate_monomial_exp(t.p, t.omega, a, b);
  return sum;
}

GraphFunction::GraphFunction(std::vector<double> lengths)
    : lengths_(std::move(lengths)), edges_(lengths_.size()) {}

GraphFunction::GraphFunction(std::vector<double> lengths, std::vector<EdgeFunction> edges)
    : lengths_(std::move(lengths)), edges_(std::move(edges)) {
  if (edges_.size() != lengths_.size()) throw DomainError("GraphFunction: edge count mismatch");
}

bool GraphFunction::is_zero() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const EdgeFunction& f) { return f.is_zero(); });
}

double GraphFunction::max_frequency() const {
  double w = 0.0;
  for (const auto& f : edges_) w = std::max(w, f.max_frequency());
  return w;
}

GraphFunction GraphFunction::derivative(int order) const {
  GraphFunction out(lengths_);
  for (std::size_t e = 0; e < edges_.size(); ++e) out.edges_[e] = edges_[e].derivative(order);
  return out;
}

GraphFunction& GraphFunction::operator+=(const GraphFunction& other) {
  if (other.lengths_ != lengths_) throw DomainError("GraphFunction: functions live on different graphs");
  for (std::size_t e = 0; e < edges_.size(); ++e) edges_[e] += other.edges_[e];
  return *this;
}

GraphFunction& GraphFunction::operator*=(Complex s) {
  for (auto& f : edges_) f *= s;
  return *this;
}

Region whole_region(const std::vector<double>& lengths) {
  Region r;
  r.reserve(lengths.size());
  for (double l : lengths) r.push_back(IntervalUnion::whole(0.0, l));
  return r;
}

Complex inner_product(const GraphFunction& f, const GraphFunction& g) {
  return inner_product(f, g, whole_region(f.lengths()));
}

Complex inner_product(const GraphFunction& f, const GraphFunction& g, const Region& region) {
  if (f.lengths() != g.lengths() || region.size() != f.edge_count()) {
    throw DomainError("inner_product: functions and region do not share a graph");
  }
  Complex sum = 0.0;
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    const double tol = 1e-12 * std::max(1.0, f.length(e));
    region[e].require_within(-tol, f.length(e) + tol);
    sum += inner_product(f.edge(e), g.edge(e), region[e]);
  }
  return sum;
}

namespace {

double checked_real(Complex z) {
  if (std::abs(z.imag()) >= 1e-10 * std::abs(z.real()) && std::abs(z.imag()) > 1e-300) {
    throw DomainError("norm_sq: non-negligible imaginary part");
  }
  return std::max(0.0, z.real());
}

}  // namespace

double norm_sq(const GraphFunction& f) { return checked_real(inner_product(f, f)); }

double norm_sq(const GraphFunction& f, const Region& region) {
  return checked_real(inner_product(f, f, region));
}

double edge_norm_sq(const EdgeFunction& f, double length) {
  return checked_real(inner_product(f, f, 0.0, length));
}

double edge_norm_sq(const EdgeFunction& f, const IntervalUnion& region) {
  return checked_real(inner_product(f, f, region));
}

namespace {

// Samples |f| along a closed path of the given perimeter until the Lipschitz
// padding is small relative to the sampled maximum.
template <class Path>
SupBounds sup_on_path(const EdgeFunction& f, double perimeter, double lipschitz, Path&& point) {
  if (f.is_zero()) return {0.0, 0.0};
  if (lipschitz == 0.0) {
    const double v = std::abs(f(point(0.0)));
    return {v, v};
  }
  SupBounds result{0.0, INFINITY};
  for (long n = 256; n <= (1L << 22); n *= 2) {
    const double step = perimeter / static_cast<double>(n);
    double best = 0.0;
    for (long i = 0; i < n; ++i) best = std::max(best, std::abs(f(point((static_cast<double>(i) + 0.5) * step))));
    const double pad = lipschitz * step / 2.0;
    result = {best, best + pad};
    if (pad <= 0.005 * best) break;
  }
  return result;
}

}  // namespace

double sup_on_disk_neighborhood(const EdgeFunction& f, double length, double radius_factor) {
  const double r = radius_factor * length;
  const double pi = std::numbers::pi;
  const double perimeter = 2.0 * length + 2.0 * pi * r;
  const double lipschitz = f.derivative_bound(length + r, r);
  // Stadium boundary by arclength: bottom segment, right semicircle, top
  // segment, left semicircle.
  auto point = [&](double s) -> Complex {
    if (s < length) return {s, -r};
    s -= length;
    if (s < pi * r) {
      const double t = -pi / 2 + s / r;
      return {length + r * std::cos(t), r * std::sin(t)};
    }
    s -= pi * r;
    if (s < length) return {length - s, r};
    s -= length;
    const double t = pi / 2 + s / r;
    return {r * std::cos(t), r * std::sin(t)};
  };
  return sup_on_path(f, perimeter, lipschitz, point).upper;
}

SupBounds sup_on_disk(const EdgeFunction& f, double radius) {
  const double perimeter = 2.0 * std::numbers::pi * radius;
  const double lipschitz = f.derivative_bound(radius, radius);
  return sup_on_path(f, perimeter, lipschitz,
                     [&](double s) { return std::polar(radius, s / radius); });
}

SupBounds sup_on_interval(const EdgeFunction& f, double a, double b, int samples) {
  if (b < a) throw DomainError("sup_on_interval: empty interval");
  if (f.is_zero()) return {0.0, 0.0};
  const int n = std::max(samples, 2);
  const double radius = std::max(std::abs(a), std::abs(b));
  const double lipschitz = f.derivative_bound(radius, 0.0);
  const double step = (b - a) / (n - 1);
  double best = 0.0;
  for (int i = 0; i < n; ++i) best = std::max(best, std::abs(f(Complex(a + i * step, 0.0))));
  return {best, best + lipschitz * step / 2.0};
}

SupBounds sup_on_union(const EdgeFunction& f, const IntervalUnion& set, int samples) {
  SupBounds out{0.0, 0.0};
  const double total = set.measure();
  for (const auto& p : set.intervals()) {
    const int n = std::max(2, static_cast<int>(std::ceil(samples * p.length() / total)));
    const auto s = sup_on_interval(f, p.a, p.b, n);
    out.lower = std::max(out.lower, s.lower);
    out.upper = std::max(out.upper, s.upper);
  }
  return out;
}

EdgeFunction cosine_power(int alpha, double length) {
  if (alpha < 0 || alpha > 60) throw DomainError("cosine_power: exponent out of range");
  const double base = 2.0 * std::numbers::pi / length;
  const double scale = std::ldexp(1.0, -alpha);
  std::vector<Term> terms;
  for (int j = 0; j <= alpha; ++j) {
    terms.push_back({binomial_real(alpha, j) * scale, 0, (2 * j - alpha) * base});
  }
  return EdgeFunction(std::move(terms));
}

}  // namespace qgs
