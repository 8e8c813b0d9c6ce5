#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qgs/interval_union.hpp"

namespace qgs {

using Complex = std::complex<double>;

/// c * x^p * exp(i * omega * x)
struct Term {
  Complex c;
  int p = 0;
  double omega = 0.0;
};

/// Finite sum of Terms on one edge, in canonical form: one term per
/// (p, omega), sorted, negligible coefficients pruned.
class EdgeFunction {
 public:
  EdgeFunction() = default;
  explicit EdgeFunction(std::vector<Term> terms);

  static EdgeFunction constant(Complex c);
  static EdgeFunction cosine(double k, Complex scale = 1.0);
  static EdgeFunction sine(double k, Complex scale = 1.0);
  static EdgeFunction exponential(double omega, Complex scale = 1.0);
  static EdgeFunction monomial(int p, Complex scale = 1.0);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_degree() const;
  double max_frequency() const;

  Complex operator()(Complex z) const;
  /// Bound on |f'(z)| for |z| <= radius and |Im z| <= height.
  double derivative_bound(double radius, double height) const;

  EdgeFunction derivative(int order = 1) const;
  /// x -> f(x + a).
  EdgeFunction shifted(double a) const;

  EdgeFunction& operator+=(const EdgeFunction& other);
  EdgeFunction& operator*=(Complex s);
  friend EdgeFunction operator+(EdgeFunction a, const EdgeFunction& b) { return a += b; }
  friend EdgeFunction operator-(EdgeFunction a, const EdgeFunction& b) {
    EdgeFunction nb = b;
    nb *= -1.0;
    return a += nb;
  }
  friend EdgeFunction operator*(Complex s, EdgeFunction a) { return a *= s; }

 private:
  void canonicalize();

  std::vector<Term> terms_;
};

/// Integral of x^q exp(i nu x) over [a, b].
Complex integrate_monomial_exp(int q, double nu, double a, double b);

/// Integral of conj(f) * g over [a, b].
Complex inner_product(const EdgeFunction& f, const EdgeFunction& g, double a, double b);
Complex inner_product(const EdgeFunction& f, const EdgeFunction& g, const IntervalUnion& region);
Complex integral(const EdgeFunction& f, double a, double b);

/// One EdgeFunction per edge of a compact graph, with the edge lengths.
class GraphFunction {
 public:
  GraphFunction() = default;
  explicit GraphFunction(std::vector<double> lengths);
  GraphFunction(std::vector<double> lengths, std::vector<EdgeFunction> edges);

  std::size_t edge_count() const { return lengths_.size(); }
  const std::vector<double>& lengths() const { return lengths_; }
  double length(std::size_t e) const { return lengths_.at(e); }
  const EdgeFunction& edge(std::size_t e) const { return edges_.at(e); }
  EdgeFunction& edge(std::size_t e) { return edges_.at(e); }

  bool is_zero() const;
  double max_frequency() const;
  GraphFunction derivative(int order = 1) const;

  GraphFunction& operator+=(const GraphFunction& other);
  GraphFunction& operator*=(Complex s);
  friend GraphFunction operator+(GraphFunction a, const GraphFunction& b) { return a += b; }
  friend GraphFunction operator*(Complex s, GraphFunction a) { return a *= s; }

 private:
  std::vector<double> lengths_;
  std::vector<EdgeFunction> edges_;
};

/// Per-edge subsets of [0, l_e].
using Region = std::vector<IntervalUnion>;

Region whole_region(const std::vector<double>& lengths);

Complex inner_product(const GraphFunction& f, const GraphFunction& g);
/// Throws DomainError if a region piece leaves [0, l_e].
Complex inner_product(const GraphFunction& f, const GraphFunction& g, const Region& region);
/// Real part of <f, f>; throws DomainError when the imaginary part is not
/// negligible (|Im| >= 1e-10 Re), which would indicate a broken integrator.
double norm_sq(const GraphFunction& f);
double norm_sq(const GraphFunction& f, const Region& region);
double edge_norm_sq(const EdgeFunction& f, double length);
double edge_norm_sq(const EdgeFunction& f, const IntervalUnion& region);

struct SupBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Certified upper bound for sup |f| over (0, l) + D_{r l}, taken on the
/// boundary of the stadium (maximum modulus).
double sup_on_disk_neighborhood(const EdgeFunction& f, double length, double radius_factor);
/// Certified bounds for max |f| on the closed disk |z| <= radius.
SupBounds sup_on_disk(const EdgeFunction& f, double radius);
/// Certified bounds for max |f| over a real interval, from `samples` grid
/// points plus Lipschitz padding.
SupBounds sup_on_interval(const EdgeFunction& f, double a, double b, int samples);
SupBounds sup_on_union(const EdgeFunction& f, const IntervalUnion& set, int samples);

/// cos^alpha(2 pi x / l) expanded into exponentials with exact binomial
/// weights; alpha <= 60.
EdgeFunction cosine_power(int alpha, double length);
std::uint64_t binomial(int n, int k);

}  // namespace qgs
