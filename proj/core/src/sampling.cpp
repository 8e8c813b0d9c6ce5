#include "qgs/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "qgs/error.hpp"

namespace qgs {

namespace {

constexpr double kSlack = 1e-12;

bool dense_enough(double mass, double gamma, double len) {
  return mass >= gamma * len * (1.0 - kSlack);
}

std::string describe(double t, double s) {
  std::ostringstream out;
  out.precision(17);
  out << "[" << t << ", " << s << "]";
  return out.str();
}

}  // namespace

double PeriodicTail::measure_in(double t, double s) const {
  const double m = body.measure();
  auto cumulative = [&](double x) {
    const double periods = std::floor(x / period);
    const double rest = x - periods * period;
    return periods * m + body.measure_in(0.0, rest);
  };
  return cumulative(s) - cumulative(t);
}

void SamplingSet::validate(const MetricGraph& g) const {
  if (edges.size() != g.edge_count()) {
    throw DomainError("sampling set has " + std::to_string(edges.size()) + " edges, graph has " +
                      std::to_string(g.edge_count()));
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = g.edge(e);
    const auto& s = edges[e];
    if (edge.internal()) {
      if (s.tail) throw DomainError("edge '" + edge.id + "' is finite but has a periodic tail");
      if (!s.set.within(0.0, edge.length)) {
        throw DomainError("sampling set on edge '" + edge.id + "' leaves [0, " +
                          std::to_string(edge.length) + "]");
      }
    } else {
      if (!s.tail) throw DomainError("infinite edge '" + edge.id + "' needs a periodic tail");
      const auto& tail = *s.tail;
      if (!(tail.period > 0.0) || !std::isfinite(tail.period)) {
        throw DomainError("tail period on edge '" + edge.id + "' must be positive");
      }
      if (!(tail.start >= 0.0) || !std::isfinite(tail.start)) {
        throw DomainError("tail start on edge '" + edge.id + "' must be non-negative");
      }
      if (!s.set.within(0.0, tail.start)) {
        throw DomainError("head on edge '" + edge.id + "' leaves [0, start]");
      }
      if (!tail.body.within(0.0, tail.period)) {
        throw DomainError("tail body on edge '" + edge.id + "' leaves [0, period]");
      }
    }
  }
}

Region SamplingSet::region(const MetricGraph& g) const {
  validate(g);
  Region r;
  for (std::size_t e = 0; e < edges.size(); ++e) r.push_back(edges[e].set);
  return r;
}

SamplingSet empty_sampling(const MetricGraph& g) {
  SamplingSet s;
  s.edges.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!g.edge(e).internal()) s.edges[e].tail = PeriodicTail{};
  }
  return s;
}

double tail_min_density(const PeriodicTail& tail, double window) {
  if (!(window > 0.0)) throw DomainError("tail window must be positive");
  std::vector<double> offsets{0.0};
  for (const auto& p : tail.body.intervals()) {
    for (double x : {p.a, p.b, p.a - window, p.b - window}) {
      double t = std::fmod(x, tail.period);
      if (t < 0.0) t += tail.period;
      offsets.push_back(t);
    }
  }
  double worst = std::numeric_limits<double>::infinity();
  for (double t : offsets) worst = std::min(worst, tail.measure_in(t, t + window));
  return std::max(0.0, worst) / window;
}

CoverCheck verify_cover(const MetricGraph& g, const SamplingSet& omega, const Cover& cover,
                        double gamma, double rho) {
  omega.validate(g);
  if (cover.edges.size() != g.edge_count()) throw DomainError("cover and graph edge counts differ");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0, 1]");
  if (!(rho > 0.0)) throw DomainError("rho must be positive");

  CoverCheck out;
  out.gamma = std::numeric_limits<double>::infinity();
  out.rho = 0.0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const auto& set = omega.edges[e];
    const auto& c = cover.edges[e];
    const double end = edge.internal() ? edge.length : set.tail->start;
    double eg = std::numeric_limits<double>::infinity();
    double er = 0.0;
    const auto& bp = c.breakpoints;
    const double tol = kSlack * std::max(1.0, end);
    const bool trivial_head = !edge.internal() && end == 0.0 && (bp.empty() || (bp.size() == 1 && bp[0] == 0.0));
    if (!trivial_head) {
      if (bp.size() < 2 || std::abs(bp.front()) > tol || std::abs(bp.back() - end) > tol) {
        out.violations.push_back({e, 0.0, end, "cover does not span " + describe(0.0, end)});
      }
      for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const double t = bp[i];
        const double s = bp[i + 1];
        if (!(s > t)) {
          out.violations.push_back({e, t, s, "breakpoints not strictly increasing"});
          continue;
        }
        const double len = s - t;
        const double mass = set.set.measure_in(t, s);
        eg = std::min(eg, mass / len);
        er = std::max(er, len);
        if (len > rho * (1.0 + kSlack)) {
          out.violations.push_back({e, t, s, "interval " + describe(t, s) + " longer than rho"});
        }
        if (!dense_enough(mass, gamma, len)) {
          out.violations.push_back({e, t, s, "density below gamma on " + describe(t, s)});
        }
      }
    }
    if (!edge.internal()) {
      if (!c.tail_length || !(*c.tail_length > 0.0)) {
        out.violations.push_back({e, end, INFINITY, "infinite edge without a tail rule"});
      } else {
        const double w = *c.tail_length;
        const double d = tail_min_density(*set.tail, w);
        eg = std::min(eg, d);
        er = std::max(er, w);
        if (w > rho * (1.0 + kSlack)) {
          out.violations.push_back({e, end, end + w, "tail window longer than rho"});
        }
        if (d < gamma * (1.0 - kSlack)) {
          out.violations.push_back({e, end, end + w, "tail density below gamma"});
        }
      }
    }
    if (!std::isfinite(eg)) eg = 1.0;
    out.edge_gamma.push_back(eg);
    out.edge_rho.push_back(er);
    out.gamma = std::min(out.gamma, eg);
    out.rho = std::max(out.rho, er);
  }
  if (!std::isfinite(out.gamma)) out.gamma = 1.0;
  out.ok = out.violations.empty();
  return out;
}

std::vector<EdgeGaps> gap_analysis(const MetricGraph& g, const SamplingSet& omega) {
  omega.validate(g);
  std::vector<EdgeGaps> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const auto& s = omega.edges[e];
    EdgeGaps gaps;
    IntervalUnion set = s.set;
    if (!edge.internal()) {
      const auto& tail = *s.tail;
      if (tail.body.empty()) {
        gaps.empty = true;
        gaps.left = gaps.interior = INFINITY;
        out.push_back(gaps);
        continue;
      }
      for (int k = 0; k < 3; ++k) set = set.unite(tail.body.shifted(tail.start + k * tail.period));
    }
    if (set.empty()) {
      gaps.empty = true;
      gaps.left = gaps.right = gaps.interior = edge.length;
      out.push_back(gaps);
      continue;
    }
    const auto& iv = set.intervals();
    gaps.left = iv.front().a;
    gaps.right = edge.internal() ? edge.length - iv.back().b : 0.0;
    for (std::size_t i = 0; i + 1 < iv.size(); ++i) {
      gaps.interior = std::max(gaps.interior, iv[i + 1].a - iv[i].b);
    }
    out.push_back(gaps);
  }
  return out;
}

bool necessary_check(const std::vector<EdgeGaps>& gaps, double gamma, double rho) {
  const double edge_cap = (1.0 - gamma) * rho * (1.0 + kSlack);
  for (const auto& gp : gaps) {
    if (gp.empty) return false;
    if (gp.left > edge_cap || gp.right > edge_cap) return false;
    if (gp.interior > 2.0 * edge_cap) return false;
  }
  return true;
}

namespace {

std::vector<double> candidate_points(const IntervalUnion& omega, double length, int grid,
                                     double min_spacing_rho, std::optional<double> shift) {
  std::vector<double> base{0.0, length};
  for (const auto& p : omega.intervals()) {
    base.push_back(p.a);
    base.push_back(p.b);
  }
  const int n = std::max(grid, static_cast<int>(std::ceil(length / min_spacing_rho)) + 1);
  std::vector<double> pts = base;
  for (int i = 1; i + 1 < n; ++i) pts.push_back(length * i / (n - 1));
  if (shift && base.size() * 2 + pts.size() <= 4096) {
    for (double x : base) {
      for (double y : {x - *shift, x + *shift}) {
        if (y > 0.0 && y < length) pts.push_back(y);
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double x : pts) {
    if (x < 0.0 || x > length) continue;
    if (out.empty() || x - out.back() > 1e-14 * length) {
      out.push_back(x);
    } else if (x == length) {
      out.back() = length;
    }
  }
  return out;
}

double max_gap(const IntervalUnion& omega, double length) {
  if (omega.empty()) return length;
  double gap = std::max(omega.lower(), length - omega.upper());
  const auto& iv = omega.intervals();
  for (std::size_t i = 0; i + 1 < iv.size(); ++i) gap = std::max(gap, iv[i + 1].a - iv[i].b);
  return gap;
}

// Points t where |omega ∩ [x, t]| = gamma |t - x| (or mirrored to the left),
// nearest and farthest within `reach` of x. Covers for a fixed gamma that
// fit exactly need their breakpoints there. `knots` is sorted and holds 0,
// length and every component endpoint.
void balance_points(const IntervalUnion& omega, const std::vector<double>& knots, double length, double gamma,
                    double x, double reach, std::vector<double>& out) {
  for (int dir : {1, -1}) {
    auto f = [&](double t) {
      return dir > 0 ? omega.measure_in(x, t) - gamma * (t - x) : omega.measure_in(t, x) - gamma * (x - t);
    };
    std::vector<double> ks;
    const double stop = dir > 0 ? std::min(length, x + reach) : std::max(0.0, x - reach);
    if (dir > 0) {
      for (auto it = std::upper_bound(knots.begin(), knots.end(), x); it != knots.end() && *it < stop; ++it) ks.push_back(*it);
    } else {
      for (auto it = std::lower_bound(knots.begin(), knots.end(), x); it != knots.begin() && *(it - 1) > stop;) ks.push_back(*--it);
    }
    ks.push_back(stop);
    double prev = x, fprev = 0.0;
    std::optional<double> first, last;
    // f is linear between knots: record where it changes sign either way
    for (double k : ks) {
      const double fk = f(k);
      const bool crosses = (fprev >= 0.0 && fk <= 0.0) || (fprev <= 0.0 && fk >= 0.0);
      if (crosses && prev != k) {
        const double t = fprev == fk ? k : prev + (k - prev) * fprev / (fprev - fk);
        if (t != x) {
          if (!first) first = t;
          last = t;
        }
      }
      prev = k;
      fprev = fk;
    }
    if (first) out.push_back(*first);
    if (last && *last != *first) out.push_back(*last);
  }
}

void check_edge_inputs(const IntervalUnion& omega, double length) {
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("edge length must be positive and finite");
  omega.require_within(0.0, length);
}

}  // namespace

namespace {

// Bottleneck DP over sorted candidates containing 0 and length: maximize the
// smallest density, then use as few intervals as possible.
EdgeOptimum gamma_dp(const IntervalUnion& omega, double length, double rho, const std::vector<double>& c) {
  EdgeOptimum out;
  out.witness = max_gap(omega, length);
  if (omega.empty()) return out;
  const std::size_t n = c.size();
  const double cap = rho * (1.0 + 1e-13);
  std::vector<double> best(n, -1.0);
  std::vector<std::size_t> parent(n, 0);
  best[0] = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i; j-- > 0;) {
      const double len = c[i] - c[j];
      if (len > cap) break;
      if (best[j] < 0.0) continue;
      best[i] = std::max(best[i], std::min(best[j], omega.measure_in(c[j], c[i]) / len));
    }
  }
  if (!(best[n - 1] > 0.0)) return out;
  // Second pass: fewest intervals among covers reaching the optimum up to
  // rounding, otherwise density-1 stretches come back as chains of grid steps.
  const double target = best[n - 1];
  std::vector<std::size_t> count(n, std::numeric_limits<std::size_t>::max());
  count[0] = 0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i; j-- > 0;) {
      const double len = c[i] - c[j];
      if (len > cap) break;
      if (count[j] == std::numeric_limits<std::size_t>::max() || count[j] + 1 >= count[i]) continue;
      if (dense_enough(omega.measure_in(c[j], c[i]), target, len)) {
        count[i] = count[j] + 1;
        parent[i] = j;
      }
    }
  }
  double achieved = 1.0;
  for (std::size_t i = n - 1;; i = parent[i]) {
    out.breakpoints.push_back(c[i]);
    if (i == 0) break;
    achieved = std::min(achieved, omega.measure_in(c[parent[i]], c[i]) / (c[i] - c[parent[i]]));
  }
  std::reverse(out.breakpoints.begin(), out.breakpoints.end());
  out.value = achieved;
  out.feasible = true;
  return out;
}

}  // namespace

EdgeOptimum optimal_gamma(const IntervalUnion& omega, double length, double rho, int grid) {
  check_edge_inputs(omega, length);
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  return gamma_dp(omega, length, rho, candidate_points(omega, length, grid, rho, rho));
}

EdgeOptimum optimal_rho(const IntervalUnion& omega, double length, double gamma, int grid) {
  check_edge_inputs(omega, length);
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0, 1]");
  EdgeOptimum out;
  const double density = omega.measure() / length;
  out.witness = density;
  if (!dense_enough(omega.measure(), gamma, length)) return out;

  // Upper bound: minimax DP over the base candidates.
  const auto c = candidate_points(omega, length, grid, length, std::nullopt);
  const std::size_t n = c.size();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, 0);
  best[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!std::isfinite(best[j])) continue;
      const double len = c[i] - c[j];
      if (!dense_enough(omega.measure_in(c[j], c[i]), gamma, len)) continue;
      best[i] = std::min(best[i], std::max(best[j], len));
    }
  }
  // Prefix-wise minimax favours chains of tiny intervals; redo with the
  // global optimum as a length cap and count intervals instead.
  {
    const double cap = best[n - 1] * (1.0 + 1e-13);
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> count(n, none);
    count[0] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = i; j-- > 0;) {
        const double len = c[i] - c[j];
        if (len > cap) break;
        if (count[j] == none || count[j] + 1 >= count[i]) continue;
        if (!dense_enough(omega.measure_in(c[j], c[i]), gamma, len)) continue;
        count[i] = count[j] + 1;
        parent[i] = j;
      }
    }
  }
  std::vector<double> cert;
  for (std::size_t i = n - 1;; i = parent[i]) {
    cert.push_back(c[i]);
    if (i == 0) break;
  }
  std::reverse(cert.begin(), cert.end());
  double hi = best[n - 1];

  // Lower bound from the gap criterion.
  double lo = 0.0;
  if (gamma < 1.0 && !omega.empty()) {
    const auto& iv = omega.intervals();
    lo = std::max(iv.front().a, length - iv.back().b) / (1.0 - gamma);
    for (std::size_t i = 0; i + 1 < iv.size(); ++i) {
      lo = std::max(lo, (iv[i + 1].a - iv[i].b) / (2.0 * (1.0 - gamma)));
    }
  }
  lo = std::min(lo, hi);

  // Feasibility trials use the base grid plus balance points of the
  // component endpoints, so exact-fit covers are reachable.
  std::vector<double> extra;
  {
    std::vector<double> knots{0.0, length};
    for (const auto& p : omega.intervals()) {
      knots.push_back(p.a);
      knots.push_back(p.b);
    }
    // a gap shared evenly by two intervals splits at its middle
    const auto& iv = omega.intervals();
    for (std::size_t i = 0; i + 1 < iv.size(); ++i) knots.push_back(0.5 * (iv[i].b + iv[i + 1].a));
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    if (knots.size() <= 4096) {
      extra = knots;
      for (double x : knots) balance_points(omega, knots, length, gamma, x, hi, extra);
    }
  }
  while (hi - lo > 1e-9 * length) {
    const double mid = 0.5 * (lo + hi);
    auto cand = candidate_points(omega, length, grid, mid, mid);
    cand.insert(cand.end(), extra.begin(), extra.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end(),
                           [length](double a, double b) { return b - a <= 1e-14 * length; }),
               cand.end());
    cand.front() = 0.0;
    cand.back() = length;
    const auto trial = gamma_dp(omega, length, mid, cand);
    if (trial.feasible && trial.value >= gamma * (1.0 - kSlack)) {
      cert = trial.breakpoints;
      double longest = 0.0;
      for (std::size_t i = 0; i + 1 < cert.size(); ++i) longest = std::max(longest, cert[i + 1] - cert[i]);
      hi = std::min(mid, longest);
    } else {
      lo = mid;
    }
  }
  double longest = 0.0;
  for (std::size_t i = 0; i + 1 < cert.size(); ++i) longest = std::max(longest, cert[i + 1] - cert[i]);
  out.value = longest;
  out.breakpoints = std::move(cert);
  out.feasible = true;
  return out;
}

namespace {

struct TailChoice {
  double window = 0.0;
  double density = 0.0;
};

TailChoice best_tail_for_rho(const PeriodicTail& tail, double rho) {
  TailChoice best{rho, tail_min_density(tail, rho)};
  if (rho >= tail.period) {
    const double w = tail.period * std::floor(rho / tail.period);
    const double d = tail_min_density(tail, w);
    if (d > best.density) best = {w, d};
  }
  return best;
}

std::optional<TailChoice> smallest_tail_for_gamma(const PeriodicTail& tail, double gamma) {
  std::optional<TailChoice> best;
  for (int j = 64; j >= 1; --j) {
    const double w = tail.period * j / 64.0;
    const double d = tail_min_density(tail, w);
    if (d >= gamma * (1.0 - kSlack)) best = TailChoice{w, d};
  }
  return best;
}

}  // namespace

GraphOptimum optimal_gamma(const MetricGraph& g, const SamplingSet& omega, double rho, int grid) {
  omega.validate(g);
  GraphOptimum out;
  out.gamma = 1.0;
  out.feasible = true;
  out.cover.edges.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const auto& s = omega.edges[e];
    auto& ec = out.cover.edges[e];
    const double end = edge.internal() ? edge.length : s.tail->start;
    if (end > 0.0) {
      const auto opt = optimal_gamma(s.set, end, rho, grid);
      if (!opt.feasible) {
        out.feasible = false;
        out.gamma = 0.0;
        continue;
      }
      ec.breakpoints = opt.breakpoints;
      out.gamma = std::min(out.gamma, opt.value);
      for (std::size_t i = 0; i + 1 < opt.breakpoints.size(); ++i) {
        out.rho = std::max(out.rho, opt.breakpoints[i + 1] - opt.breakpoints[i]);
      }
    } else {
      ec.breakpoints = {0.0};
    }
    if (!edge.internal()) {
      const auto choice = best_tail_for_rho(*s.tail, rho);
      ec.tail_length = choice.window;
      out.gamma = std::min(out.gamma, choice.density);
      out.rho = std::max(out.rho, choice.window);
      if (!(choice.density > 0.0)) out.feasible = false;
    }
  }
  if (!out.feasible) out.gamma = 0.0;
  return out;
}

GraphOptimum optimal_rho(const MetricGraph& g, const SamplingSet& omega, double gamma, int grid) {
  omega.validate(g);
  GraphOptimum out;
  out.gamma = 1.0;
  out.feasible = true;
  out.cover.edges.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const auto& s = omega.edges[e];
    auto& ec = out.cover.edges[e];
    const double end = edge.internal() ? edge.length : s.tail->start;
    if (end > 0.0) {
      const auto opt = optimal_rho(s.set, end, gamma, grid);
      if (!opt.feasible) {
        out.feasible = false;
        continue;
      }
      ec.breakpoints = opt.breakpoints;
      out.rho = std::max(out.rho, opt.value);
    } else {
      ec.breakpoints = {0.0};
    }
    if (!edge.internal()) {
      const auto choice = smallest_tail_for_gamma(*s.tail, gamma);
      if (!choice) {
        out.feasible = false;
        continue;
      }
      ec.tail_length = choice->window;
      out.rho = std::max(out.rho, choice->window);
      out.gamma = std::min(out.gamma, choice->density);
    }
  }
  if (!out.feasible) return out;
  // Edges that need less than the overall rho get the coarsest cover that
  // still fits; a fully sampled edge would otherwise keep grid-sized pieces.
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const auto& s = omega.edges[e];
    auto& bp = out.cover.edges[e].breakpoints;
    const double end = edge.internal() ? edge.length : s.tail->start;
    if (!(end > 0.0)) continue;
    const auto coarse = optimal_gamma(s.set, end, out.rho, grid);
    if (coarse.feasible && coarse.value >= gamma * (1.0 - kSlack) && coarse.breakpoints.size() < bp.size()) {
      bp = coarse.breakpoints;
    }
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
      out.gamma = std::min(out.gamma, s.set.measure_in(bp[i], bp[i + 1]) / (bp[i + 1] - bp[i]));
    }
  }
  return out;
}

PeriodicParams periodic_params(double gamma0, double rho) {
  if (!(gamma0 > 0.0 && gamma0 < 1.0)) throw DomainError("periodic density must lie in (0, 1)");
  if (!(rho > 1.0 - gamma0)) throw DomainError("rho must exceed the worst-case gap 1 - gamma0");
  const double whole = std::floor(rho);
  const double rest = rho - whole;
  PeriodicParams out;
  out.gamma = (whole * gamma0 + std::max(0.0, rest - (1.0 - gamma0))) / rho;
  out.uniform = rho >= 1.0 ? gamma0 / (2.0 - gamma0) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

SvcApproximant svc_set(int depth) {
  if (depth < 0 || depth > 20) throw DomainError("SVC depth must lie in [0, 20]");
  // Endpoints are integers over 2^(2 depth + 1): every removed middle has
  // length 2^(2 depth + 1 - 2 j) at step j.
  using Int = std::int64_t;
  const Int denom = Int{1} << (2 * depth + 1);
  std::vector<std::pair<Int, Int>> pieces{{0, denom}};
  for (int j = 1; j <= depth; ++j) {
    const Int half = Int{1} << (2 * depth - 2 * j);
    std::vector<std::pair<Int, Int>> next;
    next.reserve(pieces.size() * 2);
    for (const auto& [a, b] : pieces) {
      const Int mid2 = a + b;
      next.push_back({a, mid2 / 2 - half});
      next.push_back({mid2 / 2 + half, b});
    }
    pieces = std::move(next);
  }
  std::vector<Interval> iv;
  iv.reserve(pieces.size());
  const double scale = 1.0 / static_cast<double>(denom);
  for (const auto& [a, b] : pieces) iv.push_back({a * scale, b * scale});
  SvcApproximant out;
  out.set = IntervalUnion::from(std::move(iv));
  double removed = 0.0;
  for (int j = 1; j <= depth; ++j) removed += std::ldexp(1.0, j - 1) / std::ldexp(1.0, 2 * j);
  out.measure = 1.0 - removed;
  return out;
}

}  // namespace qgs
