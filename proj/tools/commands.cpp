#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>

#include "qgs/error.hpp"
#include "qgs/io.hpp"
#include "qgs/sampling.hpp"
#include "qgs/spectral.hpp"
#include "qgs/verify.hpp"

namespace qgs::cli {

namespace {

std::string label(const std::string& path) {
  return path.empty() ? "-" : std::filesystem::path(path).stem().string();
}

GraphInput need_graph(const Options& o) {
  if (o.graph.empty()) throw DomainError("--graph is required");
  auto in = load_graph(o.graph);
  if (in.y.dropped() > 0) {
    std::cerr << "warning: " << in.y.dropped() << " dependent basis vector(s) dropped from the subspace\n";
  }
  return in;
}

SamplingSet need_sampling(const Options& o, const MetricGraph& g) {
  if (o.sampling.empty()) throw DomainError("--sampling is required");
  return load_sampling(o.sampling, g);
}

void need_positive(double v, const char* flag) {
  if (!(v > 0.0)) throw DomainError(std::string(flag) + " must be given and positive");
}

Json metrics_json(const MetricGraph& g) {
  const auto m = metrics(g);
  Json out{{"edges", g.edge_count()},
           {"vertices", g.vertex_count()},
           {"total_length", m.total_length},
           {"betti", m.betti},
           {"min_edge", m.min_edge},
           {"degree1_count", m.degree1_count},
           {"connected", m.connected}};
  out["diameter"] = m.diameter ? Json(*m.diameter) : Json(nullptr);
  return out;
}

Json ratio_json(const RatioReport& r) {
  return Json{{"observed", r.observed}, {"bound", to_json(r.bound)}, {"margin", r.margin},
              {"pass", r.pass},         {"vacuous", r.vacuous}};
}

Complex complex_from(const Json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  if (v.is_object()) return {v.value("re", 0.0), v.value("im", 0.0)};
  throw ParseError("expected a complex number");
}

std::vector<Complex> complex_list(const std::string& text, const char* flag) {
  const Json doc = parse_json_text(text, flag);
  if (!doc.is_array()) throw ParseError(std::string(flag) + ": expected a JSON list");
  std::vector<Complex> out;
  try {
    for (const auto& v : doc) out.push_back(complex_from(v));
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string(flag) + ": expected numbers");
  }
  return out;
}

IntervalUnion interval_list(const std::string& text, const char* flag) {
  const Json doc = parse_json_text(text, flag);
  if (!doc.is_array()) throw ParseError(std::string(flag) + ": expected [[a, b], ...]");
  std::vector<Interval> pieces;
  for (const auto& p : doc) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ParseError(std::string(flag) + ": expected [[a, b], ...]");
    }
    pieces.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return IntervalUnion::from(pieces);
}

Cover load_cover(const std::string& path, const MetricGraph& g) {
  const Json doc = read_json_file(path);
  const Json& edges = doc.contains("edges") ? doc["edges"] : doc;
  Cover cover;
  cover.edges.resize(g.edge_count());
  if (!edges.is_object()) throw ParseError(path + ": expected an object keyed by edge id");
  for (const auto& [id, value] : edges.items()) {
    std::size_t e = 0;
    try {
      e = g.edge_index(id);
    } catch (const DomainError&) {
      throw ParseError(path + ": unknown edge '" + id + "'");
    }
    try {
      if (value.is_array()) {
        cover.edges[e].breakpoints = value.get<std::vector<double>>();
      } else {
        cover.edges[e].breakpoints = value.at("breakpoints").get<std::vector<double>>();
        if (value.contains("tail_length")) cover.edges[e].tail_length = value["tail_length"].get<double>();
      }
    } catch (const nlohmann::json::exception&) {
      throw ParseError(path + ": edge '" + id + "': expected a list of breakpoints");
    }
  }
  return cover;
}

struct Certified {
  double gamma = 0.0;
  double rho = 0.0;
  Cover cover;
  std::string source;
};

// (gamma, rho) for omega: an explicit cover is verified; otherwise the
// optimizer certifies the best gamma at the requested rho.
Certified certify(const Options& o, const MetricGraph& g, const SamplingSet& omega) {
  Certified c;
  if (!o.cover.empty()) {
    need_positive(o.gamma, "--gamma");
    need_positive(o.rho, "--rho");
    c.cover = load_cover(o.cover, g);
    const auto check = verify_cover(g, omega, c.cover, o.gamma, o.rho);
    if (!check.ok) throw DomainError("the supplied cover does not certify (gamma, rho): " + check.violations[0].reason);
    c.gamma = check.gamma;
    c.rho = check.rho;
    c.source = "cover";
    return c;
  }
  need_positive(o.rho, "--rho");
  const auto opt = optimal_gamma(g, omega, o.rho, o.grid);
  if (!opt.feasible) throw DomainError("sampling set is not (gamma, rho)-sampling for any gamma > 0 at this rho");
  c.gamma = opt.gamma;
  c.rho = opt.rho;
  c.cover = opt.cover;
  c.source = "optimizer";
  return c;
}

struct Sample {
  GraphFunction f;
  double lambda = 0.0;
  Json description;
};

Sample spectral_function(const Options& o, const GraphInput& in) {
  SpectrumOptions so;
  so.step = o.step;
  const auto pairs = eigenvalues_up_to(in.graph, in.y, o.lambda_max, so);
  if (pairs.empty()) throw DomainError("no eigenvalues below --lambda-max");
  std::vector<std::size_t> idx;
  std::vector<Complex> coeffs;
  if (!o.mode_list.empty()) {
    for (int m : o.mode_list) {
      if (m < 0 || static_cast<std::size_t>(m) >= pairs.size()) {
        throw DomainError("mode " + std::to_string(m) + " out of range (have " + std::to_string(pairs.size()) + ")");
      }
      idx.push_back(static_cast<std::size_t>(m));
    }
    coeffs = o.coefficients.empty() ? std::vector<Complex>(idx.size(), 1.0)
                                    : complex_list(o.coefficients, "--coefficients");
    if (coeffs.size() != idx.size()) throw DomainError("--coefficients must match --modes");
  } else {
    std::mt19937_64 rng(o.seed);
    std::vector<std::size_t> all(pairs.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(o.terms, 1)), all.size());
    idx.assign(all.begin(), all.begin() + static_cast<long>(n));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) coeffs.emplace_back(normal(rng), normal(rng));
  }
  std::vector<EigenPair> chosen;
  Sample s;
  Json modes = Json::array();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    chosen.push_back(pairs[idx[i]]);
    s.lambda = std::max(s.lambda, pairs[idx[i]].lambda);
    modes.push_back(Json{{"index", idx[i]},
                         {"lambda", pairs[idx[i]].lambda},
                         {"coefficient", {coeffs[i].real(), coeffs[i].imag()}}});
  }
  s.f = spectral_sample(chosen, coeffs);
  s.description = Json{{"modes", modes}, {"lambda", s.lambda}, {"seed", o.seed}};
  return s;
}

std::vector<std::string> dirichlet_vertices(const Options& o, const GraphInput& in) {
  if (!o.dirichlet.empty()) return o.dirichlet;
  std::vector<std::string> out;
  for (const auto& v : in.graph.vertices()) {
    if (in.conditions.at(v) == VertexCondition::dirichlet) out.push_back(v);
  }
  if (out.empty()) throw DomainError("no Dirichlet vertices: pass --dirichlet or mark them in the graph file");
  return out;
}

Json constants_json(const ObservabilityConstants& c) {
  return Json{{"C1", c.c1}, {"C2", c.c2}, {"C3", c.c3}, {"K1", c.k1}, {"K2", c.k2},
              {"K3", c.k3}, {"K4", c.k4}, {"placeholder_defaults", c.placeholder}};
}

}  // namespace

Result run_spectrum(const Options& o) {
  const auto in = need_graph(o);
  SpectrumOptions so;
  so.step = o.step;
  const auto pairs = eigenvalues_up_to(in.graph, in.y, o.lambda_max, so);
  Result r;
  Json list = Json::array();
  for (const auto& p : pairs) {
    Json item = to_json(p, in.graph);
    if (!o.with_functions) item.erase("function");
    list.push_back(item);
    r.rows.push_back({label(o.graph), {}, {}, p.lambda, {}, {}, {}});
  }
  r.json = Json{{"command", "spectrum"},
                {"graph", metrics_json(in.graph)},
                {"lambda_max", o.lambda_max},
                {"count", pairs.size()},
                {"eigenpairs", list}};
  return r;
}

Result run_torsion(const Options& o) {
  const auto in = need_graph(o);
  const auto sol = solve_torsion(in.graph, dirichlet_vertices(o, in));
  Result r;
  r.json = Json{{"command", "torsion"},
                {"graph", metrics_json(in.graph)},
                {"dirichlet", sol.dirichlet},
                {"rigidity", sol.rigidity},
                {"u", to_json(sol.u, in.graph)}};
  r.rows.push_back({label(o.graph), {}, {}, {}, sol.rigidity, {}, {}});
  return r;
}

Result run_sampling_verify(const Options& o) {
  const auto in = need_graph(o);
  const auto omega = need_sampling(o, in.graph);
  if (o.cover.empty()) throw DomainError("--cover is required");
  need_positive(o.gamma, "--gamma");
  need_positive(o.rho, "--rho");
  const auto cover = load_cover(o.cover, in.graph);
  const auto check = verify_cover(in.graph, omega, cover, o.gamma, o.rho);
  Json violations = Json::array();
  for (const auto& v : check.violations) {
    violations.push_back(Json{{"edge", in.graph.edge(v.edge).id}, {"t", v.t}, {"s", v.s}, {"reason", v.reason}});
  }
  Result r;
  r.json = Json{{"command", "sampling verify"},
                {"gamma", o.gamma},
                {"rho", o.rho},
                {"valid", check.ok},
                {"achieved_gamma", check.gamma},
                {"achieved_rho", check.rho},
                {"violations", violations}};
  r.rows.push_back({label(o.graph), check.gamma, check.rho, {}, {}, {}, {}});
  r.exit_code = check.ok ? 0 : 1;
  return r;
}

Result run_sampling_gamma(const Options& o) {
  const auto in = need_graph(o);
  const auto omega = need_sampling(o, in.graph);
  need_positive(o.rho, "--rho");
  const auto opt = optimal_gamma(in.graph, omega, o.rho, o.grid);
  Result r;
  r.json = Json{{"command", "sampling gamma"},
                {"rho", o.rho},
                {"grid", o.grid},
                {"feasible", opt.feasible},
                {"gamma", opt.gamma},
                {"cover_rho", opt.rho},
                {"cover", to_json(opt.cover, in.graph)}};
  r.rows.push_back({label(o.graph), opt.gamma, opt.rho, {}, {}, {}, {}});
  return r;
}

Result run_sampling_rho(const Options& o) {
  const auto in = need_graph(o);
  const auto omega = need_sampling(o, in.graph);
  need_positive(o.gamma, "--gamma");
  const auto opt = optimal_rho(in.graph, omega, o.gamma, o.grid);
  Result r;
  r.json = Json{{"command", "sampling rho"}, {"gamma", o.gamma}, {"grid", o.grid}, {"feasible", opt.feasible}};
  if (opt.feasible) {
    r.json["rho"] = opt.rho;
    r.json["cover_gamma"] = opt.gamma;
    r.json["cover"] = to_json(opt.cover, in.graph);
  } else {
    Json density = Json::object();
    for (std::size_t e = 0; e < in.graph.edge_count(); ++e) {
      const auto& edge = in.graph.edge(e);
      density[edge.id] = edge.internal() ? omega.edges[e].set.measure() / edge.length
                                         : omega.edges[e].tail->density();
    }
    r.json["edge_density"] = density;
  }
  r.rows.push_back({label(o.graph), opt.gamma, opt.rho, {}, {}, {}, {}});
  return r;
}

Result run_sampling_gaps(const Options& o) {
  const auto in = need_graph(o);
  const auto omega = need_sampling(o, in.graph);
  const auto gaps = gap_analysis(in.graph, omega);
  Json edges = Json::object();
  for (std::size_t e = 0; e < gaps.size(); ++e) {
    edges[in.graph.edge(e).id] = Json{{"left", gaps[e].left},
                                      {"right", gaps[e].right},
                                      {"interior", gaps[e].interior},
                                      {"empty", gaps[e].empty}};
  }
  Result r;
  r.json = Json{{"command", "sampling gaps"}, {"edges", edges}};
  if (o.gamma > 0.0 && o.rho > 0.0) {
    r.json["gamma"] = o.gamma;
    r.json["rho"] = o.rho;
    r.json["necessary_condition"] = necessary_check(gaps, o.gamma, o.rho);
  }
  r.rows.push_back({label(o.graph), o.gamma > 0.0 ? std::optional<double>(o.gamma) : std::nullopt,
                    o.rho > 0.0 ? std::optional<double>(o.rho) : std::nullopt, {}, {}, {}, {}});
  return r;
}

Result run_bound_thm21(const Options& o) {
  const auto c = thm21_bound(o.gamma, o.rho, o.lambda);
  Result r;
  r.json = Json{{"command", "bound thm21"}, {"gamma", o.gamma}, {"rho", o.rho}, {"lambda", o.lambda},
                {"constant", to_json(c)}};
  r.rows.push_back({"-", o.gamma, o.rho, o.lambda, {}, c.value, {}});
  return r;
}

Result run_bound_thm26(const Options& o) {
  const auto c = thm26_bound(o.gamma, o.h);
  Result r;
  r.json = Json{{"command", "bound thm26"}, {"gamma", o.gamma}, {"h", o.h}, {"constant", to_json(c)}};
  r.rows.push_back({"-", o.gamma, {}, {}, {}, c.value, {}});
  return r;
}

Result run_bound_cor72(const Options& o) {
  const auto in = need_graph(o);
  const auto c = cor72_range(in.graph, o.k, o.gamma, o.rho);
  Result r;
  r.json = Json{{"command", "bound cor72"},
                {"graph", metrics_json(in.graph)},
                {"k", o.k},
                {"gamma", o.gamma},
                {"rho", o.rho},
                {"lower_length", to_json(c.lower_length)},
                {"upper", to_json(c.upper)},
                {"lower_diameter", to_json(c.lower_diameter)}};
  r.rows.push_back({label(o.graph), o.gamma, o.rho, {}, {}, c.lower_length.value, {}});
  return r;
}

Result run_bound_trace(const Options& o) {
  const auto in = need_graph(o);
  need_positive(o.t, "--t");
  SamplingSet omega = empty_sampling(in.graph);
  double gamma = o.gamma;
  double rho = o.rho;
  if (!o.sampling.empty()) {
    omega = need_sampling(o, in.graph);
    const auto c = certify(o, in.graph, omega);
    gamma = c.gamma;
    rho = c.rho;
  } else {
    for (std::size_t e = 0; e < in.graph.edge_count(); ++e) {
      omega.edges[e].set = IntervalUnion::whole(0.0, in.graph.edge(e).length);
    }
    if (!(gamma > 0.0)) gamma = 1.0;
    need_positive(rho, "--rho");
  }
  // The tail estimate needs the exponent to be decreasing past lambda_max.
  const double d1 = trace_d1(gamma, rho);
  const double lambda_max = std::max(o.lambda_max, 1.1 * std::pow(d1 / (2.0 * o.t), 2) + 1.0);
  const auto pairs = eigenvalues_up_to(in.graph, in.y, lambda_max);
  const auto region = omega.region(in.graph);
  std::vector<TraceInput> inputs;
  for (const auto& p : pairs) inputs.push_back({p.lambda, std::min(1.0, norm_sq(p.f, region))});
  TraceContext ctx;
  ctx.total_length = in.graph.total_length();
  ctx.edge_count = in.graph.edge_count();
  ctx.standard = in.graph.connected() && same_span(in.y, standard_subspace(in.graph));
  ctx.lambda_max = lambda_max;
  const auto tb = trace_bound(inputs, ctx, gamma, rho, o.t);
  Result r;
  r.json = Json{{"command", "bound trace"},
                {"gamma", gamma},
                {"rho", rho},
                {"t", o.t},
                {"lambda_max", lambda_max},
                {"terms", tb.terms},
                {"exact_partial", tb.exact_partial},
                {"exact_tail_bound", tb.exact_tail},
                {"bound", to_json(tb.bound)},
                {"tail_bound", to_json(tb.tail_bound)},
                {"holds", tb.bound.log >= std::log(tb.exact_partial + tb.exact_tail)}};
  r.rows.push_back({label(o.graph), gamma, rho, lambda_max, tb.exact_partial, tb.bound.value,
                    tb.bound.value - tb.exact_partial});
  return r;
}

Result run_bound_observability(const Options& o) {
  const auto b = observability_constant(o.gamma, o.rho, o.T, o.constants);
  Result r;
  r.json = Json{{"command", "bound observability"},
                {"gamma", o.gamma},
                {"rho", o.rho},
                {"T", o.T},
                {"constants", constants_json(o.constants)},
                {"d0", b.d0},
                {"d1", b.d1},
                {"c_squared", to_json(b.c_squared)},
                {"envelope", to_json(b.envelope)}};
  r.rows.push_back({"-", o.gamma, o.rho, {}, {}, b.c_squared.value, {}});
  return r;
}

Result run_bound_torsion(const Options& o) {
  const auto in = need_graph(o);
  const auto sol = solve_torsion(in.graph, dirichlet_vertices(o, in));
  const auto tp = torsion_profile(in.graph, sol, o.gamma, o.rho);
  Result r;
  r.json = Json{{"command", "bound torsion"},
                {"gamma", o.gamma},
                {"rho", o.rho},
                {"rigidity", sol.rigidity},
                {"profile", tp.profile.values()},
                {"h", tp.h},
                {"h_prime", tp.h_prime},
                {"cb2_cap", tp.cb2_cap},
                {"constant", to_json(tp.bound)}};
  r.rows.push_back({label(o.graph), o.gamma, o.rho, {}, {}, tp.bound.value, {}});
  return r;
}

Result run_verify_ratio(const Options& o) {
  const auto in = need_graph(o);
  const auto omega = need_sampling(o, in.graph);
  const auto cert = certify(o, in.graph, omega);
  const auto s = spectral_function(o, in);
  const auto rep = ratio_thm21(s.f, omega.region(in.graph), cert.gamma, cert.rho, s.lambda);
  Result r;
  r.json = Json{{"command", "verify ratio"},
                {"gamma", cert.gamma},
                {"rho", cert.rho},
                {"certificate", cert.source},
                {"function", s.description},
                {"report", ratio_json(rep)}};
  r.rows.push_back({label(o.graph), cert.gamma, cert.rho, s.lambda, rep.observed, rep.bound.value, rep.margin});
  return r;
}

Result run_verify_derivative(const Options& o) {
  const auto in = need_graph(o);
  const auto omega = need_sampling(o, in.graph);
  const auto cert = certify(o, in.graph, omega);
  const auto s = spectral_function(o, in);
  const auto rep = derivative_ratio(s.f, omega.region(in.graph), cert.gamma, cert.rho, s.lambda);
  Result r;
  r.json = Json{{"command", "verify derivative"},
                {"gamma", cert.gamma},
                {"rho", cert.rho},
                {"certificate", cert.source},
                {"function", s.description},
                {"derivative", ratio_json(rep.derivative)},
                {"combined", ratio_json(rep.combined)}};
  r.rows.push_back({label(o.graph), cert.gamma, cert.rho, s.lambda, rep.derivative.observed,
                    rep.derivative.bound.value, rep.derivative.margin});
  return r;
}

Result run_verify_classify(const Options& o) {
  const auto in = need_graph(o);
  const auto s = spectral_function(o, in);
  const auto cls = classify_edges(s.f, BernsteinProfile::power_law(s.lambda), o.max_order);
  Json edges = Json::object();
  for (std::size_t e = 0; e < in.graph.edge_count(); ++e) {
    edges[in.graph.edge(e).id] = Json{{"good", static_cast<bool>(cls.good[e])},
                                      {"complete", static_cast<bool>(cls.complete[e])},
                                      {"checked_order", cls.checked_order[e]},
                                      {"mass", cls.mass[e]}};
  }
  Result r;
  r.json = Json{{"command", "verify classify"},
                {"function", s.description},
                {"max_order", o.max_order},
                {"edges", edges},
                {"total", cls.total},
                {"good_mass", cls.good_mass},
                {"bad_mass", cls.bad_mass},
                {"bad_mass_below_half", cls.bad_mass_below_half},
                {"good_mass_dominates", cls.good_mass_dominates}};
  r.rows.push_back({label(o.graph), {}, {}, s.lambda, cls.bad_mass / cls.total, 0.5, 0.5 - cls.bad_mass / cls.total});
  return r;
}

Result run_verify_kovrijkine(const Options& o) {
  if (o.coefficients.empty()) throw DomainError("--coefficients is required");
  if (o.set.empty()) throw DomainError("--set is required");
  const auto rep = kovrijkine_check(complex_list(o.coefficients, "--coefficients"),
                                    interval_list(o.set, "--set"), o.samples);
  Result r;
  r.json = Json{{"command", "verify kovrijkine"},
                {"sup_interval_upper", rep.sup_interval},
                {"sup_set_lower", rep.sup_set},
                {"m_phi_lower", rep.m_phi},
                {"measure", rep.measure},
                {"rhs", rep.rhs},
                {"samples", rep.samples},
                {"pass", rep.pass}};
  r.rows.push_back({"-", {}, {}, {}, rep.sup_interval, rep.rhs, rep.rhs - rep.sup_interval});
  return r;
}

Result run_verify_local(const Options& o) {
  if (o.function.empty()) throw DomainError("--function is required");
  if (o.set.empty()) throw DomainError("--set is required");
  const Json doc = parse_json_text(o.function, "--function");
  std::vector<Term> terms;
  try {
    for (const auto& t : doc) {
      terms.push_back({{t.value("re", 0.0), t.value("im", 0.0)}, t.value("p", 0), t.value("omega", 0.0)});
    }
  } catch (const nlohmann::json::exception&) {
    throw ParseError("--function: expected [{\"re\", \"im\", \"p\", \"omega\"}, ...]");
  }
  const auto rep = local_estimate_check(EdgeFunction(terms), o.length, interval_list(o.set, "--set"));
  Result r;
  r.json = Json{{"command", "verify local"}, {"length", o.length}, {"lhs", rep.lhs}, {"rhs", rep.rhs},
                {"M", rep.m},                {"norm_sq", rep.norm_sq}, {"pass", rep.pass}};
  r.rows.push_back({"-", {}, {}, {}, rep.lhs, rep.rhs, rep.lhs - rep.rhs});
  return r;
}

Result run_verify_optimality(const Options& o) {
  const auto rep = optimality_example(o.length, o.lambda, o.gamma);
  Result r;
  r.json = Json{{"command", "verify optimality"},
                {"length", o.length},
                {"lambda", o.lambda},
                {"gamma", o.gamma},
                {"alpha", rep.alpha},
                {"ratio", rep.ratio},
                {"upper", rep.upper},
                {"lower", to_json(rep.lower)},
                {"pass", rep.pass}};
  r.rows.push_back({"-", o.gamma, o.length / 2.0, o.lambda, rep.ratio, rep.lower.value, rep.ratio - rep.lower.value});
  return r;
}

Result run_verify_observability(const Options& o) {
  const auto in = need_graph(o);
  const auto omega = need_sampling(o, in.graph);
  need_positive(o.T, "--T");
  const auto num = observability_numeric(in.graph, in.y, omega.region(in.graph), o.T,
                                         static_cast<std::size_t>(std::max(o.modes, 1)));
  Result r;
  r.json = Json{{"command", "verify observability"},
                {"T", o.T},
                {"modes", num.modes},
                {"rank_deficient", num.rank_deficient},
                {"conditioning", num.conditioning}};
  r.json["numeric_c_squared"] = num.rank_deficient ? Json(nullptr) : Json(num.c_squared);
  std::optional<double> formula;
  if (o.rho > 0.0) {
    const auto opt = optimal_gamma(in.graph, omega, o.rho, o.grid);
    if (opt.feasible) {
      const auto b = observability_constant(opt.gamma, opt.rho, o.T, o.constants);
      r.json["gamma"] = opt.gamma;
      r.json["rho"] = opt.rho;
      r.json["formula_c_squared"] = to_json(b.c_squared);
      r.json["constants"] = constants_json(o.constants);
      formula = b.c_squared.value;
    }
  }
  r.rows.push_back({label(o.graph), {}, {}, {},
                    num.rank_deficient ? std::nullopt : std::optional<double>(num.c_squared), formula, {}});
  return r;
}

Result run_verify_trace_ineq(const Options& o) {
  const auto in = need_graph(o);
  const auto s = spectral_function(o, in);
  const auto rep = boundary_trace_check(s.f, in.graph);
  Result r;
  r.json = Json{{"command", "verify trace-ineq"}, {"function", s.description}, {"lhs", rep.lhs},
                {"rhs", rep.rhs},                 {"pass", rep.pass}};
  r.rows.push_back({label(o.graph), {}, {}, s.lambda, rep.lhs, rep.rhs, rep.rhs - rep.lhs});
  return r;
}

Result run_verify_lasso(const Options&) {
  const auto rep = lasso_counterexample();
  Result r;
  r.json = Json{{"command", "verify lasso"},
                {"graph", "loop (length 1) + pendant (length 1), standard conditions"},
                {"k", rep.k},
                {"lambda", rep.k * rep.k},
                {"secular_sigma_min", rep.secular_sigma},
                {"boundary_residual", {rep.residual_plus, rep.residual_minus}},
                {"pendant_fraction", rep.pendant_fraction},
                {"ratio_pendant", rep.ratio_pendant},
                {"ratio_loop", rep.ratio_loop},
                {"sampling", Json{{"gamma", rep.sampling_gamma},
                                  {"rho", rep.sampling_rho},
                                  {"ratio", rep.ratio_sampling},
                                  {"bound", to_json(rep.sampling_bound)}}}};
  r.rows.push_back({"lasso", 0.5, {}, rep.k * rep.k, rep.ratio_pendant, {}, {}});
  r.rows.push_back({"lasso", rep.sampling_gamma, rep.sampling_rho, rep.k * rep.k, rep.ratio_sampling,
                    rep.sampling_bound.value, rep.ratio_sampling - rep.sampling_bound.value});
  return r;
}

Result run_audit(const Options& o) {
  AuditOptions ao;
  ao.graphs = o.audit_graphs;
  ao.trials_per_graph = o.audit_trials;
  ao.seed = o.seed;
  ao.lambda_max = o.audit_lambda_max;
  ao.grid = o.grid;
  ao.classify = o.audit_classify;
  const auto rep = qgs::run_audit(ao);
  Result r;
  double worst = INFINITY;
  for (const auto& t : rep.trials) {
    worst = std::min(worst, t.mass.margin);
    r.rows.push_back({"g" + std::to_string(t.graph), t.gamma, t.rho, t.lambda, t.mass.observed,
                      t.mass.bound.value, t.mass.margin});
  }
  r.json = Json{{"command", "audit"},
                {"seed", rep.seed},
                {"graphs", rep.graphs},
                {"trials", rep.trials.size()},
                {"lambda_max", o.audit_lambda_max},
                {"violations", rep.violations},
                {"derivative_violations", rep.derivative_violations},
                {"classification_failures", rep.classification_failures},
                {"smallest_margin", rep.trials.empty() ? Json(nullptr) : Json(worst)}};
  if (rep.violations + rep.derivative_violations + rep.classification_failures > 0) r.exit_code = 2;
  return r;
}

}  // namespace qgs::cli
