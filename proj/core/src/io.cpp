#include "qgs/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qgs/error.hpp"

namespace qgs {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::string text(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

double length_value(const Json& v, const std::string& where) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return kInfiniteLength;
    fail(where, "length must be a number or \"inf\"");
  }
  return number(v, where);
}

IntervalUnion intervals(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected a list of [a, b] pairs");
  std::vector<Interval> pieces;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto at = where + "[" + std::to_string(i) + "]";
    const auto& p = v[i];
    if (!p.is_array() || p.size() != 2) fail(at, "expected [a, b]");
    const double a = number(p[0], at + "[0]");
    const double b = number(p[1], at + "[1]");
    if (!(a <= b)) fail(at, "interval has a > b");
    pieces.push_back({a, b});
  }
  try {
    return IntervalUnion::from(pieces);
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
}

Complex complex_value(const Json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_object()) {
    const double re = v.contains("re") ? number(v["re"], where + ".re") : 0.0;
    const double im = v.contains("im") ? number(v["im"], where + ".im") : 0.0;
    return {re, im};
  }
  if (v.is_array() && v.size() == 2) return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
  fail(where, "expected a complex number ({\"re\", \"im\"}, [re, im] or a real)");
}

VertexCondition condition(const Json& v, const std::string& where) {
  const auto name = text(v, where);
  try {
    return parse_vertex_condition(name);
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Json parse_json_text(const std::string& source_text, const std::string& source) {
  try {
    return Json::parse(source_text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(source_text, e.byte);
    std::ostringstream msg;
    msg << source << ":" << line << ":" << col << ": malformed JSON";
    throw ParseError(msg.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

GraphInput parse_graph(const Json& doc) {
  GraphSpec spec;
  const auto& vertices = require(doc, "vertices", "graph");
  if (!vertices.is_array()) fail("graph.vertices", "expected a list");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    spec.vertices.push_back(text(vertices[i], "graph.vertices[" + std::to_string(i) + "]"));
  }
  const auto& edges = require(doc, "edges", "graph");
  if (!edges.is_array()) fail("graph.edges", "expected a list");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto where = "graph.edges[" + std::to_string(i) + "]";
    const auto& e = edges[i];
    EdgeSpec es;
    es.id = e.contains("id") ? text(e["id"], where + ".id") : "e" + std::to_string(i);
    es.from = text(require(e, "from", where), where + ".from");
    es.length = length_value(require(e, "length", where), where + ".length");
    if (e.contains("to")) {
      es.to = text(e["to"], where + ".to");
    } else if (std::isinf(es.length)) {
      es.to = es.from;
    } else {
      fail(where, "missing field 'to'");
    }
    if (e.contains("flux")) es.flux = number(e["flux"], where + ".flux");
    spec.edges.push_back(es);
  }

  GraphInput out;
  try {
    out.graph = MetricGraph::build(spec);
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& e) {
    fail("graph", e.what());
  }

  if (!doc.contains("conditions")) {
    out.y = standard_subspace(out.graph);
    return out;
  }
  const auto& cond = doc["conditions"];
  if (!cond.is_object()) fail("graph.conditions", "expected an object");
  if (cond.contains("subspace")) {
    const auto& basis = require(cond["subspace"], "basis", "graph.conditions.subspace");
    if (!basis.is_array()) fail("graph.conditions.subspace.basis", "expected a list of vectors");
    const auto n = static_cast<Eigen::Index>(out.graph.boundary_dimension());
    Eigen::MatrixXcd cols(n, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const auto where = "graph.conditions.subspace.basis[" + std::to_string(c) + "]";
      if (!basis[c].is_array() || static_cast<Eigen::Index>(basis[c].size()) != n) {
        fail(where, "expected a vector of length " + std::to_string(n));
      }
      for (Eigen::Index r = 0; r < n; ++r) {
        cols(r, static_cast<Eigen::Index>(c)) =
            complex_value(basis[c][static_cast<std::size_t>(r)], where + "[" + std::to_string(r) + "]");
      }
    }
    out.y = BoundarySubspace::from_vectors(out.graph.edge_count(), out.graph.internal_edge_count(), cols);
    out.raw_basis = true;
    return out;
  }
  try {
    if (cond.contains("default")) {
      out.conditions.fallback = condition(cond["default"], "graph.conditions.default");
    }
    if (cond.contains("overrides")) {
      const auto& ov = cond["overrides"];
      if (!ov.is_object()) fail("graph.conditions.overrides", "expected an object");
      for (const auto& [vertex, kind] : ov.items()) {
        out.conditions.overrides[vertex] = condition(kind, "graph.conditions.overrides." + vertex);
      }
    }
    out.y = compile_conditions(out.graph, out.conditions);
  } catch (const ParseError& e) {
    throw;
  } catch (const DomainError& e) {
    fail("graph.conditions", e.what());
  }
  return out;
}

GraphInput load_graph(const std::string& path) {
  const Json doc = read_json_file(path);
  try {
    return parse_graph(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SamplingSet parse_sampling(const Json& doc, const MetricGraph& g) {
  if (!doc.is_object()) fail("sampling", "expected an object");
  SamplingSet s = empty_sampling(g);
  auto edge_of = [&](const std::string& id, const std::string& where) {
    try {
      return g.edge_index(id);
    } catch (const DomainError&) {
      fail(where, "unknown edge '" + id + "'");
    }
  };
  if (doc.contains("edges")) {
    const auto& edges = doc["edges"];
    if (!edges.is_object()) fail("sampling.edges", "expected an object keyed by edge id");
    for (const auto& [id, value] : edges.items()) {
      const auto where = "sampling.edges." + id;
      const auto e = edge_of(id, where);
      s.edges[e].set = intervals(value, where);
    }
  }
  if (doc.contains("external")) {
    const auto& ext = doc["external"];
    if (!ext.is_object()) fail("sampling.external", "expected an object keyed by edge id");
    for (const auto& [id, value] : ext.items()) {
      const auto where = "sampling.external." + id;
      const auto e = edge_of(id, where);
      if (g.edge(e).internal()) fail(where, "edge is finite");
      PeriodicTail tail;
      s.edges[e].set = value.contains("head") ? intervals(value["head"], where + ".head") : IntervalUnion{};
      tail.period = number(require(value, "period", where), where + ".period");
      tail.body = intervals(require(value, "body", where), where + ".body");
      tail.start = value.contains("start") ? number(value["start"], where + ".start")
                                           : (s.edges[e].set.empty() ? 0.0 : s.edges[e].set.upper());
      s.edges[e].tail = tail;
    }
  }
  try {
    s.validate(g);
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& e) {
    fail("sampling", e.what());
  }
  return s;
}

SamplingSet load_sampling(const std::string& path, const MetricGraph& g) {
  const Json doc = read_json_file(path);
  try {
    return parse_sampling(doc, g);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json to_json(const IntervalUnion& u) {
  Json out = Json::array();
  for (const auto& p : u.intervals()) out.push_back({p.a, p.b});
  return out;
}

Json to_json(const EdgeFunction& f) {
  Json out = Json::array();
  for (const auto& t : f.terms()) {
    out.push_back(Json{{"re", t.c.real()}, {"im", t.c.imag()}, {"p", t.p}, {"omega", t.omega}});
  }
  return out;
}

Json to_json(const GraphFunction& f, const MetricGraph& g) {
  Json out = Json::object();
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    if (!f.edge(e).is_zero()) out[g.edge(e).id] = to_json(f.edge(e));
  }
  return out;
}

Json to_json(const EigenPair& p, const MetricGraph& g) {
  Json coeffs = Json::object();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto a = p.coefficients[static_cast<Eigen::Index>(2 * e)];
    const auto b = p.coefficients[static_cast<Eigen::Index>(2 * e + 1)];
    coeffs[g.edge(e).id] = Json{{"a", {a.real(), a.imag()}}, {"b", {b.real(), b.imag()}}};
  }
  return Json{{"k", p.k}, {"lambda", p.lambda}, {"residual", p.residual},
              {"coefficients", coeffs}, {"function", to_json(p.f, g)}};
}

Json to_json(const LogValue& v) {
  // Overflowed values stay null in "value"; "log" always carries the number.
  Json out{{"value", std::isfinite(v.value) ? Json(v.value) : Json(nullptr)}, {"log", v.log}, {"underflow", v.underflow}};
  out["overflow"] = !std::isfinite(v.value);
  return out;
}

Json to_json(const Cover& c, const MetricGraph& g) {
  Json out = Json::object();
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    Json entry{{"breakpoints", c.edges[e].breakpoints}};
    if (c.edges[e].tail_length) entry["tail_length"] = *c.edges[e].tail_length;
    out[g.edge(e).id] = entry;
  }
  return out;
}

}  // namespace qgs
